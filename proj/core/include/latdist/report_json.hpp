// JSON serialization of the report structures.
//
// Every serializer emits an object with a fixed key order and embeds the
// library version, so reports are byte-stable across runs and thread
// counts. Values are plain JSON numbers/strings; no timestamps are added
// at this layer.
#pragma once

#include <string>

#include "latdist/arithmetic.hpp"
#include "latdist/density.hpp"
#include "latdist/verify.hpp"

namespace latdist {

std::string to_json(const KeyUReport& r, int indent = 2);
std::string to_json(const UniformityReport& r, int indent = 2);
std::string to_json(const IncrementTrace& r, int indent = 2);
std::string to_json(const IdentityCheck& r, int indent = 2);
std::string to_json(const RatioSearch& r, int indent = 2);
std::string to_json(const PinnedResult& r, int indent = 2);
std::string to_json(const DichotomyReport& r, int indent = 2);

}  // namespace latdist
