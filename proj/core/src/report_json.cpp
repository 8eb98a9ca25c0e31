#include "latdist/report_json.hpp"

#include <json.hpp>

#include "latdist/types.hpp"

namespace latdist {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json point_array(const Point& p) {
  ordered_json a = ordered_json::array();
  for (const Coord c : p) a.push_back(c);
  return a;
}

ordered_json ratio_rows(const std::vector<std::pair<std::int64_t, double>>& t) {
  ordered_json a = ordered_json::array();
  for (const auto& [lam, ratio] : t) {
    ordered_json row;
    row["lambda"] = lam;
    row["ratio"] = ratio;
    a.push_back(std::move(row));
  }
  return a;
}

}  // namespace

std::string to_json(const KeyUReport& r, int indent) {
  ordered_json j;
  j["library_version"] = version_string();
  j["kind"] = "key_uniform_bound";
  j["dim"] = r.dim;
  j["lambda"] = r.lambda;
  j["eta"] = r.eta;
  j["q_cap"] = r.q_cap;
  j["threshold"] = r.threshold;
  j["arc_l"] = r.arc_l;
  j["n_samples"] = r.n_samples;
  j["seed"] = r.seed;
  j["inside_arcs"] = r.inside_arcs;
  j["sphere_count"] = r.sphere_count;
  j["degenerate_single_point"] = r.degenerate_single_point;
  j["max_abs"] = r.max_abs;
  j["argmax_xi"] = r.argmax_xi;
  return j.dump(indent);
}

std::string to_json(const UniformityReport& r, int indent) {
  ordered_json j;
  j["library_version"] = version_string();
  j["kind"] = "uniformity";
  j["eta"] = r.eta;
  j["c_qeta"] = r.c_qeta;
  j["q_eta"] = r.q_eta_val;
  j["variant"] = r.variant == UniformityVariant::global ? "global" : "subcube";
  if (r.variant == UniformityVariant::subcube) j["subcube_side"] = r.subcube_side;
  j["global_density"] = r.global_density;
  j["worst_residue"] = point_array(r.worst_residue);
  if (r.variant == UniformityVariant::subcube)
    j["worst_subcube"] = point_array(r.worst_subcube);
  j["worst_ratio"] = r.worst_ratio;
  j["passed"] = r.passed;
  if (r.variant == UniformityVariant::subcube) {
    ordered_json rows = ordered_json::array();
    for (const SubcubeRow& row : r.subcube_table) {
      ordered_json o;
      o["subcube"] = point_array(row.subcube);
      o["worst_residue"] = point_array(row.worst_residue);
      o["ratio"] = row.ratio;
      rows.push_back(std::move(o));
    }
    j["subcube_table"] = std::move(rows);
  }
  return j.dump(indent);
}

std::string to_json(const IncrementTrace& r, int indent) {
  ordered_json j;
  j["library_version"] = version_string();
  j["kind"] = "density_increment";
  j["eta"] = r.eta;
  j["c_qeta"] = r.c_qeta;
  j["q_eta"] = r.q_eta_val;
  j["status"] = r.status;
  ordered_json steps = ordered_json::array();
  for (const IncrementStep& s : r.steps) {
    ordered_json o;
    o["side"] = s.side;
    o["count"] = s.count;
    o["density"] = s.density;
    o["worst_ratio"] = s.worst_ratio;
    o["passed"] = s.passed;
    if (!s.chosen_residue.empty()) o["chosen_residue"] = point_array(s.chosen_residue);
    steps.push_back(std::move(o));
  }
  j["steps"] = std::move(steps);
  return j.dump(indent);
}

std::string to_json(const IdentityCheck& r, int indent) {
  ordered_json j;
  j["library_version"] = version_string();
  j["kind"] = "count_identity";
  j["torus_side"] = r.torus_side;
  j["sphere_count"] = r.sphere_count;
  j["pair_count"] = r.pair_count;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["residual"] = r.residual;
  return j.dump(indent);
}

std::string to_json(const RatioSearch& r, int indent) {
  ordered_json j;
  j["library_version"] = version_string();
  j["kind"] = "unpinned_search";
  j["best_x"] = point_array(r.best_x);
  j["best_count"] = r.best_count;
  j["best_ratio"] = r.best_ratio;
  j["density"] = r.density;
  j["threshold"] = r.threshold;
  j["holds"] = r.holds;
  return j.dump(indent);
}

std::string to_json(const PinnedResult& r, int indent) {
  ordered_json j;
  j["library_version"] = version_string();
  j["kind"] = "pinned_search";
  j["found"] = r.found;
  j["witness"] = point_array(r.witness);
  j["ratio_table"] = ratio_rows(r.ratio_table);
  j["density"] = r.density;
  j["threshold"] = r.threshold;
  j["holds"] = r.holds;
  return j.dump(indent);
}

std::string to_json(const DichotomyReport& r, int indent) {
  ordered_json j;
  j["library_version"] = version_string();
  j["kind"] = r.pinned ? "dichotomy_pinned" : "dichotomy";
  j["dim"] = r.dim;
  j["side"] = r.side;
  j["lambda0"] = r.lambda0;
  j["lambda1"] = r.lambda1;
  j["epsilon"] = r.epsilon;
  j["eta"] = r.eta;
  j["c_qeta"] = r.c_qeta;
  j["q_eta"] = r.q_eta_val;
  j["density"] = r.density;

  ordered_json bi;
  bi["pinned"] = r.branch_i.pinned;
  bi["best_x"] = point_array(r.branch_i.best_x);
  if (r.branch_i.pinned)
    bi["witness_table"] = ratio_rows(r.branch_i.witness_table);
  else
    bi["best_ratio"] = r.branch_i.best_ratio;
  bi["threshold"] = r.branch_i.threshold;
  bi["holds"] = r.branch_i.holds;
  j["branch_i"] = std::move(bi);

  ordered_json bii;
  bii["fourier_mass"] = r.branch_ii.fourier_mass;
  bii["threshold"] = r.branch_ii.threshold;
  bii["holds"] = r.branch_ii.holds;
  j["branch_ii"] = std::move(bii);

  ordered_json d;
  d["available"] = r.diagnostics.available;
  if (r.diagnostics.available) {
    d["modulus_reduced"] = r.diagnostics.modulus_reduced;
    d["modulus"] = r.diagnostics.modulus;
    d["scale_l1"] = r.diagnostics.scale_l1;
    d["scale_l2"] = r.diagnostics.scale_l2;
    d["exceptional_count"] = r.diagnostics.exceptional_count;
    if (r.pinned) {
      d["maximal_pairing"] = r.diagnostics.maximal_pairing;
      d["mollified_term"] = r.diagnostics.mollified_term;
    } else {
      d["main_term"] = r.diagnostics.main_term;
      d["error_pairing"] = r.diagnostics.error_pairing;
    }
  } else {
    d["scale_l1"] = r.diagnostics.scale_l1;
    d["scale_l2"] = r.diagnostics.scale_l2;
  }
  j["diagnostics"] = std::move(d);

  ordered_json w;
  w["lambda_min"] = r.window_lambda_min;
  w["lambda_max"] = r.window_lambda_max;
  w["ok"] = r.window_ok;
  j["window"] = std::move(w);
  return j.dump(indent);
}

}  // namespace latdist
