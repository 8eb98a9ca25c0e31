// Command-line front door: experiment drivers, file I/O, and report
// emission for the library's operations.
//
// Subcommands: enumerate (sphere-count tables, CSV), expsum (exponential
// sum bound sampling, JSON), verify (identity / unpinned / pinned /
// dichotomy / dichotomy-pinned reports, JSON), increment (density
// increment trace, JSON). Every JSON report embeds the resolved
// configuration, a timestamp line, and the library report; outputs are
// byte-identical across reruns and thread counts apart from the
// timestamp. Exit codes: 0 success, 1 internal error, 2 parameter or
// parse error.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "latdist/arithmetic.hpp"
#include "latdist/density.hpp"
#include "latdist/lattice.hpp"
#include "latdist/parallel.hpp"
#include "latdist/point_set.hpp"
#include "latdist/report_json.hpp"
#include "latdist/types.hpp"
#include "latdist/verify.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open output file: " + path);
  os << content;
}

// Wraps a library report in {config, timestamp, report}. The timestamp
// occupies its own line so byte comparisons can exclude it.
std::string wrap_report(const ordered_json& config, const std::string& report) {
  ordered_json j;
  j["config"] = config;
  j["timestamp"] = now_iso8601();
  j["report"] = ordered_json::parse(report);
  return j.dump(2) + "\n";
}

struct SetSource {
  std::string in_path;
  std::string generate;
  int dim = 0;
  latdist::Coord side = 0;
  std::string boundary = "periodic";
};

latdist::PointSet load_set(const SetSource& src) {
  const bool has_in = !src.in_path.empty();
  const bool has_gen = !src.generate.empty();
  if (has_in == has_gen)
    throw std::invalid_argument("exactly one of --in and --generate is required");
  if (has_in) {
    std::ifstream is(src.in_path);
    if (!is) throw std::invalid_argument("cannot open input file: " + src.in_path);
    return latdist::load_point_set(is);
  }
  if (src.dim < 1 || src.side < 1)
    throw std::invalid_argument("--generate requires --dim >= 1 and --side >= 1");
  const latdist::GeneratorSpec spec = latdist::parse_generator_spec(src.generate);
  return latdist::generate_set(spec, src.dim, src.side,
                               latdist::boundary_mode_from_string(src.boundary));
}

void echo_set_source(ordered_json& cfg, const SetSource& src,
                     const latdist::PointSet& A) {
  if (!src.in_path.empty()) cfg["in"] = src.in_path;
  if (!src.generate.empty()) cfg["generate"] = src.generate;
  cfg["dim"] = A.dim;
  cfg["side"] = A.side;
  cfg["boundary"] = latdist::to_string(A.mode);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice distance-set verification toolkit"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "Worker thread count (never changes output)")
      ->check(CLI::Range(1, 64));

  // --- enumerate ---
  auto* cmd_enum = app.add_subcommand("enumerate", "Sphere point-count table");
  int en_dim = 0;
  std::int64_t en_lambda_max = 0;
  std::string en_out, en_format = "csv";
  cmd_enum->add_option("--dim", en_dim, "Ambient dimension")
      ->required()
      ->check(CLI::Range(1, 8));
  cmd_enum->add_option("--lambda-max", en_lambda_max, "Largest squared radius")
      ->required()
      ->check(CLI::Range(std::int64_t{0}, std::int64_t{10'000'000}));
  cmd_enum->add_option("--out", en_out, "Output path (stdout if absent)");
  cmd_enum->add_option("--format", en_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // --- expsum ---
  auto* cmd_exp = app.add_subcommand("expsum", "Exponential sum bound sampling");
  int ex_dim = 0;
  std::int64_t ex_lambda = 1, ex_qcap = 1, ex_samples = 1000;
  double ex_eta = 0.5, ex_ckeyu = 1.0;
  std::uint64_t ex_seed = 0;
  bool ex_inside = false;
  std::string ex_out;
  cmd_exp->add_option("--dim", ex_dim, "Ambient dimension")
      ->required()
      ->check(CLI::Range(1, 8));
  cmd_exp->add_option("--lambda", ex_lambda, "Squared radius")->required();
  cmd_exp->add_option("--eta", ex_eta, "Uniformity parameter")
      ->check(CLI::Range(1e-6, 1.0));
  cmd_exp->add_option("--c-keyu", ex_ckeyu, "Constant in the modulus threshold");
  cmd_exp->add_option("--q-cap", ex_qcap, "Largest arc denominator")->required();
  cmd_exp->add_option("--n-samples", ex_samples, "Frequency samples");
  cmd_exp->add_option("--seed", ex_seed, "Sampling seed");
  cmd_exp->add_flag("--inside-arcs", ex_inside, "Sample inside the arcs instead");
  cmd_exp->add_option("--out", ex_out, "Output path (stdout if absent)");

  // --- verify ---
  auto* cmd_ver = app.add_subcommand("verify", "Theorem-facing reports");
  std::string ve_mode;
  SetSource ve_src;
  std::int64_t ve_lambda = 1, ve_lambda0 = 1, ve_lambda1 = 1, ve_q = 1;
  double ve_eps = 0.1, ve_eta = 0.5, ve_cqeta = 1.0;
  std::string ve_out;
  cmd_ver
      ->add_option("mode", ve_mode,
                   "identity | unpinned | pinned | dichotomy | dichotomy-pinned")
      ->required()
      ->check(CLI::IsMember(
          {"identity", "unpinned", "pinned", "dichotomy", "dichotomy-pinned"}));
  cmd_ver->add_option("--in", ve_src.in_path, "Point-set file");
  cmd_ver->add_option("--generate", ve_src.generate, "Inline generator spec");
  cmd_ver->add_option("--dim", ve_src.dim, "Dimension (with --generate)")
      ->check(CLI::Range(1, 8));
  cmd_ver->add_option("--side", ve_src.side, "Box side (with --generate)");
  cmd_ver->add_option("--boundary", ve_src.boundary, "periodic or truncate")
      ->check(CLI::IsMember({"periodic", "truncate"}));
  cmd_ver->add_option("--lambda", ve_lambda, "Squared radius (single-radius modes)");
  cmd_ver->add_option("--lambda0", ve_lambda0, "Window start (pinned modes)");
  cmd_ver->add_option("--lambda1", ve_lambda1, "Window end (pinned modes)");
  cmd_ver->add_option("--epsilon", ve_eps, "Density slack");
  cmd_ver->add_option("--eta", ve_eta, "Uniformity parameter")
      ->check(CLI::Range(1e-6, 1.0));
  cmd_ver->add_option("--c-qeta", ve_cqeta, "Constant in the modulus threshold");
  cmd_ver->add_option("--q", ve_q, "Dilation of the search sphere")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1'000'000}));
  cmd_ver->add_option("--out", ve_out, "Output path (stdout if absent)");

  // --- increment ---
  auto* cmd_inc = app.add_subcommand("increment", "Density increment trace");
  SetSource in_src;
  double in_eta = 0.5, in_cqeta = 1.0;
  std::int64_t in_max_steps = 100;
  std::string in_out;
  cmd_inc->add_option("--in", in_src.in_path, "Point-set file");
  cmd_inc->add_option("--generate", in_src.generate, "Inline generator spec");
  cmd_inc->add_option("--dim", in_src.dim, "Dimension (with --generate)")
      ->check(CLI::Range(1, 8));
  cmd_inc->add_option("--side", in_src.side, "Box side (with --generate)");
  cmd_inc->add_option("--boundary", in_src.boundary, "periodic or truncate")
      ->check(CLI::IsMember({"periodic", "truncate"}));
  cmd_inc->add_option("--eta", in_eta, "Uniformity parameter")
      ->check(CLI::Range(1e-6, 1.0));
  cmd_inc->add_option("--c-qeta", in_cqeta, "Constant in the modulus threshold");
  cmd_inc->add_option("--max-steps", in_max_steps, "Increment budget")
      ->check(CLI::Range(std::int64_t{0}, std::int64_t{1'000'000}));
  cmd_inc->add_option("--out", in_out, "Output path (stdout if absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    latdist::set_thread_count(threads);

    if (*cmd_enum) {
      const auto counts = latdist::representation_counts_upto(en_dim, en_lambda_max);
      if (en_format == "csv") {
        std::ostringstream os;
        os << "lambda,count\n";
        for (std::int64_t lam = 0; lam <= en_lambda_max; ++lam)
          os << lam << "," << counts[static_cast<std::size_t>(lam)] << "\n";
        write_output(en_out, os.str());
      } else {
        ordered_json cfg;
        cfg["command"] = "enumerate";
        cfg["dim"] = en_dim;
        cfg["lambda_max"] = en_lambda_max;
        ordered_json rows = ordered_json::array();
        for (std::int64_t lam = 0; lam <= en_lambda_max; ++lam) {
          ordered_json row;
          row["lambda"] = lam;
          row["count"] = counts[static_cast<std::size_t>(lam)];
          rows.push_back(std::move(row));
        }
        ordered_json rep;
        rep["library_version"] = latdist::version_string();
        rep["kind"] = "sphere_counts";
        rep["rows"] = std::move(rows);
        write_output(en_out, wrap_report(cfg, rep.dump()));
      }
      return 0;
    }

    if (*cmd_exp) {
      latdist::KeyUOptions opt;
      opt.c_qeta = ex_ckeyu;
      opt.inside_arcs = ex_inside;
      const latdist::KeyUReport rep = latdist::verify_keyU(
          ex_dim, ex_eta, ex_lambda, ex_qcap, ex_samples, ex_seed, opt);
      ordered_json cfg;
      cfg["command"] = "expsum";
      cfg["dim"] = ex_dim;
      cfg["lambda"] = ex_lambda;
      cfg["eta"] = ex_eta;
      cfg["c_keyu"] = ex_ckeyu;
      cfg["q_cap"] = ex_qcap;
      cfg["n_samples"] = ex_samples;
      cfg["seed"] = ex_seed;
      cfg["inside_arcs"] = ex_inside;
      write_output(ex_out, wrap_report(cfg, latdist::to_json(rep)));
      return 0;
    }

    if (*cmd_ver) {
      const latdist::PointSet A = load_set(ve_src);
      ordered_json cfg;
      cfg["command"] = "verify";
      cfg["mode"] = ve_mode;
      echo_set_source(cfg, ve_src, A);
      std::string report;
      if (ve_mode == "identity") {
        cfg["lambda"] = ve_lambda;
        report = latdist::to_json(latdist::count_identity_check(A, ve_lambda));
      } else if (ve_mode == "unpinned") {
        cfg["lambda"] = ve_lambda;
        cfg["epsilon"] = ve_eps;
        cfg["q"] = ve_q;
        report = latdist::to_json(latdist::unpinned_check(A, ve_lambda, ve_eps, ve_q));
      } else if (ve_mode == "pinned") {
        cfg["lambda0"] = ve_lambda0;
        cfg["lambda1"] = ve_lambda1;
        cfg["epsilon"] = ve_eps;
        cfg["q"] = ve_q;
        report = latdist::to_json(
            latdist::pinned_check(A, ve_lambda0, ve_lambda1, ve_eps, ve_q));
      } else {
        latdist::DichotomyOptions opt;
        opt.q_scale = ve_q;
        cfg["epsilon"] = ve_eps;
        cfg["eta"] = ve_eta;
        cfg["c_qeta"] = ve_cqeta;
        cfg["q"] = ve_q;
        if (ve_mode == "dichotomy") {
          cfg["lambda"] = ve_lambda;
          report = latdist::to_json(
              latdist::dichotomy_report(A, ve_lambda, ve_eps, ve_eta, ve_cqeta, opt));
        } else {
          cfg["lambda0"] = ve_lambda0;
          cfg["lambda1"] = ve_lambda1;
          report = latdist::to_json(latdist::dichotomy_report_pinned(
              A, ve_lambda0, ve_lambda1, ve_eps, ve_eta, ve_cqeta, opt));
        }
      }
      write_output(ve_out, wrap_report(cfg, report));
      return 0;
    }

    if (*cmd_inc) {
      const latdist::PointSet A = load_set(in_src);
      ordered_json cfg;
      cfg["command"] = "increment";
      echo_set_source(cfg, in_src, A);
      cfg["eta"] = in_eta;
      cfg["c_qeta"] = in_cqeta;
      cfg["max_steps"] = in_max_steps;
      const latdist::IncrementTrace trace =
          latdist::density_increment(A, in_eta, in_cqeta, in_max_steps);
      write_output(in_out, wrap_report(cfg, latdist::to_json(trace)));
      return 0;
    }
  } catch (const latdist::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
