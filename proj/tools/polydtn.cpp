// polydtn: command-line front end.
//
// Exit codes: 0 ok, 1 a verification failed, 2 usage or input error,
// 3 numerical failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polydtn/error.hpp"
#include "polydtn/exact_response.hpp"
#include "polydtn/groves.hpp"
#include "polydtn/parallel.hpp"
#include "polydtn/polygon_lattice.hpp"
#include "polydtn/sc_verify.hpp"
#include "polydtn/serialize.hpp"
#include "polydtn/simd/kernels.hpp"
#include "polydtn/verify.hpp"

using namespace polydtn;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

void emit(const Json& j, const std::string& path) { emit(j.dump(2) + "\n", path); }

std::uint64_t parse_count(const std::string& text, const char* what) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(value >= 1) || value != std::floor(value) || value > 1e15) {
    throw InvalidInput(std::string(what) + " must be a positive integer, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(value);
}

std::vector<double> parse_eps_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || !(v > 0)) throw InvalidInput("bad grid spacing '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidInput("--eps needs at least one value");
  return out;
}

SolveOptions parse_solver(const std::string& name) {
  SolveOptions o;
  if (name == "direct") {
    o.kind = SolverKind::Direct;
  } else if (name == "cg") {
    o.kind = SolverKind::ConjugateGradient;
  } else {
    throw InvalidInput("unknown solver '" + name + "' (direct|cg)");
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Response matrices of regular polygons with alternating wired and free sides"};
  app.require_subcommand(1);
  std::size_t threads = default_thread_count();
  app.add_option("--threads", threads, "Worker threads (default: POLYDTN_THREADS or hardware)")
      ->check(CLI::PositiveNumber);

  // exact
  auto* exact_cmd = app.add_subcommand("exact", "Closed-form response matrix and its eigenvalues");
  int exact_n = 0;
  std::string exact_format = "json", exact_out;
  exact_cmd->add_option("--n", exact_n, "Number of nodes (polygon has 2n sides)")->required();
  exact_cmd->add_option("--format", exact_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  exact_cmd->add_option("--out", exact_out, "Output file (default stdout)");

  // lattice
  auto* lattice_cmd = app.add_subcommand("lattice", "Grid convergence study against the closed form");
  int lattice_n = 0;
  std::string eps_text, lattice_out, lattice_summary, lattice_format = "csv", solver = "direct";
  double rotation = 0.0;
  lattice_cmd->add_option("--n", lattice_n, "Number of nodes")->required();
  lattice_cmd->add_option("--eps", eps_text, "Comma-separated, strictly decreasing grid spacings")->required();
  lattice_cmd->add_option("--rotation", rotation, "Polygon rotation against the grid, radians");
  lattice_cmd->add_option("--out", lattice_out, "Output file (default stdout)");
  lattice_cmd->add_option("--format", lattice_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  lattice_cmd->add_option("--summary", lattice_summary, "Also write the JSON summary to this file");
  lattice_cmd->add_option("--solver", solver, "direct|cg")->check(CLI::IsMember({"direct", "cg"}));

  // groves
  auto* groves_cmd = app.add_subcommand("groves", "Grove enumeration and sampling");
  groves_cmd->require_subcommand(1);
  auto* enumerate_cmd = groves_cmd->add_subcommand("enumerate", "Exact partition counts of a small network");
  std::string net_path, groves_out;
  enumerate_cmd->add_option("--net", net_path, "Network JSON file")->required()->check(CLI::ExistingFile);
  enumerate_cmd->add_option("--out", groves_out, "Output file (default stdout)");
  auto* sample_cmd = groves_cmd->add_subcommand("sample", "Sample groves on a polygon grid or a network file");
  int sample_n = 0;
  double sample_eps = 0.05;
  std::string samples_text, sample_net;
  std::uint64_t seed = 0;
  sample_cmd->add_option("--n", sample_n, "Number of nodes of the polygon grid");
  sample_cmd->add_option("--eps", sample_eps, "Grid spacing");
  sample_cmd->add_option("--rotation", rotation, "Polygon rotation against the grid, radians");
  sample_cmd->add_option("--net", sample_net, "Network JSON file instead of a polygon grid")->check(CLI::ExistingFile);
  sample_cmd->add_option("--samples", samples_text, "Number of groves (1e6 notation accepted)")->required();
  sample_cmd->add_option("--seed", seed, "Random seed")->required();
  sample_cmd->add_option("--out", groves_out, "Output file (default stdout)");

  // sc
  auto* sc_cmd = app.add_subcommand("sc", "Schwarz-Christoffel checks");
  sc_cmd->require_subcommand(1);
  bool sc_json = false;
  int slit_n = 0;
  auto* octagon_cmd = sc_cmd->add_subcommand("octagon", "Octagon integrals for Lambda_{j,j+2}");
  octagon_cmd->add_flag("--json", sc_json, "JSON report");
  auto* slits_cmd = sc_cmd->add_subcommand("slits", "Slit positions against cotangents of evenly spaced angles");
  slits_cmd->add_option("--n", slit_n, "Number of nodes")->required();
  slits_cmd->add_flag("--json", sc_json, "JSON report");

  // verify-paper
  auto* verify_cmd = app.add_subcommand("verify-paper", "Run every check; exit 1 if any fails");
  VerifyOptions vopts;
  std::string verify_out;
  verify_cmd->add_flag("--quick", vopts.quick, "Skip the lattice Monte Carlo and shrink the sampler check");
  verify_cmd->add_option("--seed", vopts.seed, "Seed for the stochastic checks");
  verify_cmd->add_option("--out", verify_out, "Report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*exact_cmd) {
      const ResponseMatrix m(exact_n);
      if (exact_format == "csv") {
        emit(to_csv(m.dense()), exact_out);
      } else {
        Json j = to_json(m);
        j["eigenvalues"] = to_json(SpectralDecomposition(exact_n))["eigenvalues"];
        emit(j, exact_out);
      }
      return kOk;
    }

    if (*lattice_cmd) {
      const auto study = convergence_study(lattice_n, parse_eps_list(eps_text), rotation, threads, parse_solver(solver));
      if (lattice_format == "csv") {
        emit(study_csv(study), lattice_out);
      } else {
        emit(to_json(study), lattice_out);
      }
      if (!lattice_summary.empty()) emit(to_json(study), lattice_summary);
      return kOk;
    }

    if (*enumerate_cmd) {
      const ResistorNetwork net = load_network(net_path);
      const GroveEnumeration groves = enumerate_groves(net);
      Json j = to_json(groves);
      const GroveCountIdentities ids = grove_count_identities(net, groves);
      j["singleton_groves"] = exact::to_string(ids.singleton_groves);
      j["contracted_trees"] = exact::to_string(ids.contracted_trees);
      j["size_weighted_groves"] = exact::to_string(ids.size_weighted_groves);
      j["rooted_trees"] = exact::to_string(ids.rooted_trees);
      bool ok = ids.holds();
      if (net.node_count() == 2) {
        const TwoNodeReport rep = verify_two_node_formula(net);
        j["ratio_12"] = exact::to_string(rep.ratio);
        j["neg_lambda12"] = exact::to_string(rep.neg_lambda12);
        j["two_node_formula"] = rep.exact_match();
        ok = ok && rep.exact_match();
      } else if (net.node_count() == 3) {
        const ThreeNodeReport rep = verify_three_node_formulas(net);
        Json ratios = Json::object();
        for (const auto& r : rep.ratios) {
          ratios[r.partition] = Json{{"enumerated", exact::to_string(r.enumerated)}, {"formula", exact::to_string(r.formula)}};
        }
        j["ratios"] = std::move(ratios);
        j["three_node_formulas"] = rep.exact_match();
        ok = ok && rep.exact_match();
      }
      emit(j, groves_out);
      return ok ? kOk : kVerifyFailed;
    }

    if (*sample_cmd) {
      const std::uint64_t samples = parse_count(samples_text, "--samples");
      if (!sample_net.empty()) {
        const ResistorNetwork net = load_network(sample_net);
        emit(to_json(sample_groves(net, samples, seed, threads)), groves_out);
      } else {
        if (sample_n < 2) throw InvalidInput("--n (>= 2) or --net is required");
        emit(to_json(tree_count_monte_carlo(sample_n, sample_eps, samples, seed, threads, rotation)), groves_out);
      }
      return kOk;
    }

    if (*octagon_cmd) {
      const OctagonReport r = octagon_offdiag_via_sc();
      if (sc_json) {
        emit(to_json(r), "");
      } else {
        std::cout << "b^2          " << format_double(r.b_squared) << "\n"
                  << "numerator    " << format_double(r.numerator) << "  (x4, x5)\n"
                  << "denominator  " << format_double(r.denominator) << "  (x7, x8)\n"
                  << "ratio        " << format_double(r.lambda) << "\n"
                  << "closed form  " << format_double(r.exact) << "\n"
                  << "difference   " << format_double(r.difference) << "\n";
      }
      return r.difference <= 1e-6 && r.phase_consistent ? kOk : kVerifyFailed;
    }

    if (*slits_cmd) {
      const SlitReport r = slit_position_check(slit_n);
      if (sc_json) {
        emit(to_json(r), "");
      } else {
        std::cout << "endpoint,cotangent\n";
        for (std::size_t k = 0; k < r.endpoints.size(); ++k) {
          std::cout << format_double(r.endpoints[k]) << ',' << format_double(r.cotangents[k]) << '\n';
        }
        std::cerr << "affine fit: scale " << format_double(r.scale) << ", offset " << format_double(r.offset)
                  << ", max residual " << format_double(r.max_residual) << "\n";
      }
      return r.consistent ? kOk : kVerifyFailed;
    }

    if (*verify_cmd) {
      vopts.threads = threads;
      std::cerr << "kernels: " << simd::isa_name(simd::active().isa) << ", threads: " << threads << "\n";
      const auto t0 = std::chrono::steady_clock::now();
      const auto results = run_checks(vopts, [](const CheckResult& r, double seconds) {
        char line[160];
        std::snprintf(line, sizeof line, "[%2d] %-4s %-70s %8.2fs\n", r.id,
                      r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL"), r.title.c_str(), seconds);
        std::cerr << line;
      });
      const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::cerr << "total " << format_double(std::round(total * 100) / 100) << "s\n";
      emit(checks_report(results, vopts), verify_out);
      return all_passed(results) ? kOk : kVerifyFailed;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}
