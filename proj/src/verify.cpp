#include "polydtn/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "polydtn/exact_response.hpp"
#include "polydtn/groves.hpp"
#include "polydtn/polygon_lattice.hpp"
#include "polydtn/sc_verify.hpp"
#include "polydtn/suites.hpp"

namespace polydtn {

namespace {

double cot(double x) { return std::cos(x) / std::sin(x); }

CheckResult closed_form() {
  CheckResult r{1, "closed-form entries for n = 3, 4", false, false, {}};
  const double e3 = std::abs(lambda_entry(3, 1, 0) + 1.0 / std::numbers::sqrt3);
  const double e41 = std::abs(lambda_entry(4, 1, 0) + 0.5);
  const double e42 = std::abs(lambda_entry(4, 2, 0) - (0.5 - 1.0 / std::numbers::sqrt2));
  r.details = Json{{"n3_lambda1", lambda_entry(3, 1, 0)},
                   {"n4_lambda1", lambda_entry(4, 1, 0)},
                   {"n4_lambda2", lambda_entry(4, 2, 0)},
                   {"max_error", std::max({e3, e41, e42})},
                   {"tolerance", 1e-12}};
  r.passed = std::max({e3, e41, e42}) <= 1e-12;
  return r;
}

CheckResult spectral() {
  CheckResult r{2, "W D W* / n equals the closed form, n = 2..256", false, false, {}};
  double worst = 0.0, worst_imag = 0.0;
  int worst_n = 0;
  for (int n = 2; n <= 256; ++n) {
    double imag = 0.0;
    const Eigen::MatrixXd rebuilt = SpectralDecomposition(n).reconstruct(&imag);
    const double err = (rebuilt - ResponseMatrix(n).dense()).cwiseAbs().maxCoeff();
    if (err > worst) {
      worst = err;
      worst_n = n;
    }
    worst_imag = std::max(worst_imag, imag);
  }
  r.details = Json{{"max_error", worst}, {"worst_n", worst_n}, {"max_imaginary", worst_imag}, {"tolerance", 1e-12}};
  r.passed = worst <= 1e-12;
  return r;
}

CheckResult cot_sums() {
  CheckResult r{3, "cotangent sum lemma, n <= 50, |m| <= 2n", false, false, {}};
  double worst_scaled = 0.0;
  std::size_t cases = 0;
  for (int n = 2; n <= 50; ++n) {
    for (long long m = -2LL * n; m <= 2LL * n; ++m) {
      for (int sign : {1, -1}) {
        worst_scaled = std::max(worst_scaled, cot_sum_identity_check(n, m, sign).abs_error() / n);
        ++cases;
      }
    }
  }
  r.details = Json{{"cases", cases}, {"max_error_over_n", worst_scaled}, {"tolerance_per_n", 1e-12}};
  r.passed = worst_scaled <= 1e-12;
  return r;
}

CheckResult linear_coefficient() {
  CheckResult r{4, "-sum_{j<k} Lambda_jk = cot(pi/2n), n = 2..100", false, false, {}};
  double worst = 0.0;
  for (int n = 2; n <= 100; ++n) {
    worst = std::max(worst, std::abs(negative_offdiagonal_sum(ResponseMatrix(n)) - cot(std::numbers::pi / (2.0 * n))));
  }
  r.details = Json{{"max_error", worst}, {"tolerance", 1e-10}};
  r.passed = worst <= 1e-10;
  return r;
}

CheckResult lattice(const VerifyOptions& options) {
  CheckResult r{5, "grid response matrices converge to the closed form", false, false, {}};
  const ConvergenceStudy square = convergence_study(2, {0.05}, 0.0, options.threads);
  const double square_offdiag = square.levels[0].generator[1];
  const bool square_ok = std::abs(square_offdiag + 1.0) <= 0.01;
  const std::vector<double> ladder{0.04, 0.02, 0.01, 0.005};
  bool ok = square_ok;
  Json studies = Json::array();
  for (int n : {3, 4}) {
    const ConvergenceStudy study = convergence_study(n, ladder, 0.0, options.threads);
    const bool finest_ok = study.levels.back().max_rel_error <= 0.05;
    ok = ok && study.strictly_decreasing() && finest_ok;
    studies.push_back(to_json(study));
  }
  r.details = Json{{"square_offdiagonal", square_offdiag},
                   {"square_tolerance", 0.01},
                   {"finest_rel_tolerance", 0.05},
                   {"studies", std::move(studies)}};
  r.passed = ok;
  return r;
}

CheckResult kirchhoff() {
  CheckResult r{6, "tree / two-tree-forest ratio equals -Lambda_12 exactly", false, false, {}};
  Json rows = Json::array();
  bool ok = true;
  std::size_t count = 0;
  for (const auto& net : two_node_suite()) {
    const KirchhoffCheck k = kirchhoff_ratio_check(net);
    ok = ok && k.exact_match() && net.edges().size() <= 12;
    ++count;
    rows.push_back(Json{{"network", net.name()},
                        {"trees", exact::to_string(k.trees)},
                        {"two_tree_forests", exact::to_string(k.two_tree_forests)},
                        {"ratio", exact::to_string(k.ratio)},
                        {"neg_lambda12", exact::to_string(k.neg_lambda12)},
                        {"exact_match", k.exact_match()}});
  }
  r.details = Json{{"networks", count}, {"results", std::move(rows)}};
  r.passed = ok && count >= 10;
  return r;
}

CheckResult three_node() {
  CheckResult r{7, "three-node partition ratios match the response-matrix polynomials", false, false, {}};
  Json rows = Json::array();
  bool ok = true;
  std::size_t count = 0;
  for (const auto& net : three_node_suite()) {
    const ThreeNodeReport rep = verify_three_node_formulas(net);
    ok = ok && rep.exact_match() && net.edges().size() <= 12;
    ++count;
    Json ratios = Json::object();
    for (const auto& pr : rep.ratios) ratios[pr.partition] = exact::to_string(pr.enumerated);
    rows.push_back(Json{{"network", net.name()},
                        {"ratios", std::move(ratios)},
                        {"exact_match", rep.exact_match()},
                        {"float_error", rep.max_abs_error()}});
  }
  r.details = Json{{"networks", count}, {"results", std::move(rows)}};
  r.passed = ok && count >= 10;
  return r;
}

CheckResult polynomials() {
  CheckResult r{8, "tree-count polynomials", false, false, {}};
  const TreeCountPolynomial p3 = p3_polynomial(lambda_entry(3, 1, 0));
  const TreeCountPolynomial p4 = p4_polynomial(lambda_entry(4, 1, 0), lambda_entry(4, 2, 0));
  double err = 0.0;
  const auto r3 = reference_polynomial(3).coefficients;
  const auto r4 = reference_polynomial(4).coefficients;
  for (std::size_t k = 0; k < 3; ++k) err = std::max(err, std::abs(p3.coefficients[k] - r3[k]));
  for (std::size_t k = 0; k < 4; ++k) err = std::max(err, std::abs(p4.coefficients[k] - r4[k]));
  bool refs_ok = true;
  double c1_err = 0.0;
  Json refs = Json::array();
  for (const auto& [n, p] : reference_polynomials()) {
    refs_ok = refs_ok && p.palindromic() && p.coefficients[0] == 1.0;
    c1_err = std::max(c1_err, std::abs(p.coefficients[1] - cot(std::numbers::pi / (2.0 * n))));
    refs.push_back(to_json(p));
  }
  r.details = Json{{"p3", to_json(p3)},
                   {"p4", to_json(p4)},
                   {"max_error_vs_table", err},
                   {"references", std::move(refs)},
                   {"max_linear_coefficient_error", c1_err},
                   {"tolerance", 1e-12}};
  r.passed = err <= 1e-12 && refs_ok && c1_err <= 1e-12;
  return r;
}

CheckResult sampler(const VerifyOptions& options) {
  CheckResult r{9, "grove sampler matches exact enumeration", false, false, {}};
  const std::uint64_t samples = options.quick ? 10000 : options.sampler_samples;
  const int seeds = options.quick ? 1 : 3;
  std::vector<ResistorNetwork> nets = two_node_suite();
  for (auto& n : three_node_suite()) nets.push_back(std::move(n));
  bool ok = true;
  double worst_z = 0.0;
  Json rows = Json::array();
  for (const auto& net : nets) {
    const GroveEnumeration groves = enumerate_groves(net);
    const GroveCountIdentities ids = grove_count_identities(net, groves);
    ok = ok && ids.holds();
    double net_z = 0.0;
    bool net_ok = ids.holds();
    for (int s = 0; s < seeds; ++s) {
      const SampleTally tally = sample_groves(net, samples, options.seed + static_cast<std::uint64_t>(s), options.threads);
      for (const auto& [key, count] : tally.partitions) {
        if (groves.count(key) == 0) net_ok = false;  // impossible partition
      }
      for (const auto& [key, weight] : groves.partitions) {
        const double p = exact::to_double(weight / groves.total);
        const auto it = tally.partitions.find(key);
        const double f = it == tally.partitions.end() ? 0.0 : static_cast<double>(it->second) / tally.samples;
        const double sigma = std::sqrt(p * (1 - p) / tally.samples);
        const double z = sigma > 0 ? std::abs(f - p) / sigma : (f == p ? 0.0 : INFINITY);
        net_z = std::max(net_z, z);
      }
    }
    net_ok = net_ok && net_z <= 4.0;
    ok = ok && net_ok;
    worst_z = std::max(worst_z, net_z);
    rows.push_back(Json{{"network", net.name()},
                        {"groves", exact::to_string(groves.total)},
                        {"singleton_groves", exact::to_string(ids.singleton_groves)},
                        {"contracted_trees", exact::to_string(ids.contracted_trees)},
                        {"size_weighted_groves", exact::to_string(ids.size_weighted_groves)},
                        {"rooted_trees", exact::to_string(ids.rooted_trees)},
                        {"max_z", net_z},
                        {"passed", net_ok}});
  }
  r.details = Json{{"samples_per_seed", samples},
                   {"seeds", seeds},
                   {"max_z", worst_z},
                   {"z_limit", 4.0},
                   {"results", std::move(rows)}};
  r.passed = ok;
  return r;
}

CheckResult monte_carlo(const VerifyOptions& options) {
  CheckResult r{10, "tree counts of sampled lattice groves, n = 3", false, false, {}};
  if (options.quick) {
    r.skipped = true;
    r.passed = true;
    r.details = Json{{"reason", "quick mode"}};
    return r;
  }
  const TreeCountEstimate est = tree_count_monte_carlo(3, options.mc_epsilon, options.mc_samples, options.seed, options.threads);
  bool ok = options.mc_samples >= 1000000;
  Json checks = Json::array();
  for (std::size_t t = 0; t < 3; ++t) {
    const double tol = std::max(0.05 * est.limit[t], 4.0 * est.ratio_sigma[t]);
    const double diff = std::abs(est.ratios[t] - est.limit[t]);
    const bool pass = diff <= tol;
    ok = ok && pass;
    checks.push_back(Json{{"trees", t + 1}, {"ratio", est.ratios[t]}, {"limit", est.limit[t]}, {"tolerance", tol}, {"passed", pass}});
  }
  // t <-> n + 1 - t
  const bool dual_ok = std::abs(est.duality_gap[0]) <= 4.0 * est.duality_sigma[0];
  ok = ok && dual_ok;
  r.details = Json{{"estimate", to_json(est)}, {"ratio_checks", std::move(checks)}, {"duality_passed", dual_ok}};
  r.passed = ok;
  return r;
}

CheckResult schwarz_christoffel() {
  CheckResult r{11, "octagon Schwarz-Christoffel ratio and Beta integrals", false, false, {}};
  const OctagonReport oct = octagon_offdiag_via_sc();
  const double pi = std::numbers::pi;
  const double b1 = singular_quadrature(0.0, 1.0, [](double) { return 1.0; }).value;
  const double b2 = singular_quadrature(-1.0, 1.0, [](double) { return 1.0; }).value;
  const double b3 = singular_quadrature(0.0, 1.0, [](double w) { return w; }).value;
  const double beta_err = std::max({std::abs(b1 - pi), std::abs(b2 - pi), std::abs(b3 - pi / 2)});
  const double target = 0.5 - 1.0 / std::numbers::sqrt2;
  const double err = std::abs(oct.lambda - target);
  r.details = Json{{"octagon", to_json(oct)},
                   {"target", target},
                   {"error", err},
                   {"beta_integral_error", beta_err},
                   {"tolerance", 1e-6},
                   {"beta_tolerance", 1e-10}};
  r.passed = err <= 1e-6 && beta_err <= 1e-10 && oct.phase_consistent;
  return r;
}

}  // namespace

std::vector<CheckResult> run_checks(const VerifyOptions& options,
                                    const std::function<void(const CheckResult&, double)>& on_done) {
  std::vector<std::function<CheckResult()>> checks{
      closed_form,
      spectral,
      cot_sums,
      linear_coefficient,
      [&] { return lattice(options); },
      kirchhoff,
      three_node,
      polynomials,
      [&] { return sampler(options); },
      [&] { return monte_carlo(options); },
      schwarz_christoffel,
  };
  std::vector<CheckResult> out;
  for (auto& check : checks) {
    const auto t0 = std::chrono::steady_clock::now();
    out.push_back(check());
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_done) on_done(out.back(), seconds);
  }
  return out;
}

Json checks_report(const std::vector<CheckResult>& results, const VerifyOptions& options) {
  Json checks = Json::array();
  for (const auto& r : results) {
    checks.push_back(Json{{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"skipped", r.skipped}, {"details", r.details}});
  }
  return Json{{"quick", options.quick},
              {"seed", options.seed},
              {"passed", all_passed(results)},
              {"checks", std::move(checks)}};
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace polydtn
