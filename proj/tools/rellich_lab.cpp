// Command-line front end: ground states, closed-form checks, lambda sweeps,
// cone inequalities. Exit codes: 0 success, 1 validation error, 2 numerical
// failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rellich/rellich.hpp"

namespace {

using nlohmann::json;

struct OutputSink {
  std::string path;  // empty -> stdout
  std::ofstream file;
  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) file.open(path, std::ios::binary);
    return file;
  }
};

int exit_code_for(const rellich::error& e) {
  return rellich::is_validation_error(e.code()) ? 1 : 2;
}

void report(const rellich::error& e) {
  std::cerr << e.what() << "\n";
}

struct SolveArgs {
  int N = 0;
  double q = 3.0;
  double lambda = 0.0;
  std::optional<double> alpha;
  std::optional<double> A_raw, B_raw;
  double L = 0.0;  // 0 -> default
  int M = rellich::default_grid_points;
  std::string seed_kind = "gaussian";
  std::uint64_t seed = 0;
  bool enforce_even = false;
  bool with_profile = false;
  std::string format = "json";
  std::string out;
};

rellich::SolveOptions solve_options(const SolveArgs& a) {
  rellich::SolveOptions o;
  o.seed = a.seed;
  o.enforce_even = a.enforce_even;
  if (a.seed_kind == "closed-form")
    o.init = rellich::SeedKind::ClosedFormSeed;
  else if (a.seed_kind == "gaussian")
    o.init = rellich::SeedKind::GaussianSeed;
  else if (a.seed_kind == "random")
    o.init = rellich::SeedKind::RandomPerturbed;
  else
    rellich::fail(rellich::errc::parameter_out_of_range,
                  "ParameterOutOfRange: unknown seed kind " + a.seed_kind);
  return o;
}

// Resolve (A, B) for a solve: raw (A, B) wins over (N, lambda) derivation,
// with a warning; --alpha switches to the weighted problem.
rellich::ODECoefficients resolve_coeffs(const SolveArgs& a, json& config,
                                        std::vector<std::string>& warnings) {
  config["q"] = a.q;
  if (a.A_raw || a.B_raw) {
    if (!(a.A_raw && a.B_raw))
      rellich::fail(rellich::errc::parameter_out_of_range,
                    "raw coefficients need both --A and --B");
    if (a.N != 0 || a.alpha)
      warnings.push_back(
          "raw (A, B) given: ignoring --N/--lambda/--alpha derivation");
    config["A"] = *a.A_raw;
    config["B"] = *a.B_raw;
    return rellich::char_roots(*a.A_raw, *a.B_raw, a.q);
  }
  if (a.N == 0)
    rellich::fail(rellich::errc::parameter_out_of_range,
                  "need either --N or raw --A/--B");
  if (a.alpha) {
    const auto wp = rellich::weighted_params(a.N, *a.alpha, a.q);
    config["N"] = a.N;
    config["alpha"] = *a.alpha;
    return rellich::char_roots(wp.gamma_bar_N_alpha, wp.gamma_N_alpha, a.q);
  }
  const auto p = rellich::derive_problem(a.N, a.q, a.lambda);
  config["N"] = a.N;
  config["lambda"] = a.lambda;
  const auto c = rellich::char_roots(p.A, std::sqrt(p.B2), a.q);
  if (c.complex_regime)
    warnings.push_back(
        "A < B: positivity of the ground state is not guaranteed");
  return c;
}

int cmd_constants(int N, double q, double lambda, const std::string& out) {
  const auto p = rellich::derive_problem(N, q, lambda);
  json payload = rellich::to_json(p);
  payload["special_lambda"] = rellich::special_lambda(N, q);
  try {
    const auto th = rellich::breaking_thresholds(N, q);
    payload["lambda_basic"] = th.lambda_basic;
    payload["q_min_improved"] = th.q_min_improved;
    if (th.lambda_improved) payload["lambda_improved"] = *th.lambda_improved;
  } catch (const rellich::error&) {
    // q > 2** : thresholds undefined, omit
  }
  std::vector<std::string> warnings;
  json config{{"N", N}, {"q", q}, {"lambda", lambda}};
  OutputSink sink{out};
  sink.stream() << rellich::make_envelope(config, payload, warnings).dump(2)
                << "\n";
  return 0;
}

int cmd_solve(const SolveArgs& a) {
  json config;
  std::vector<std::string> warnings;
  const auto c = resolve_coeffs(a, config, warnings);
  const auto opts = solve_options(a);
  config["seed_kind"] = a.seed_kind;
  config["seed"] = a.seed;
  config["enforce_even"] = a.enforce_even;
  const double L = a.L > 0 ? a.L : rellich::default_half_width(c);
  config["L"] = L;
  config["M"] = a.M;
  const auto grid = rellich::make_grid(L, a.M);
  auto [gs, rep] = rellich::minimize_quotient(c, grid, opts);

  OutputSink sink{a.out};
  if (a.format == "csv") {
    rellich::write_profile_csv(sink.stream(), gs.profile);
    return 0;
  }
  json payload = rellich::to_json(gs, a.with_profile);
  payload["iterations"] = rep.iterations;
  payload["final_grad_norm"] = rep.final_grad_norm;
  sink.stream() << rellich::make_envelope(config, payload, warnings).dump(2)
                << "\n";
  return 0;
}

int cmd_verify_explicit(const std::string& out) {
  // closed-form residual suite on the A/B = (q^2+4)/(4q) curve
  json rows = json::array();
  for (auto [A, q] : std::vector<std::pair<double, double>>{
           {13, 3}, {6, 2.5}, {5, 4}, {9, 3.5}}) {
    const auto pr = rellich::cosh_params(A, q);
    const auto c = rellich::char_roots(A, pr.B, q);
    double prev = 0.0;
    json refine = json::array();
    for (int M : {2049, 4097, 8193}) {
      const auto g = rellich::make_grid(8.0 / pr.nu, M);
      auto [params, w] = rellich::explicit_profile(A, q, g);
      const double r = rellich::residual(c, q, w);
      refine.push_back({{"M", M}, {"residual", r}});
      prev = r;
    }
    rows.push_back({{"A", A},
                    {"B", pr.B},
                    {"q", q},
                    {"nu", pr.nu},
                    {"C", pr.C},
                    {"residual_finest", prev},
                    {"refinement", refine}});
  }
  OutputSink sink{out};
  sink.stream() << rellich::make_envelope(json::object(), rows, {}).dump(2)
                << "\n";
  return 0;
}

int cmd_sweep(int N, double q, double lo, double hi, int steps,
              const std::string& format, const std::string& out) {
  const auto rows = rellich::sweep_lambda(N, q, lo, hi, steps);
  OutputSink sink{out};
  if (format == "csv")
    rellich::write_sweep_csv(sink.stream(), rows);
  else if (format == "jsonl")
    rellich::write_sweep_jsonl(sink.stream(), rows);
  else {
    json payload = json::array();
    for (const auto& r : rows) payload.push_back(rellich::to_json(r));
    json config{{"N", N},           {"q", q},        {"lambda_min", lo},
                {"lambda_max", hi}, {"steps", steps}};
    sink.stream() << rellich::make_envelope(config, payload, {}).dump(2)
                  << "\n";
  }
  for (const auto& r : rows)
    if (!r.ok) return 2;
  return 0;
}

int cmd_cone(int N, double lambda_sigma, const std::string& label, double t,
             const std::string& format, const std::string& out) {
  rellich::ConeSpec spec;
  if (label == "full")
    spec = rellich::full_sphere(N);
  else if (label == "half")
    spec = rellich::half_sphere(N);
  else
    spec = rellich::custom_cone(N, lambda_sigma);
  const auto cc = rellich::cone_constants(spec);

  std::vector<double> Rs;
  for (int k = 0; k <= 10; ++k) Rs.push_back(std::pow(2.0, k));
  const auto tails = rellich::counterexample_check(N, t, Rs);

  OutputSink sink{out};
  if (format == "csv") {
    rellich::write_tail_csv(sink.stream(), tails);
    return 0;
  }
  json tail_rows = json::array();
  for (const auto& r : tails)
    tail_rows.push_back({{"R", r.R},
                         {"grad_integral", r.grad_integral},
                         {"bilap_integral", r.bilap_integral}});
  json payload{{"hardy", cc.hardy},
               {"rellich", cc.rellich},
               {"counterexample", {{"t", t}, {"partial_integrals", tail_rows}}}};
  json config{{"N", N}, {"lambda_sigma", spec.lambda_sigma}, {"label", label},
              {"t", t}};
  sink.stream() << rellich::make_envelope(config, payload, {}).dump(2) << "\n";
  return 0;
}

int cmd_selftest() {
  int failures = 0;
  auto check = [&](const char* name, bool ok) {
    std::printf("%-52s %s\n", name, ok ? "ok" : "FAIL");
    if (!ok) failures++;
  };

  const auto c = rellich::char_roots(13.0, 12.0, 3.0);
  const auto g = rellich::make_grid(10.0, 2049);
  auto [gs, rep] = rellich::minimize_quotient(c, g);
  auto [pr, ref] = rellich::explicit_profile(13.0, 3.0, g);
  check("gradient flow converges", rep.converged);
  check("closed-form agreement < 1e-4",
        rellich::align_distance(ref, gs.profile) < 1e-4);
  check("residual < 1e-6", gs.residual_linf < 1e-6);
  check("Hamiltonian deviation < 1e-4", gs.hamiltonian_dev < 1e-4);
  check("shape flags", gs.is_even && gs.is_positive && gs.is_monotone_halfline);
  check("sup bound", gs.sup_bound_ok);

  const auto sh = rellich::shoot(c, 3.0, 14.0);
  check("shoot agrees with closed form < 1e-4",
        rellich::align_distance(ref, sh) < 1e-4);

  const auto p5 = rellich::derive_problem(5, 3.0, 0.0);
  const auto g5 = rellich::default_grid(
      rellich::char_roots(p5.A, std::sqrt(p5.B2), 3.0), 2049);
  auto [gs5, rep5] = rellich::minimize_quotient(
      rellich::char_roots(p5.A, std::sqrt(p5.B2), 3.0), g5);
  const auto verdict = rellich::second_variation_certificate(gs5, p5);
  check("X > gamma_N", verdict.X > p5.gamma_N);
  check("lambda=0 certificate false", !verdict.certified_breaking);

  check("special_lambda(N, 2**) = 0",
        std::abs(rellich::special_lambda(5, p5.two_star_star)) < 1e-12);

  const auto cc = rellich::cone_constants(rellich::full_sphere(5));
  check("cone rellich = gamma_5^2",
        std::abs(cc.rellich - p5.gamma_N * p5.gamma_N) < 1e-14);

  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Emden-Fowler ground states and Rellich-type inequalities"};
  app.require_subcommand(1);

  // constants
  int cN = 5;
  double cq = 3.0, clambda = 0.0;
  std::string cout_path;
  auto* constants = app.add_subcommand("constants", "derived parameter dump");
  constants->add_option("--N", cN, "space dimension")->required();
  constants->add_option("--q", cq, "nonlinearity exponent");
  constants->add_option("--lambda", clambda, "Hardy-term coefficient");
  constants->add_option("--out", cout_path, "output path (default stdout)");

  // solve
  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "compute a ground state");
  solve->add_option("--N", sa.N, "space dimension");
  solve->add_option("--q", sa.q, "nonlinearity exponent");
  solve->add_option("--lambda", sa.lambda, "Hardy-term coefficient");
  solve->add_option("--alpha", sa.alpha, "weighted-problem exponent");
  solve->add_option("--A", sa.A_raw, "raw second-order coefficient");
  solve->add_option("--B", sa.B_raw, "raw zeroth-order coefficient root");
  solve->add_option("--L", sa.L, "grid half-width (default by decay rate)");
  solve->add_option("--M", sa.M, "interior grid points (odd)");
  solve->add_option("--seed-kind", sa.seed_kind,
                    "closed-form | gaussian | random");
  solve->add_option("--seed", sa.seed, "rng seed for random seeds");
  solve->add_flag("--enforce-even", sa.enforce_even, "restrict to even profiles");
  solve->add_flag("--with-profile", sa.with_profile, "embed profile in JSON");
  solve->add_option("--format", sa.format, "json | csv");
  solve->add_option("--out", sa.out, "output path (default stdout)");

  // verify-explicit
  std::string ve_out;
  auto* ve = app.add_subcommand("verify-explicit", "closed-form residual suite");
  ve->add_option("--out", ve_out, "output path (default stdout)");

  // sweep
  int swN = 5, sw_steps = 9;
  double swq = 3.0, sw_lo = -64.0, sw_hi = 0.0;
  std::string sw_format = "csv", sw_out;
  auto* sweep = app.add_subcommand("sweep", "lambda sweep with certificates");
  sweep->add_option("--N", swN, "space dimension")->required();
  sweep->add_option("--q", swq, "nonlinearity exponent");
  sweep->add_option("--lambda-min", sw_lo, "first lambda")->required();
  sweep->add_option("--lambda-max", sw_hi, "last lambda")->required();
  sweep->add_option("--steps", sw_steps, "number of rows");
  sweep->add_option("--format", sw_format, "csv | jsonl | json");
  sweep->add_option("--out", sw_out, "output path (default stdout)");

  // cone
  int coN = 5;
  double co_ls = 0.0, co_t = 2.0;
  std::string co_label = "full", co_format = "json", co_out;
  auto* cone = app.add_subcommand("cone", "cone constants and counterexample");
  cone->add_option("--N", coN, "space dimension")->required();
  cone->add_option("--label", co_label, "full | half | custom");
  cone->add_option("--lambda-sigma", co_ls, "eigenvalue for custom cones");
  cone->add_option("--t", co_t, "counterexample exponent in [2,4)");
  cone->add_option("--format", co_format, "json | csv");
  cone->add_option("--out", co_out, "output path (default stdout)");

  auto* selftest = app.add_subcommand("selftest", "run the built-in checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*constants) return cmd_constants(cN, cq, clambda, cout_path);
    if (*solve) return cmd_solve(sa);
    if (*ve) return cmd_verify_explicit(ve_out);
    if (*sweep)
      return cmd_sweep(swN, swq, sw_lo, sw_hi, sw_steps, sw_format, sw_out);
    if (*cone) return cmd_cone(coN, co_ls, co_label, co_t, co_format, co_out);
    if (*selftest) return cmd_selftest();
  } catch (const rellich::error& e) {
    report(e);
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 1;
}
