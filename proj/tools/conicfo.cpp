// Command-line front end: solve a problem file, run an eps sweep on a
// generated instance, or fit a scaling exponent to a sweep CSV.
//
// Exit codes: 0 success, 2 parameter/input error, 3 solver non-convergence or
// numerical failure, 4 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conicfo/bench.hpp"
#include "conicfo/io.hpp"

using namespace conicfo;

namespace {

std::vector<double> parse_eps_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError("bad eps value '" + item + "'");
    }
  }
  return out;
}

InnerPath parse_inner(const std::string& s) {
  if (s == "auto") return InnerPath::Auto;
  if (s == "simple") return InnerPath::Simple;
  if (s == "smooth") return InnerPath::Smooth;
  throw ParameterError("unknown inner path '" + s + "'");
}

Instance make_instance(const std::string& id, double p, long n, long m, std::uint64_t seed) {
  if (id == "equality_qp") return gen_equality_qp(n, seed);
  if (id == "orthant_lp") return gen_orthant_lp(n, m > 0 ? m : n / 2 + 1, seed);
  if (id == "soc_feasibility") return gen_soc_feasibility(n, seed);
  if (id == "example42") return gen_example42(p);
  throw ParameterError("unknown instance '" + id + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-order conic solvers with projection accounting"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Run one method on a problem file");
  std::string problem_path, method, out_path, inner = "auto";
  double eps = 0.0;
  std::optional<double> rd, mu, delta, rho;
  double mu0 = 1.0, rho0 = 1.0, mu_scale = 1.0;
  std::optional<long> kouter;
  std::optional<int> max_doublings;
  solve->add_option("--problem", problem_path, "Problem JSON file")->required();
  solve->add_option("--method", method, "ial|fial|aial|ns|qp|np|apm")->required();
  solve->add_option("--eps", eps, "Target accuracy")->required();
  solve->add_option("--rd", rd, "Bound R_d on the optimal multiplier norm");
  solve->add_option("--mu", mu, "Smoothing parameter override");
  solve->add_option("--delta", delta, "Inner accuracy override");
  solve->add_option("--rho", rho, "Penalty parameter override");
  solve->add_option("--mu0", mu0, "Initial mu for aial");
  solve->add_option("--rho0", rho0, "Initial rho for apm");
  solve->add_option("--kouter", kouter, "Outer iterations for ns");
  solve->add_option("--max-doublings", max_doublings, "Doubling cap for aial/apm");
  solve->add_option("--inner", inner, "Inner path: auto|simple|smooth");
  solve->add_option("--out", out_path, "Write the report as JSON");

  // bench
  auto* bench = app.add_subcommand("bench", "Eps sweep on a generated instance");
  std::string instance_id, eps_list, csv_out;
  double p = 2.0;
  long n = 10, m = 0;
  std::uint64_t seed = 1;
  std::string bench_method, bench_inner = "auto";
  bench->add_option("--instance", instance_id, "equality_qp|orthant_lp|soc_feasibility|example42")->required();
  bench->add_option("--p", p, "Exponent for example42");
  bench->add_option("--n", n, "Primal dimension");
  bench->add_option("--m", m, "Constraint rows (orthant_lp)");
  bench->add_option("--seed", seed, "Generator seed");
  bench->add_option("--method", bench_method, "ial|fial|aial|ns|qp|np|apm")->required();
  bench->add_option("--eps-list", eps_list, "Comma-separated, strictly decreasing")->required();
  bench->add_option("--mu-scale", mu_scale, "ial/fial: mu as a multiple of the optimal mu");
  bench->add_option("--mu0", mu0, "Initial mu for aial");
  bench->add_option("--rho0", rho0, "Initial rho for apm");
  bench->add_option("--inner", bench_inner, "Inner path: auto|simple|smooth");
  bench->add_option("--out", csv_out, "CSV output path")->required();

  // slope
  auto* slope = app.add_subcommand("slope", "Fit log(count) against log(1/eps)");
  std::string csv_in, field = "total";
  slope->add_option("--in", csv_in, "Sweep CSV")->required();
  slope->add_option("--field", field, "proj_U|proj_K|proj_Kstar|total");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*solve) {
      LoadedProblem lp = load_problem_json(problem_path);
      Instance inst{"file", 0, std::move(lp.problem), std::move(lp.known)};
      SweepParams params;
      params.R_d = rd;
      params.mu = mu;
      params.delta = delta;
      params.rho = rho;
      params.mu0 = mu0;
      params.rho0 = rho0;
      params.kouter = kouter;
      params.max_doublings = max_doublings;
      params.inner = parse_inner(inner);
      SolveReport rep = run_method(inst, method, eps, params);
      std::printf("method        %s\n", rep.method.c_str());
      std::printf("outer iters   %ld\n", rep.outer_iterations);
      std::printf("f(u)          %s\n", format_double(inst.problem.f().value(rep.u)).c_str());
      std::printf("infeasibility %s\n", format_double(rep.infeas).c_str());
      if (rep.subopt_gap) std::printf("f(u) - f*     %s\n", format_double(*rep.subopt_gap).c_str());
      std::printf("proj U/K/K*   %llu / %llu / %llu\n",
                  static_cast<unsigned long long>(rep.counters.proj_U),
                  static_cast<unsigned long long>(rep.counters.proj_K),
                  static_cast<unsigned long long>(rep.counters.proj_Kstar));
      if (rep.precondition_warning) std::printf("warning: eps >= Delta*/2, penalty guarantee does not apply\n");
      if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + out_path + "' for writing");
        out << report_to_json(rep) << '\n';
        if (!out) throw IoError("write failed for '" + out_path + "'");
      }
    } else if (*bench) {
      Instance inst = make_instance(instance_id, p, n, m, seed);
      SweepParams params;
      params.mu_scale = mu_scale;
      params.mu0 = mu0;
      params.rho0 = rho0;
      params.inner = parse_inner(bench_inner);
      auto records = sweep_run(inst, bench_method, parse_eps_list(eps_list), params);
      emit_csv(records, csv_out);
      for (const auto& r : records) {
        std::printf("%s eps=%s projections=%llu infeas=%s gap=%s\n", r.method.c_str(),
                    format_double(r.eps).c_str(),
                    static_cast<unsigned long long>(r.proj_U + r.proj_K + r.proj_Kstar),
                    format_double(r.infeas).c_str(), format_double(r.subopt_gap).c_str());
      }
    } else if (*slope) {
      auto records = parse_csv(csv_in);
      std::printf("%.6f\n", fit_slope(records, parse_count_field(field)));
    }
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const NonConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
