// Command-line driver: each stage of the pipeline is its own subcommand, and
// `run` chains them.  Exit codes: 0 success, 1 usage/other error, 2 degenerate
// geometry, 3 solver failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtorus/errors.hpp"
#include "qtorus/fit.hpp"
#include "qtorus/geometry.hpp"
#include "qtorus/intertwiner.hpp"
#include "qtorus/io.hpp"
#include "qtorus/lift.hpp"
#include "qtorus/sweep.hpp"
#include "qtorus/trace.hpp"
#include "qtorus/verify.hpp"

namespace {

using namespace qtorus;

struct CommonOpts {
  std::string word = "LLR";
  int eps = 0;
  std::string a0 = "hyperbolic";
  int family = 1;
  std::string branch = "-";
  int eta = 0;
  int root_k = 1;
  int n_min = 3;
  int n_max = 301;
  std::string method = "product";
  int n_cut = 51;
  int degree = 4;
  std::uint64_t seed = 20240813u;
  int starts = 64;
  int workers = 0;  // 0: QTORUS_WORKERS env var, else hardware concurrency
  std::string v_shifts;
  std::string out_prefix = "./";
};

void add_word_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--word", o.word, "Mapping-class word over the letters L and R");
  cmd->add_option("--eps", o.eps, "Exponent of the central involution (0 or 1, recorded only)")
      ->check(CLI::Range(0, 1));
}

void add_solve_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--a0", o.a0,
                  "Initial weight a0 as a+bi, or 'hyperbolic' for the geometric solution");
  cmd->add_option("--family", o.family, "Closed-form family for word LLR (1 or 2)")
      ->check(CLI::Range(1, 2));
  cmd->add_option("--branch", o.branch, "Closed-form branch for word LLR (+ or -)")
      ->check(CLI::IsMember({"+", "-"}));
  cmd->add_option("--seed", o.seed, "RNG seed for the multi-start solver");
  cmd->add_option("--starts", o.starts, "Number of random starts for the hyperbolic solver")
      ->check(CLI::PositiveNumber);
}

void add_lift_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--eta", o.eta, "Integer offset of the initial log of a (times 2 pi i)");
  cmd->add_option("--v-shifts", o.v_shifts,
                  "Comma-separated integer branch shifts of the per-step logs, one per letter");
}

void add_trace_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--k", o.root_k, "Root exponent: q = exp(2 pi i k / n) (experimental)");
  cmd->add_option("--n-min", o.n_min, "Smallest dimension (odd)");
  cmd->add_option("--n-max", o.n_max, "Largest dimension (odd)");
  cmd->add_option("--method", o.method, "Trace evaluation: product, sum, or both")
      ->check(CLI::IsMember({"product", "sum", "both"}));
  cmd->add_option("--workers", o.workers,
                  "Worker threads (default: QTORUS_WORKERS env var, else hardware)");
}

void add_fit_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--n-cut", o.n_cut, "Smallest dimension used by the fit");
  cmd->add_option("--degree", o.degree, "Fit degree in 1/n (1..4)")->check(CLI::Range(1, 4));
}

void add_out_opt(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out_prefix, "Output path prefix (directory or file prefix)");
}

std::vector<int> parse_shifts(const std::string& s) {
  std::vector<int> shifts;
  if (s.empty()) return shifts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) shifts.push_back(std::stoi(item));
  return shifts;
}

TraceMethod parse_method(const std::string& m) {
  if (m == "product") return TraceMethod::Product;
  if (m == "sum") return TraceMethod::Sum;
  return TraceMethod::Both;
}

std::string out_path(const CommonOpts& o, const std::string& name) {
  if (o.out_prefix.empty()) return name;
  const char last = o.out_prefix.back();
  if (last == '/' || last == '\\') return o.out_prefix + name;
  return o.out_prefix + "_" + name;
}

// Stage 1: periodic weights for the word, either from the closed form at a
// given a0 (LLR only) or from the hyperbolic multi-start solver.
SweepWeights stage_solve(const CommonOpts& o) {
  const auto word = MonodromyWord::parse(o.word, o.eps);
  if (o.a0 == "hyperbolic") return solve_hyperbolic(word, o.starts, o.seed);
  const cplx a0 = parse_complex(o.a0);
  if (word.str() != "LLR")
    throw std::invalid_argument(
        "closed-form start values are specific to the word LLR; use --a0 hyperbolic");
  const int branch = (o.branch == "+") ? 1 : -1;
  const EdgeWeights w0 = solve_periodic_llr(a0, branch, o.family);
  return sweep(word, w0);
}

LogLift stage_lift(const CommonOpts& o, const SweepWeights& s) {
  return lift(s, init_logs(s.steps.front(), o.eta), parse_shifts(o.v_shifts));
}

TraceSeries stage_trace(const CommonOpts& o, const LogLift& lf) {
  const auto word = MonodromyWord::parse(o.word, o.eps);
  return series(word, lf, o.n_min, o.n_max, parse_method(o.method), o.workers, o.root_k);
}

FitResult stage_fit(const CommonOpts& o, const TraceSeries& ts, const LogLift* lf) {
  FitResult f = fit(ts, o.n_cut, o.degree);
  if (lf != nullptr) f.parity_flag = parity_flag(*lf);
  return f;
}

int dispatch(const std::string& stage, const CommonOpts& o, const std::string& fit_in,
             double fit_tol, std::optional<double> compare_vol, int dump_n,
             const std::string& verify_out_unused) {
  (void)verify_out_unused;
  if (stage == "verify") {
    const int failures = run_verify(o.seed, std::cout);
    if (failures > 0) {
      std::cout << failures << " properties failed\n";
      return 1;
    }
    std::cout << "all properties passed\n";
    return 0;
  }

  if (stage == "solve") {
    const auto s = stage_solve(o);
    write_text_file(out_path(o, "sweep.json"), to_json(s).dump(2) + "\n");
    std::cout << "periodic weights written to " << out_path(o, "sweep.json")
              << " (defect " << s.periodicity_defect() << ")\n";
    return 0;
  }

  if (stage == "lift") {
    const auto s = stage_solve(o);
    const auto lf = stage_lift(o, s);
    write_text_file(out_path(o, "sweep.json"), to_json(s).dump(2) + "\n");
    write_text_file(out_path(o, "lift.json"), to_json(lf).dump(2) + "\n");
    std::cout << "windings (" << lf.lhat << ", " << lf.mhat << ", " << lf.nhat << "), lift written to "
              << out_path(o, "lift.json") << "\n";
    return 0;
  }

  if (stage == "volume") {
    const auto word = MonodromyWord::parse(o.word, o.eps);
    const auto s = solve_hyperbolic(word, o.starts, o.seed);
    const auto g = geom_result(s);
    write_text_file(out_path(o, "geometry.json"), to_json(g).dump(2) + "\n");
    std::cout.precision(15);
    std::cout << "volume " << g.volume << " (" << g.shapes.size() << " tetrahedra), written to "
              << out_path(o, "geometry.json") << "\n";
    return 0;
  }

  if (stage == "trace") {
    const auto s = stage_solve(o);
    const auto lf = stage_lift(o, s);
    const auto ts = stage_trace(o, lf);
    write_text_file(out_path(o, "trace.csv"), to_csv(ts));
    if (dump_n > 0) {
      const auto word = MonodromyWord::parse(o.word, o.eps);
      const auto iw = intertwiner_for(word, lf, dump_n, o.root_k);
      json rows = json::array();
      for (Eigen::Index i = 0; i < iw.mat.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < iw.mat.cols(); ++j) row.push_back(complex_json(iw.mat(i, j)));
        rows.push_back(std::move(row));
      }
      const json dump = {{"n", dump_n}, {"matrix", rows}};
      write_text_file(out_path(o, "intertwiner.json"), dump.dump() + "\n");
    }
    std::cout << ts.rows.size() << " rows written to " << out_path(o, "trace.csv") << "\n";
    return 0;
  }

  if (stage == "fit") {
    TraceSeries ts;
    if (fit_in.empty())
      throw std::invalid_argument("fit: --in <trace.csv> is required");
    {
      std::ifstream in(fit_in);
      if (!in) throw std::runtime_error("fit: cannot open " + fit_in);
      ts = series_from_csv(in);
    }
    FitResult f = fit(ts, o.n_cut, o.degree);
    json doc = to_json(f);
    if (compare_vol) {
      const auto cmp = compare_volume(f, *compare_vol, fit_tol);
      doc["volume_comparison"] = to_json(cmp);
    }
    write_text_file(out_path(o, "fit.json"), doc.dump(2) + "\n");
    std::cout.precision(15);
    std::cout << "limits " << f.mode1.limit << " (n=1 mod 4), " << f.mode3.limit
              << " (n=3 mod 4), written to " << out_path(o, "fit.json") << "\n";
    return 0;
  }

  if (stage == "run") {
    const auto s = stage_solve(o);
    const auto lf = stage_lift(o, s);
    write_text_file(out_path(o, "sweep.json"), to_json(s).dump(2) + "\n");
    write_text_file(out_path(o, "lift.json"), to_json(lf).dump(2) + "\n");
    const auto ts = stage_trace(o, lf);
    write_text_file(out_path(o, "trace.csv"), to_csv(ts));
    FitResult f = stage_fit(o, ts, &lf);
    json doc = to_json(f);

    // Compare against the hyperbolic volume whenever the word admits one.
    try {
      const auto word = MonodromyWord::parse(o.word, o.eps);
      const auto gs = solve_hyperbolic(word, o.starts, o.seed);
      const auto g = geom_result(gs);
      write_text_file(out_path(o, "geometry.json"), to_json(g).dump(2) + "\n");
      const auto cmp = compare_volume(f, g.volume, fit_tol);
      doc["volume_comparison"] = to_json(cmp);
      if (cmp.no_prediction)
        std::cout << "parity flag is odd: no volume prediction for these limits\n";
    } catch (const solver_error& e) {
      std::cout << "volume comparison skipped: " << e.what() << "\n";
    }
    write_text_file(out_path(o, "fit.json"), doc.dump(2) + "\n");
    std::cout.precision(15);
    std::cout << "limits " << f.mode1.limit << " (n=1 mod 4), " << f.mode3.limit
              << " (n=3 mod 4); outputs under prefix " << o.out_prefix << "\n";
    return 0;
  }

  throw std::logic_error("unknown stage " + stage);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace asymptotics of quantum mapping-torus intertwiners"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string fit_in;
  double fit_tol = 5e-4;
  std::optional<double> compare_vol;
  int dump_n = 0;

  auto* solve = app.add_subcommand("solve", "Find periodic edge weights for a word");
  add_word_opts(solve, o);
  add_solve_opts(solve, o);
  add_out_opt(solve, o);

  auto* lift_cmd = app.add_subcommand("lift", "Lift periodic weights to chosen logarithms");
  add_word_opts(lift_cmd, o);
  add_solve_opts(lift_cmd, o);
  add_lift_opts(lift_cmd, o);
  add_out_opt(lift_cmd, o);

  auto* trace_cmd = app.add_subcommand("trace", "Evaluate the intertwiner trace over a range of n");
  add_word_opts(trace_cmd, o);
  add_solve_opts(trace_cmd, o);
  add_lift_opts(trace_cmd, o);
  add_trace_opts(trace_cmd, o);
  add_out_opt(trace_cmd, o);
  trace_cmd->add_option("--dump-intertwiner", dump_n,
                        "Also dump the full intertwiner matrix at this n as JSON");

  auto* fit_cmd = app.add_subcommand("fit", "Fit the growth-rate series from a trace CSV");
  fit_cmd->add_option("--in", fit_in, "Input trace CSV")->required();
  add_fit_opts(fit_cmd, o);
  fit_cmd->add_option("--compare-volume", compare_vol,
                      "Compare the fitted limits against this volume / (4 pi)");
  fit_cmd->add_option("--tol", fit_tol, "Tolerance for the volume comparison");
  add_out_opt(fit_cmd, o);

  auto* volume_cmd = app.add_subcommand("volume", "Hyperbolic volume of the word's mapping torus");
  add_word_opts(volume_cmd, o);
  volume_cmd->add_option("--seed", o.seed, "RNG seed for the multi-start solver");
  volume_cmd->add_option("--starts", o.starts, "Number of random starts")
      ->check(CLI::PositiveNumber);
  add_out_opt(volume_cmd, o);

  auto* run_cmd = app.add_subcommand("run", "Full pipeline: solve, lift, trace, fit, compare");
  add_word_opts(run_cmd, o);
  add_solve_opts(run_cmd, o);
  add_lift_opts(run_cmd, o);
  add_trace_opts(run_cmd, o);
  add_fit_opts(run_cmd, o);
  run_cmd->add_option("--tol", fit_tol, "Tolerance for the volume comparison");
  add_out_opt(run_cmd, o);

  auto* verify_cmd = app.add_subcommand("verify", "Run the randomized invariant suite");
  verify_cmd->add_option("--seed", o.seed, "Seed for the random draws");

  CLI11_PARSE(app, argc, argv);

  const std::string stage = app.get_subcommands().front()->get_name();
  try {
    return dispatch(stage, o, fit_in, fit_tol, compare_vol, dump_n, "");
  } catch (const degenerate_error& e) {
    std::cerr << "degenerate geometry (" << stage << "): " << e.what() << "\n";
    return 2;
  } catch (const solver_error& e) {
    std::cerr << "solver failure (" << stage << "): " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error (" << stage << "): " << e.what() << "\n";
    return 1;
  }
}
