#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spatsel/csv.hpp"
#include "spatsel/harness.hpp"

using nlohmann::json;

namespace {

double parse_range_arg(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF") return spatsel::kIndependentRange;
  return std::stod(s);
}

int cmd_simulate(int n, const std::string& a_str, double kappa2,
                 std::uint64_t seed, const std::string& out) {
  spatsel::SimulationConfig cfg = spatsel::SimulationConfig::standard(
      n, parse_range_arg(a_str), kappa2, seed);
  spatsel::SpatialSample sample = spatsel::generate_dataset(cfg);
  spatsel::write_dataset_csv(out, sample);
  std::cout << "wrote " << out << " (n=" << n << ", p=" << sample.p()
            << ", q=" << sample.q() << ")\n";
  return 0;
}

int cmd_select(const std::string& in, double gamma, double beta,
               const std::string& dim_arg, const std::string& out) {
  spatsel::SpatialSample sample = spatsel::read_dataset_csv(in);
  spatsel::PenaltyConfig pen = spatsel::PenaltyConfig::defaults(gamma, beta);
  if (dim_arg == "permuted_index")
    pen.dim_penalty_arg = spatsel::DimPenaltyArg::permuted_index;
  else if (dim_arg != "position")
    throw spatsel::ConfigError("--dim-arg must be position or permuted_index");
  spatsel::SelectionResult res = spatsel::select_variables(sample, pen);

  json j;
  j["tau"] = res.tau;
  j["s_hat"] = res.s_hat;
  j["i1_hat"] = res.i1_hat.members();
  j["xi_minus"] = res.xi_minus;
  j["phi"] = res.phi;
  j["psi"] = res.psi;
  j["gamma"] = gamma;
  j["beta"] = beta;
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream os(out);
    if (!os) throw spatsel::Error("cannot open " + out);
    os << j.dump(2) << '\n';
    std::cout << "selected {" << res.i1_hat.to_string() << "} -> " << out
              << '\n';
  }
  return 0;
}

int cmd_tune(const std::string& in, const std::string& out, int folds) {
  spatsel::SpatialSample sample = spatsel::read_dataset_csv(in);
  spatsel::TuningGrid grid = spatsel::TuningGrid::defaults();
  grid.folds = folds;
  spatsel::TuningResult res = spatsel::optimize_tuning(sample, grid);

  std::ofstream os(out);
  if (!os) throw spatsel::Error("cannot open " + out);
  os << "gamma,beta,cv,failed_folds\n";
  for (const auto& row : res.table)
    os << spatsel::format_double(row.gamma) << ','
       << spatsel::format_double(row.beta) << ','
       << spatsel::format_double(row.cv) << ',' << row.failed_folds << '\n';
  std::cout << "optimal gamma=" << res.gamma_opt << " beta=" << res.beta_opt
            << " -> " << out << '\n';
  return 0;
}

int cmd_experiment(const std::string& config_path, int threads) {
  spatsel::ExperimentConfig cfg =
      spatsel::parse_experiment_config(config_path);
  std::vector<spatsel::RawRow> raw = spatsel::run_replications(cfg, threads);
  spatsel::write_raw_csv(cfg.output_path, raw);
  int flagged = 0;
  for (const auto& r : raw) flagged += r.failed ? 1 : 0;
  std::cout << "wrote " << raw.size() << " rows (" << flagged
            << " flagged) to " << cfg.output_path << '\n';
  return 0;
}

int cmd_report(const std::string& in, const std::string& prefix,
               const std::string& true_set_str) {
  std::vector<spatsel::RawRow> raw = spatsel::read_raw_csv(in);
  spatsel::IndexSet true_set = [&] {
    if (raw.empty()) throw spatsel::EmptyCell("no rows in " + in);
    int p = 0;
    for (const auto& r : raw)
      for (int idx : r.selected) p = std::max(p, idx);
    p = std::max(p, 6);
    if (true_set_str.empty())
      return spatsel::IndexSet({1, 2, 3, 4}, p);
    std::vector<int> members;
    for (const auto& tok : spatsel::split_csv_line(true_set_str))
      members.push_back(std::stoi(tok));
    return spatsel::IndexSet(members, p);
  }();
  auto metrics = spatsel::compute_metrics(raw, true_set);
  spatsel::emit_report(metrics, prefix);
  std::cout << "wrote " << prefix << ".csv and " << prefix << ".txt\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial variable selection toolkit"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "Generate one dataset CSV");
  int n = 12;
  std::string a_str = "25";
  double kappa2 = 1.0;
  std::uint64_t seed = 0;
  std::string out;
  sim->add_option("--n", n, "grid side")->check(CLI::PositiveNumber);
  sim->add_option("--a", a_str, "dependence range (or 'inf')");
  sim->add_option("--kappa2", kappa2, "error variance")
      ->check(CLI::NonNegativeNumber);
  sim->add_option("--seed", seed, "master seed");
  sim->add_option("--out", out, "output CSV path")->required();

  auto* sel = app.add_subcommand("select", "Run selection on a dataset CSV");
  std::string sel_in, sel_out, dim_arg = "position";
  double gamma = 0.25, beta = 0.25;
  sel->add_option("--in", sel_in, "dataset CSV")->required();
  sel->add_option("--gamma", gamma, "permutation penalty exponent");
  sel->add_option("--beta", beta, "dimension penalty exponent");
  sel->add_option("--dim-arg", dim_arg, "position | permuted_index");
  sel->add_option("--out", sel_out, "JSON output path (default stdout)");

  auto* tune = app.add_subcommand("tune", "Cross-validate (gamma, beta)");
  std::string tune_in, tune_out;
  int folds = 0;
  tune->add_option("--in", tune_in, "dataset CSV")->required();
  tune->add_option("--out", tune_out, "CV table CSV path")->required();
  tune->add_option("--folds", folds, "fold count (0 = auto)");

  auto* exp = app.add_subcommand("experiment", "Run a Monte Carlo study");
  std::string config_path;
  int threads = 0;
  exp->add_option("--config", config_path, "experiment config file")
      ->required();
  exp->add_option("--threads", threads, "worker threads (0 = hardware)");

  auto* rep = app.add_subcommand("report", "Summarize a raw results CSV");
  std::string rep_in, rep_prefix, true_set_str;
  rep->add_option("--in", rep_in, "raw results CSV")->required();
  rep->add_option("--out-prefix", rep_prefix, "output path prefix")
      ->required();
  rep->add_option("--true-set", true_set_str,
                  "comma-separated relevant indices (default 1,2,3,4)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(n, a_str, kappa2, seed, out);
    if (sel->parsed()) return cmd_select(sel_in, gamma, beta, dim_arg, sel_out);
    if (tune->parsed()) return cmd_tune(tune_in, tune_out, folds);
    if (exp->parsed()) return cmd_experiment(config_path, threads);
    if (rep->parsed()) return cmd_report(rep_in, rep_prefix, true_set_str);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
