#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spatsel/baselines.hpp"
#include "spatsel/selection.hpp"
#include "spatsel/simulator.hpp"
#include "spatsel/tuning.hpp"

namespace spatsel {

enum class Method { om, scad, hard, lasso };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

// One Monte Carlo experiment: parameter grids, methods, tuning policy
// and seeding. When `grid` is set, (gamma, beta) are re-tuned on every
// replication's training data; otherwise the fixed pair is used.
struct ExperimentConfig {
  int replications = 500;
  std::vector<int> n_list;
  std::vector<double> a_list;
  std::vector<double> kappa2_list;
  std::vector<Method> methods;
  std::optional<TuningGrid> grid;
  double gamma = 0.25;
  double beta = 0.25;
  std::uint64_t master_seed = 0;
  std::string output_path;

  void validate() const;
};

// Parses the sectioned key-value config file; unknown keys are an
// error.
ExperimentConfig parse_experiment_config(const std::string& path);

struct RawRow {
  Method method = Method::om;
  int n = 0;
  double a = 0.0;
  double kappa2 = 0.0;
  int rep = 0;
  std::uint64_t seed = 0;
  double mse = 0.0;
  int nv_count = 0;
  bool exact_match = false;
  std::vector<int> selected;  // sorted 1-based indices
  bool failed = false;
};

struct MetricsRow {
  Method method = Method::om;
  int n = 0;
  double a = 0.0;
  double kappa2 = 0.0;
  double mse = 0.0;  // mean test-set squared prediction error
  double pe = 0.0;   // exact-recovery frequency
  double nv = 0.0;   // mean selected-set size
  int flagged = 0;   // failed replications excluded from the means
  int replications = 0;
};

// Effective worker count: the SPATSEL_THREADS environment variable
// overrides `requested`; 0 means hardware concurrency.
int resolve_thread_count(int requested);

// Runs every (cell, replication, method) combination. Each replication
// generates an independent training and test dataset from sub-seeds
// derived from (master_seed, cell, rep); tuning (when configured) and
// selection run on the training data, restricted OLS supplies test-set
// predictions. Failures are flagged rows, never aborts. Output order
// and content are deterministic in the config, independent of the
// worker count.
std::vector<RawRow> run_replications(const ExperimentConfig& cfg,
                                     int threads = 0);

std::vector<MetricsRow> compute_metrics(const std::vector<RawRow>& raw,
                                        const IndexSet& true_set);

void write_raw_csv(const std::string& path, const std::vector<RawRow>& rows);
std::vector<RawRow> read_raw_csv(const std::string& path);

void write_metrics_csv(const std::string& path,
                       const std::vector<MetricsRow>& metrics);
std::vector<MetricsRow> read_metrics_csv(const std::string& path);

// Writes the metrics CSV and a human-readable table grouped by
// (n, kappa2, a) to <prefix>.csv and <prefix>.txt.
void emit_report(const std::vector<MetricsRow>& metrics,
                 const std::string& prefix);

// The relevant set implied by a coefficient matrix: columns with a
// nonzero entry.
IndexSet true_support(const Matrix& b);

}  // namespace spatsel
