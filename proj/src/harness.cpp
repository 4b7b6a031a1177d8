#include "spatsel/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include "spatsel/csv.hpp"

namespace spatsel {

std::string method_name(Method m) {
  switch (m) {
    case Method::om:
      return "OM";
    case Method::scad:
      return "SCAD";
    case Method::hard:
      return "Hard";
    case Method::lasso:
      return "LASSO";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "OM") return Method::om;
  if (name == "SCAD") return Method::scad;
  if (name == "Hard") return Method::hard;
  if (name == "LASSO") return Method::lasso;
  throw ConfigError("unknown method: " + name);
}

void ExperimentConfig::validate() const {
  if (replications < 1)
    throw ConfigError("ExperimentConfig: replications must be >= 1");
  if (n_list.empty() || a_list.empty() || kappa2_list.empty())
    throw ConfigError("ExperimentConfig: parameter lists must be non-empty");
  if (methods.empty())
    throw ConfigError("ExperimentConfig: methods must be non-empty");
  for (int n : n_list)
    if (n < 2) throw ConfigError("ExperimentConfig: n must be >= 2");
  for (double a : a_list)
    if (!(a > 0.0)) throw ConfigError("ExperimentConfig: a must be positive");
  for (double k : kappa2_list)
    if (!(k >= 0.0)) throw ConfigError("ExperimentConfig: kappa2 must be >= 0");
  if (grid)
    grid->validate();
  else {
    if (!(gamma > 0.0 && gamma < 0.5) || !(beta > 0.0 && beta < 0.5))
      throw ConfigError("ExperimentConfig: gamma/beta must lie in (0, 1/2)");
  }
}

int resolve_thread_count(int requested) {
  if (const char* env = std::getenv("SPATSEL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

IndexSet true_support(const Matrix& b) {
  std::vector<int> support;
  for (int j = 0; j < b.cols(); ++j)
    if (b.col(j).cwiseAbs().maxCoeff() > 0.0) support.push_back(j + 1);
  return IndexSet(std::move(support), static_cast<int>(b.cols()));
}

namespace {

struct Cell {
  int index = 0;
  int n = 0;
  double a = 0.0;
  double kappa2 = 0.0;
};

double test_mse(const SpatialSample& train, const SpatialSample& test,
                const IndexSet& selected) {
  Matrix coef = fit_restricted_ols(train.x, train.y, selected);
  Matrix pred = predict_restricted_ols(coef, test.x, selected);
  return (test.y - pred).squaredNorm() / static_cast<double>(test.y.rows());
}

}  // namespace

std::vector<RawRow> run_replications(const ExperimentConfig& cfg,
                                     int threads) {
  cfg.validate();
  const Matrix b = SimulationConfig::standard(12, 25.0, 1.0, 0).b;
  const IndexSet truth = true_support(b);

  std::vector<Cell> cells;
  for (int n : cfg.n_list)
    for (double a : cfg.a_list)
      for (double kappa2 : cfg.kappa2_list)
        cells.push_back(
            {static_cast<int>(cells.size()), n, a, kappa2});

  // Per-grid tables shared across replications.
  std::map<std::pair<int, double>, std::vector<double>> weights;
  std::map<int, ErrorFieldFactor> factors;
  for (const Cell& c : cells) {
    auto key = std::make_pair(c.n, c.a);
    if (!weights.count(key)) weights.emplace(key, spatial_weight_grid(c.n, c.a));
    if (!factors.count(c.n)) factors.emplace(c.n, ErrorFieldFactor(c.n));
  }

  const int n_methods = static_cast<int>(cfg.methods.size());
  const long n_tasks = static_cast<long>(cells.size()) * cfg.replications;
  std::vector<RawRow> rows(n_tasks * n_methods);

  auto run_task = [&](long task) {
    const Cell& cell = cells[task / cfg.replications];
    const int rep = static_cast<int>(task % cfg.replications);
    const std::uint64_t train_seed = derive_seed(
        cfg.master_seed, {static_cast<std::uint64_t>(cell.index),
                          static_cast<std::uint64_t>(rep), 0});
    const std::uint64_t test_seed = derive_seed(
        cfg.master_seed, {static_cast<std::uint64_t>(cell.index),
                          static_cast<std::uint64_t>(rep), 1});

    SimulationConfig sim =
        SimulationConfig::standard(cell.n, cell.a, cell.kappa2, 0);
    const auto& w = weights.at({cell.n, cell.a});
    const auto& factor = factors.at(cell.n);

    RawRow base;
    base.n = cell.n;
    base.a = cell.a;
    base.kappa2 = cell.kappa2;
    base.rep = rep;
    base.seed = train_seed;

    SpatialSample train, test;
    bool generated = false;
    try {
      Rng train_rng(train_seed), test_rng(test_seed);
      train = generate_dataset(sim, train_rng, w, factor);
      test = generate_dataset(sim, test_rng, w, factor);
      generated = true;
    } catch (const Error&) {
    }

    for (int mi = 0; mi < n_methods; ++mi) {
      RawRow row = base;
      row.method = cfg.methods[mi];
      if (!generated) {
        row.failed = true;
        row.mse = std::numeric_limits<double>::quiet_NaN();
      } else {
        try {
          IndexSet selected = IndexSet::empty(train.p());
          if (row.method == Method::om) {
            double gamma = cfg.gamma, beta = cfg.beta;
            if (cfg.grid) {
              TuningResult t = optimize_tuning(train, *cfg.grid);
              gamma = t.gamma_opt;
              beta = t.beta_opt;
            }
            selected =
                select_variables(train, PenaltyConfig::defaults(gamma, beta))
                    .i1_hat;
          } else if (row.method == Method::scad) {
            selected = baseline_select(train, PenaltyKind::scad);
          } else if (row.method == Method::hard) {
            selected = baseline_select(train, PenaltyKind::hard);
          } else {
            selected = baseline_select(train, PenaltyKind::lasso);
          }
          row.selected = selected.members();
          row.nv_count = selected.size();
          row.exact_match = selected == truth;
          row.mse = test_mse(train, test, selected);
        } catch (const Error&) {
          row.failed = true;
          row.mse = std::numeric_limits<double>::quiet_NaN();
        }
      }
      rows[task * n_methods + mi] = std::move(row);
    }
  };

  const int workers = resolve_thread_count(threads);
  if (workers <= 1 || n_tasks <= 1) {
    for (long t = 0; t < n_tasks; ++t) run_task(t);
  } else {
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int wk = 0; wk < workers; ++wk)
      pool.emplace_back([&]() {
        for (;;) {
          const long t = next.fetch_add(1);
          if (t >= n_tasks) return;
          run_task(t);
        }
      });
    for (auto& th : pool) th.join();
  }
  return rows;
}

std::vector<MetricsRow> compute_metrics(const std::vector<RawRow>& raw,
                                        const IndexSet& true_set) {
  if (raw.empty()) throw EmptyCell("compute_metrics: no raw rows");
  // Group by (method, n, a, kappa2) preserving first-appearance order.
  std::vector<MetricsRow> metrics;
  auto find_group = [&](const RawRow& r) -> MetricsRow& {
    for (auto& m : metrics)
      if (m.method == r.method && m.n == r.n && m.a == r.a &&
          m.kappa2 == r.kappa2)
        return m;
    MetricsRow m;
    m.method = r.method;
    m.n = r.n;
    m.a = r.a;
    m.kappa2 = r.kappa2;
    metrics.push_back(m);
    return metrics.back();
  };
  for (const RawRow& r : raw) {
    MetricsRow& m = find_group(r);
    if (r.failed) {
      ++m.flagged;
      continue;
    }
    ++m.replications;
    m.mse += r.mse;
    m.pe += (r.selected == true_set.members()) ? 1.0 : 0.0;
    m.nv += r.nv_count;
  }
  for (auto& m : metrics) {
    if (m.replications == 0)
      throw EmptyCell("compute_metrics: every replication failed for " +
                      method_name(m.method) + " n=" + std::to_string(m.n));
    m.mse /= m.replications;
    m.pe /= m.replications;
    m.nv /= m.replications;
  }
  return metrics;
}

namespace {

std::string join_selected(const std::vector<int>& sel) {
  std::string out;
  for (size_t i = 0; i < sel.size(); ++i) {
    if (i) out += '|';
    out += std::to_string(sel[i]);
  }
  return out;
}

std::vector<int> parse_selected(const std::string& s) {
  std::vector<int> out;
  std::string cur;
  for (char c : s + "|") {
    if (c == '|') {
      if (!cur.empty()) out.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

}  // namespace

void write_raw_csv(const std::string& path, const std::vector<RawRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("write_raw_csv: cannot open " + path);
  out << "method,n,a,kappa2,rep,seed,mse,nv_count,exact_match,selected_set,"
         "failed\n";
  for (const RawRow& r : rows) {
    out << method_name(r.method) << ',' << r.n << ',' << format_double(r.a)
        << ',' << format_double(r.kappa2) << ',' << r.rep << ',' << r.seed
        << ',' << format_double(r.mse) << ',' << r.nv_count << ','
        << (r.exact_match ? 1 : 0) << ',' << join_selected(r.selected) << ','
        << (r.failed ? 1 : 0) << '\n';
  }
  if (!out) throw Error("write_raw_csv: write failed for " + path);
}

std::vector<RawRow> read_raw_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("read_raw_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) ||
      split_csv_line(line) !=
          std::vector<std::string>{"method", "n", "a", "kappa2", "rep", "seed",
                                   "mse", "nv_count", "exact_match",
                                   "selected_set", "failed"})
    throw Error("read_raw_csv: unexpected header in " + path);
  std::vector<RawRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 11) throw Error("read_raw_csv: ragged row in " + path);
    RawRow r;
    r.method = method_from_name(f[0]);
    r.n = std::stoi(f[1]);
    r.a = std::stod(f[2]);
    r.kappa2 = std::stod(f[3]);
    r.rep = std::stoi(f[4]);
    r.seed = std::stoull(f[5]);
    r.mse = std::stod(f[6]);
    r.nv_count = std::stoi(f[7]);
    r.exact_match = f[8] == "1";
    r.selected = parse_selected(f[9]);
    r.failed = f[10] == "1";
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_metrics_csv(const std::string& path,
                       const std::vector<MetricsRow>& metrics) {
  std::ofstream out(path);
  if (!out) throw Error("write_metrics_csv: cannot open " + path);
  out << "method,n,a,kappa2,mse,pe,nv,flagged,replications\n";
  for (const MetricsRow& m : metrics) {
    out << method_name(m.method) << ',' << m.n << ',' << format_double(m.a)
        << ',' << format_double(m.kappa2) << ',' << format_double(m.mse) << ','
        << format_double(m.pe) << ',' << format_double(m.nv) << ','
        << m.flagged << ',' << m.replications << '\n';
  }
  if (!out) throw Error("write_metrics_csv: write failed for " + path);
}

std::vector<MetricsRow> read_metrics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("read_metrics_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) ||
      split_csv_line(line) !=
          std::vector<std::string>{"method", "n", "a", "kappa2", "mse", "pe",
                                   "nv", "flagged", "replications"})
    throw Error("read_metrics_csv: unexpected header in " + path);
  std::vector<MetricsRow> metrics;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 9) throw Error("read_metrics_csv: ragged row in " + path);
    MetricsRow m;
    m.method = method_from_name(f[0]);
    m.n = std::stoi(f[1]);
    m.a = std::stod(f[2]);
    m.kappa2 = std::stod(f[3]);
    m.mse = std::stod(f[4]);
    m.pe = std::stod(f[5]);
    m.nv = std::stod(f[6]);
    m.flagged = std::stoi(f[7]);
    m.replications = std::stoi(f[8]);
    metrics.push_back(m);
  }
  return metrics;
}

void emit_report(const std::vector<MetricsRow>& metrics,
                 const std::string& prefix) {
  if (metrics.empty()) throw EmptyCell("emit_report: no metrics");
  write_metrics_csv(prefix + ".csv", metrics);

  std::ofstream out(prefix + ".txt");
  if (!out) throw Error("emit_report: cannot open " + prefix + ".txt");
  // Group by (n, kappa2, a) in first-appearance order.
  std::vector<std::tuple<int, double, double>> groups;
  for (const auto& m : metrics) {
    auto key = std::make_tuple(m.n, m.kappa2, m.a);
    bool seen = false;
    for (const auto& g : groups)
      if (g == key) {
        seen = true;
        break;
      }
    if (!seen) groups.push_back(key);
  }
  for (const auto& [n, kappa2, a] : groups) {
    out << "n=" << n << "  kappa2=" << format_double(kappa2)
        << "  a=" << format_double(a) << '\n';
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  %-8s %10s %8s %8s %8s\n", "method",
                  "MSE", "NV", "PE", "flagged");
    out << buf;
    for (const auto& m : metrics) {
      if (m.n != n || m.kappa2 != kappa2 || m.a != a) continue;
      std::snprintf(buf, sizeof(buf), "  %-8s %10.4f %8.3f %8.3f %8d\n",
                    method_name(m.method).c_str(), m.mse, m.nv, m.pe,
                    m.flagged);
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw Error("emit_report: write failed for " + prefix + ".txt");
}

}  // namespace spatsel
