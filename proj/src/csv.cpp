#include "spatsel/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace spatsel {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(shorter, "%lf", &back);
    if (back == v) return shorter;
  }
  return buf;
}

void write_dataset_csv(const std::string& path, const SpatialSample& sample) {
  sample.validate();
  if (sample.grid_dim != 2)
    throw Error("write_dataset_csv: only 2-D grids are exported");
  std::ofstream out(path);
  if (!out) throw Error("write_dataset_csv: cannot open " + path);
  out << "site_i,site_j";
  for (int k = 1; k <= sample.p(); ++k) out << ",x" << k;
  for (int k = 1; k <= sample.q(); ++k) out << ",y" << k;
  out << '\n';
  const int n = sample.grid_side;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const int row = (i - 1) * n + (j - 1);
      out << i << ',' << j;
      for (int k = 0; k < sample.p(); ++k)
        out << ',' << format_double(sample.x(row, k));
      for (int k = 0; k < sample.q(); ++k)
        out << ',' << format_double(sample.y(row, k));
      out << '\n';
    }
  if (!out) throw Error("write_dataset_csv: write failed for " + path);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

SpatialSample read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("read_dataset_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw Error("read_dataset_csv: empty file " + path);
  auto header = split_csv_line(line);
  if (header.size() < 4 || header[0] != "site_i" || header[1] != "site_j")
    throw Error("read_dataset_csv: unexpected header in " + path);
  int p = 0, q = 0;
  for (size_t i = 2; i < header.size(); ++i) {
    if (header[i] == "x" + std::to_string(p + 1) && q == 0)
      ++p;
    else if (header[i] == "y" + std::to_string(q + 1))
      ++q;
    else
      throw Error("read_dataset_csv: unexpected column " + header[i]);
  }
  if (p < 2 || q < 1)
    throw Error("read_dataset_csv: need x1..xp (p>=2) and y1..yq columns");

  struct Row {
    int i, j;
    std::vector<double> vals;
  };
  std::vector<Row> rows;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw Error("read_dataset_csv: ragged row in " + path);
    Row r;
    r.i = std::stoi(fields[0]);
    r.j = std::stoi(fields[1]);
    if (r.i < 1 || r.j < 1)
      throw Error("read_dataset_csv: site coordinates must be >= 1");
    n = std::max({n, r.i, r.j});
    for (size_t k = 2; k < fields.size(); ++k)
      r.vals.push_back(std::stod(fields[k]));
    rows.push_back(std::move(r));
  }
  if (static_cast<long>(rows.size()) != static_cast<long>(n) * n)
    throw Error("read_dataset_csv: incomplete grid in " + path);

  SpatialSample sample;
  sample.grid_side = n;
  sample.grid_dim = 2;
  sample.x = Matrix::Constant(rows.size(), p,
                              std::numeric_limits<double>::quiet_NaN());
  sample.y = Matrix::Constant(rows.size(), q,
                              std::numeric_limits<double>::quiet_NaN());
  for (const Row& r : rows) {
    const int row = (r.i - 1) * n + (r.j - 1);
    for (int k = 0; k < p; ++k) sample.x(row, k) = r.vals[k];
    for (int k = 0; k < q; ++k) sample.y(row, k) = r.vals[p + k];
  }
  sample.validate();  // catches duplicate/missing sites via NaN check
  return sample;
}

}  // namespace spatsel
