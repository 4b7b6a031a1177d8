#pragma once

#include <string>
#include <vector>

#include "spatsel/estimation.hpp"

namespace spatsel {

// Shortest round-trippable decimal form of a double ("nan" for NaN).
std::string format_double(double v);

// Dataset CSV: header site_i,site_j,x1..xp,y1..yq, one row per site in
// lexicographic order.
void write_dataset_csv(const std::string& path, const SpatialSample& sample);

// Reads a dataset CSV back; the grid side is recovered from the site
// columns and the full n^2 grid is required.
SpatialSample read_dataset_csv(const std::string& path);

// Minimal line splitter for the fixed-schema files this tool emits.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace spatsel
