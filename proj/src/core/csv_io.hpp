// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "core/grid_function.hpp"

namespace rxm {

/// Formats a double with 17 significant digits (round-trip safe).
std::string format_g17(double v);

/// Writes `x,u` rows, one per cell center, 17 significant digits.
void write_grid_csv(const std::string& path, const GridFunction& g);

/// Writes a generic CSV: header row then one row per entry of the columns.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

/// Text matrix format: "rows cols" header line, then one whitespace-separated
/// row per line, 17 significant digits.
void write_matrix(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(const std::string& path);

void write_text(const std::string& path, const std::string& text);

}  // namespace rxm
