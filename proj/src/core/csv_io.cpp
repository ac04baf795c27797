// Copyright (c) 2026 relaxmor developers.
// SPDX-License-Identifier: Apache-2.0
#include "core/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rxm {

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace

void write_grid_csv(const std::string& path, const GridFunction& g) {
    std::ofstream out = open_out(path);
    out << "x,u\n";
    for (int i = 0; i < g.n_cells(); ++i) {
        out << format_g17(g.center(i)) << ',' << format_g17(g.values[i]) << '\n';
    }
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    std::ofstream out = open_out(path);
    for (std::size_t c = 0; c < header.size(); ++c) {
        out << header[c] << (c + 1 < header.size() ? ',' : '\n');
    }
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& col : columns) {
        if (col.size() != rows) throw std::invalid_argument("write_csv: ragged columns");
    }
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << format_g17(columns[c][r]) << (c + 1 < columns.size() ? ',' : '\n');
        }
    }
}

void write_matrix(const std::string& path, const Eigen::MatrixXd& m) {
    std::ofstream out = open_out(path);
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out << format_g17(m(i, j)) << (j + 1 < m.cols() ? ' ' : '\n');
        }
    }
    if (m.rows() == 0) out << '\n';
}

Eigen::MatrixXd read_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    Eigen::Index rows = 0, cols = 0;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
        throw std::runtime_error("bad matrix header in " + path);
    }
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            if (!(in >> m(i, j))) throw std::runtime_error("truncated matrix file: " + path);
        }
    }
    return m;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out = open_out(path);
    out << text;
}

}  // namespace rxm
