#pragma once

// Shared test helpers: scratch directories, tiny CSV parsing, and the
// brute-force grid maximizer used as an independent oracle for the
// distance solver.

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "fuzzyvis/linalg.hpp"

namespace testsupport {

// Fresh empty directory under the system temp root; removed and recreated
// on every call so reruns start clean.
inline std::filesystem::path scratch_dir(const std::string& name) {
    namespace fs = std::filesystem;
    const fs::path p = fs::temp_directory_path() / "fuzzyvis_tests" / name;
    std::error_code ec;
    fs::remove_all(p, ec);
    fs::create_directories(p);
    return p;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        if (end > start) rows.push_back(split_csv_line(text.substr(start, end - start)));
        start = end + 1;
    }
    return rows;
}

// Maximizes the 0-homogeneous ratio f(x) = w.x / norm(x) over directions in
// R^m by exhaustive grid search plus zoom refinement. `norm` must be a
// positively homogeneous feasibility norm (here: a Lipschitz seminorm), so
// every grid point rescales to a feasible witness and the running maximum is
// a monotone lower bound that converges to the true optimum as the grid
// refines. Deliberately derivative-free and structure-blind: the point is
// independence from the solver under test.
inline double grid_refine_max(const fuzzyvis::RVector& w,
                              const std::function<double(const fuzzyvis::RVector&)>& norm,
                              int coarse_per_dim, int zoom_per_dim, int zoom_rounds,
                              double shrink) {
    using fuzzyvis::RVector;
    const int m = static_cast<int>(w.size());
    double best = 0.0;
    RVector best_x = w;  // the aligned start is itself a valid direction
    {
        const double s0 = norm(best_x);
        if (s0 > 1e-14) best = w.dot(best_x) / s0;
    }

    auto sweep = [&](const RVector& center, double width, int per_dim) {
        std::vector<int> digit(m, 0);
        RVector x(m);
        while (true) {
            for (int d = 0; d < m; ++d) {
                const double frac = per_dim == 1 ? 0.0 : -1.0 + 2.0 * digit[d] / (per_dim - 1);
                x[d] = center[d] + width * frac;
            }
            const double s = norm(x);
            if (s > 1e-14) {
                const double v = w.dot(x) / s;
                if (v > best) {
                    best = v;
                    best_x = x / x.norm();
                }
            }
            int d = 0;
            while (d < m && ++digit[d] == per_dim) digit[d++] = 0;
            if (d == m) break;
        }
    };

    sweep(RVector::Zero(m), 1.0, coarse_per_dim);
    double width = 2.0 / (coarse_per_dim - 1);
    for (int r = 0; r < zoom_rounds; ++r) {
        RVector center = best_x / best_x.norm();
        sweep(center, width, zoom_per_dim);
        width *= shrink;
    }
    return best;
}

}  // namespace testsupport
