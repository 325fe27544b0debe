#pragma once

#include <vector>

#include "fuzzyvis/linalg.hpp"

namespace fuzzyvis {

struct Histogram {
    std::vector<double> edges;   // bins + 1 ascending edges, starting at 0
    std::vector<int> counts;     // sum equals the number of input values
    std::vector<double> density; // counts / (total * bin width)
    int total = 0;
    double bin_width = 0.0;
};

// Strictly-upper-triangle entries of a symmetric matrix, row-major order.
std::vector<double> upper_triangle(const RMatrix& dm);

// Freedman-Diaconis bin count for nonnegative data on [0, max]; falls back
// to the square-root rule when the interquartile range vanishes. Clamped to
// [1, 200].
int freedman_diaconis_bins(std::vector<double> values);

// Equal-width histogram on [0, max(values)]; values equal to the upper edge
// land in the last bin. bins <= 0 selects the Freedman-Diaconis count.
Histogram distance_histogram(const std::vector<double>& values, int bins = 0);

}  // namespace fuzzyvis
