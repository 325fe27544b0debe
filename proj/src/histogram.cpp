#include "fuzzyvis/histogram.hpp"

#include <algorithm>
#include <cmath>

#include "fuzzyvis/errors.hpp"

namespace fuzzyvis {

namespace {

double quantile_sorted(const std::vector<double>& v, double q) {
    const double pos = q * (static_cast<double>(v.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
}

}  // namespace

std::vector<double> upper_triangle(const RMatrix& dm) {
    const int n = static_cast<int>(dm.rows());
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.push_back(dm(i, j));
    return out;
}

int freedman_diaconis_bins(std::vector<double> values) {
    if (values.empty()) throw ArgumentError("cannot choose bins for empty data");
    std::sort(values.begin(), values.end());
    const double vmax = values.back();
    if (vmax <= 0.0) return 1;
    const double iqr = quantile_sorted(values, 0.75) - quantile_sorted(values, 0.25);
    const double n = static_cast<double>(values.size());
    double bins;
    if (iqr > 0.0) {
        const double h = 2.0 * iqr / std::cbrt(n);
        bins = std::ceil(vmax / h);
    } else {
        bins = std::ceil(std::sqrt(n));
    }
    return static_cast<int>(std::clamp(bins, 1.0, 200.0));
}

Histogram distance_histogram(const std::vector<double>& values, int bins) {
    if (values.empty()) throw ArgumentError("cannot histogram an empty value set");
    for (double v : values) {
        if (!(v >= 0.0)) throw ArgumentError("distance values must be nonnegative");
    }
    const double vmax = *std::max_element(values.begin(), values.end());
    if (bins <= 0) bins = freedman_diaconis_bins(values);

    Histogram h;
    h.total = static_cast<int>(values.size());
    const double top = vmax > 0.0 ? vmax : 1.0;  // all-zero data occupies one bin at 0
    h.bin_width = top / bins;
    h.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b) h.edges[b] = h.bin_width * b;
    h.counts.assign(bins, 0);
    for (double v : values) {
        int idx = static_cast<int>(std::floor(v / h.bin_width));
        idx = std::clamp(idx, 0, bins - 1);  // upper edge closes the last bin
        ++h.counts[idx];
    }
    h.density.resize(bins);
    for (int b = 0; b < bins; ++b) {
        h.density[b] = h.counts[b] / (h.total * h.bin_width);
    }
    return h;
}

}  // namespace fuzzyvis
