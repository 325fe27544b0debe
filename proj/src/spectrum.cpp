#include "fuzzyvis/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fuzzyvis/errors.hpp"

namespace fuzzyvis {

std::string branch_name(Branch b) {
    switch (b) {
        case Branch::PositiveRoot:
            return "positive-root";
        case Branch::NegativeRoot:
            return "negative-root";
        default:
            return "numeric";
    }
}

int EigenvalueTable::total_multiplicity() const {
    int total = 0;
    for (const auto& e : entries) total += e.multiplicity;
    return total;
}

std::vector<double> EigenvalueTable::expanded_sorted() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(total_multiplicity()));
    for (const auto& e : entries)
        for (int i = 0; i < e.multiplicity; ++i) out.push_back(e.value);
    std::sort(out.begin(), out.end());
    return out;
}

double EigenvalueTable::lambda_max() const {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, std::abs(e.value));
    return m;
}

double EigenvalueTable::min_abs_value() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& e : entries) m = std::min(m, std::abs(e.value));
    return m;
}

EigenvalueTable analytic_spectrum(int n, double a, double c) {
    if (n < 1) throw ArgumentError("analytic_spectrum: n must be >= 1");
    if (!std::isfinite(a) || !std::isfinite(c))
        throw ArgumentError("analytic_spectrum: a and c must be finite");

    EigenvalueTable table;
    table.n = n;
    const double shift = a - 0.5 * c;
    const double csq = c * c - 1.0;

    auto emit = [&table](double base, Branch branch, int two_j, int two_k) {
        table.entries.push_back({base, 2, branch, two_j, two_k});
        table.entries.push_back({-base, 2, branch, two_j, two_k});
    };

    for (int two_j = 1; two_j <= 2 * n - 1; two_j += 2) {
        const double j = 0.5 * two_j;
        for (int two_k = 1; two_k <= two_j; two_k += 2) {
            const double k = 0.5 * two_k;
            emit(shift + std::sqrt(j * j + csq * k * k), Branch::PositiveRoot, two_j, two_k);
        }
    }
    for (int two_j = 1; two_j <= 2 * n - 3; two_j += 2) {
        const double j = 0.5 * two_j;
        for (int two_k = 1; two_k <= two_j; two_k += 2) {
            const double k = 0.5 * two_k;
            emit(shift - std::sqrt((j + 1.0) * (j + 1.0) + csq * k * k), Branch::NegativeRoot,
                 two_j, two_k);
        }
    }
    return table;
}

EigenvalueTable numeric_spectrum(const FiniteSpectralTriple& t) {
    if (t.dirac.rows() == 0) throw ArgumentError("numeric_spectrum: triple has no Dirac matrix");
    Eigen::SelfAdjointEigenSolver<Matrix> es(t.dirac, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("numeric_spectrum: eigensolver failed on a " +
                             std::to_string(t.dirac.rows()) + "-dimensional Dirac, max entry " +
                             std::to_string(t.dirac.cwiseAbs().maxCoeff()));
    EigenvalueTable table;
    table.n = t.n;
    const RVector ev = es.eigenvalues();
    table.entries.reserve(static_cast<std::size_t>(ev.size()));
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        table.entries.push_back({ev(i), 1, Branch::Numeric, -1, -1});
    return table;
}

SpectrumDiff compare_spectra(const EigenvalueTable& x, const EigenvalueTable& y, double tol) {
    const int tx = x.total_multiplicity();
    const int ty = y.total_multiplicity();
    if (tx != ty)
        throw ArgumentError("compare_spectra: structural mismatch, total multiplicities " +
                            std::to_string(tx) + " vs " + std::to_string(ty));
    const std::vector<double> ex = x.expanded_sorted();
    const std::vector<double> ey = y.expanded_sorted();
    SpectrumDiff diff;
    diff.tol = tol;
    for (std::size_t i = 0; i < ex.size(); ++i)
        diff.max_abs_deviation = std::max(diff.max_abs_deviation, std::abs(ex[i] - ey[i]));
    diff.within_tol = diff.max_abs_deviation <= tol;
    return diff;
}

}  // namespace fuzzyvis
