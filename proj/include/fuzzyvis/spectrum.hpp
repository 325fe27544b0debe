#pragma once

#include <string>
#include <vector>

#include "fuzzyvis/triple.hpp"

namespace fuzzyvis {

enum class Branch { PositiveRoot, NegativeRoot, Numeric };

std::string branch_name(Branch b);

struct EigenvalueEntry {
    double value = 0.0;
    int multiplicity = 1;
    Branch branch = Branch::Numeric;
    // Angular labels stored as doubled integers so half-integer ranges stay
    // exact; -1 marks an absent label (numeric branch).
    int two_j = -1;
    int two_k = -1;
};

struct EigenvalueTable {
    std::vector<EigenvalueEntry> entries;
    int n = 0;

    int total_multiplicity() const;
    // All values repeated per multiplicity, sorted ascending.
    std::vector<double> expanded_sorted() const;
    double lambda_max() const;  // max |value|
    double min_abs_value() const;
};

// Closed-form spectrum of the restricted deformation (c13 = c23 = 1, a = c0,
// c = c12):
//   lambda = +/- (a - c/2 + sqrt(j^2 + (c^2-1) k^2)),   j = 1/2 .. n-1/2, k = 1/2 .. j
//   lambda = +/- (a - c/2 - sqrt((j+1)^2 + (c^2-1) k^2)), j = 1/2 .. n-3/2, k = 1/2 .. j
// Every signed value carries multiplicity 2; the table totals 4 n^2 states.
EigenvalueTable analytic_spectrum(int n, double a, double c);

// Dense hermitian diagonalization of the assembled Dirac operator.
EigenvalueTable numeric_spectrum(const FiniteSpectralTriple& t);

struct SpectrumDiff {
    double max_abs_deviation = 0.0;
    bool within_tol = false;
    double tol = 0.0;
};

// Positional comparison of the sorted expanded multisets. Throws
// ArgumentError when the total multiplicities differ (structural mismatch).
SpectrumDiff compare_spectra(const EigenvalueTable& x, const EigenvalueTable& y, double tol);

}  // namespace fuzzyvis
