#pragma once

#include <vector>

#include "fuzzyvis/linalg.hpp"

namespace fuzzyvis {

// Generators of a (p,q) Clifford module on C^k, k = 2^floor((p+q)/2).
// The first p generators are hermitian and square to +I, the remaining q are
// anti-hermitian and square to -I. All pairs anticommute. For even p+q the
// chirality is a hermitian involution anticommuting with every generator;
// for odd p+q the product of all generators is central, so chirality is I.
struct CliffordModule {
    int p = 0;
    int q = 0;
    int ko_dimension = 0;  // (q - p) mod 8
    std::vector<Matrix> gammas;
    Matrix chirality;

    int dim() const { return gammas.empty() ? 1 : static_cast<int>(gammas.front().rows()); }
};

// Fixed matrix conventions per (p,q); signatures with p+q outside 1..6 throw
// NotImplementedError. (1,3) and (0,3) use the explicit representations the
// rest of the library is written against.
CliffordModule clifford_generators(int p, int q);

}  // namespace fuzzyvis
