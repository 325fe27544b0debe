#pragma once

#include <array>

#include "fuzzyvis/linalg.hpp"

namespace fuzzyvis {

// Irreducible so(3) action on C^n for spin l = (n-1)/2, in the weight basis
// ordered by descending magnetic number m = l, l-1, ..., -l.
//
// J holds the hermitian angular-momentum matrices with [J_i, J_j] = i e_ijk J_k;
// L_i = -i J_i are anti-hermitian with [L_i, L_j] = e_ijk L_k and
// sum_i L_i L_i = -l(l+1) I.
struct Su2Generators {
    int n = 0;
    std::array<Matrix, 3> L;
    std::array<Matrix, 3> J;

    double spin() const { return 0.5 * (n - 1); }
    double casimir() const { return spin() * (spin() + 1.0); }
};

Su2Generators su2_generators(int n);

}  // namespace fuzzyvis
