#pragma once

#include <string>
#include <vector>

#include "fuzzyvis/su2.hpp"

namespace fuzzyvis {

enum class BasisKind { Pbw, MatrixUnits };

std::string basis_kind_name(BasisKind k);

// A linearly independent set of hermitian n x n matrices. Elements are
// normalized to unit Frobenius norm so the Gram spectrum stays conditioned
// at large degree.
struct AlgebraBasis {
    std::vector<Matrix> elements;
    BasisKind kind = BasisKind::MatrixUnits;
    double gram_tolerance = 0.0;
    int n = 0;

    int rank() const { return static_cast<int>(elements.size()); }
};

// Ordered monomials L1^a L2^b L3^c with a+b+c <= max_degree, split into
// hermitian and anti-hermitian parts (M+M^dagger)/2 and i(M-M^dagger)/2,
// then filtered for linear independence by Gram-Schmidt with relative
// tolerance tol. Degree n-1 saturates M_n(C); larger degrees add nothing.
// Prints a warning when the achieved rank falls short of n^2 at full degree.
AlgebraBasis pbw_basis(const Su2Generators& g, int max_degree, double tol = 1e-10);

// Hermitianized matrix units: E_jj, (E_jk + E_kj)/sqrt(2), i(E_jk - E_kj)/sqrt(2).
// n^2 elements, orthonormal in the trace inner product.
AlgebraBasis matrix_unit_basis(int n);

// Orthonormal hermitian traceless basis spanning the traceless part of the
// span of `basis`, via projection of each element against the identity and
// Gram-Schmidt in the trace inner product. The identity direction never
// moves Lipschitz seminorms or expectation differences, so distance
// optimization happens in this reduced space.
std::vector<Matrix> traceless_orthonormal_basis(const AlgebraBasis& basis, double tol = 1e-10);

}  // namespace fuzzyvis
