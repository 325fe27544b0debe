#pragma once

#include <cstdint>
#include <vector>

#include "fuzzyvis/clifford.hpp"
#include "fuzzyvis/linalg.hpp"
#include "fuzzyvis/su2.hpp"

namespace fuzzyvis {

// Coefficients of the deformed Dirac operator. The restricted two-parameter
// family sets a = c0, c = c12 and keeps c13 = c23 = 1; that family has a
// closed-form spectrum (see spectrum.hpp).
struct DeformationParams {
    double c0 = 1.0;
    double c12 = 1.0;
    double c13 = 1.0;
    double c23 = 1.0;

    static DeformationParams restricted(double a, double c) {
        DeformationParams p;
        p.c0 = a;
        p.c12 = c;
        return p;
    }
    bool restricted_form() const { return c13 == 1.0 && c23 == 1.0; }
};

// One term of the general Dirac parametrization
//   D(v (x) m) = sum_i omega_i v (x) (K_i m + eps' m K_i^dagger).
// Self-adjointness requires omega_i and K_i to be hermitian together or
// anti-hermitian together; eps' in {+1,-1} does not affect self-adjointness.
struct KTerm {
    Matrix omega;
    Matrix K;
    int eps_prime = 1;
};

// Finite spectral triple over M_n(C) with Hilbert space V (x) M_n(C),
// V the Clifford module. M_n(C) is flattened column-major, so on vec(m):
//   left multiplication by a:   I_k (x) I_n (x) a
//   right multiplication by a:  I_k (x) a^T (x) I_n
//   ad(L) = m -> Lm - mL:       I_k slot (x) (I_n (x) L - L^T (x) I_n)
struct FiniteSpectralTriple {
    CliffordModule clifford;
    Su2Generators su2;  // populated by the deformed-sphere constructor
    int n = 0;
    Matrix dirac;
    DeformationParams deformation;
    std::vector<KTerm> k_terms;
    bool from_deformed_constructor = false;

    int hilbert_dim() const { return clifford.dim() * n * n; }
};

// rho_l(a): a acting by left multiplication on the M_n(C) factor.
Matrix left_action(const FiniteSpectralTriple& t, const Matrix& a);

// rho_r(a): a acting by right multiplication on the M_n(C) factor.
Matrix right_action(const FiniteSpectralTriple& t, const Matrix& a);

// Deformed fuzzy-sphere Dirac
//   D(v (x) m) = c0 g0 v (x) m + sum_{j<k} c_jk g0 g^j g^k v (x) [L_jk, m]
// with plane generators L_12 = L_3, L_13 = L_2, L_23 = L_1. This assignment,
// with no extra sign on L_13, is the one under which the numeric spectrum
// matches the closed-form eigenvalue tables.
FiniteSpectralTriple build_deformed_dirac(int n, const DeformationParams& params);

// General K-term Dirac. Throws ArgumentError naming the first term whose
// (omega, K, eps') combination breaks self-adjointness.
FiniteSpectralTriple build_general_dirac(const CliffordModule& clifford,
                                         const std::vector<KTerm>& k_terms, int n);

struct ValidationReport {
    double hermiticity_defect = 0.0;
    double first_order_defect = 0.0;
    double symmetry_defect = 0.0;  // deviation of eigenvalues from +/- pairing
    double tol = 0.0;
    bool symmetry_checked = false;  // enforced for the deformed constructor
    bool pass = false;
};

// Checks D = D^dagger, the first-order condition [[D, rho_r(a)], rho_l(b)] = 0
// over `trials` random pairs, and (for deformed-constructor triples) spectral
// symmetry about zero.
ValidationReport validate_triple(const FiniteSpectralTriple& t, int trials, double tol,
                                 std::uint64_t seed = 0x5eedf00d);

}  // namespace fuzzyvis
