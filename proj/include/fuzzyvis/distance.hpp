#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fuzzyvis/algebra.hpp"
#include "fuzzyvis/states.hpp"
#include "fuzzyvis/triple.hpp"

namespace fuzzyvis {

struct DistanceOptions {
    double tol = 1e-8;         // convergence test on the feasible objective
    double feas_slack = 1e-6;  // allowed excess of the witness seminorm over 1
    int subgradient_restarts = 4;
    int subgradient_iters = 200;
    int subgradient_stall = 50;  // stop after this many iters without 1e-8 gain
    int newton_iters = 40;       // per barrier stage
    double barrier_t0 = 10.0;
    double barrier_mu = 15.0;
    double barrier_gap = 1e-9;  // target bound on the remaining optimality gap
    std::uint64_t seed = 0;
    int workers = 1;
    std::string cache_dir;  // empty disables the pair cache
};

struct DistanceResult {
    double value = 0.0;
    RVector witness;  // coefficients over the traceless orthonormal basis
    double lipschitz_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

// For Dirac operators of the K-term form the commutator with a left
// multiplication reduces over the right-action factor:
//   [D, rho_l(a)] = sum_i omega_i (x) I_n (x) [K_i, a],
// so its spectral norm equals that of sum_i omega_i (x) [K_i, a] on the
// k*n-dimensional reduced space. The model stores G_b = i * reduced([.,b])
// per basis element b, which is hermitian, and their matricized stack for
// fast evaluation of G(x) = sum_k x_k G_k.
struct CommutatorModel {
    std::vector<Matrix> basis;      // hermitian traceless orthonormal
    std::vector<Matrix> generators; // G_k, hermitian, reduced_dim square
    Matrix stacked;                 // reduced_dim^2 x m, column k = vec(G_k)
    int reduced_dim = 0;
    int n = 0;

    int size() const { return static_cast<int>(generators.size()); }
    Matrix evaluate(const RVector& coeffs) const;        // G(x)
    Matrix reconstruct(const RVector& coeffs) const;     // a = sum x_k b_k
};

CommutatorModel build_commutator_model(const FiniteSpectralTriple& t,
                                       std::vector<Matrix> traceless_basis);

// Spectral norm of [D, rho_l(a)] on the full Hilbert space, by power
// iteration. Oracle-grade but dense; the solver itself uses the reduced
// model above, which agrees with this by the factorization identity.
double lipschitz_seminorm(const FiniteSpectralTriple& t, const Matrix& a);

// Maximizes s1(a) - s2(a) over the unit ball of the Lipschitz seminorm,
// restricted to the span of the model basis. Normalized subgradient ascent
// supplies feasible lower bounds; a log-det barrier Newton path then drives
// the gap below opts.barrier_gap. The returned witness is rescaled to be
// feasible, so the value is a certified lower bound.
DistanceResult connes_distance_model(const CommutatorModel& model, const LocalizedState& s1,
                                     const LocalizedState& s2, const DistanceOptions& opts);

// Convenience wrapper building the model from an algebra basis.
DistanceResult connes_distance(const FiniteSpectralTriple& t, const AlgebraBasis& basis,
                               const LocalizedState& s1, const LocalizedState& s2,
                               const DistanceOptions& opts);

struct DistanceMatrix {
    int size = 0;
    RMatrix values;
    std::vector<std::uint8_t> pair_converged;  // row-major size*size, diagonal 1
    std::vector<RVector> witnesses;            // upper-triangle pairs, i<j row-major
    BasisKind basis_kind = BasisKind::MatrixUnits;
    DistanceOptions opts;

    bool all_converged() const;
    // Witness coefficients for the pair i<j over the traceless orthonormal basis.
    const RVector& witness_at(int i, int j) const;
};

// Solves all N(N-1)/2 pairs, optionally in parallel and through a disk
// cache keyed by triple, basis kind, solver options, and the state vectors.
DistanceMatrix distance_matrix(const FiniteSpectralTriple& t, const AlgebraBasis& basis,
                               const StateEnsemble& states, const DistanceOptions& opts);

// Largest value of d(i,k) - d(i,j) - d(j,k) over all triples; <= 0 means the
// triangle inequality holds exactly.
double max_triangle_violation(const RMatrix& dm);

}  // namespace fuzzyvis
