#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fuzzyvis/su2.hpp"
#include "fuzzyvis/triple.hpp"

namespace fuzzyvis {

// A pure state of M_n(C), i.e. a unit vector psi, with its localization data.
// coordinates are the expectations <psi| J_i |psi> of the hermitianized
// generators J_i = i L_i, which are real for hermitian J_i.
struct LocalizedState {
    CVector vector;
    double dispersion = 0.0;  // summed variance of the three J_i
    std::array<double, 3> coordinates{0.0, 0.0, 0.0};
    int seed_index = 0;
};

struct StateEnsemble {
    std::vector<LocalizedState> states;
    double coulomb_g = 0.0;
    int generator_n = 0;
    DeformationParams deformation;
    std::uint64_t rng_seed = 0;
};

// delta(psi) = sum_i (<J_i^2> - <J_i>^2) >= 0. Throws on non-unit input.
double dispersion_proxy(const CVector& psi, const Su2Generators& g);

// Euclidean norm of the coordinate difference; symmetric, zero iff the
// coordinate triples coincide.
double distance_proxy(const LocalizedState& a, const LocalizedState& b);

struct StateGenOptions {
    int restarts = 8;
    int max_iters = 5000;
    double rel_tol = 1e-9;
    int workers = 1;  // restarts of one state may run in parallel
};

// Default repulsion coupling, 5% of the coordinate-sphere radius l = (n-1)/2.
double default_coulomb_g(int n);

// Sequentially minimizes E(psi) = delta(psi) + sum_s g / d(s, psi) over unit
// vectors, holding earlier states fixed, by projected gradient descent with
// seeded random restarts. States that fail to descend are skipped; the
// ensemble returns with the achieved count. Deterministic given (seed, opts).
StateEnsemble generate_states(const Su2Generators& g, int target_count, double coulomb_g,
                              std::uint64_t seed, const StateGenOptions& opts = {});

// Extends an existing ensemble in place to target_count total states using
// the same rules; used by the auto-count pipeline after an initial batch.
void extend_states(StateEnsemble& ensemble, const Su2Generators& g, int target_count,
                   const StateGenOptions& opts = {});

// Mean over states of dispersion / (l(l+1)): the dimensionless localization
// measure whose square root is the length scale entering the state-count
// heuristic (coherent states give 1/(l+1)).
double mean_relative_dispersion(const StateEnsemble& ensemble, const Su2Generators& g);

}  // namespace fuzzyvis
