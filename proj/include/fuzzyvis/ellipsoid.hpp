#pragma once

#include <array>
#include <cstdint>

#include "fuzzyvis/linalg.hpp"

namespace fuzzyvis {

struct EllipsoidFit {
    std::array<double, 3> axes{};    // semi-axes sorted ascending
    std::array<double, 2> angles{};  // (theta, phi) of the largest axis direction
    std::array<double, 3> center{};  // centroid of the fitted points
    double residual_per_dof = 0.0;
    int iterations = 0;
};

struct EllipsoidFitOptions {
    int starts = 16;  // Nelder-Mead multistarts around the principal-axis init
    int max_iter = 600;
    double tol = 1e-12;  // relative simplex spread
    std::uint64_t seed = 0;
};

// Least-squares fit of a centered ellipsoid in algebraic form: minimizes
// sum over points of (sum_k ((x - c) . u_k)^2 / a_k^2 - 1)^2 with c fixed at
// the centroid and the orthonormal frame u_k parametrized by three Euler
// angles, of which the roll around the largest axis is a reporting nuisance.
// Throws ArgumentError for fewer than 6 points and NumericalError when the
// best fit collapses an axis below 1e-6.
EllipsoidFit fit_ellipsoid(const RMatrix& points, const EllipsoidFitOptions& opts = {});

// Semi-axes predicted for the deformed round geometry: the reciprocal pair
// products of the three plane couplings, sorted ascending. Throws
// ArgumentError on nonpositive couplings.
std::array<double, 3> expected_axes(double c12, double c13, double c23);

// N points exactly on the ellipsoid surface with semi-axes a, spread by
// minimizing the pairwise Coulomb energy of the points under the surface
// constraint. Rows of the result satisfy sum_k (x_k/a_k)^2 = 1 to roundoff.
RMatrix sample_ellipsoid(const std::array<double, 3>& a, int npoints, std::uint64_t seed,
                         int max_iter = 2000);

}  // namespace fuzzyvis
