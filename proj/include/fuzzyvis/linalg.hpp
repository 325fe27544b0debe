#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace fuzzyvis {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Kronecker product A (x) B with the row/column blocks of A scaling copies of B.
Matrix kron(const Matrix& a, const Matrix& b);

// Max absolute entry of M - M^dagger. Zero for hermitian M.
double hermiticity_defect(const Matrix& m);

// +1 hermitian, -1 anti-hermitian, 0 neither (within tol on the max entry).
int hermiticity_sign(const Matrix& m, double tol = 1e-12);

// Largest |eigenvalue| of a hermitian matrix, i.e. its spectral norm.
double spectral_norm_hermitian(const Matrix& h);

// Spectral norm of a general square matrix by power iteration on A^dagger A.
// Throws NumericalError if the iteration fails to settle within max_steps.
double spectral_norm_power(const Matrix& a, double rel_tol = 1e-12, int max_steps = 20000);

// SplitMix64 step, used to derive independent sub-seeds from one master seed.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic sub-seed for a labeled task under a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t label);

// Deterministic standard-normal sampler (Box-Muller over mt19937_64), so
// streams do not depend on the standard library's distribution internals.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed);
    double normal();
    cxd complex_normal();  // independent N(0,1) real and imaginary parts
    double uniform();      // [0,1)
    std::uint64_t raw();

private:
    std::uint64_t s_;
    double cache_ = 0.0;
    bool have_cache_ = false;
};

// Random matrix with independent complex standard-normal entries.
Matrix random_complex_matrix(int rows, int cols, GaussianRng& rng);

// Random hermitian matrix (H + H^dagger)/2 from a complex normal draw.
Matrix random_hermitian(int n, GaussianRng& rng);

}  // namespace fuzzyvis
