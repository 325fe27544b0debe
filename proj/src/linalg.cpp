#include "fuzzyvis/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "fuzzyvis/errors.hpp"

namespace fuzzyvis {

namespace {

// The hot matrices are small (tens of rows); BLAS-level threading only adds
// dispatch overhead there and would oversubscribe the pair-level pool. Set
// before the first BLAS call, which happens well after static init.
[[maybe_unused]] const bool kBlasSingleThread = [] {
    ::setenv("OPENBLAS_NUM_THREADS", "1", 0);
    ::setenv("OMP_NUM_THREADS", "1", 0);
    return true;
}();

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

int hermiticity_sign(const Matrix& m, double tol) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale) return 1;
    if ((m + m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale) return -1;
    return 0;
}

double spectral_norm_hermitian(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("hermitian eigensolver failed");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_norm_power(const Matrix& a, double rel_tol, int max_steps) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    const Matrix aa = a.adjoint() * a;
    const double scale = aa.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    GaussianRng rng(0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(a.rows()));
    CVector v(aa.rows());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
    v.normalize();
    double prev = 0.0;
    for (int step = 0; step < max_steps; ++step) {
        CVector w = aa * v;
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        v = w / norm;
        if (step > 0 && std::abs(norm - prev) <= rel_tol * norm) return std::sqrt(norm);
        prev = norm;
    }
    throw NumericalError("power iteration did not converge, residual " +
                         std::to_string(std::abs(prev)));
}

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t label) {
    std::uint64_t s = master ^ (0x6a09e667f3bcc909ull + label * 0x9e3779b97f4a7c15ull);
    splitmix64(s);
    return splitmix64(s);
}

GaussianRng::GaussianRng(std::uint64_t seed) : s_(seed) {
    // Warm up so nearby seeds decorrelate.
    splitmix64(s_);
    splitmix64(s_);
}

std::uint64_t GaussianRng::raw() { return splitmix64(s_); }

double GaussianRng::uniform() {
    return static_cast<double>(raw() >> 11) * 0x1.0p-53;
}

double GaussianRng::normal() {
    if (have_cache_) {
        have_cache_ = false;
        return cache_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    cache_ = r * std::sin(phi);
    have_cache_ = true;
    return r * std::cos(phi);
}

cxd GaussianRng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

Matrix random_complex_matrix(int rows, int cols, GaussianRng& rng) {
    Matrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
    return m;
}

Matrix random_hermitian(int n, GaussianRng& rng) {
    const Matrix m = random_complex_matrix(n, n, rng);
    return 0.5 * (m + m.adjoint());
}

}  // namespace fuzzyvis
