#include "fuzzyvis/algebra.hpp"

#include <cmath>
#include <cstdio>

#include "fuzzyvis/errors.hpp"

namespace fuzzyvis {

namespace {

double trace_inner(const Matrix& a, const Matrix& b) {
    // real on hermitian pairs
    return (a.adjoint() * b).trace().real();
}

// Appends candidate to basis if its Gram-Schmidt residual against the
// accepted (orthonormalized) set exceeds tol. `ortho` tracks the
// orthonormalized accepted vectors, `kept` the normalized originals.
void gram_schmidt_filter(const Matrix& candidate, double tol, std::vector<Matrix>& ortho,
                         std::vector<Matrix>& kept) {
    const double norm0 = std::sqrt(trace_inner(candidate, candidate));
    if (norm0 < 1e-14) return;
    Matrix resid = candidate / norm0;
    for (const Matrix& u : ortho) resid -= trace_inner(u, resid) * u;
    // second pass stabilizes near-dependent candidates
    for (const Matrix& u : ortho) resid -= trace_inner(u, resid) * u;
    const double rnorm = std::sqrt(trace_inner(resid, resid));
    if (rnorm <= tol) return;
    ortho.push_back(resid / rnorm);
    kept.push_back(candidate / norm0);
}

}  // namespace

std::string basis_kind_name(BasisKind k) {
    return k == BasisKind::Pbw ? "pbw" : "matrix_units";
}

AlgebraBasis pbw_basis(const Su2Generators& g, int max_degree, double tol) {
    if (max_degree < 0) throw ArgumentError("pbw_basis: max_degree must be >= 0");
    if (tol <= 0.0) throw ArgumentError("pbw_basis: tol must be > 0");
    const int n = g.n;

    AlgebraBasis basis;
    basis.kind = BasisKind::Pbw;
    basis.gram_tolerance = tol;
    basis.n = n;

    std::vector<Matrix> ortho;
    const cxd iu(0.0, 1.0);
    for (int degree = 0; degree <= max_degree; ++degree) {
        for (int a = degree; a >= 0; --a) {
            for (int b = degree - a; b >= 0; --b) {
                const int c = degree - a - b;
                Matrix mono = Matrix::Identity(n, n);
                for (int i = 0; i < a; ++i) mono = mono * g.L[0];
                for (int i = 0; i < b; ++i) mono = mono * g.L[1];
                for (int i = 0; i < c; ++i) mono = mono * g.L[2];
                gram_schmidt_filter(0.5 * (mono + mono.adjoint()), tol, ortho, basis.elements);
                gram_schmidt_filter(0.5 * iu * (mono - mono.adjoint()), tol, ortho,
                                    basis.elements);
            }
        }
    }

    if (max_degree >= n - 1 && basis.rank() < n * n)
        std::fprintf(stderr,
                     "warning: pbw_basis rank %d below full span %d at degree %d; tolerance %g "
                     "may be too coarse\n",
                     basis.rank(), n * n, max_degree, tol);
    return basis;
}

AlgebraBasis matrix_unit_basis(int n) {
    if (n < 1) throw ArgumentError("matrix_unit_basis: n must be >= 1");
    AlgebraBasis basis;
    basis.kind = BasisKind::MatrixUnits;
    basis.gram_tolerance = 0.0;
    basis.n = n;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const cxd iu(0.0, 1.0);
    for (int j = 0; j < n; ++j) {
        Matrix e = Matrix::Zero(n, n);
        e(j, j) = 1.0;
        basis.elements.push_back(e);
    }
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            Matrix re = Matrix::Zero(n, n);
            re(j, k) = inv_sqrt2;
            re(k, j) = inv_sqrt2;
            basis.elements.push_back(re);
            Matrix im = Matrix::Zero(n, n);
            im(j, k) = iu * inv_sqrt2;
            im(k, j) = -iu * inv_sqrt2;
            basis.elements.push_back(im);
        }
    }
    return basis;
}

std::vector<Matrix> traceless_orthonormal_basis(const AlgebraBasis& basis, double tol) {
    const int n = basis.n;
    std::vector<Matrix> ortho;
    std::vector<Matrix> kept;
    for (const Matrix& el : basis.elements) {
        Matrix traceless = el;
        traceless -= (el.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
        gram_schmidt_filter(traceless, tol, ortho, kept);
    }
    return ortho;
}

}  // namespace fuzzyvis
