#include "fuzzyvis/triple.hpp"

#include <cmath>
#include <string>

#include "fuzzyvis/errors.hpp"

namespace fuzzyvis {

Matrix left_action(const FiniteSpectralTriple& t, const Matrix& a) {
    const int k = t.clifford.dim();
    const Matrix inner = kron(Matrix::Identity(t.n, t.n), a);
    return kron(Matrix::Identity(k, k), inner);
}

Matrix right_action(const FiniteSpectralTriple& t, const Matrix& a) {
    const int k = t.clifford.dim();
    const Matrix inner = kron(a.transpose(), Matrix::Identity(t.n, t.n));
    return kron(Matrix::Identity(k, k), inner);
}

FiniteSpectralTriple build_general_dirac(const CliffordModule& clifford,
                                         const std::vector<KTerm>& k_terms, int n) {
    if (n < 1) throw ArgumentError("build_general_dirac: n must be >= 1");
    const int k = clifford.dim();
    const int dim = k * n * n;

    Matrix d = Matrix::Zero(dim, dim);
    const Matrix in = Matrix::Identity(n, n);
    for (std::size_t i = 0; i < k_terms.size(); ++i) {
        const KTerm& term = k_terms[i];
        const std::string label = "term " + std::to_string(i);
        if (term.omega.rows() != k || term.omega.cols() != k)
            throw ArgumentError("build_general_dirac: " + label + ": omega must be " +
                                std::to_string(k) + "x" + std::to_string(k));
        if (term.K.rows() != n || term.K.cols() != n)
            throw ArgumentError("build_general_dirac: " + label + ": K must be " +
                                std::to_string(n) + "x" + std::to_string(n));
        if (term.eps_prime != 1 && term.eps_prime != -1)
            throw ArgumentError("build_general_dirac: " + label + ": eps' must be +1 or -1");
        if (term.K.cwiseAbs().maxCoeff() == 0.0) continue;

        const int so = hermiticity_sign(term.omega);
        const int sk = hermiticity_sign(term.K);
        if (so == 0)
            throw ArgumentError("build_general_dirac: " + label +
                                ": omega is neither hermitian nor anti-hermitian");
        if (sk == 0)
            throw ArgumentError("build_general_dirac: " + label +
                                ": K is neither hermitian nor anti-hermitian");
        if (so != sk)
            throw ArgumentError("build_general_dirac: " + label +
                                ": omega and K hermiticity types differ, the term is not "
                                "self-adjoint");

        const Matrix block = kron(in, term.K) +
                             static_cast<double>(term.eps_prime) * kron(term.K.conjugate(), in);
        d += kron(term.omega, block);
    }

    FiniteSpectralTriple t;
    t.clifford = clifford;
    t.n = n;
    t.dirac = std::move(d);
    t.k_terms = k_terms;
    return t;
}

FiniteSpectralTriple build_deformed_dirac(int n, const DeformationParams& params) {
    if (n < 1) throw ArgumentError("build_deformed_dirac: n must be >= 1");
    if (!std::isfinite(params.c0) || !std::isfinite(params.c12) || !std::isfinite(params.c13) ||
        !std::isfinite(params.c23))
        throw ArgumentError("build_deformed_dirac: deformation coefficients must be finite");

    const CliffordModule cm = clifford_generators(1, 3);
    const Su2Generators su2 = su2_generators(n);
    const Matrix& g0 = cm.gammas[0];
    const Matrix omega12 = g0 * cm.gammas[1] * cm.gammas[2];
    const Matrix omega13 = g0 * cm.gammas[1] * cm.gammas[3];
    const Matrix omega23 = g0 * cm.gammas[2] * cm.gammas[3];

    std::vector<KTerm> terms;
    terms.push_back({g0, 0.5 * params.c0 * Matrix::Identity(n, n), 1});
    terms.push_back({omega12, params.c12 * su2.L[2], 1});
    terms.push_back({omega13, params.c13 * su2.L[1], 1});
    terms.push_back({omega23, params.c23 * su2.L[0], 1});

    FiniteSpectralTriple t = build_general_dirac(cm, terms, n);
    t.su2 = su2;
    t.deformation = params;
    t.from_deformed_constructor = true;
    return t;
}

ValidationReport validate_triple(const FiniteSpectralTriple& t, int trials, double tol,
                                 std::uint64_t seed) {
    if (trials < 1) throw ArgumentError("validate_triple: trials must be >= 1");
    ValidationReport rep;
    rep.tol = tol;
    rep.hermiticity_defect = hermiticity_defect(t.dirac);

    GaussianRng rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        const Matrix a = random_complex_matrix(t.n, t.n, rng);
        const Matrix b = random_complex_matrix(t.n, t.n, rng);
        const Matrix rr = right_action(t, a);
        const Matrix ll = left_action(t, b);
        const Matrix c1 = t.dirac * rr - rr * t.dirac;
        const Matrix c2 = c1 * ll - ll * c1;
        rep.first_order_defect = std::max(rep.first_order_defect, c2.cwiseAbs().maxCoeff());
    }

    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (t.dirac + t.dirac.adjoint()),
                                             Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("validate_triple: eigensolver failed");
    const RVector ev = es.eigenvalues();
    const Eigen::Index nev = ev.size();
    for (Eigen::Index i = 0; i < nev; ++i)
        rep.symmetry_defect = std::max(rep.symmetry_defect, std::abs(ev(i) + ev(nev - 1 - i)));

    rep.symmetry_checked = t.from_deformed_constructor;
    rep.pass = rep.hermiticity_defect < tol && rep.first_order_defect < tol &&
               (!rep.symmetry_checked || rep.symmetry_defect < tol);
    return rep;
}

}  // namespace fuzzyvis
