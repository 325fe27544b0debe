#include "fuzzyvis/clifford.hpp"

#include <cmath>
#include <string>

#include "fuzzyvis/errors.hpp"

namespace fuzzyvis {

namespace {

const cxd I_UNIT(0.0, 1.0);

Matrix pauli(int i) {
    Matrix s(2, 2);
    s.setZero();
    switch (i) {
        case 1:
            s(0, 1) = 1.0;
            s(1, 0) = 1.0;
            break;
        case 2:
            s(0, 1) = -I_UNIT;
            s(1, 0) = I_UNIT;
            break;
        default:
            s(0, 0) = 1.0;
            s(1, 1) = -1.0;
            break;
    }
    return s;
}

// Chain sigma_z x ... x sigma_z x head x I x ... x I with `lead` z factors
// and total length `len`.
Matrix sigma_chain(int lead, const Matrix& head, int len) {
    Matrix out = Matrix::Identity(1, 1);
    for (int a = 0; a < lead; ++a) out = kron(out, pauli(3));
    out = kron(out, head);
    for (int a = lead + 1; a < len; ++a) out = kron(out, Matrix::Identity(2, 2));
    return out;
}

// Hermitian generators A_1..A_d with A_i A_j + A_j A_i = 2 delta_ij I on
// C^(2^floor(d/2)).
std::vector<Matrix> hermitian_generators(int d) {
    const int m = d / 2;
    std::vector<Matrix> out;
    out.reserve(d);
    for (int a = 0; a < m; ++a) {
        out.push_back(sigma_chain(a, pauli(1), m));
        out.push_back(sigma_chain(a, pauli(2), m));
    }
    if (d % 2 == 1) {
        Matrix z = Matrix::Identity(1, 1);
        for (int a = 0; a < m; ++a) z = kron(z, pauli(3));
        if (m == 0) z = Matrix::Identity(1, 1);
        out.push_back(z);
    }
    return out;
}

CliffordModule module_1_3() {
    CliffordModule cm;
    cm.p = 1;
    cm.q = 3;
    cm.ko_dimension = 2;
    const Matrix i2 = Matrix::Identity(2, 2);
    Matrix g0(4, 4);
    g0.setZero();
    g0.block(0, 2, 2, 2) = i2;
    g0.block(2, 0, 2, 2) = i2;
    cm.gammas.push_back(g0);
    for (int j = 1; j <= 3; ++j) {
        Matrix g(4, 4);
        g.setZero();
        g.block(0, 2, 2, 2) = pauli(j);
        g.block(2, 0, 2, 2) = -pauli(j);
        cm.gammas.push_back(g);
    }
    // chirality = i g0 g1 g2 g3 = diag(-1,-1,1,1)
    cm.chirality = I_UNIT * cm.gammas[0] * cm.gammas[1] * cm.gammas[2] * cm.gammas[3];
    return cm;
}

CliffordModule module_0_3() {
    CliffordModule cm;
    cm.p = 0;
    cm.q = 3;
    cm.ko_dimension = 3;
    for (int j = 1; j <= 3; ++j) cm.gammas.push_back(I_UNIT * pauli(j));
    cm.chirality = Matrix::Identity(2, 2);
    return cm;
}

}  // namespace

CliffordModule clifford_generators(int p, int q) {
    if (p < 0 || q < 0) throw ArgumentError("clifford_generators: p and q must be nonnegative");
    const int d = p + q;
    if (d < 1 || d > 6)
        throw NotImplementedError("clifford_generators: signature (" + std::to_string(p) + "," +
                                  std::to_string(q) + ") not implemented; p+q must lie in 1..6");
    if (p == 1 && q == 3) return module_1_3();
    if (p == 0 && q == 3) return module_0_3();

    CliffordModule cm;
    cm.p = p;
    cm.q = q;
    cm.ko_dimension = ((q - p) % 8 + 8) % 8;
    const std::vector<Matrix> herm = hermitian_generators(d);
    for (int i = 0; i < p; ++i) cm.gammas.push_back(herm[i]);
    for (int i = p; i < d; ++i) cm.gammas.push_back(I_UNIT * herm[i]);

    const int k = cm.dim();
    if (d % 2 == 1) {
        cm.chirality = Matrix::Identity(k, k);
    } else {
        Matrix prod = Matrix::Identity(k, k);
        for (const Matrix& g : cm.gammas) prod = prod * g;
        // prod^2 = alpha I with |alpha| = 1; dividing by a square root of
        // alpha yields a unitary involution, hence a hermitian chirality.
        const cxd alpha = (prod * prod)(0, 0);
        cm.chirality = prod / std::sqrt(alpha);
    }
    return cm;
}

}  // namespace fuzzyvis
