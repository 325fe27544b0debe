#include "fuzzyvis/embed.hpp"

#include <cmath>

#include <Eigen/QR>

#include "fuzzyvis/errors.hpp"

namespace fuzzyvis {

namespace {

void check_square(const RMatrix& dm) {
    if (dm.rows() != dm.cols() || dm.rows() < 1) {
        throw ArgumentError("dissimilarity matrix must be square and nonempty");
    }
}

RMatrix bmatrix(const RMatrix& dm, const RMatrix& dist, const RMatrix* weights) {
    const int n = static_cast<int>(dm.rows());
    RMatrix b = RMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double w = weights ? (*weights)(i, j) : 1.0;
            double v = 0.0;
            if (dist(i, j) > 0.0) v = -w * dm(i, j) / dist(i, j);
            b(i, j) = v;
            diag -= v;
        }
        b(i, i) = diag;
    }
    return b;
}

}  // namespace

RMatrix embedded_distances(const RMatrix& coords) {
    const int n = static_cast<int>(coords.rows());
    RMatrix d = RMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = (coords.row(i) - coords.row(j)).norm();
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return d;
}

double embedding_stress(const RMatrix& dm, const RMatrix& coords, const RMatrix* weights) {
    const int n = static_cast<int>(dm.rows());
    const RMatrix dist = embedded_distances(coords);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double w = weights ? (*weights)(i, j) : 1.0;
            const double r = dm(i, j) - dist(i, j);
            s += w * r * r;
        }
    }
    return s;
}

EmbeddingResult smacof_embed(const RMatrix& dm, int dim, const RMatrix* weights,
                             std::uint64_t seed, int max_iter, double eps) {
    check_square(dm);
    if (dim < 1) throw ArgumentError("embedding dimension must be positive");
    if (dm.cwiseAbs().maxCoeff() == 0.0) {
        throw ArgumentError("dissimilarity matrix is identically zero; embedding is degenerate");
    }
    if (weights &&
        (weights->rows() != dm.rows() || weights->cols() != dm.cols())) {
        throw ArgumentError("weight matrix shape does not match dissimilarities");
    }
    const int n = static_cast<int>(dm.rows());

    // scale of random init roughly matches the data spread
    const double scale = dm.maxCoeff() / (2.0 * std::sqrt(static_cast<double>(dim)));
    GaussianRng rng(seed);
    RMatrix x(n, dim);
    for (int i = 0; i < n; ++i)
        for (int d = 0; d < dim; ++d) x(i, d) = scale * rng.normal();

    RMatrix vpinv;  // weight Laplacian pseudoinverse, only for nonuniform weights
    if (weights) {
        RMatrix v = RMatrix::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            double diag = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                v(i, j) = -(*weights)(i, j);
                diag += (*weights)(i, j);
            }
            v(i, i) = diag;
        }
        vpinv = v.completeOrthogonalDecomposition().pseudoInverse();
    }

    EmbeddingResult res;
    res.dim = dim;
    res.seed = seed;
    double stress = embedding_stress(dm, x, weights);
    res.stress_history.push_back(stress);
    for (int it = 0; it < max_iter; ++it) {
        const RMatrix dist = embedded_distances(x);
        const RMatrix b = bmatrix(dm, dist, weights);
        if (weights) {
            x = vpinv * (b * x);
        } else {
            x = (b * x) / static_cast<double>(n);
        }
        const double next = embedding_stress(dm, x, weights);
        res.stress_history.push_back(next);
        ++res.iterations;
        const double denom = std::max(stress, 1e-300);
        if (std::abs(stress - next) / denom < eps || next == 0.0) {
            stress = next;
            res.converged = true;
            break;
        }
        stress = next;
    }
    res.coords = x;
    res.stress = stress;
    return res;
}

EmbeddingResult embed_with_restarts(const RMatrix& dm, int dim, const RMatrix* weights,
                                    const SmacofOptions& opts) {
    EmbeddingResult best;
    bool have = false;
    for (int r = 0; r < std::max(1, opts.restarts); ++r) {
        EmbeddingResult cur = smacof_embed(dm, dim, weights, derive_seed(opts.seed, r),
                                           opts.max_iter, opts.eps);
        if (!have || cur.stress < best.stress) {  // strict: ties keep lowest index
            best = cur;
            have = true;
        }
    }
    best.correlations = correlation_coefficients(dm, best.coords);
    return best;
}

RVector correlation_coefficients(const RMatrix& dm, const RMatrix& coords) {
    check_square(dm);
    const int n = static_cast<int>(dm.rows());
    if (coords.rows() != n) throw ArgumentError("coordinate count does not match matrix size");
    const RMatrix dist = embedded_distances(coords);
    RVector out = RVector::Zero(n);
    if (n < 3) return out;  // fewer than two off-diagonal pairs per row
    for (int i = 0; i < n; ++i) {
        double ma = 0.0, mb = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            ma += dm(i, j);
            mb += dist(i, j);
        }
        ma /= (n - 1);
        mb /= (n - 1);
        double sab = 0.0, saa = 0.0, sbb = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double da = dm(i, j) - ma;
            const double db = dist(i, j) - mb;
            sab += da * db;
            saa += da * da;
            sbb += db * db;
        }
        if (saa < 1e-30 || sbb < 1e-30) {
            out[i] = 0.0;  // constant row carries no ordering information
        } else {
            out[i] = sab / std::sqrt(saa * sbb);
        }
    }
    return out;
}

}  // namespace fuzzyvis
