#pragma once

#include <cstdint>
#include <vector>

#include "fuzzyvis/linalg.hpp"

namespace fuzzyvis {

struct SmacofOptions {
    int max_iter = 500;
    double eps = 1e-9;  // relative stress-change stopping threshold
    int restarts = 8;
    std::uint64_t seed = 0;
};

struct EmbeddingResult {
    RMatrix coords;  // N x dim
    double stress = 0.0;
    std::vector<double> stress_history;  // non-increasing along the majorization
    RVector correlations;                // per-point row agreement, in [-1, 1]
    int dim = 0;
    int iterations = 0;
    bool converged = false;
    std::uint64_t seed = 0;
};

// Pairwise Euclidean distances of embedded points.
RMatrix embedded_distances(const RMatrix& coords);

// Raw stress sum over i<j of w_ij (delta_ij - d_ij)^2.
double embedding_stress(const RMatrix& dm, const RMatrix& coords, const RMatrix* weights);

// One SMACOF run from a seeded random start. Weights may be null for the
// uniform case, which uses the closed-form (1/N) B(X) X update; otherwise the
// Guttman transform uses the pseudoinverse of the weight Laplacian. Throws
// ArgumentError when the dissimilarity matrix is all zero or not square.
EmbeddingResult smacof_embed(const RMatrix& dm, int dim, const RMatrix* weights,
                             std::uint64_t seed, int max_iter, double eps);

// Best of opts.restarts runs; ties in final stress resolve to the lowest
// restart index, keeping the result reproducible. Fills correlations.
EmbeddingResult embed_with_restarts(const RMatrix& dm, int dim, const RMatrix* weights,
                                    const SmacofOptions& opts);

// Per-point Pearson correlation between row i of the input dissimilarities
// and row i of the embedded distances, diagonal excluded. A constant row on
// either side yields 0 for that point.
RVector correlation_coefficients(const RMatrix& dm, const RMatrix& coords);

}  // namespace fuzzyvis
