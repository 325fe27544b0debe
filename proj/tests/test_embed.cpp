#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Geometry>

#include "fuzzyvis/ellipsoid.hpp"
#include "fuzzyvis/embed.hpp"
#include "fuzzyvis/errors.hpp"
#include "fuzzyvis/histogram.hpp"
#include "fuzzyvis/linalg.hpp"

using namespace fuzzyvis;

namespace {

RMatrix random_coords(int n, int dim, std::uint64_t seed) {
    GaussianRng rng(seed);
    RMatrix x(n, dim);
    for (int i = 0; i < n; ++i)
        for (int d = 0; d < dim; ++d) x(i, d) = rng.normal();
    return x;
}

RMatrix all_equal_dm(int n, double value) {
    RMatrix dm = RMatrix::Constant(n, n, value);
    dm.diagonal().setZero();
    return dm;
}

Eigen::Matrix3d fixed_rotation() {
    return Eigen::AngleAxisd(0.7, Eigen::Vector3d(1.0, 2.0, 3.0).normalized())
        .toRotationMatrix();
}

}  // namespace

TEST_CASE("two points embed at their prescribed separation") {
    RMatrix dm = all_equal_dm(2, 1.0);
    const EmbeddingResult r = smacof_embed(dm, 3, nullptr, 11, 500, 1e-9);
    CHECK(r.stress < 1e-12);
    CHECK((r.coords.row(0) - r.coords.row(1)).norm() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.coords.rows() == 2);
    CHECK(r.coords.cols() == 3);
}

TEST_CASE("an equilateral triangle is exactly realizable in the plane") {
    SmacofOptions opts;
    opts.seed = 5;
    const EmbeddingResult r = embed_with_restarts(all_equal_dm(3, 2.0), 2, nullptr, opts);
    CHECK(r.stress < 1e-10);
    const RMatrix d = embedded_distances(r.coords);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            CHECK(d(i, j) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("four equidistant points fit in three dimensions but not two") {
    const RMatrix dm = all_equal_dm(4, 1.0);
    SmacofOptions opts;
    opts.seed = 9;
    const EmbeddingResult flat = embed_with_restarts(dm, 2, nullptr, opts);
    const EmbeddingResult solid = embed_with_restarts(dm, 3, nullptr, opts);
    CHECK(flat.stress > 1e-4);   // the regular tetrahedron needs a third axis
    CHECK(flat.stress < 1.0);
    CHECK(solid.stress < 1e-10);
}

TEST_CASE("degenerate dissimilarity input is rejected") {
    CHECK_THROWS_AS(smacof_embed(RMatrix::Zero(4, 4), 2, nullptr, 0, 100, 1e-9),
                    ArgumentError);
    CHECK_THROWS_AS(smacof_embed(RMatrix::Zero(3, 4), 2, nullptr, 0, 100, 1e-9),
                    ArgumentError);
    CHECK_THROWS_AS(smacof_embed(all_equal_dm(3, 1.0), 0, nullptr, 0, 100, 1e-9),
                    ArgumentError);
    RMatrix wrongw = RMatrix::Ones(2, 2);
    CHECK_THROWS_AS(smacof_embed(all_equal_dm(3, 1.0), 2, &wrongw, 0, 100, 1e-9),
                    ArgumentError);
}

TEST_CASE("a realizable six-point configuration is recovered") {
    const RMatrix truth = random_coords(6, 3, 2024);
    const RMatrix dm = embedded_distances(truth);
    SmacofOptions opts;
    opts.seed = 1;
    const EmbeddingResult r = embed_with_restarts(dm, 3, nullptr, opts);
    CHECK(r.stress < 1e-8);
    REQUIRE(r.correlations.size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(r.correlations[i] > 0.9999);
    const RMatrix d = embedded_distances(r.coords);
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            CHECK(d(i, j) == doctest::Approx(dm(i, j)).epsilon(1e-5));
}

TEST_CASE("embedded distances do not change under rotation and translation") {
    const RMatrix x = random_coords(7, 3, 31);
    const Eigen::Matrix3d q = fixed_rotation();
    RMatrix moved = x * q.transpose();
    moved.rowwise() += Eigen::RowVector3d(0.4, -1.2, 2.0);
    const RMatrix d0 = embedded_distances(x);
    const RMatrix d1 = embedded_distances(moved);
    CHECK((d0 - d1).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("per-point correlations flag perfect and uninformative rows") {
    const RMatrix x = random_coords(5, 3, 77);
    const RMatrix dm = embedded_distances(x);
    const RVector perfect = correlation_coefficients(dm, x);
    for (int i = 0; i < 5; ++i) CHECK(perfect[i] == doctest::Approx(1.0).epsilon(1e-12));

    // every row of an equilateral set is constant, so no ordering survives
    const RMatrix tri = all_equal_dm(3, 1.0);
    const RVector flat = correlation_coefficients(tri, random_coords(3, 2, 8));
    for (int i = 0; i < 3; ++i) CHECK(flat[i] == 0.0);

    // with two points each row has a single off-diagonal entry
    const RVector pair = correlation_coefficients(all_equal_dm(2, 1.0), random_coords(2, 2, 9));
    CHECK(pair[0] == 0.0);
    CHECK(pair[1] == 0.0);
}

TEST_CASE("restarted embedding is deterministic in its seed") {
    const RMatrix dm = embedded_distances(random_coords(5, 2, 444));
    SmacofOptions opts;
    opts.seed = 10;
    opts.restarts = 3;
    const EmbeddingResult a = embed_with_restarts(dm, 2, nullptr, opts);
    const EmbeddingResult b = embed_with_restarts(dm, 2, nullptr, opts);
    CHECK(a.coords == b.coords);
    CHECK(a.stress == b.stress);
    CHECK(a.seed == b.seed);

    opts.seed = 11;
    const EmbeddingResult c = embed_with_restarts(dm, 2, nullptr, opts);
    CHECK(a.coords != c.coords);
}

TEST_CASE("majorization never increases the stress") {
    const RMatrix dm = all_equal_dm(5, 1.0);  // not realizable in the plane
    const EmbeddingResult r = smacof_embed(dm, 2, nullptr, 3, 200, 1e-12);
    REQUIRE(r.stress_history.size() >= 2);
    for (std::size_t k = 1; k < r.stress_history.size(); ++k) {
        CHECK(r.stress_history[k] <= r.stress_history[k - 1] + 1e-12 * r.stress_history[0]);
    }
    CHECK(r.stress == doctest::Approx(r.stress_history.back()));
}

TEST_CASE("unit weights reproduce the uniform update") {
    const RMatrix dm = all_equal_dm(4, 1.0);
    const RMatrix ones = RMatrix::Ones(4, 4);
    const EmbeddingResult uni = smacof_embed(dm, 2, nullptr, 21, 400, 1e-9);
    const EmbeddingResult wtd = smacof_embed(dm, 2, &ones, 21, 400, 1e-9);
    CHECK(wtd.stress == doctest::Approx(uni.stress).epsilon(1e-6));
}

TEST_CASE("zero weight masks a corrupted dissimilarity") {
    const RMatrix truth = random_coords(6, 3, 99);
    RMatrix dm = embedded_distances(truth);
    const double original = dm(0, 1);
    dm(0, 1) = 5.0 * original;
    dm(1, 0) = dm(0, 1);
    RMatrix w = RMatrix::Ones(6, 6);
    w(0, 1) = 0.0;
    w(1, 0) = 0.0;
    SmacofOptions opts;
    opts.seed = 12;
    const EmbeddingResult r = embed_with_restarts(dm, 3, &w, opts);
    CHECK(r.stress < 1e-8);  // the masked entry carries no penalty
    const RMatrix d = embedded_distances(r.coords);
    // remaining distances pin the pair near its uncorrupted separation
    CHECK(d(0, 1) == doctest::Approx(original).epsilon(1e-3));
}

TEST_CASE("predicted semi-axes are the reciprocal pair products") {
    const std::array<double, 3> round = expected_axes(1.0, 1.0, 2.0);
    CHECK(round[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(round[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(round[2] == doctest::Approx(1.0).epsilon(1e-12));

    const std::array<double, 3> squashed = expected_axes(1.1, 1.1, 1.5);
    CHECK(squashed[0] == doctest::Approx(1.0 / (1.1 * 1.5)).epsilon(1e-12));
    CHECK(squashed[1] == doctest::Approx(1.0 / (1.1 * 1.5)).epsilon(1e-12));
    CHECK(squashed[2] == doctest::Approx(1.0 / (1.1 * 1.1)).epsilon(1e-12));
    CHECK(squashed[0] <= squashed[1]);
    CHECK(squashed[1] <= squashed[2]);

    CHECK_THROWS_AS(expected_axes(0.0, 1.0, 1.0), ArgumentError);
    CHECK_THROWS_AS(expected_axes(1.0, -2.0, 1.0), ArgumentError);
}

TEST_CASE("the fit recovers a rotated and shifted synthetic ellipsoid") {
    const std::array<double, 3> axes = {0.5, 0.5, 1.0};
    RMatrix pts = sample_ellipsoid(axes, 200, 3);
    const Eigen::Matrix3d q = fixed_rotation();
    pts = pts * q.transpose();
    pts.rowwise() += Eigen::RowVector3d(0.3, -0.2, 0.5);

    const EllipsoidFit fit = fit_ellipsoid(pts);
    CHECK(fit.axes[0] == doctest::Approx(0.5).epsilon(2e-3));
    CHECK(fit.axes[1] == doctest::Approx(0.5).epsilon(2e-3));
    CHECK(fit.axes[2] == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(fit.residual_per_dof < 1e-4);
    CHECK(std::abs(fit.center[0] - 0.3) < 0.05);
    CHECK(std::abs(fit.center[1] + 0.2) < 0.05);
    CHECK(std::abs(fit.center[2] - 0.5) < 0.05);
}

TEST_CASE("fitted axes are invariant under rotation of the point cloud") {
    const std::array<double, 3> axes = {0.6, 0.8, 1.1};
    const RMatrix pts = sample_ellipsoid(axes, 40, 17);
    const RMatrix rotated = pts * fixed_rotation().transpose();
    const EllipsoidFit plain = fit_ellipsoid(pts);
    const EllipsoidFit turned = fit_ellipsoid(rotated);
    for (int k = 0; k < 3; ++k) {
        CHECK(plain.axes[k] == doctest::Approx(turned.axes[k]).epsilon(1e-5));
        CHECK(plain.axes[k] == doctest::Approx(axes[k]).epsilon(1e-2));
    }
}

TEST_CASE("degenerate ellipsoid inputs are rejected") {
    CHECK_THROWS_AS(fit_ellipsoid(random_coords(5, 3, 1)), ArgumentError);
    CHECK_THROWS_AS(fit_ellipsoid(random_coords(6, 2, 1)), ArgumentError);

    // points collapsed to a tiny shell force an axis under the floor
    RMatrix tiny = sample_ellipsoid({1.0, 1.0, 1.0}, 40, 5) * 1e-8;
    CHECK_THROWS_AS(fit_ellipsoid(tiny), NumericalError);
}

TEST_CASE("surface samples satisfy the ellipsoid equation exactly") {
    const std::array<double, 3> axes = {0.5, 0.7, 1.3};
    const RMatrix pts = sample_ellipsoid(axes, 25, 42);
    REQUIRE(pts.rows() == 25);
    for (int i = 0; i < 25; ++i) {
        double q = 0.0;
        for (int k = 0; k < 3; ++k) q += (pts(i, k) / axes[k]) * (pts(i, k) / axes[k]);
        CHECK(q == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(sample_ellipsoid({0.0, 1.0, 1.0}, 4, 0), ArgumentError);
    CHECK_THROWS_AS(sample_ellipsoid({1.0, 1.0, 1.0}, 0, 0), ArgumentError);
}

TEST_CASE("repelled sphere samples reach the known optimal layouts") {
    // two charges end up antipodal
    const RMatrix two = sample_ellipsoid({1.0, 1.0, 1.0}, 2, 7);
    CHECK((two.row(0) - two.row(1)).norm() == doctest::Approx(2.0).epsilon(1e-6));

    // six charges form an octahedron: distances sqrt(2) twelve times, 2 three times
    const RMatrix six = sample_ellipsoid({1.0, 1.0, 1.0}, 6, 13);
    std::vector<double> dist;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) dist.push_back((six.row(i) - six.row(j)).norm());
    std::sort(dist.begin(), dist.end());
    for (int k = 0; k < 12; ++k) CHECK(dist[k] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
    for (int k = 12; k < 15; ++k) CHECK(dist[k] == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("upper triangle extraction walks rows in order") {
    RMatrix m(3, 3);
    m << 0.0, 1.5, 2.5,
         1.5, 0.0, 3.5,
         2.5, 3.5, 0.0;
    const std::vector<double> u = upper_triangle(m);
    REQUIRE(u.size() == 3);
    CHECK(u[0] == 1.5);
    CHECK(u[1] == 2.5);
    CHECK(u[2] == 3.5);
}

TEST_CASE("bin selection follows the interquartile rule with clamps") {
    CHECK(freedman_diaconis_bins({0.0, 1.0, 2.0, 3.0, 4.0}) == 2);
    // vanishing spread falls back to the square-root rule
    CHECK(freedman_diaconis_bins({5.0, 5.0, 5.0, 5.0}) == 2);
    CHECK(freedman_diaconis_bins({0.0, 0.0, 0.0}) == 1);
    // a lone outlier against a dense clump overflows the clamp
    std::vector<double> skew(1000);
    for (int i = 0; i < 999; ++i) skew[i] = 1e-3 * i / 999.0;
    skew[999] = 1.0;
    CHECK(freedman_diaconis_bins(skew) == 200);
    CHECK_THROWS_AS(freedman_diaconis_bins({}), ArgumentError);
}

TEST_CASE("histogram counts close the upper edge and normalize to one") {
    const std::vector<double> values = {0.0, 1.0, 2.0, 3.0, 4.0};
    const Histogram h = distance_histogram(values, 4);
    CHECK(h.total == 5);
    CHECK(h.bin_width == doctest::Approx(1.0));
    REQUIRE(h.counts.size() == 4);
    CHECK(h.counts[0] == 1);
    CHECK(h.counts[1] == 1);
    CHECK(h.counts[2] == 1);
    CHECK(h.counts[3] == 2);  // the max lands in the closing bin
    REQUIRE(h.edges.size() == 5);
    CHECK(h.edges.front() == 0.0);
    CHECK(h.edges.back() == doctest::Approx(4.0));
    double mass = 0.0;
    for (std::size_t b = 0; b < h.density.size(); ++b) mass += h.density[b] * h.bin_width;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));

    const Histogram fd = distance_histogram(values);  // FD default
    CHECK(fd.counts.size() == 2);

    const Histogram zeros = distance_histogram({0.0, 0.0});
    CHECK(zeros.total == 2);
    CHECK(zeros.counts.front() == 2);

    CHECK_THROWS_AS(distance_histogram({}), ArgumentError);
    CHECK_THROWS_AS(distance_histogram({-1.0, 2.0}), ArgumentError);
}
