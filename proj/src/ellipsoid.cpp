#include "fuzzyvis/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fuzzyvis/errors.hpp"

namespace fuzzyvis {

namespace {

using Vec3 = Eigen::Vector3d;
using Params = Eigen::Matrix<double, 6, 1>;  // theta, phi, psi, a1, a2, a3

struct Frame {
    Vec3 u1, u2, u3;
};

Frame frame_from_angles(double theta, double phi, double psi) {
    const double st = std::sin(theta), ct = std::cos(theta);
    const double sp = std::sin(phi), cp = std::cos(phi);
    const double ss = std::sin(psi), cs = std::cos(psi);
    Frame f;
    f.u3 = Vec3(st * cp, st * sp, ct);
    const Vec3 t1(ct * cp, ct * sp, -st);
    const Vec3 t2(-sp, cp, 0.0);
    f.u1 = cs * t1 + ss * t2;
    f.u2 = -ss * t1 + cs * t2;
    return f;
}

double objective(const RMatrix& centered, const Params& p) {
    const double a1 = std::abs(p[3]), a2 = std::abs(p[4]), a3 = std::abs(p[5]);
    if (a1 < 1e-9 || a2 < 1e-9 || a3 < 1e-9) return 1e100;
    const Frame f = frame_from_angles(p[0], p[1], p[2]);
    const double i1 = 1.0 / (a1 * a1), i2 = 1.0 / (a2 * a2), i3 = 1.0 / (a3 * a3);
    double total = 0.0;
    for (int r = 0; r < centered.rows(); ++r) {
        const Vec3 x = centered.row(r).transpose();
        const double q1 = x.dot(f.u1), q2 = x.dot(f.u2), q3 = x.dot(f.u3);
        const double g = q1 * q1 * i1 + q2 * q2 * i2 + q3 * q3 * i3 - 1.0;
        total += g * g;
    }
    return total;
}

struct NmOutcome {
    Params p;
    double value = 0.0;
    int iterations = 0;
};

NmOutcome nelder_mead(const RMatrix& centered, const Params& start, int max_iter, double tol) {
    constexpr int dimn = 6;
    std::vector<Params> simplex(dimn + 1);
    std::vector<double> fval(dimn + 1);
    simplex[0] = start;
    for (int i = 0; i < dimn; ++i) {
        Params q = start;
        const double h = i < 3 ? 0.25 : 0.05 + 0.1 * std::abs(start[i]);
        q[i] += h;
        simplex[i + 1] = q;
    }
    for (int i = 0; i <= dimn; ++i) fval[i] = objective(centered, simplex[i]);

    NmOutcome out;
    std::vector<int> order(dimn + 1);
    for (int it = 0; it < max_iter; ++it) {
        ++out.iterations;
        for (int i = 0; i <= dimn; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&fval](int a, int b) { return fval[a] < fval[b]; });
        const int best = order[0], worst = order[dimn], second = order[dimn - 1];
        if (std::abs(fval[worst] - fval[best]) <
            tol * std::max(1.0, std::abs(fval[best]))) {
            break;
        }
        Params centroid = Params::Zero();
        for (int i = 0; i <= dimn; ++i)
            if (i != worst) centroid += simplex[i];
        centroid /= static_cast<double>(dimn);

        const Params refl = centroid + (centroid - simplex[worst]);
        const double fr = objective(centered, refl);
        if (fr < fval[best]) {
            const Params expd = centroid + 2.0 * (centroid - simplex[worst]);
            const double fe = objective(centered, expd);
            if (fe < fr) {
                simplex[worst] = expd;
                fval[worst] = fe;
            } else {
                simplex[worst] = refl;
                fval[worst] = fr;
            }
        } else if (fr < fval[second]) {
            simplex[worst] = refl;
            fval[worst] = fr;
        } else {
            const Params contr = centroid + 0.5 * (simplex[worst] - centroid);
            const double fc = objective(centered, contr);
            if (fc < fval[worst]) {
                simplex[worst] = contr;
                fval[worst] = fc;
            } else {
                for (int i = 0; i <= dimn; ++i) {
                    if (i == best) continue;
                    simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
                    fval[i] = objective(centered, simplex[i]);
                }
            }
        }
    }
    int bi = 0;
    for (int i = 1; i <= dimn; ++i)
        if (fval[i] < fval[bi]) bi = i;
    out.p = simplex[bi];
    out.value = fval[bi];
    return out;
}

Params principal_axis_start(const RMatrix& centered) {
    const int n = static_cast<int>(centered.rows());
    Eigen::Matrix3d cov = (centered.transpose() * centered) / static_cast<double>(n);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
    const Eigen::Vector3d lam = es.eigenvalues();  // ascending
    Eigen::Matrix3d r = es.eigenvectors();
    if (r.determinant() < 0) r.col(0) = -r.col(0);

    // largest-variance direction plays the u3 role of the angle chart
    const Vec3 u3 = r.col(2), u1 = r.col(0);
    const double theta = std::acos(std::clamp(u3.z(), -1.0, 1.0));
    double phi = 0.0, psi = 0.0;
    if (std::abs(u3.z()) < 1.0 - 1e-12) {
        phi = std::atan2(u3.y(), u3.x());
        const Vec3 t1(std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi),
                      -std::sin(theta));
        const Vec3 t2(-std::sin(phi), std::cos(phi), 0.0);
        psi = std::atan2(u1.dot(t2), u1.dot(t1));
    } else {
        psi = std::atan2(u1.y(), u1.x());
    }
    Params p;
    // second moment of a uniform surface distribution is close to a^2/3
    p << theta, phi, psi, std::sqrt(std::max(3.0 * lam[0], 1e-12)),
        std::sqrt(std::max(3.0 * lam[1], 1e-12)), std::sqrt(std::max(3.0 * lam[2], 1e-12));
    return p;
}

}  // namespace

EllipsoidFit fit_ellipsoid(const RMatrix& points, const EllipsoidFitOptions& opts) {
    if (points.cols() != 3) throw ArgumentError("ellipsoid fit expects N x 3 coordinates");
    const int n = static_cast<int>(points.rows());
    if (n < 6) {
        throw ArgumentError("ellipsoid fit is under-determined with fewer than 6 points");
    }
    const Eigen::RowVector3d centroid = points.colwise().mean();
    RMatrix centered = points.rowwise() - centroid;

    const Params p0 = principal_axis_start(centered);
    NmOutcome best;
    bool have = false;
    GaussianRng rng(derive_seed(opts.seed, 0xe111));
    for (int s = 0; s < std::max(1, opts.starts); ++s) {
        Params start = p0;
        if (s > 0) {
            for (int i = 0; i < 3; ++i) start[i] += 0.4 * rng.normal();
            for (int i = 3; i < 6; ++i) start[i] *= std::exp(0.15 * rng.normal());
        }
        NmOutcome cur = nelder_mead(centered, start, opts.max_iter, opts.tol);
        if (!have || cur.value < best.value) {
            best = cur;
            have = true;
        }
    }

    const Frame f = frame_from_angles(best.p[0], best.p[1], best.p[2]);
    struct AxisDir {
        double a;
        Vec3 u;
    };
    std::array<AxisDir, 3> ad = {AxisDir{std::abs(best.p[3]), f.u1},
                                 AxisDir{std::abs(best.p[4]), f.u2},
                                 AxisDir{std::abs(best.p[5]), f.u3}};
    std::sort(ad.begin(), ad.end(), [](const AxisDir& x, const AxisDir& y) { return x.a < y.a; });
    if (ad[0].a < 1e-6) {
        throw NumericalError("ellipsoid fit collapsed an axis below 1e-6");
    }

    EllipsoidFit fit;
    fit.axes = {ad[0].a, ad[1].a, ad[2].a};
    Vec3 major = ad[2].u;
    if (major.z() < 0) major = -major;  // axis direction is defined up to sign
    fit.angles = {std::acos(std::clamp(major.z(), -1.0, 1.0)),
                  std::atan2(major.y(), major.x())};
    fit.center = {centroid.x(), centroid.y(), centroid.z()};
    fit.residual_per_dof = best.value / std::max(1, n - 5);
    fit.iterations = best.iterations;
    return fit;
}

std::array<double, 3> expected_axes(double c12, double c13, double c23) {
    if (c12 <= 0 || c13 <= 0 || c23 <= 0) {
        throw ArgumentError("plane couplings must be positive to predict axes");
    }
    std::array<double, 3> a = {1.0 / (c12 * c13), 1.0 / (c12 * c23), 1.0 / (c13 * c23)};
    std::sort(a.begin(), a.end());
    return a;
}

RMatrix sample_ellipsoid(const std::array<double, 3>& a, int npoints, std::uint64_t seed,
                         int max_iter) {
    if (a[0] <= 0 || a[1] <= 0 || a[2] <= 0) throw ArgumentError("semi-axes must be positive");
    if (npoints < 1) throw ArgumentError("need at least one sample point");

    GaussianRng rng(seed);
    RMatrix y(npoints, 3);  // unit directions; surface points are a o y
    for (int i = 0; i < npoints; ++i) {
        Vec3 v(rng.normal(), rng.normal(), rng.normal());
        while (v.norm() < 1e-8) v = Vec3(rng.normal(), rng.normal(), rng.normal());
        y.row(i) = v.normalized().transpose();
    }
    const Vec3 av(a[0], a[1], a[2]);
    if (npoints == 1) {
        RMatrix out = y;
        out.row(0) = (av.array() * y.row(0).transpose().array()).transpose();
        return out;
    }

    auto energy = [&](const RMatrix& yy) {
        double e = 0.0;
        for (int i = 0; i < npoints; ++i) {
            const Vec3 xi = av.array() * yy.row(i).transpose().array();
            for (int j = i + 1; j < npoints; ++j) {
                const Vec3 xj = av.array() * yy.row(j).transpose().array();
                e += 1.0 / std::max((xi - xj).norm(), 1e-12);
            }
        }
        return e;
    };

    double step = 0.05;
    double e0 = energy(y);
    for (int it = 0; it < max_iter; ++it) {
        RMatrix grad = RMatrix::Zero(npoints, 3);
        for (int i = 0; i < npoints; ++i) {
            const Vec3 xi = av.array() * y.row(i).transpose().array();
            Vec3 g = Vec3::Zero();
            for (int j = 0; j < npoints; ++j) {
                if (j == i) continue;
                const Vec3 xj = av.array() * y.row(j).transpose().array();
                const Vec3 d = xi - xj;
                const double r = std::max(d.norm(), 1e-12);
                g -= d / (r * r * r);  // dE/dx_i
            }
            Vec3 gy = av.array() * g.array();  // chain through x = a o y
            const Vec3 yi = y.row(i).transpose();
            gy -= gy.dot(yi) * yi;  // tangent projection on the unit sphere
            grad.row(i) = gy.transpose();
        }
        const double gmax = grad.rowwise().norm().maxCoeff();
        if (gmax < 1e-12) break;
        bool accepted = false;
        for (int shrink = 0; shrink < 40; ++shrink) {
            RMatrix yt = y - step * grad;
            for (int i = 0; i < npoints; ++i) yt.row(i).normalize();
            const double et = energy(yt);
            if (et < e0) {
                y = yt;
                e0 = et;
                step *= 1.2;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }

    RMatrix out(npoints, 3);
    for (int i = 0; i < npoints; ++i) {
        out.row(i) = (av.array() * y.row(i).transpose().array()).transpose();
    }
    return out;
}

}  // namespace fuzzyvis
