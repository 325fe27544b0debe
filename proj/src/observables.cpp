#include "fuzzyvis/observables.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fuzzyvis/errors.hpp"
#include "fuzzyvis/mathfn.hpp"

namespace fuzzyvis {

namespace {

struct Moments {
    double m2 = 0.0;  // <lambda^2>
    double m4 = 0.0;  // <lambda^4>
};

Moments boltzmann_moments(const EigenvalueTable& spec, double t) {
    if (spec.entries.empty()) throw ArgumentError("spectral moments: empty eigenvalue table");
    if (t <= 0.0) throw ArgumentError("spectral moments: t must be > 0");
    double min_sq = std::numeric_limits<double>::infinity();
    for (const auto& e : spec.entries) min_sq = std::min(min_sq, e.value * e.value);
    double w0 = 0.0, w2 = 0.0, w4 = 0.0;
    for (const auto& e : spec.entries) {
        const double sq = e.value * e.value;
        const double w = e.multiplicity * std::exp(-t * (sq - min_sq));
        w0 += w;
        w2 += w * sq;
        w4 += w * sq * sq;
    }
    return {w2 / w0, w4 / w0};
}

}  // namespace

double spectral_dimension(const EigenvalueTable& spec, double t) {
    return 2.0 * t * boltzmann_moments(spec, t).m2;
}

double spectral_variance(const EigenvalueTable& spec, double t) {
    const Moments m = boltzmann_moments(spec, t);
    return 2.0 * t * t * (m.m4 - m.m2 * m.m2);
}

double probe_scale(const EigenvalueTable& spec) {
    if (spec.entries.empty()) throw ArgumentError("probe_scale: empty eigenvalue table");
    const double lam = spec.lambda_max();
    if (lam <= 0.0) throw NumericalError("probe_scale: degenerate spectrum, max |lambda| = 0");
    const double lg = std::log(lam + 1.0);
    return lg * lg / lam;
}

int dimension_estimate(const EigenvalueTable& spec) {
    const double ds = spectral_dimension(spec, probe_scale(spec));
    return static_cast<int>(std::lround(ds));
}

double volume(const EigenvalueTable& spec, int d, double calibration) {
    if (d < 1) throw ArgumentError("volume: d must be >= 1");
    if (calibration <= 0.0) throw ArgumentError("volume: calibration must be > 0");
    if (spec.entries.empty()) throw ArgumentError("volume: empty eigenvalue table");
    const double lam = spec.lambda_max();
    if (lam <= 0.0) throw NumericalError("volume: degenerate spectrum, max |lambda| = 0");
    const double big = lam * lam;
    const double lg = std::log(big + 1.0);
    const double tv = lg * lg / big;
    double sum = 0.0;
    for (const auto& e : spec.entries) {
        const double lp = tv * e.value * e.value;
        sum += e.multiplicity * std::exp(-lp - 1.0) / (lp + 1.0);
    }
    const double gam = upper_incomplete_gamma(1.0 - 0.5 * d, 1.0);
    return std::pow(4.0 * std::numbers::pi, 0.5 * d) / calibration * std::pow(tv, 0.5 * d) * sum *
           gam;
}

double calibrate_volume(int d) {
    const EigenvalueTable ref = analytic_spectrum(20, 1.0, 1.0);
    const double raw = volume(ref, d, 1.0);
    return raw / (8.0 * std::numbers::pi);
}

int max_states(double v_geom, double delta, int d) {
    if (v_geom <= 0.0) throw ArgumentError("max_states: v_geom must be > 0");
    if (delta <= 0.0) throw ArgumentError("max_states: delta must be > 0");
    if (d < 1) throw ArgumentError("max_states: d must be >= 1");
    const double raw = v_geom / (std::pow(delta, d) * unit_ball_volume(d));
    return std::max(1, static_cast<int>(std::floor(raw)));
}

ObservableCurves observable_curves(const EigenvalueTable& spec, int points) {
    if (points < 2) throw ArgumentError("observable_curves: need at least 2 points");
    const double td = probe_scale(spec);
    const double lo = std::log(td / 100.0);
    const double hi = std::log(td * 100.0);
    ObservableCurves curves;
    curves.t.reserve(points);
    curves.d_s.reserve(points);
    curves.v_s.reserve(points);
    for (int i = 0; i < points; ++i) {
        const double t = std::exp(lo + (hi - lo) * i / (points - 1));
        curves.t.push_back(t);
        curves.d_s.push_back(spectral_dimension(spec, t));
        curves.v_s.push_back(spectral_variance(spec, t));
    }
    return curves;
}

ObservableReport make_observable_report(const EigenvalueTable& spec, int d, double calibration) {
    ObservableReport rep;
    rep.lambda_max = spec.lambda_max();
    rep.t_d = probe_scale(spec);
    rep.dimension_estimate = dimension_estimate(spec);
    rep.calibration = calibration;
    rep.volume = volume(spec, d, calibration);
    rep.volume_ratio = rep.volume / (8.0 * std::numbers::pi);
    rep.curves = observable_curves(spec);
    return rep;
}

}  // namespace fuzzyvis
