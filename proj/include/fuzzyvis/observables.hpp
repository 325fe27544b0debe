#pragma once

#include <vector>

#include "fuzzyvis/spectrum.hpp"

namespace fuzzyvis {

struct ObservableCurves {
    std::vector<double> t;    // strictly increasing probe scales
    std::vector<double> d_s;  // spectral dimension at each t
    std::vector<double> v_s;  // spectral variance at each t
};

struct ObservableReport {
    int dimension_estimate = 0;
    double t_d = 0.0;
    double volume = 0.0;
    double volume_ratio = 0.0;  // volume / (2 * 4 pi)
    int max_states = 0;
    ObservableCurves curves;
    double lambda_max = 0.0;
    double calibration = 1.0;
    double delta = 0.0;  // dispersion scale entering max_states, 0 until known
};

// d_s(t) = 2 t <lambda^2> under Boltzmann weights e^(-t lambda^2).
// Weights are max-shifted so large t never underflows to 0/0.
double spectral_dimension(const EigenvalueTable& spec, double t);

// v_s(t) = 2 t^2 (<lambda^4> - <lambda^2>^2) under the same weights.
double spectral_variance(const EigenvalueTable& spec, double t);

// t_d = (log(Lambda+1))^2 / Lambda with Lambda = max |lambda|.
double probe_scale(const EigenvalueTable& spec);

// round(d_s(t_d)), ties rounded half away from zero.
int dimension_estimate(const EigenvalueTable& spec);

// Zeta-style volume from rescaled squared eigenvalues. With L = (max|lambda|)^2
// and t_v = (log(L+1))^2 / L the rescaled values are lambda' = t_v lambda^2, and
//   V = (4 pi)^(d/2) / calibration * t_v^(d/2)
//       * sum_lambda e^(-lambda'-1) / (lambda'+1) * Gamma(1 - d/2, 1).
// Rescaling the squared eigenvalues (not |lambda|) is the reading that
// reproduces the reference volume curves; see docs/formats.md.
double volume(const EigenvalueTable& spec, int d, double calibration);

// Calibration constant making volume_ratio = 1 for the n=20 round case at
// the given d. All other volumes are reported relative to this normalization;
// the constant is a normalization artifact of this pipeline, not a universal
// number.
double calibrate_volume(int d);

// floor(v_geom / (delta^d B_d)) with B_d the unit-ball volume; at least 1.
int max_states(double v_geom, double delta, int d);

// 200 log-spaced t values over [t_d/100, 100 t_d] with both curves sampled.
ObservableCurves observable_curves(const EigenvalueTable& spec, int points = 200);

// Full report; max_states and delta stay 0 until a state ensemble fixes them.
ObservableReport make_observable_report(const EigenvalueTable& spec, int d, double calibration);

}  // namespace fuzzyvis
