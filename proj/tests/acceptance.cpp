// Release gate for the full toolchain. Runs the production pipeline across
// the deformation grid once (artifacts land under ./acceptance_runs, reused
// on re-execution through the distance cache) and then checks eleven
// numbered behavior contracts, printing one [PASS]/[FAIL] line each plus
// indented context. Exit status is 0 only when every criterion holds, so a
// red line here is a release blocker, not a flaky test.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "fuzzyvis/algebra.hpp"
#include "fuzzyvis/config.hpp"
#include "fuzzyvis/distance.hpp"
#include "fuzzyvis/ellipsoid.hpp"
#include "fuzzyvis/embed.hpp"
#include "fuzzyvis/errors.hpp"
#include "fuzzyvis/io.hpp"
#include "fuzzyvis/linalg.hpp"
#include "fuzzyvis/observables.hpp"
#include "fuzzyvis/pipeline.hpp"
#include "fuzzyvis/spectrum.hpp"
#include "fuzzyvis/states.hpp"
#include "fuzzyvis/su2.hpp"
#include "fuzzyvis/triple.hpp"

#include "support.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fuzzyvis;

namespace {

std::string fmt(const char* f, ...) {
    char buf[640];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct Criterion {
    int id = 0;
    std::string label;
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("FAILED: " + what);
        }
    }
    void info(const std::string& what) { notes.push_back(what); }
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// One pipeline invocation of the gate's run table.
struct RunSpec {
    std::string name;
    int n = 8;
    DeformationParams params;
    std::uint64_t seed = 0;
    Stage through = Stage::Report;
    int distance_restarts = 2;
};

struct RunRecord {
    RunSpec spec;
    fs::path dir;
    int exit_code = -1;
    std::string failed_stage;
    double seconds = 0.0;
};

std::string restricted_name(int n, double c, int seed) {
    return fmt("n%d_c%g_s%d", n, c, seed);
}

json load_json(const fs::path& p) { return json::parse(io::read_text_file(p.string())); }

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double state_expectation(const Matrix& b, const CVector& psi) {
    return std::real((psi.adjoint() * (b * psi)).value());
}

RVector expectation_gap(const std::vector<Matrix>& basis, const CVector& p1, const CVector& p2) {
    RVector w(static_cast<int>(basis.size()));
    for (int k = 0; k < w.size(); ++k)
        w[k] = state_expectation(basis[static_cast<std::size_t>(k)], p1) -
               state_expectation(basis[static_cast<std::size_t>(k)], p2);
    return w;
}

Matrix reconstruct(const std::vector<Matrix>& basis, const RVector& x) {
    Matrix a = Matrix::Zero(basis[0].rows(), basis[0].cols());
    for (int k = 0; k < x.size(); ++k) a += x[k] * basis[static_cast<std::size_t>(k)];
    return a;
}

// ---------------------------------------------------------------------------
// criterion 1: numeric spectra equal the closed-form tables
// ---------------------------------------------------------------------------

Criterion criterion_spectrum_exactness() {
    Criterion c{1, "spectrum exactness across the (n, c) grid"};
    const std::vector<double> cs{0.0, 0.5, 0.9, 1.0, 1.1, 1.5, 2.0, 5.0};
    double worst = 0.0;
    int grids = 0;
    for (int n = 1; n <= 12; ++n) {
        for (double cc : cs) {
            const EigenvalueTable an = analytic_spectrum(n, 1.0, cc);
            bool mult2 = true;
            for (const auto& e : an.entries)
                if (e.multiplicity != 2) mult2 = false;
            c.check(mult2, fmt("n=%d c=%g: analytic entry without multiplicity 2", n, cc));
            c.check(an.total_multiplicity() == 4 * n * n,
                    fmt("n=%d c=%g: analytic total %d != %d", n, cc, an.total_multiplicity(),
                        4 * n * n));
            try {
                const FiniteSpectralTriple t =
                    build_deformed_dirac(n, DeformationParams::restricted(1.0, cc));
                const EigenvalueTable nu = numeric_spectrum(t);
                c.check(nu.total_multiplicity() == 4 * n * n,
                        fmt("n=%d c=%g: numeric total %d != %d", n, cc, nu.total_multiplicity(),
                            4 * n * n));
                const SpectrumDiff d = compare_spectra(an, nu, 1e-8);
                worst = std::max(worst, d.max_abs_deviation);
                c.check(d.within_tol, fmt("n=%d c=%g: max deviation %.3e >= 1e-8", n, cc,
                                          d.max_abs_deviation));
            } catch (const std::exception& e) {
                c.check(false, fmt("n=%d c=%g: %s", n, cc, e.what()));
            }
            ++grids;
        }
    }
    c.info(fmt("%d grids, max |analytic - numeric| = %.3e", grids, worst));
    return c;
}

// ---------------------------------------------------------------------------
// criterion 2: deformation trend of the spectral edge, zero modes at c=0
// ---------------------------------------------------------------------------

Criterion criterion_spectrum_shape() {
    Criterion c{2, "spectral edge growth and c=0 zero modes at n=20"};
    const std::vector<double> cs{1.0, 1.1, 1.5, 2.0, 5.0};
    double prev = -1.0;
    bool increasing = true;
    for (double cc : cs) {
        const double lam = analytic_spectrum(20, 1.0, cc).lambda_max();
        if (lam <= prev) increasing = false;
        prev = lam;
    }
    c.check(increasing, "max |lambda| not strictly increasing over c in {1,1.1,1.5,2,5}");
    if (increasing) c.info(fmt("max |lambda| rises to %.4f at c=5", prev));

    const double min0 = analytic_spectrum(20, 1.0, 0.0).min_abs_value();
    c.check(min0 < 1e-8,
            fmt("zero modes expected at c=0 but min |lambda| = %.10f (= sqrt(2)-1; the "
                "closed-form tables admit no zero at any n)",
                min0));
    return c;
}

// ---------------------------------------------------------------------------
// criterion 3: spectral dimension plateau and large-c dimensional reduction
// ---------------------------------------------------------------------------

Criterion criterion_dimension() {
    Criterion c{3, "spectral dimension 2 with large-c reduction"};
    for (int n = 6; n <= 20; ++n) {
        for (double cc : {0.5, 1.0, 2.0}) {
            const int est = dimension_estimate(analytic_spectrum(n, 1.0, cc));
            c.check(est == 2, fmt("n=%d c=%g: dimension_estimate %d != 2", n, cc, est));
        }
    }
    const EigenvalueTable s1 = analytic_spectrum(20, 1.0, 1.0);
    const double td1 = probe_scale(s1);
    const double v1 = spectral_variance(s1, td1);
    c.check(v1 >= 1.6 && v1 <= 2.4, fmt("v_s(t_d) = %.3f outside [1.6, 2.4] at n=20 c=1", v1));

    const EigenvalueTable s5 = analytic_spectrum(20, 1.0, 5.0);
    const double td5 = probe_scale(s5);
    const double va = spectral_variance(s5, td5);
    const double vb = spectral_variance(s5, 20.0 * td5);
    c.check(vb < va, fmt("c=5: v_s(20 t_d) = %.3f not below v_s(t_d) = %.3f", vb, va));
    c.info(fmt("45 dimension estimates all 2; v_s(t_d) = %.3f at (20,1); c=5 drop %.3f -> %.3f",
               v1, va, vb));
    return c;
}

// ---------------------------------------------------------------------------
// criterion 4: calibrated volume ordering in c and the n trend toward 1
// ---------------------------------------------------------------------------

Criterion criterion_volume() {
    Criterion c{4, "volume ordering and n-trend of the calibrated ratio"};
    const double cal = calibrate_volume(2);
    const auto ratio = [&](int n, double cc) {
        return make_observable_report(analytic_spectrum(n, 1.0, cc), 2, cal).volume_ratio;
    };
    const double r05 = ratio(20, 0.5), r1 = ratio(20, 1.0), r2 = ratio(20, 2.0),
                 r5 = ratio(20, 5.0);
    c.check(r05 > r1 && r1 > r2 && r2 > r5,
            fmt("ordering V(0.5) > V(1) > V(2) > V(5) broken: %.4f, %.4f, %.4f, %.4f", r05, r1,
                r2, r5));
    const double d24 = std::abs(ratio(24, 1.0) - 1.0);
    const double d12 = std::abs(ratio(12, 1.0) - 1.0);
    c.check(d24 < d12, fmt("|ratio(24,1)-1| = %.4f not below |ratio(12,1)-1| = %.4f", d24, d12));
    c.info(fmt("ratios at n=20: %.4f > %.4f > %.4f > %.4f; |ratio-1| shrinks %.4f -> %.4f "
               "from n=12 to n=24",
               r05, r1, r2, r5, d12, d24));
    return c;
}

// ---------------------------------------------------------------------------
// criterion 5: dispersion scaling exponent in n, flatness in c
// ---------------------------------------------------------------------------

Criterion criterion_dispersion_scaling(const std::map<std::string, RunRecord>& runs, int hw) {
    Criterion c{5, "dispersion scaling in n and flatness in c"};
    std::vector<double> lx, ly;
    StateGenOptions opts;
    opts.workers = hw;
    for (int n = 4; n <= 12; ++n) {
        const Su2Generators g = su2_generators(n);
        const StateEnsemble ens =
            generate_states(g, 20, default_coulomb_g(n), derive_seed(1, n), opts);
        const double d = mean_relative_dispersion(ens, g);
        std::fprintf(stderr, "[acceptance] dispersion sweep n=%d: %d states, mean %.5f\n", n,
                     static_cast<int>(ens.states.size()), d);
        lx.push_back(std::log(static_cast<double>(n)));
        ly.push_back(std::log(d));
    }
    const double mx = mean_of(lx), my = mean_of(ly);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    const double slope = num / den;
    c.check(slope >= -2.4 && slope <= -1.6,
            fmt("fitted exponent %.3f outside [-2.4, -1.6] (generated states sit on the "
                "coherent-state dispersion floor l/(l(l+1)), whose log-slope over n=4..12 "
                "is about -0.87; no state can fall below that floor)",
                slope));
    c.info(fmt("mean relative dispersion exponent over n=4..12: %.3f", slope));

    std::vector<double> per_c;
    for (double cc : {0.5, 1.0, 2.0}) {
        std::vector<double> vals;
        for (int s = 0; s < 3; ++s) {
            const auto it = runs.find(restricted_name(8, cc, s));
            if (it == runs.end() || !fs::exists(it->second.dir / "states.json")) {
                c.check(false, fmt("missing states for c=%g seed %d", cc, s));
                continue;
            }
            const StateEnsemble ens =
                io::states_from_json(load_json(it->second.dir / "states.json"));
            vals.push_back(mean_relative_dispersion(ens, su2_generators(8)));
        }
        if (!vals.empty()) per_c.push_back(mean_of(vals));
    }
    if (per_c.size() == 3) {
        const double lo = *std::min_element(per_c.begin(), per_c.end());
        const double hi = *std::max_element(per_c.begin(), per_c.end());
        const double spread = (hi - lo) / mean_of(per_c);
        c.check(spread < 0.05,
                fmt("n=8 dispersion spread %.2f%% across c in {0.5,1,2} >= 5%%", 100.0 * spread));
        c.info(fmt("n=8 dispersion spread across c: %.2f%%", 100.0 * spread));
    }
    return c;
}

// ---------------------------------------------------------------------------
// criterion 6: automatic state counts against the reference captions
// ---------------------------------------------------------------------------

Criterion criterion_state_counts(const std::map<std::string, RunRecord>& runs) {
    Criterion c{6, "automatic state counts at n=8"};
    const std::vector<std::pair<double, double>> expected{
        {1.0, 33.0}, {0.5, 52.0}, {1.5, 25.0}, {2.0, 21.0}, {5.0, 11.0}};
    for (const auto& [cc, want] : expected) {
        std::vector<double> counts;
        for (int s = 0; s < 3; ++s) {
            const auto it = runs.find(restricted_name(8, cc, s));
            if (it == runs.end() || !fs::exists(it->second.dir / "states.json")) {
                c.check(false, fmt("missing states for c=%g seed %d", cc, s));
                continue;
            }
            const json j = load_json(it->second.dir / "states.json");
            counts.push_back(static_cast<double>(j.at("states").size()));
        }
        if (counts.empty()) continue;
        const double m = mean_of(counts);
        c.check(std::abs(m - want) <= 0.25 * want,
                fmt("c=%g: mean N = %.1f outside %.0f +/- 25%%", cc, m, want));
        c.info(fmt("c=%g: mean N over 3 seeds = %.1f (reference %.0f)", cc, m, want));
    }
    return c;
}

// ---------------------------------------------------------------------------
// criterion 7: distance solver against oracles, witnesses, metric axioms
// ---------------------------------------------------------------------------

void oracle_block(Criterion& c, int hw) {
    DistanceOptions dopts;
    dopts.seed = 99;
    dopts.workers = 1;
    StateGenOptions sopts;
    sopts.workers = hw;

    double worst_rel = 0.0;
    {
        const int n = 2;
        const FiniteSpectralTriple t =
            build_deformed_dirac(n, DeformationParams::restricted(1.0, 1.0));
        const std::vector<Matrix> tb = traceless_orthonormal_basis(matrix_unit_basis(n));
        const StateEnsemble ens = generate_states(su2_generators(n), 3, default_coulomb_g(n),
                                                  1234, sopts);
        const auto full_norm = [&](const RVector& x) {
            const Matrix a = reconstruct(tb, x);
            const Matrix rho = left_action(t, a);
            const Matrix comm = t.dirac * rho - rho * t.dirac;
            return comm.jacobiSvd().singularValues()(0);
        };
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                const RVector w = expectation_gap(tb, ens.states[static_cast<std::size_t>(i)]
                                                          .vector,
                                                  ens.states[static_cast<std::size_t>(j)].vector);
                const double oracle = testsupport::grid_refine_max(w, full_norm, 21, 5, 30, 0.6);
                const DistanceResult r =
                    connes_distance(t, matrix_unit_basis(n), ens.states[static_cast<std::size_t>(i)],
                                    ens.states[static_cast<std::size_t>(j)], dopts);
                c.check(r.converged, fmt("n=2 pair (%d,%d): solver did not converge", i, j));
                const double rel = std::abs(r.value - oracle) / std::max(oracle, 1e-12);
                worst_rel = std::max(worst_rel, rel);
                c.check(rel <= 0.01, fmt("n=2 pair (%d,%d): solver %.8f vs oracle %.8f "
                                         "(rel %.3f%%)",
                                         i, j, r.value, oracle, 100.0 * rel));
                c.check(r.value >= oracle - 1e-6,
                        fmt("n=2 pair (%d,%d): certified value below the oracle lower bound", i,
                            j));
            }
        }
    }
    {
        const int n = 3;
        const FiniteSpectralTriple t =
            build_deformed_dirac(n, DeformationParams::restricted(1.0, 1.0));
        const std::vector<Matrix> tb = traceless_orthonormal_basis(matrix_unit_basis(n));
        const CommutatorModel model = build_commutator_model(t, tb);
        const StateEnsemble ens = generate_states(su2_generators(n), 4, default_coulomb_g(n),
                                                  1235, sopts);
        const auto reduced_norm = [&](const RVector& x) {
            return spectral_norm_hermitian(model.evaluate(x));
        };
        const int pairs[3][2] = {{0, 1}, {1, 2}, {2, 3}};
        for (const auto& pr : pairs) {
            const int i = pr[0], j = pr[1];
            const RVector w = expectation_gap(tb, ens.states[static_cast<std::size_t>(i)].vector,
                                              ens.states[static_cast<std::size_t>(j)].vector);
            const double oracle = testsupport::grid_refine_max(w, reduced_norm, 5, 3, 24, 0.6);
            const DistanceResult r =
                connes_distance_model(model, ens.states[static_cast<std::size_t>(i)],
                                      ens.states[static_cast<std::size_t>(j)], dopts);
            c.check(r.converged, fmt("n=3 pair (%d,%d): solver did not converge", i, j));
            const double rel = std::abs(r.value - oracle) / std::max(oracle, 1e-12);
            worst_rel = std::max(worst_rel, rel);
            c.check(rel <= 0.01, fmt("n=3 pair (%d,%d): solver %.8f vs oracle %.8f (rel %.3f%%)",
                                     i, j, r.value, oracle, 100.0 * rel));
            c.check(r.value >= oracle - 1e-6,
                    fmt("n=3 pair (%d,%d): certified value below the oracle lower bound", i, j));
        }
    }
    c.info(fmt("grid oracle: 6 pairs, worst relative gap %.4f%%", 100.0 * worst_rel));
}

void witness_block(Criterion& c, const std::map<std::string, RunRecord>& runs) {
    int runs_checked = 0, pairs_checked = 0, bad_value = 0, bad_feas = 0, unconverged = 0;
    double worst_value_err = 0.0, worst_norm = 0.0, worst_triangle = -1e300;
    for (const auto& [name, rec] : runs) {
        if (rec.spec.through != Stage::Report) continue;
        if (!fs::exists(rec.dir / "distances.csv") ||
            !fs::exists(rec.dir / "distances_meta.json") ||
            !fs::exists(rec.dir / "states.json")) {
            c.check(false, fmt("%s: distance artifacts missing", name.c_str()));
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        const RMatrix values =
            io::distance_matrix_from_csv(io::read_text_file((rec.dir / "distances.csv").string()));
        const json meta = load_json(rec.dir / "distances_meta.json");
        const StateEnsemble ens = io::states_from_json(load_json(rec.dir / "states.json"));
        const int N = static_cast<int>(values.rows());
        c.check(N == static_cast<int>(ens.states.size()),
                fmt("%s: %d states but a %dx%d distance matrix", name.c_str(),
                    static_cast<int>(ens.states.size()), N, N));

        // metric axioms on the published matrix
        bool sym = true, nonneg = true, diag0 = true;
        for (int i = 0; i < N; ++i) {
            if (values(i, i) != 0.0) diag0 = false;
            for (int j = 0; j < N; ++j) {
                if (values(i, j) < 0.0) nonneg = false;
                if (std::abs(values(i, j) - values(j, i)) > 1e-12) sym = false;
            }
        }
        c.check(diag0, fmt("%s: nonzero diagonal", name.c_str()));
        c.check(nonneg, fmt("%s: negative distance entry", name.c_str()));
        c.check(sym, fmt("%s: asymmetric distance matrix", name.c_str()));
        const double tri = max_triangle_violation(values);
        worst_triangle = std::max(worst_triangle, tri);
        c.check(tri <= 1e-6, fmt("%s: triangle violation %.3e > 1e-6", name.c_str(), tri));

        unconverged += meta.at("unconverged_pairs").get<int>();

        if (!meta.contains("witnesses")) {
            c.check(false, fmt("%s: sidecar carries no witnesses", name.c_str()));
            continue;
        }
        const auto& ws = meta.at("witnesses");
        if (static_cast<int>(ws.size()) != N * (N - 1) / 2) {
            c.check(false, fmt("%s: %d witnesses for %d pairs", name.c_str(),
                               static_cast<int>(ws.size()), N * (N - 1) / 2));
            continue;
        }

        const FiniteSpectralTriple t = build_deformed_dirac(rec.spec.n, rec.spec.params);
        const std::vector<Matrix> tb =
            traceless_orthonormal_basis(matrix_unit_basis(rec.spec.n));
        const CommutatorModel model = build_commutator_model(t, tb);

        // state expectations over the basis, once per run
        RMatrix expect(N, model.size());
        for (int s = 0; s < N; ++s)
            for (int k = 0; k < model.size(); ++k)
                expect(s, k) = state_expectation(tb[static_cast<std::size_t>(k)],
                                                 ens.states[static_cast<std::size_t>(s)].vector);

        int p = 0;
        for (int i = 0; i < N; ++i) {
            for (int j = i + 1; j < N; ++j, ++p) {
                const auto& row = ws[static_cast<std::size_t>(p)];
                RVector x(model.size());
                if (static_cast<int>(row.size()) != model.size()) {
                    c.check(false,
                            fmt("%s pair (%d,%d): witness length %d != basis rank %d",
                                name.c_str(), i, j, static_cast<int>(row.size()), model.size()));
                    continue;
                }
                for (int k = 0; k < model.size(); ++k) x[k] = row[static_cast<std::size_t>(k)];

                double v = 0.0;
                for (int k = 0; k < model.size(); ++k) v += x[k] * (expect(i, k) - expect(j, k));
                const double err = std::abs(v - values(i, j));
                worst_value_err = std::max(worst_value_err, err);
                if (err > 1e-8) {
                    ++bad_value;
                    if (bad_value <= 3)
                        c.check(false, fmt("%s pair (%d,%d): witness gives %.10f, matrix says "
                                           "%.10f",
                                           name.c_str(), i, j, v, values(i, j)));
                }

                // feasibility straight from the full-space commutator norm,
                // independent of the solver's reduced model
                double norm = 0.0;
                try {
                    norm = lipschitz_seminorm(t, model.reconstruct(x));
                } catch (const std::exception& e) {
                    ++bad_feas;
                    if (bad_feas <= 3)
                        c.check(false, fmt("%s pair (%d,%d): seminorm evaluation failed: %s",
                                           name.c_str(), i, j, e.what()));
                    continue;
                }
                worst_norm = std::max(worst_norm, norm);
                if (norm > 1.0 + 1e-6) {
                    ++bad_feas;
                    if (bad_feas <= 3)
                        c.check(false, fmt("%s pair (%d,%d): witness seminorm %.9f > 1+1e-6",
                                           name.c_str(), i, j, norm));
                }
                ++pairs_checked;
            }
        }
        ++runs_checked;
        std::fprintf(stderr, "[acceptance] witnesses %s: %d pairs in %.1f s\n", name.c_str(), p,
                     seconds_since(t0));
    }
    c.check(bad_value == 0, fmt("%d witnesses fail to reproduce their matrix value", bad_value));
    c.check(bad_feas == 0, fmt("%d witnesses infeasible", bad_feas));
    c.info(fmt("witnesses: %d pairs over %d runs, worst value error %.2e, worst seminorm "
               "%.9f, worst triangle %.2e, unconverged pairs %d",
               pairs_checked, runs_checked, worst_value_err, worst_norm, worst_triangle,
               unconverged));
}

void doubling_block(Criterion& c, int hw) {
    const int n = 4;
    const Su2Generators g = su2_generators(n);
    StateGenOptions sopts;
    sopts.workers = hw;
    const StateEnsemble ens = generate_states(g, 6, default_coulomb_g(n), 7, sopts);
    DistanceOptions dopts;
    dopts.subgradient_restarts = 2;
    dopts.seed = 11;
    dopts.workers = hw;
    DeformationParams one;  // round, all couplings 1
    DeformationParams two;
    two.c0 = 2.0;
    two.c12 = two.c13 = two.c23 = 2.0;
    const DistanceMatrix d1 =
        distance_matrix(build_deformed_dirac(n, one), matrix_unit_basis(n), ens, dopts);
    const DistanceMatrix d2 =
        distance_matrix(build_deformed_dirac(n, two), matrix_unit_basis(n), ens, dopts);
    double worst = 0.0;
    for (int i = 0; i < d1.size; ++i) {
        for (int j = i + 1; j < d1.size; ++j) {
            const double rel =
                std::abs(d2.values(i, j) - 0.5 * d1.values(i, j)) /
                std::max(0.5 * d1.values(i, j), 1e-12);
            worst = std::max(worst, rel);
        }
    }
    c.check(worst <= 1e-6,
            fmt("doubling the operator: worst relative deviation from halving %.3e > 1e-6",
                worst));
    c.info(fmt("doubling covariance over %d pairs: worst relative deviation %.2e",
               d1.size * (d1.size - 1) / 2, worst));
}

Criterion criterion_distance_solver(const std::map<std::string, RunRecord>& runs, int hw) {
    Criterion c{7, "distance solver: oracle, witnesses, metric axioms, scaling"};
    oracle_block(c, hw);
    witness_block(c, runs);
    doubling_block(c, hw);
    return c;
}

// ---------------------------------------------------------------------------
// criterion 8: mean distance matches the chord mean, not the arc mean
// ---------------------------------------------------------------------------

Criterion criterion_chord_vs_arc(const std::map<std::string, RunRecord>& runs) {
    Criterion c{8, "Euclidean chord mean vs geodesic arc mean at n=8 round"};
    const auto it = runs.find(restricted_name(8, 1.0, 0));
    if (it == runs.end() || !fs::exists(it->second.dir / "distances.csv") ||
        !fs::exists(it->second.dir / "fit.json")) {
        c.check(false, "round n=8 run artifacts missing");
        return c;
    }
    const RMatrix values = io::distance_matrix_from_csv(
        io::read_text_file((it->second.dir / "distances.csv").string()));
    const int N = static_cast<int>(values.rows());
    double sum = 0.0;
    int cnt = 0;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j, ++cnt) sum += values(i, j);
    const double mean_d = sum / cnt;
    const json fit = load_json(it->second.dir / "fit.json");
    const double R = (fit.at("axes")[0].get<double>() + fit.at("axes")[1].get<double>() +
                      fit.at("axes")[2].get<double>()) /
                     3.0;
    const double ratio = mean_d / R;
    const double chord = 4.0 / 3.0;
    const double arc = 3.14159265358979323846 / 2.0;
    const double dev_chord = std::abs(ratio - chord) / chord;
    const double dev_arc = std::abs(ratio - arc) / arc;
    c.check(dev_chord <= 0.10,
            fmt("mean distance / fitted radius = %.4f deviates %.1f%% from the chord mean 4/3",
                ratio, 100.0 * dev_chord));
    c.check(dev_arc > 0.15,
            fmt("mean distance / fitted radius = %.4f sits within %.1f%% of the arc mean pi/2 "
                "(separation demanded > 15%%)",
                ratio, 100.0 * dev_arc));
    c.info(fmt("mean distance %.4f, fitted radius %.4f, ratio %.4f (chord 1.3333 off %.1f%%, "
               "arc 1.5708 off %.1f%%)",
               mean_d, R, ratio, 100.0 * dev_chord, 100.0 * dev_arc));
    return c;
}

// ---------------------------------------------------------------------------
// criterion 9: embedding correlation quality, and the 2-D failure mode
// ---------------------------------------------------------------------------

Criterion criterion_embedding_quality(const std::map<std::string, RunRecord>& runs) {
    Criterion c{9, "embedding correlations high in 3-D, degraded in 2-D"};
    for (double cc : {1.0, 1.5, 2.0}) {
        std::vector<double> corrs;
        for (int s = 0; s < 3; ++s) {
            const auto it = runs.find(restricted_name(8, cc, s));
            if (it == runs.end() || !fs::exists(it->second.dir / "report.json")) {
                c.check(false, fmt("missing report for c=%g seed %d", cc, s));
                continue;
            }
            const json r = load_json(it->second.dir / "report.json");
            corrs.push_back(r.at("embedding").at("mean_correlation").get<double>());
        }
        if (corrs.empty()) continue;
        const double m = mean_of(corrs);
        c.check(m >= 0.95, fmt("c=%g: seed-mean correlation %.4f < 0.95", cc, m));
        c.info(fmt("c=%g: mean per-point correlation over 3 seeds = %.4f", cc, m));
    }
    const auto it = runs.find(restricted_name(8, 1.0, 0));
    if (it == runs.end() || !fs::exists(it->second.dir / "distances.csv")) {
        c.check(false, "round n=8 distances missing for the 2-D embedding");
        return c;
    }
    const RMatrix values = io::distance_matrix_from_csv(
        io::read_text_file((it->second.dir / "distances.csv").string()));
    SmacofOptions opts;
    opts.seed = derive_seed(0, 3);
    const EmbeddingResult flat = embed_with_restarts(values, 2, nullptr, opts);
    const double mincorr = flat.correlations.minCoeff();
    c.check(mincorr <= 0.6,
            fmt("2-D embedding of the round case: min correlation %.3f > 0.6 (the planar "
                "embedding should visibly fail)",
                mincorr));
    c.info(fmt("2-D round embedding: min correlation %.3f, stress %.3e", mincorr, flat.stress));
    return c;
}

// ---------------------------------------------------------------------------
// criterion 10: ellipsoid recovery, synthetic and from the pipeline
// ---------------------------------------------------------------------------

Criterion criterion_ellipsoid_recovery(const std::map<std::string, RunRecord>& runs) {
    Criterion c{10, "ellipsoid axis recovery"};
    const std::array<std::array<double, 3>, 2> shapes{{{0.5, 0.7, 1.1}, {0.72, 0.72, 0.93}}};
    for (std::size_t k = 0; k < shapes.size(); ++k) {
        std::array<double, 3> truth = shapes[k];
        std::sort(truth.begin(), truth.end());
        const RMatrix pts = sample_ellipsoid(truth, 200, 77 + static_cast<std::uint64_t>(k));
        const EllipsoidFit fit = fit_ellipsoid(pts);
        double worst = 0.0;
        for (int a = 0; a < 3; ++a)
            worst = std::max(worst, std::abs(fit.axes[static_cast<std::size_t>(a)] -
                                             truth[static_cast<std::size_t>(a)]));
        c.check(worst <= 1e-3,
                fmt("synthetic (%.2f, %.2f, %.2f): worst axis error %.2e > 1e-3", truth[0],
                    truth[1], truth[2], worst));
    }
    c.info("synthetic 200-point clouds recovered to 1e-3");

    const std::vector<std::pair<double, std::array<double, 3>>> table1{
        {0.9, {1.00, 1.01, 1.03}},
        {1.0, {0.98, 0.99, 0.99}},
        {1.1, {0.92, 0.93, 1.01}},
        {1.5, {0.73, 0.75, 1.03}},
        {2.0, {0.58, 0.61, 1.06}}};
    const auto best_error = [&](const std::vector<std::string>& names,
                                const std::array<double, 3>& want, int& best_seed) {
        double best = 1e300;
        best_seed = -1;
        for (std::size_t s = 0; s < names.size(); ++s) {
            const auto it = runs.find(names[s]);
            if (it == runs.end() || !fs::exists(it->second.dir / "fit.json")) continue;
            const json f = load_json(it->second.dir / "fit.json");
            double worst = 0.0;
            for (int a = 0; a < 3; ++a)
                worst = std::max(worst, std::abs(f.at("axes")[a].get<double>() -
                                                 want[static_cast<std::size_t>(a)]));
            if (worst < best) {
                best = worst;
                best_seed = static_cast<int>(s);
            }
        }
        return best;
    };
    for (const auto& [cc, want] : table1) {
        std::vector<std::string> names;
        for (int s = 0; s < 3; ++s) names.push_back(restricted_name(8, cc, s));
        int best_seed = -1;
        const double best = best_error(names, want, best_seed);
        c.check(best <= 0.15,
                fmt("c=%g: best-of-3 worst-axis error %.3f > 0.15 against (%.2f, %.2f, %.2f)",
                    cc, best, want[0], want[1], want[2]));
        c.info(fmt("c=%g: best seed %d, worst-axis error %.3f", cc, best_seed, best));
    }
    {
        const std::array<double, 3> want{0.72, 0.72, 0.93};
        std::vector<std::string> names{"n8_g_s0", "n8_g_s1", "n8_g_s2"};
        int best_seed = -1;
        const double best = best_error(names, want, best_seed);
        c.check(best <= 0.15,
                fmt("general (1.1, 1.1, 1.5): best-of-3 worst-axis error %.3f > 0.15", best));
        c.info(fmt("general deformation: best seed %d, worst-axis error %.3f", best_seed, best));
    }
    return c;
}

// ---------------------------------------------------------------------------
// criterion 11: wall-clock budgets
// ---------------------------------------------------------------------------

Criterion criterion_runtime(const std::map<std::string, RunRecord>& runs) {
    Criterion c{11, "wall-clock budgets"};
    const auto big = runs.find(restricted_name(8, 1.0, 0));
    const auto smoke = runs.find(restricted_name(6, 1.0, 0));
    if (big == runs.end() || smoke == runs.end()) {
        c.check(false, "timed runs missing from the table");
        return c;
    }
    c.check(big->second.exit_code == 0,
            fmt("n=8 run exited %d (stage %s)", big->second.exit_code,
                big->second.failed_stage.c_str()));
    c.check(smoke->second.exit_code == 0,
            fmt("n=6 smoke exited %d (stage %s)", smoke->second.exit_code,
                smoke->second.failed_stage.c_str()));
    c.check(big->second.seconds <= 14400.0,
            fmt("n=8 full pipeline took %.0f s > 4 h", big->second.seconds));
    c.check(smoke->second.seconds <= 900.0,
            fmt("n=6 smoke took %.0f s > 15 min", smoke->second.seconds));
    c.info(fmt("n=8 full pipeline %.1f s, n=6 smoke %.1f s (this host, this execution; cached "
               "pair solves shorten re-runs)",
               big->second.seconds, smoke->second.seconds));
    return c;
}

}  // namespace

int main() {
    const int hw = std::max(1u, std::thread::hardware_concurrency());
    const fs::path root = fs::current_path() / "acceptance_runs";
    fs::create_directories(root);
    std::fprintf(stderr, "[acceptance] artifacts under %s, %d worker(s)\n", root.string().c_str(),
                 hw);

    std::vector<RunSpec> specs;
    {
        RunSpec smoke;
        smoke.name = restricted_name(6, 1.0, 0);
        smoke.n = 6;
        smoke.params = DeformationParams::restricted(1.0, 1.0);
        smoke.seed = 0;
        smoke.distance_restarts = 4;  // stock solver settings for the timed runs
        specs.push_back(smoke);
    }
    for (double cc : {1.0, 0.9, 1.1, 1.5, 2.0}) {
        for (int s = 0; s < 3; ++s) {
            RunSpec r;
            r.name = restricted_name(8, cc, s);
            r.params = DeformationParams::restricted(1.0, cc);
            r.seed = static_cast<std::uint64_t>(s);
            r.distance_restarts = (cc == 1.0 && s == 0) ? 4 : 2;
            specs.push_back(r);
        }
    }
    for (int s = 0; s < 3; ++s) {
        RunSpec r;
        r.name = fmt("n8_g_s%d", s);
        r.params.c0 = 1.0;
        r.params.c12 = 1.1;
        r.params.c13 = 1.1;
        r.params.c23 = 1.5;
        r.seed = static_cast<std::uint64_t>(s);
        specs.push_back(r);
    }
    for (double cc : {0.5, 5.0}) {
        for (int s = 0; s < 3; ++s) {
            RunSpec r;
            r.name = restricted_name(8, cc, s);
            r.params = DeformationParams::restricted(1.0, cc);
            r.seed = static_cast<std::uint64_t>(s);
            r.through = Stage::States;  // only the ensemble feeds the checks
            specs.push_back(r);
        }
    }

    std::map<std::string, RunRecord> runs;
    const auto gate_t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const RunSpec& spec = specs[i];
        RunRecord rec;
        rec.spec = spec;
        rec.dir = root / spec.name;

        RunConfig cfg;
        cfg.n = spec.n;
        cfg.c0 = spec.params.c0;
        cfg.c12 = spec.params.c12;
        cfg.c13 = spec.params.c13;
        cfg.c23 = spec.params.c23;
        cfg.seed = spec.seed;
        cfg.distance_restarts = spec.distance_restarts;
        cfg.workers = hw;
        cfg.outdir = rec.dir.string();
        cfg.resume = true;  // finished pair solves carry across gate executions

        std::fprintf(stderr, "[acceptance] run %zu/%zu %s (through %s, restarts %d)\n", i + 1,
                     specs.size(), spec.name.c_str(), stage_name(spec.through),
                     spec.distance_restarts);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const PipelineOutcome out = run_pipeline(cfg, spec.through, std::cerr);
            rec.exit_code = out.exit_code;
            rec.failed_stage = out.failed_stage;
        } catch (const std::exception& e) {
            rec.exit_code = 3;
            rec.failed_stage = "unknown";
            std::fprintf(stderr, "[acceptance] %s threw: %s\n", spec.name.c_str(), e.what());
        }
        rec.seconds = seconds_since(t0);
        std::fprintf(stderr, "[acceptance] run %zu/%zu %s: exit %d in %.1f s\n", i + 1,
                     specs.size(), spec.name.c_str(), rec.exit_code, rec.seconds);
        runs.emplace(spec.name, std::move(rec));
    }
    std::fprintf(stderr, "[acceptance] run table finished in %.1f s\n", seconds_since(gate_t0));

    std::vector<Criterion> results;
    const auto guard = [&results](Criterion (*f)()) {
        try {
            results.push_back(f());
        } catch (const std::exception& e) {
            Criterion c;
            c.id = static_cast<int>(results.size()) + 1;
            c.label = "evaluation aborted";
            c.check(false, fmt("exception: %s", e.what()));
            results.push_back(std::move(c));
        }
    };
    const auto guard_runs = [&results, &runs](Criterion (*f)(const std::map<std::string,
                                                                            RunRecord>&)) {
        try {
            results.push_back(f(runs));
        } catch (const std::exception& e) {
            Criterion c;
            c.id = static_cast<int>(results.size()) + 1;
            c.label = "evaluation aborted";
            c.check(false, fmt("exception: %s", e.what()));
            results.push_back(std::move(c));
        }
    };
    const auto guard_runs_hw = [&results, &runs, hw](Criterion (*f)(const std::map<std::string,
                                                                                   RunRecord>&,
                                                                    int)) {
        try {
            results.push_back(f(runs, hw));
        } catch (const std::exception& e) {
            Criterion c;
            c.id = static_cast<int>(results.size()) + 1;
            c.label = "evaluation aborted";
            c.check(false, fmt("exception: %s", e.what()));
            results.push_back(std::move(c));
        }
    };

    guard(criterion_spectrum_exactness);
    guard(criterion_spectrum_shape);
    guard(criterion_dimension);
    guard(criterion_volume);
    guard_runs_hw(criterion_dispersion_scaling);
    guard_runs(criterion_state_counts);
    guard_runs_hw(criterion_distance_solver);
    guard_runs(criterion_chord_vs_arc);
    guard_runs(criterion_embedding_quality);
    guard_runs(criterion_ellipsoid_recovery);
    guard_runs(criterion_runtime);

    int failed = 0;
    for (const Criterion& c : results) {
        if (!c.pass) ++failed;
        std::printf("[%s] criterion %2d: %s\n", c.pass ? "PASS" : "FAIL", c.id, c.label.c_str());
        const std::size_t cap = 14;
        for (std::size_t i = 0; i < c.notes.size() && i < cap; ++i)
            std::printf("           %s\n", c.notes[i].c_str());
        if (c.notes.size() > cap)
            std::printf("           ... (+%zu more)\n", c.notes.size() - cap);
    }
    std::printf("acceptance: %d/11 criteria passed\n", 11 - failed);
    return failed == 0 ? 0 : 1;
}
