#include "fuzzyvis/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "fuzzyvis/distance.hpp"
#include "fuzzyvis/ellipsoid.hpp"
#include "fuzzyvis/embed.hpp"
#include "fuzzyvis/errors.hpp"
#include "fuzzyvis/histogram.hpp"
#include "fuzzyvis/io.hpp"
#include "fuzzyvis/observables.hpp"
#include "fuzzyvis/sha256.hpp"
#include "fuzzyvis/spectrum.hpp"
#include "fuzzyvis/states.hpp"
#include "fuzzyvis/svg.hpp"
#include "fuzzyvis/triple.hpp"

namespace fuzzyvis {

namespace {

constexpr const char* kVersion = "1.0.0";

namespace fs = std::filesystem;

const char* kStageNames[] = {"spectrum", "observables", "states", "distances",
                             "embed",    "fit",         "report"};

struct Artifact {
    std::string name;
    std::string path;
};

// Everything the stages hand to each other lives here; optional fields stay
// empty when the requested prefix stops early.
struct PipelineState {
    RunConfig cfg;
    fs::path outdir;
    std::uint64_t states_seed = 0;
    std::uint64_t distance_seed = 0;
    std::uint64_t embed_seed = 0;
    std::uint64_t fit_seed = 0;

    std::optional<FiniteSpectralTriple> triple;
    std::optional<EigenvalueTable> numeric;
    std::optional<EigenvalueTable> analytic;
    std::optional<ObservableReport> observables;
    double calibration_used = 0.0;
    double coulomb_used = 0.0;
    int target_states_used = 0;
    std::optional<Su2Generators> su2;
    std::optional<StateEnsemble> ensemble;
    std::optional<AlgebraBasis> basis;
    std::optional<DistanceMatrix> distances;
    std::optional<EmbeddingResult> embedding;
    std::optional<EllipsoidFit> fit;
    std::optional<Histogram> histogram;

    std::vector<Artifact> artifacts;
    std::vector<std::pair<std::string, double>> timings;
    bool partial = false;  // a stage finished with fewer results than requested
    std::string partial_reason;

    void emit(const std::string& name, const std::string& content) {
        const fs::path p = outdir / name;
        io::write_text_file(p.string(), content);
        artifacts.push_back({name, p.string()});
    }
};

void stage_spectrum(PipelineState& st, std::ostream& log) {
    DeformationParams params;
    params.c0 = st.cfg.c0;
    params.c12 = st.cfg.c12;
    params.c13 = st.cfg.c13;
    params.c23 = st.cfg.c23;
    st.triple = build_deformed_dirac(st.cfg.n, params);
    st.numeric = numeric_spectrum(*st.triple);
    if (params.restricted_form()) {
        st.analytic = analytic_spectrum(st.cfg.n, params.c0, params.c12);
        st.emit("spectrum.csv", io::spectrum_compare_csv(*st.analytic, *st.numeric));
    } else {
        st.emit("spectrum.csv", io::spectrum_csv(*st.numeric));
    }
    log << "  spectrum: " << st.numeric->total_multiplicity() << " eigenvalues, max |lambda| "
        << st.numeric->lambda_max() << "\n";
}

void stage_observables(PipelineState& st, std::ostream& log) {
    const int d = dimension_estimate(*st.numeric);
    const int d_used = std::max(1, d);
    st.calibration_used =
        st.cfg.calibration_auto ? calibrate_volume(d_used) : st.cfg.volume_calibration;
    st.observables = make_observable_report(*st.numeric, d_used, st.calibration_used);
    st.emit("observables.json", io::observables_json(*st.observables).dump(2) + "\n");
    st.emit("curves.csv", io::curves_csv(st.observables->curves));
    st.emit("curves.svg",
            svg::curves_svg(st.observables->curves, st.observables->t_d,
                            "spectral dimension and variance"));
    log << "  observables: dimension " << st.observables->dimension_estimate << ", volume "
        << st.observables->volume << "\n";
}

void stage_states(PipelineState& st, std::ostream& log) {
    st.su2 = su2_generators(st.cfg.n);
    st.coulomb_used = st.cfg.coulomb_auto ? default_coulomb_g(st.cfg.n) : st.cfg.coulomb_g;
    StateGenOptions opts;
    opts.restarts = st.cfg.states_restarts;
    opts.max_iters = st.cfg.states_max_iters;
    opts.rel_tol = st.cfg.states_tol;
    opts.workers = st.cfg.workers;

    int target = st.cfg.target_states;
    if (target < 0) {
        // pilot batch fixes the dispersion scale, which fixes the count
        const int pilot = 5;
        StateEnsemble batch =
            generate_states(*st.su2, pilot, st.coulomb_used, st.states_seed, opts);
        const double rel = mean_relative_dispersion(batch, *st.su2);
        const int d = std::max(1, st.observables->dimension_estimate);
        target = max_states(st.observables->volume, std::sqrt(rel), d);
        log << "  states: pilot dispersion " << rel << " -> target " << target << "\n";
        if (target <= static_cast<int>(batch.states.size())) {
            batch.states.resize(target);
            st.ensemble = std::move(batch);
        } else {
            extend_states(batch, *st.su2, target, opts);
            st.ensemble = std::move(batch);
        }
    } else {
        st.ensemble = generate_states(*st.su2, target, st.coulomb_used, st.states_seed, opts);
    }
    st.target_states_used = target;
    const int got = static_cast<int>(st.ensemble->states.size());
    if (got < target) {
        st.partial = true;
        st.partial_reason = "state generation stopped at " + std::to_string(got) + " of " +
                            std::to_string(target);
        log << "  states: WARNING " << st.partial_reason << "\n";
    }
    // the ensemble fixes the dispersion scale, so refresh the observables file
    if (st.observables) {
        st.observables->max_states = target;
        st.observables->delta = std::sqrt(mean_relative_dispersion(*st.ensemble, *st.su2));
        st.emit("observables.json", io::observables_json(*st.observables).dump(2) + "\n");
    }
    st.emit("states.json", io::states_json(*st.ensemble).dump(2) + "\n");
    log << "  states: " << got << " localized states, coulomb_g " << st.coulomb_used << "\n";
}

void stage_distances(PipelineState& st, std::ostream& log) {
    st.basis = st.cfg.basis == BasisKind::Pbw ? pbw_basis(*st.su2, st.cfg.n - 1)
                                              : matrix_unit_basis(st.cfg.n);
    DistanceOptions opts;
    opts.tol = st.cfg.distance_tol;
    opts.barrier_gap = st.cfg.distance_gap;
    opts.subgradient_restarts = st.cfg.distance_restarts;
    opts.seed = st.distance_seed;
    opts.workers = st.cfg.workers;
    const fs::path cache = st.outdir / "cache";
    if (!st.cfg.resume) {
        std::error_code ec;
        fs::remove_all(cache, ec);
    }
    opts.cache_dir = cache.string();
    st.distances = distance_matrix(*st.triple, *st.basis, *st.ensemble, opts);
    st.emit("distances.csv", io::distance_matrix_csv(*st.distances));
    st.emit("distances_meta.json", io::distance_sidecar_json(*st.distances).dump(2) + "\n");
    int unconverged = 0;
    for (int i = 0; i < st.distances->size; ++i)
        for (int j = i + 1; j < st.distances->size; ++j)
            if (!st.distances->pair_converged[static_cast<std::size_t>(i) * st.distances->size +
                                              j])
                ++unconverged;
    log << "  distances: " << st.distances->size << " states, " << unconverged
        << " unconverged pairs, max triangle violation "
        << max_triangle_violation(st.distances->values) << "\n";
}

void stage_embed(PipelineState& st, std::ostream& log) {
    SmacofOptions opts;
    opts.max_iter = st.cfg.smacof_max_iter;
    opts.eps = st.cfg.smacof_eps;
    opts.restarts = st.cfg.smacof_restarts;
    opts.seed = st.embed_seed;
    st.embedding = embed_with_restarts(st.distances->values, st.cfg.embed_dim, nullptr, opts);
    st.emit("embedding.csv", io::embedding_csv(*st.embedding));
    if (st.cfg.embed_dim >= 2) {
        st.emit("embedding.svg", svg::scatter_svg(*st.embedding, "embedded states"));
    }
    const double mean_corr = st.embedding->correlations.size() > 0
                                 ? st.embedding->correlations.mean()
                                 : 0.0;
    log << "  embed: stress " << st.embedding->stress << ", mean correlation " << mean_corr
        << "\n";
}

void stage_fit(PipelineState& st, std::ostream& log) {
    if (st.cfg.embed_dim < 3) {
        log << "  fit: skipped, embedding dimension below 3\n";
        return;
    }
    if (st.embedding->coords.rows() < 6) {
        st.partial = true;
        st.partial_reason = "too few embedded points for an ellipsoid fit";
        log << "  fit: WARNING " << st.partial_reason << "\n";
        return;
    }
    EllipsoidFitOptions opts;
    opts.starts = st.cfg.fit_starts;
    opts.seed = st.fit_seed;
    st.fit = fit_ellipsoid(st.embedding->coords.leftCols(3), opts);
    const auto expected = expected_axes(st.cfg.c12, st.cfg.c13, st.cfg.c23);
    st.emit("fit.json",
            io::fit_json(*st.fit, expected, st.triple->deformation).dump(2) + "\n");
    log << "  fit: axes (" << st.fit->axes[0] << ", " << st.fit->axes[1] << ", "
        << st.fit->axes[2] << ")\n";
}

void stage_report(PipelineState& st, std::ostream& log) {
    const std::vector<double> pairdist = upper_triangle(st.distances->values);
    st.histogram = distance_histogram(pairdist);
    st.emit("histogram.csv", io::histogram_csv(*st.histogram));
    st.emit("histogram.svg", svg::histogram_svg(*st.histogram, "pairwise distance histogram"));

    nlohmann::json rep;
    rep["triple"] = io::triple_json(*st.triple);
    rep["dimension_estimate"] = st.observables->dimension_estimate;
    rep["volume"] = st.observables->volume;
    rep["volume_ratio"] = st.observables->volume_ratio;
    rep["state_count"] = static_cast<int>(st.ensemble->states.size());
    rep["target_states"] = st.target_states_used;
    rep["mean_relative_dispersion"] = mean_relative_dispersion(*st.ensemble, *st.su2);
    double mean_dist = 0.0;
    for (double v : pairdist) mean_dist += v;
    if (!pairdist.empty()) mean_dist /= static_cast<double>(pairdist.size());
    rep["mean_pairwise_distance"] = mean_dist;
    rep["max_triangle_violation"] = max_triangle_violation(st.distances->values);
    rep["embedding"] = {{"dim", st.embedding->dim},
                        {"stress", st.embedding->stress},
                        {"min_correlation", st.embedding->correlations.minCoeff()},
                        {"mean_correlation", st.embedding->correlations.mean()}};
    if (st.fit) {
        rep["fit"] = {{"axes", {st.fit->axes[0], st.fit->axes[1], st.fit->axes[2]}},
                      {"residual_per_dof", st.fit->residual_per_dof}};
        const auto expected = expected_axes(st.cfg.c12, st.cfg.c13, st.cfg.c23);
        rep["fit"]["expected_axes"] = {expected[0], expected[1], expected[2]};
    }
    if (st.partial) rep["partial"] = st.partial_reason;
    st.emit("report.json", rep.dump(2) + "\n");
    log << "  report: mean pairwise distance " << mean_dist << "\n";
}

void write_manifest(PipelineState& st, const std::string& failed_stage) {
    nlohmann::json m;
    m["version"] = kVersion;
    m["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                 "." + std::to_string(EIGEN_MINOR_VERSION);
    m["config"] = config_to_json(st.cfg);
    m["resolved"] = {{"coulomb_g", st.coulomb_used},
                     {"target_states", st.target_states_used},
                     {"volume_calibration", st.calibration_used}};
    m["seeds"] = {{"master", st.cfg.seed},
                  {"states", st.states_seed},
                  {"distances", st.distance_seed},
                  {"embed", st.embed_seed},
                  {"fit", st.fit_seed}};
    nlohmann::json t;
    for (const auto& [name, sec] : st.timings) t[name] = sec;
    m["timings_seconds"] = std::move(t);
    nlohmann::json arts = nlohmann::json::array();
    for (const auto& a : st.artifacts) {
        const std::string bytes = io::read_text_file(a.path);
        arts.push_back({{"name", a.name},
                        {"bytes", bytes.size()},
                        {"sha256", sha256_hex(bytes)}});
    }
    m["artifacts"] = std::move(arts);
    if (!failed_stage.empty()) m["failed_stage"] = failed_stage;
    if (st.partial) m["partial"] = st.partial_reason;
    io::write_text_file((st.outdir / "manifest.json").string(), m.dump(2) + "\n");
}

}  // namespace

const char* stage_name(Stage s) { return kStageNames[static_cast<int>(s)]; }

PipelineOutcome run_pipeline(const RunConfig& cfg, Stage through, std::ostream& log) {
    PipelineOutcome out;
    PipelineState st;
    st.cfg = cfg;
    try {
        cfg.validate();
        st.outdir = cfg.outdir;
        fs::create_directories(st.outdir);
    } catch (const std::exception& e) {
        out.exit_code = 2;
        out.message = e.what();
        log << "error: " << e.what() << "\n";
        return out;
    }
    st.states_seed = derive_seed(cfg.seed, 1);
    st.distance_seed = derive_seed(cfg.seed, 2);
    st.embed_seed = derive_seed(cfg.seed, 3);
    st.fit_seed = derive_seed(cfg.seed, 4);

    using StageFn = void (*)(PipelineState&, std::ostream&);
    const StageFn fns[] = {stage_spectrum, stage_observables, stage_states, stage_distances,
                           stage_embed,    stage_fit,         stage_report};
    const int last = static_cast<int>(through);
    for (int i = 0; i <= last; ++i) {
        const char* name = kStageNames[i];
        log << "stage " << name << "\n";
        const auto t0 = std::chrono::steady_clock::now();
        try {
            fns[i](st, log);
        } catch (const ConfigError& e) {
            out.exit_code = 2;
            out.failed_stage = name;
            out.message = e.what();
        } catch (const ArgumentError& e) {
            out.exit_code = 2;
            out.failed_stage = name;
            out.message = e.what();
        } catch (const std::exception& e) {
            out.exit_code = 3;
            out.failed_stage = name;
            out.message = e.what();
        }
        const auto t1 = std::chrono::steady_clock::now();
        st.timings.emplace_back(name, std::chrono::duration<double>(t1 - t0).count());
        if (!out.failed_stage.empty()) {
            log << "stage " << name << " failed: " << out.message << "\n";
            break;
        }
    }
    try {
        write_manifest(st, out.failed_stage);
    } catch (const std::exception& e) {
        log << "manifest write failed: " << e.what() << "\n";
        if (out.exit_code == 0) {
            out.exit_code = 3;
            out.message = e.what();
        }
    }
    if (out.exit_code == 0 && st.partial) {
        out.exit_code = 4;
        out.message = st.partial_reason;
    }
    return out;
}

int run_validate(const RunConfig& cfg, std::ostream& log) {
    try {
        cfg.validate();
        DeformationParams params;
        params.c0 = cfg.c0;
        params.c12 = cfg.c12;
        params.c13 = cfg.c13;
        params.c23 = cfg.c23;
        const FiniteSpectralTriple t = build_deformed_dirac(cfg.n, params);
        const ValidationReport rep = validate_triple(t, 5, 1e-8, derive_seed(cfg.seed, 9));
        log << "hermiticity defect:   " << rep.hermiticity_defect << "\n";
        log << "first-order defect:   " << rep.first_order_defect << "\n";
        if (rep.symmetry_checked) {
            log << "spectral asymmetry:   " << rep.symmetry_defect << "\n";
        }
        log << "result: " << (rep.pass ? "pass" : "FAIL") << " (tolerance " << rep.tol << ")\n";
        return rep.pass ? 0 : 3;
    } catch (const ConfigError& e) {
        log << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace fuzzyvis
