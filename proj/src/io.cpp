#include "fuzzyvis/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fuzzyvis/errors.hpp"

namespace fuzzyvis::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw NumericalError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw NumericalError("short write to " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NumericalError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string spectrum_csv(const EigenvalueTable& table) {
    std::ostringstream os;
    os << "index,value,multiplicity,branch,two_j,two_k\n";
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        const auto& e = table.entries[i];
        os << i << ',' << format_double(e.value) << ',' << e.multiplicity << ','
           << branch_name(e.branch) << ',' << e.two_j << ',' << e.two_k << '\n';
    }
    return os.str();
}

std::string spectrum_compare_csv(const EigenvalueTable& analytic,
                                 const EigenvalueTable& numeric) {
    const std::vector<double> a = analytic.expanded_sorted();
    const std::vector<double> b = numeric.expanded_sorted();
    if (a.size() != b.size()) {
        throw ArgumentError("spectra have different total multiplicity");
    }
    std::ostringstream os;
    os << "index,analytic,numeric,abs_diff\n";
    for (std::size_t i = 0; i < a.size(); ++i) {
        os << i << ',' << format_double(a[i]) << ',' << format_double(b[i]) << ','
           << format_double(std::abs(a[i] - b[i])) << '\n';
    }
    return os.str();
}

std::string curves_csv(const ObservableCurves& curves) {
    std::ostringstream os;
    os << "t,spectral_dimension,spectral_variance\n";
    for (std::size_t i = 0; i < curves.t.size(); ++i) {
        os << format_double(curves.t[i]) << ',' << format_double(curves.d_s[i]) << ','
           << format_double(curves.v_s[i]) << '\n';
    }
    return os.str();
}

std::string distance_matrix_csv(const DistanceMatrix& dm) {
    std::ostringstream os;
    os << "state";
    for (int j = 0; j < dm.size; ++j) os << ',' << j;
    os << '\n';
    for (int i = 0; i < dm.size; ++i) {
        os << i;
        for (int j = 0; j < dm.size; ++j) os << ',' << format_double(dm.values(i, j));
        os << '\n';
    }
    return os.str();
}

nlohmann::json distance_sidecar_json(const DistanceMatrix& dm) {
    nlohmann::json j;
    j["size"] = dm.size;
    j["basis"] = basis_kind_name(dm.basis_kind);
    j["solver"] = {{"tol", dm.opts.tol},
                   {"feas_slack", dm.opts.feas_slack},
                   {"subgradient_restarts", dm.opts.subgradient_restarts},
                   {"subgradient_iters", dm.opts.subgradient_iters},
                   {"subgradient_stall", dm.opts.subgradient_stall},
                   {"newton_iters", dm.opts.newton_iters},
                   {"barrier_t0", dm.opts.barrier_t0},
                   {"barrier_mu", dm.opts.barrier_mu},
                   {"barrier_gap", dm.opts.barrier_gap},
                   {"seed", dm.opts.seed}};
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < dm.size; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < dm.size; ++j) {
            row.push_back(static_cast<int>(
                dm.pair_converged[static_cast<std::size_t>(i) * dm.size + j]));
        }
        rows.push_back(std::move(row));
    }
    j["pair_converged"] = std::move(rows);
    int unconverged = 0;
    for (int i = 0; i < dm.size; ++i)
        for (int k = i + 1; k < dm.size; ++k)
            if (!dm.pair_converged[static_cast<std::size_t>(i) * dm.size + k]) ++unconverged;
    j["unconverged_pairs"] = unconverged;
    if (!dm.witnesses.empty()) {
        nlohmann::json ws = nlohmann::json::array();
        for (const RVector& w : dm.witnesses) {
            nlohmann::json row = nlohmann::json::array();
            for (int k = 0; k < w.size(); ++k) row.push_back(w[k]);
            ws.push_back(std::move(row));
        }
        j["witnesses"] = std::move(ws);  // upper-triangle pairs, i<j row-major
    }
    return j;
}

RMatrix distance_matrix_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line.rfind("state", 0) != 0)
        throw ArgumentError("distance matrix csv: missing header row");
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t pos = line.find(',');
        if (pos == std::string::npos)
            throw ArgumentError("distance matrix csv: row without entries");
        while (pos != std::string::npos) {
            const std::size_t next = line.find(',', pos + 1);
            const std::string cell = line.substr(pos + 1, next == std::string::npos
                                                              ? std::string::npos
                                                              : next - pos - 1);
            row.push_back(std::stod(cell));
            pos = next;
        }
        rows.push_back(std::move(row));
    }
    const int n = static_cast<int>(rows.size());
    RMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw ArgumentError("distance matrix csv: ragged rows");
        for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::string embedding_csv(const EmbeddingResult& emb) {
    static const char* names[3] = {"x", "y", "z"};
    std::ostringstream os;
    os << "index";
    for (int d = 0; d < emb.dim && d < 3; ++d) os << ',' << names[d];
    for (int d = 3; d < emb.dim; ++d) os << ",coord" << d;
    os << ",correlation\n";
    for (int i = 0; i < emb.coords.rows(); ++i) {
        os << i;
        for (int d = 0; d < emb.dim; ++d) os << ',' << format_double(emb.coords(i, d));
        const double corr = emb.correlations.size() > i ? emb.correlations[i] : 0.0;
        os << ',' << format_double(corr) << '\n';
    }
    return os.str();
}

std::string histogram_csv(const Histogram& h) {
    std::ostringstream os;
    os << "bin_low,bin_high,count,density\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
        os << format_double(h.edges[b]) << ',' << format_double(h.edges[b + 1]) << ','
           << h.counts[b] << ',' << format_double(h.density[b]) << '\n';
    }
    return os.str();
}

nlohmann::json triple_json(const FiniteSpectralTriple& t) {
    nlohmann::json j;
    j["n"] = t.n;
    j["clifford"] = {{"p", t.clifford.p}, {"q", t.clifford.q}};
    j["hilbert_dim"] = t.hilbert_dim();
    j["deformation"] = {{"c0", t.deformation.c0},
                        {"c12", t.deformation.c12},
                        {"c13", t.deformation.c13},
                        {"c23", t.deformation.c23}};
    j["deformed_constructor"] = t.from_deformed_constructor;
    return j;
}

nlohmann::json states_json(const StateEnsemble& ensemble) {
    nlohmann::json j;
    j["n"] = ensemble.generator_n;
    j["coulomb_g"] = ensemble.coulomb_g;
    j["rng_seed"] = ensemble.rng_seed;
    j["deformation"] = {{"c0", ensemble.deformation.c0},
                        {"c12", ensemble.deformation.c12},
                        {"c13", ensemble.deformation.c13},
                        {"c23", ensemble.deformation.c23}};
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : ensemble.states) {
        nlohmann::json e;
        e["dispersion"] = s.dispersion;
        e["coordinates"] = {s.coordinates[0], s.coordinates[1], s.coordinates[2]};
        e["seed_index"] = s.seed_index;
        std::vector<double> re(s.vector.size()), im(s.vector.size());
        for (int k = 0; k < s.vector.size(); ++k) {
            re[k] = s.vector[k].real();
            im[k] = s.vector[k].imag();
        }
        e["vector_re"] = re;
        e["vector_im"] = im;
        arr.push_back(std::move(e));
    }
    j["states"] = std::move(arr);
    return j;
}

StateEnsemble states_from_json(const nlohmann::json& j) {
    StateEnsemble out;
    out.generator_n = j.at("n").get<int>();
    out.coulomb_g = j.at("coulomb_g").get<double>();
    out.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    const auto& d = j.at("deformation");
    out.deformation.c0 = d.at("c0").get<double>();
    out.deformation.c12 = d.at("c12").get<double>();
    out.deformation.c13 = d.at("c13").get<double>();
    out.deformation.c23 = d.at("c23").get<double>();
    for (const auto& e : j.at("states")) {
        LocalizedState s;
        s.dispersion = e.at("dispersion").get<double>();
        const auto& c = e.at("coordinates");
        s.coordinates = {c[0].get<double>(), c[1].get<double>(), c[2].get<double>()};
        s.seed_index = e.at("seed_index").get<int>();
        const auto& re = e.at("vector_re");
        const auto& im = e.at("vector_im");
        if (re.size() != im.size()) throw ArgumentError("state vector parts disagree in length");
        s.vector.resize(static_cast<int>(re.size()));
        for (std::size_t k = 0; k < re.size(); ++k) {
            s.vector[static_cast<int>(k)] = cxd(re[k].get<double>(), im[k].get<double>());
        }
        out.states.push_back(std::move(s));
    }
    return out;
}

nlohmann::json observables_json(const ObservableReport& report) {
    nlohmann::json j;
    j["dimension_estimate"] = report.dimension_estimate;
    j["t_d"] = report.t_d;
    j["volume"] = report.volume;
    j["volume_ratio"] = report.volume_ratio;
    j["max_states"] = report.max_states;
    j["lambda_max"] = report.lambda_max;
    j["calibration"] = report.calibration;
    j["delta"] = report.delta;
    return j;
}

nlohmann::json fit_json(const EllipsoidFit& fit, const std::array<double, 3>& expected,
                        const DeformationParams& params) {
    nlohmann::json j;
    j["axes"] = {fit.axes[0], fit.axes[1], fit.axes[2]};
    j["angles"] = {fit.angles[0], fit.angles[1]};
    j["center"] = {fit.center[0], fit.center[1], fit.center[2]};
    j["residual_per_dof"] = fit.residual_per_dof;
    j["iterations"] = fit.iterations;
    j["expected_axes"] = {expected[0], expected[1], expected[2]};
    j["deformation"] = {{"c0", params.c0},
                        {"c12", params.c12},
                        {"c13", params.c13},
                        {"c23", params.c23}};
    return j;
}

}  // namespace fuzzyvis::io
