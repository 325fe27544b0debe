#include "fuzzyvis/config.hpp"

#include <fstream>
#include <set>

#include "fuzzyvis/errors.hpp"

namespace fuzzyvis {

namespace {

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
    throw ConfigError("config key '" + key + "': " + why);
}

double get_double(const nlohmann::json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) bad_key(key, "expected a number");
    return j.at(key).get<double>();
}

int get_int(const nlohmann::json& j, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) bad_key(key, "expected an integer");
    return j.at(key).get<int>();
}

bool get_bool(const nlohmann::json& j, const std::string& key, bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_boolean()) bad_key(key, "expected true or false");
    return j.at(key).get<bool>();
}

}  // namespace

void RunConfig::validate() const {
    if (n < 1) throw ConfigError("config key 'n': must be a positive integer");
    if (c0 <= 0 || c12 <= 0 || c13 <= 0 || c23 <= 0) {
        throw ConfigError("config key 'c0'/'c12'/'c13'/'c23': couplings must be positive");
    }
    if (embed_dim < 1) throw ConfigError("config key 'embed_dim': must be >= 1");
    if (distance_tol <= 0) throw ConfigError("config key 'distance_tol': must be positive");
    if (distance_gap <= 0) throw ConfigError("config key 'distance_gap': must be positive");
    if (states_tol <= 0) throw ConfigError("config key 'states_tol': must be positive");
    if (smacof_eps <= 0) throw ConfigError("config key 'smacof_eps': must be positive");
    if (smacof_max_iter < 1) throw ConfigError("config key 'smacof_max_iter': must be >= 1");
    if (states_max_iters < 1) throw ConfigError("config key 'states_max_iters': must be >= 1");
    if (distance_restarts < 1) throw ConfigError("config key 'distance_restarts': must be >= 1");
    if (states_restarts < 1) throw ConfigError("config key 'states_restarts': must be >= 1");
    if (smacof_restarts < 1) throw ConfigError("config key 'smacof_restarts': must be >= 1");
    if (fit_starts < 1) throw ConfigError("config key 'fit_starts': must be >= 1");
    if (workers < 1) throw ConfigError("config key 'workers': must be >= 1");
    if (!coulomb_auto && coulomb_g < 0) {
        throw ConfigError("config key 'coulomb_g': must be nonnegative or \"auto\"");
    }
    if (!calibration_auto && volume_calibration <= 0) {
        throw ConfigError("config key 'volume_calibration': must be positive or \"auto\"");
    }
    if (target_states != -1 && target_states < 1) {
        throw ConfigError("config key 'target_states': must be >= 1 or \"auto\"");
    }
    if (outdir.empty()) throw ConfigError("config key 'outdir': must not be empty");
}

RunConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    static const std::set<std::string> known = {
        "n",           "c0",          "c12",
        "c13",         "c23",         "seed",
        "coulomb_g",   "basis",       "target_states",
        "embed_dim",   "distance_tol", "distance_gap",
        "distance_restarts",          "states_restarts",
        "states_max_iters",           "states_tol",
        "smacof",      "fit_starts",  "volume_calibration",
        "outdir",      "workers",     "resume"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (known.find(it.key()) == known.end()) bad_key(it.key(), "unknown key");
    }

    RunConfig c;
    if (!j.contains("n")) throw ConfigError("config key 'n': required");
    c.n = get_int(j, "n", 0);
    c.c0 = get_double(j, "c0", 1.0);
    c.c12 = get_double(j, "c12", 1.0);
    c.c13 = get_double(j, "c13", 1.0);
    c.c23 = get_double(j, "c23", 1.0);
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_integer()) bad_key("seed", "expected an integer");
        c.seed = j.at("seed").get<std::uint64_t>();
    }

    if (j.contains("coulomb_g")) {
        const auto& v = j.at("coulomb_g");
        if (v.is_string() && v.get<std::string>() == "auto") {
            c.coulomb_auto = true;
        } else if (v.is_number()) {
            c.coulomb_auto = false;
            c.coulomb_g = v.get<double>();
        } else {
            bad_key("coulomb_g", "expected a number or \"auto\"");
        }
    }

    if (j.contains("basis")) {
        const auto& v = j.at("basis");
        if (!v.is_string()) bad_key("basis", "expected \"pbw\" or \"matrix_units\"");
        const std::string s = v.get<std::string>();
        if (s == "pbw") {
            c.basis = BasisKind::Pbw;
        } else if (s == "matrix_units") {
            c.basis = BasisKind::MatrixUnits;
        } else {
            bad_key("basis", "expected \"pbw\" or \"matrix_units\"");
        }
    }

    if (j.contains("target_states")) {
        const auto& v = j.at("target_states");
        if (v.is_string() && v.get<std::string>() == "auto") {
            c.target_states = -1;
        } else if (v.is_number_integer()) {
            c.target_states = v.get<int>();
        } else {
            bad_key("target_states", "expected an integer or \"auto\"");
        }
    }

    c.embed_dim = get_int(j, "embed_dim", 3);
    c.distance_tol = get_double(j, "distance_tol", 1e-8);
    c.distance_gap = get_double(j, "distance_gap", 1e-9);
    c.distance_restarts = get_int(j, "distance_restarts", 4);
    c.states_restarts = get_int(j, "states_restarts", 8);
    c.states_max_iters = get_int(j, "states_max_iters", 5000);
    c.states_tol = get_double(j, "states_tol", 1e-9);

    if (j.contains("smacof")) {
        const auto& s = j.at("smacof");
        if (!s.is_object()) bad_key("smacof", "expected an object");
        for (auto it = s.begin(); it != s.end(); ++it) {
            if (it.key() != "max_iter" && it.key() != "eps" && it.key() != "restarts") {
                bad_key("smacof." + it.key(), "unknown key");
            }
        }
        c.smacof_max_iter = get_int(s, "max_iter", 500);
        c.smacof_eps = get_double(s, "eps", 1e-9);
        c.smacof_restarts = get_int(s, "restarts", 8);
    }

    c.fit_starts = get_int(j, "fit_starts", 16);

    if (j.contains("volume_calibration")) {
        const auto& v = j.at("volume_calibration");
        if (v.is_string() && v.get<std::string>() == "auto") {
            c.calibration_auto = true;
        } else if (v.is_number()) {
            c.calibration_auto = false;
            c.volume_calibration = v.get<double>();
        } else {
            bad_key("volume_calibration", "expected a number or \"auto\"");
        }
    }

    if (j.contains("outdir")) {
        if (!j.at("outdir").is_string()) bad_key("outdir", "expected a string");
        c.outdir = j.at("outdir").get<std::string>();
    }
    c.workers = get_int(j, "workers", 1);
    c.resume = get_bool(j, "resume", false);

    c.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

nlohmann::json config_to_json(const RunConfig& c) {
    nlohmann::json j;
    j["n"] = c.n;
    j["c0"] = c.c0;
    j["c12"] = c.c12;
    j["c13"] = c.c13;
    j["c23"] = c.c23;
    j["seed"] = c.seed;
    if (c.coulomb_auto) {
        j["coulomb_g"] = "auto";
    } else {
        j["coulomb_g"] = c.coulomb_g;
    }
    j["basis"] = basis_kind_name(c.basis);
    if (c.target_states < 0) {
        j["target_states"] = "auto";
    } else {
        j["target_states"] = c.target_states;
    }
    j["embed_dim"] = c.embed_dim;
    j["distance_tol"] = c.distance_tol;
    j["distance_gap"] = c.distance_gap;
    j["distance_restarts"] = c.distance_restarts;
    j["states_restarts"] = c.states_restarts;
    j["states_max_iters"] = c.states_max_iters;
    j["states_tol"] = c.states_tol;
    j["smacof"] = {{"max_iter", c.smacof_max_iter},
                   {"eps", c.smacof_eps},
                   {"restarts", c.smacof_restarts}};
    j["fit_starts"] = c.fit_starts;
    if (c.calibration_auto) {
        j["volume_calibration"] = "auto";
    } else {
        j["volume_calibration"] = c.volume_calibration;
    }
    j["outdir"] = c.outdir;
    j["workers"] = c.workers;
    j["resume"] = c.resume;
    return j;
}

}  // namespace fuzzyvis
