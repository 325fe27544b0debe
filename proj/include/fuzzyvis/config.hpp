#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "fuzzyvis/algebra.hpp"

namespace fuzzyvis {

// Full run configuration. "auto" sentinels are carried as negative values
// plus a flag so the resolved numbers can be echoed into the manifest.
struct RunConfig {
    int n = 0;  // required
    double c0 = 1.0;
    double c12 = 1.0;
    double c13 = 1.0;
    double c23 = 1.0;
    std::uint64_t seed = 0;

    double coulomb_g = 0.0;
    bool coulomb_auto = true;

    BasisKind basis = BasisKind::MatrixUnits;

    int target_states = -1;  // -1 = auto from the volume/dispersion heuristic
    int embed_dim = 3;

    // distance solver
    double distance_tol = 1e-8;
    double distance_gap = 1e-9;
    int distance_restarts = 4;

    // state generator
    int states_restarts = 8;
    int states_max_iters = 5000;
    double states_tol = 1e-9;

    // embedding
    int smacof_max_iter = 500;
    double smacof_eps = 1e-9;
    int smacof_restarts = 8;

    // ellipsoid fit
    int fit_starts = 16;

    double volume_calibration = 0.0;
    bool calibration_auto = true;

    std::string outdir = "out";
    int workers = 1;
    bool resume = false;

    void validate() const;  // throws ConfigError naming the offending key
};

// Parses a JSON object; unknown keys and type mismatches raise ConfigError
// naming the key. Missing keys keep their defaults; "n" is required.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Echo of the resolved configuration (auto fields still marked as such).
nlohmann::json config_to_json(const RunConfig& c);

}  // namespace fuzzyvis
