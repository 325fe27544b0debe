#pragma once

#include <iosfwd>
#include <string>

#include "fuzzyvis/config.hpp"

namespace fuzzyvis {

// Pipeline stages in execution order. Running "through" a stage executes it
// and everything before it; Report is the full pipeline.
enum class Stage {
    Spectrum = 0,
    Observables = 1,
    States = 2,
    Distances = 3,
    Embed = 4,
    Fit = 5,
    Report = 6,
};

const char* stage_name(Stage s);

struct PipelineOutcome {
    int exit_code = 0;        // 0 ok, 2 config, 3 numerical, 4 partial results
    std::string failed_stage; // empty when every requested stage completed
    std::string message;
};

// Executes the requested stage prefix, writing artifacts into cfg.outdir and
// finishing with manifest.json (also written when a stage fails, listing the
// partial artifacts). Progress and failures go to `log`.
PipelineOutcome run_pipeline(const RunConfig& cfg, Stage through, std::ostream& log);

// Builds the configured operator and prints its self-adjointness,
// first-order, and spectral-symmetry checks. Returns a process exit code.
int run_validate(const RunConfig& cfg, std::ostream& log);

}  // namespace fuzzyvis
