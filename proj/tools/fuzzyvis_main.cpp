#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "fuzzyvis/config.hpp"
#include "fuzzyvis/errors.hpp"
#include "fuzzyvis/pipeline.hpp"

namespace {

struct CliOverrides {
    std::string config_path;
    std::string outdir;
    std::uint64_t seed = 0;
    int workers = 1;
    bool resume = false;
    int n = 0;
    double c0 = 1.0, c12 = 1.0, c13 = 1.0, c23 = 1.0;

    CLI::Option *opt_outdir = nullptr, *opt_seed = nullptr, *opt_workers = nullptr,
                *opt_resume = nullptr, *opt_n = nullptr, *opt_c0 = nullptr, *opt_c12 = nullptr,
                *opt_c13 = nullptr, *opt_c23 = nullptr;
};

void add_common_options(CLI::App* app, CliOverrides& o) {
    app->add_option("--config", o.config_path, "JSON run configuration file");
    o.opt_outdir = app->add_option("--outdir", o.outdir, "output directory");
    o.opt_seed = app->add_option("--seed", o.seed, "master random seed");
    o.opt_workers = app->add_option("--workers", o.workers, "worker thread count");
    o.opt_resume = app->add_flag("--resume", o.resume, "reuse the on-disk pair cache");
    o.opt_n = app->add_option("-n,--n", o.n, "matrix size n");
    o.opt_c0 = app->add_option("--c0", o.c0, "constant-term coupling");
    o.opt_c12 = app->add_option("--c12", o.c12, "12-plane coupling");
    o.opt_c13 = app->add_option("--c13", o.c13, "13-plane coupling");
    o.opt_c23 = app->add_option("--c23", o.c23, "23-plane coupling");
}

fuzzyvis::RunConfig merge_config(const CliOverrides& o) {
    fuzzyvis::RunConfig cfg;
    if (!o.config_path.empty()) {
        cfg = fuzzyvis::load_config(o.config_path);
    }
    if (o.opt_n->count()) cfg.n = o.n;
    if (o.opt_c0->count()) cfg.c0 = o.c0;
    if (o.opt_c12->count()) cfg.c12 = o.c12;
    if (o.opt_c13->count()) cfg.c13 = o.c13;
    if (o.opt_c23->count()) cfg.c23 = o.c23;
    if (o.opt_outdir->count()) cfg.outdir = o.outdir;
    if (o.opt_seed->count()) cfg.seed = o.seed;
    if (o.opt_workers->count()) cfg.workers = o.workers;
    if (o.opt_resume->count()) cfg.resume = o.resume;
    if (cfg.n < 1) {
        throw fuzzyvis::ConfigError("config key 'n': required (set it in --config or via --n)");
    }
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral geometry of finite Dirac operators: spectra, localized states, "
                 "distances, and embeddings"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
        fuzzyvis::Stage stage;
    };
    const Sub subs[] = {
        {"spectrum", "compute the eigenvalue table", fuzzyvis::Stage::Spectrum},
        {"observables", "spectral dimension, volume, and curves", fuzzyvis::Stage::Observables},
        {"states", "generate localized states", fuzzyvis::Stage::States},
        {"distances", "solve the pairwise distance matrix", fuzzyvis::Stage::Distances},
        {"embed", "multidimensional-scaling embedding", fuzzyvis::Stage::Embed},
        {"fit", "ellipsoid fit of the embedded cloud", fuzzyvis::Stage::Fit},
        {"pipeline", "run every stage and write the report", fuzzyvis::Stage::Report},
    };

    std::vector<CliOverrides> overrides(std::size(subs) + 1);
    std::vector<CLI::App*> apps;
    for (std::size_t i = 0; i < std::size(subs); ++i) {
        CLI::App* sc = app.add_subcommand(subs[i].name, subs[i].help);
        add_common_options(sc, overrides[i]);
        apps.push_back(sc);
    }
    CLI::App* validate = app.add_subcommand("validate", "check the operator axioms");
    add_common_options(validate, overrides.back());

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (std::size_t i = 0; i < std::size(subs); ++i) {
            if (apps[i]->parsed()) {
                const fuzzyvis::RunConfig cfg = merge_config(overrides[i]);
                const fuzzyvis::PipelineOutcome out =
                    fuzzyvis::run_pipeline(cfg, subs[i].stage, std::cout);
                if (out.exit_code != 0 && !out.message.empty()) {
                    std::cerr << "error: " << out.message << "\n";
                }
                return out.exit_code;
            }
        }
        if (validate->parsed()) {
            const fuzzyvis::RunConfig cfg = merge_config(overrides.back());
            return fuzzyvis::run_validate(cfg, std::cout);
        }
    } catch (const fuzzyvis::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
