#include "perfusion/io.hpp"
#include "perfusion/phantom.hpp"
#include "perfusion/slice.hpp"
#include "perfusion/studies.hpp"

#include "CLI11.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

namespace {

using namespace perfusion;

void set_jobs(int jobs) {
    if (jobs < 1) {
        throw ValidationError("--jobs must be at least 1");
    }
#ifdef _OPENMP
    omp_set_num_threads(jobs);
#endif
}

int cmd_phantom(const std::string& spec_path, const std::string& out_dir) {
    const PhantomSpec spec = io::read_phantom_spec(spec_path);
    const PhantomDataset ds = generate(spec);
    io::write_dataset(out_dir, spec, ds);
    std::printf("wrote %dx%d dataset with %d observations to %s\n", spec.nx, spec.ny,
                ds.grid.n_obs, out_dir.c_str());
    return 0;
}

int cmd_assimilate(const std::string& data_dir, const std::string& config_path,
                   const std::string& out_dir, bool history) {
    const io::LoadedDataset data = io::read_dataset(data_dir);
    SliceRequest req;
    req.run = io::read_run_config(config_path);
    req.record_history = history;

    const SliceResult res = run_slice(data, req);

    std::filesystem::create_directories(out_dir);
    io::write_map_csv(out_dir + "/perfusion_mean.csv", res.nx, res.ny, res.mean_p);
    io::write_map_csv(out_dir + "/perfusion_var.csv", res.nx, res.ny, res.var_p);
    io::write_map_csv(out_dir + "/perfusion_prob_low.csv", res.nx, res.ny, res.prob_low);
    io::write_map_csv(out_dir + "/perfusion_prob_mid.csv", res.nx, res.ny, res.prob_mid);
    io::write_map_csv(out_dir + "/perfusion_prob_high.csv", res.nx, res.ny, res.prob_high);
    if (history) {
        for (std::size_t j = 0; j < res.histories.size(); ++j) {
            io::write_history_csv(out_dir + "/kbar_voxel_" + std::to_string(j) + ".csv",
                                  res.histories[j], res.grid.dtau);
        }
    }
    std::printf("assimilated %d voxels (%d observations each) into %s\n", res.nx * res.ny,
                res.grid.n_obs, out_dir.c_str());
    return 0;
}

int cmd_study(const std::string& kind, const std::string& config_path,
              const std::string& out_dir, int seeds_override) {
    StudyConfig cfg =
        config_path.empty() ? StudyConfig{} : read_study_config(config_path);
    if (seeds_override > 0) {
        cfg.n_seeds = seeds_override;
    }
    const StudyResult res = run_study(kind, cfg, out_dir);
    if (std::isfinite(res.slope)) {
        std::printf("study %s: %zu points, log-log slope %.4f\n", res.kind.c_str(),
                    res.x.size(), res.slope);
    } else {
        std::printf("study %s: %zu points\n", res.kind.c_str(), res.x.size());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tissue-kernel and perfusion reconstruction with an ensemble Kalman filter"};
    app.require_subcommand(1);

    std::string spec_path, data_dir, config_path, out_dir, kind;
    bool history = false;
    int jobs = 0;
    int seeds = 0;

    CLI::App* phantom = app.add_subcommand("phantom", "Generate a synthetic dataset");
    phantom->add_option("--spec", spec_path, "Phantom spec file (key=value)")->required();
    phantom->add_option("--out", out_dir, "Output dataset directory")->required();

    CLI::App* assimilate =
        app.add_subcommand("assimilate", "Run the filter on every voxel of a dataset");
    assimilate->add_option("--data", data_dir, "Dataset directory")->required();
    assimilate->add_option("--config", config_path, "Run config file (key=value)")->required();
    assimilate->add_option("--out", out_dir, "Output directory")->required();
    assimilate->add_flag("--history", history, "Write per-voxel mean trajectories");
    assimilate->add_option("--jobs", jobs, "Worker threads");

    CLI::App* study = app.add_subcommand("study", "Run a parameter study");
    study->add_option("--kind", kind,
                      "ensemble_size, dtau, corr_length, dt_obs, or noise")->required();
    study->add_option("--config", config_path, "Study config file (key=value)");
    study->add_option("--out", out_dir, "Output directory")->required();
    study->add_option("--seeds", seeds, "Number of RNG seeds to average over");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (jobs > 0) {
            set_jobs(jobs);
        }
        if (app.got_subcommand(phantom)) {
            return cmd_phantom(spec_path, out_dir);
        }
        if (app.got_subcommand(assimilate)) {
            return cmd_assimilate(data_dir, config_path, out_dir, history);
        }
        return cmd_study(kind, config_path, out_dir, seeds);
    } catch (const perfusion::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const perfusion::NumericalError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
