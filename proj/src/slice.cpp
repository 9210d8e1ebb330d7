#include "perfusion/slice.hpp"

#include <cmath>
#include <string>

namespace perfusion {

namespace {

void check_echo(const char* name, double config_value, double dataset_value) {
    const double tol = 1e-9 * std::max(1.0, std::abs(dataset_value));
    if (std::abs(config_value - dataset_value) > tol) {
        throw ValidationError(std::string("config ") + name + " = " +
                              std::to_string(config_value) + " disagrees with dataset " +
                              std::to_string(dataset_value));
    }
}

} // namespace

SliceResult run_slice(const io::LoadedDataset& data, const SliceRequest& req) {
    const io::RunConfig& rc = req.run;
    if (rc.T) {
        check_echo("T", *rc.T, data.spec.T);
    }
    if (rc.dt_obs) {
        check_echo("dt_obs", *rc.dt_obs, data.spec.dt_obs);
    }
    if (rc.kernel_scale) {
        check_echo("kernel_scale", *rc.kernel_scale, data.spec.kernel_scale);
    }

    const int n_obs = static_cast<int>(data.noisy.cols());
    SliceResult res;
    res.nx = data.spec.nx;
    res.ny = data.spec.ny;
    res.grid = build_time_grid(data.spec.T, rc.dtau, data.spec.dt_obs, n_obs);

    const AifVector aif = discretize_aif(data.aif_times, data.aif_values, res.grid);

    AssimilationConfig cfg = rc.enkf;
    cfg.record_history = req.record_history;
    cfg.with_covariance = false;
    const AssimilationContext ctx = build_context(cfg, res.grid, aif);

    const int n_voxel = res.nx * res.ny;
    res.mean_p.resize(n_voxel);
    res.var_p.resize(n_voxel);
    res.prob_low.resize(n_voxel);
    res.prob_mid.resize(n_voxel);
    res.prob_high.resize(n_voxel);
    if (req.record_history) {
        res.histories.resize(static_cast<std::size_t>(n_voxel));
    }

    const RngStream root(rc.seed, kAssimilationDomain);
    const double scale = data.spec.kernel_scale;

    // Exceptions cannot leave the parallel region; remember them per voxel
    // and surface the lowest-indexed one afterwards.
    std::vector<std::string> errors(static_cast<std::size_t>(n_voxel));
    std::vector<int> error_kind(static_cast<std::size_t>(n_voxel), 0);

#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < n_voxel; ++j) {
        try {
            const std::uint64_t stream_key =
                rc.shared_noise ? 0 : static_cast<std::uint64_t>(j);
            VoxelPosterior post = assimilate_voxel(ctx, data.noisy.row(j).transpose(),
                                                   root.substream(stream_key));

            SampleSet samples = extract_samples(post, rc.functional, rc.rho);
            samples.values /= scale;   // kernel-unit perfusion to display units
            const PerfusionSummary summary = summarize_samples(samples, req.thresholds);
            res.mean_p[j] = summary.mean_p;
            res.var_p[j] = summary.var_p;
            res.prob_low[j] = summary.prob_low;
            res.prob_mid[j] = summary.prob_mid;
            res.prob_high[j] = summary.prob_high;
            if (req.record_history) {
                res.histories[static_cast<std::size_t>(j)] = std::move(post.history);
            }
        } catch (const ValidationError& e) {
            errors[static_cast<std::size_t>(j)] = e.what();
            error_kind[static_cast<std::size_t>(j)] = 1;
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(j)] = e.what();
            error_kind[static_cast<std::size_t>(j)] = 2;
        }
    }

    for (int j = 0; j < n_voxel; ++j) {
        if (error_kind[static_cast<std::size_t>(j)] == 1) {
            throw ValidationError("voxel " + std::to_string(j) + ": " +
                                  errors[static_cast<std::size_t>(j)]);
        }
        if (error_kind[static_cast<std::size_t>(j)] == 2) {
            throw NumericalError("voxel " + std::to_string(j) + ": " +
                                 errors[static_cast<std::size_t>(j)]);
        }
    }
    return res;
}

} // namespace perfusion
