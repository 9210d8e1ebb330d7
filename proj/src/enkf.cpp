#include "perfusion/enkf.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace perfusion {

void validate(const AssimilationConfig& cfg) {
    if (cfg.sigma0 < 0.0) {
        throw InvalidParams("sigma0 must be nonnegative, got " + std::to_string(cfg.sigma0));
    }
    if (!(cfg.sigma_e > 0.0)) {
        throw NonpositiveVariance("sigma_e must be positive, got " + std::to_string(cfg.sigma_e));
    }
    if (!(cfg.alpha > 0.0)) {
        throw NonpositiveParameter("alpha must be positive, got " + std::to_string(cfg.alpha));
    }
    if (!(cfg.ell > 0.0)) {
        throw NonpositiveParameter("ell must be positive, got " + std::to_string(cfg.ell));
    }
    if (cfg.n_e < 2) {
        throw InvalidParams("n_e must be at least 2, got " + std::to_string(cfg.n_e));
    }
    if (!(cfg.jitter_rel > 0.0)) {
        throw NonpositiveParameter("jitter_rel must be positive, got " +
                                   std::to_string(cfg.jitter_rel));
    }
}

namespace {

std::vector<RngStream> member_streams(const RngStream& rng, int n_e) {
    std::vector<RngStream> streams;
    streams.reserve(static_cast<std::size_t>(n_e));
    for (int m = 0; m < n_e; ++m) {
        streams.push_back(rng.substream(static_cast<std::uint64_t>(m)));
    }
    return streams;
}

Ensemble init_with(const Matrix& F, double sigma0, const AssimilationConfig& cfg,
                   const RngStream& rng) {
    Ensemble ens;
    ens.members = Matrix::Zero(F.rows(), cfg.n_e);
    ens.member_rngs = member_streams(rng, cfg.n_e);
    Matrix z_buf;
    kernels::add_noise_parallel(ens.members, F, sigma0, ens.member_rngs, z_buf);
    return ens;
}

} // namespace

Ensemble init_ensemble(const AssimilationConfig& cfg, const NoiseFactor& factor,
                       const RngStream& rng) {
    validate(cfg);
    return init_with(factor.lower, cfg.sigma0, cfg, rng);
}

Ensemble init_ensemble(const AssimilationConfig& cfg, const SpectralFactor& factor,
                       const RngStream& rng) {
    validate(cfg);
    return init_with(factor.basis, cfg.sigma0, cfg, rng);
}

void forecast_step(Ensemble& ens, const NoiseFactor& factor, const TimeGrid& grid) {
    Matrix z_buf;
    const double scale = std::sqrt(grid.dtau);
    for (int l = 0; l < grid.s; ++l) {
        kernels::add_noise_parallel(ens.members, factor.lower, scale, ens.member_rngs, z_buf);
    }
}

void forecast_step_fused(Ensemble& ens, const NoiseFactor& factor, const TimeGrid& grid) {
    Matrix z_buf;
    const double scale = std::sqrt(grid.s * grid.dtau);
    kernels::add_noise_parallel(ens.members, factor.lower, scale, ens.member_rngs, z_buf);
}

void forecast_step_lowrank(Ensemble& ens, const SpectralFactor& factor, const TimeGrid& grid) {
    Matrix z_buf;
    const double scale = std::sqrt(grid.s * grid.dtau);
    kernels::add_noise_parallel(ens.members, factor.basis, scale, ens.member_rngs, z_buf);
}

namespace {

void analysis_step_ws(Ensemble& ens, const ForwardRow& row, double c_obs, double sigma_e,
                      bool perturb, kernels::Workspace& ws) {
    if (!(sigma_e > 0.0)) {
        throw NonpositiveVariance("sigma_e must be positive, got " + std::to_string(sigma_e));
    }
    if (row.weights.size() != ens.n_q()) {
        throw DimensionMismatch("row has " + std::to_string(row.weights.size()) +
                                " weights, ensemble state has " + std::to_string(ens.n_q()));
    }

    const Eigen::Index n_e = ens.n_e();
    kernels::project_parallel(ens.members, row.weights, row.lo, row.hi, ws.y);
    const double y_bar = kernels::mean_parallel(ws.y, ws.block_scalar);

    // Centered cross sums: s_kw = sum (k_m)(y_m - y_bar) equals the anomaly
    // cross covariance times (n_e - 1) because the centering weights sum to 0.
    ws.innov = (ws.y.array() - y_bar).matrix();
    Vector s_kw;
    double s_ww = 0.0;
    kernels::weighted_sums_parallel(ens.members, ws.innov, ws.block_vec, ws.block_aux,
                                    s_kw, s_ww);

    const double denom = s_ww + static_cast<double>(n_e - 1) * sigma_e;
    const Vector gain = s_kw / denom;

    if (perturb) {
        kernels::draw_scalars_parallel(ens.member_rngs, std::sqrt(sigma_e), ws.pert);
        ws.innov = (c_obs - (ws.y + ws.pert).array()).matrix();
    } else {
        ws.innov = (c_obs - ws.y.array()).matrix();
    }
    kernels::rank1_update_parallel(ens.members, gain, ws.innov);
}

} // namespace

void analysis_step(Ensemble& ens, const ForwardRow& row, double c_obs, double sigma_e,
                   bool perturb) {
    kernels::Workspace ws;
    analysis_step_ws(ens, row, c_obs, sigma_e, perturb, ws);
}

EnsembleStats compute_stats(const Ensemble& ens, bool with_covariance) {
    EnsembleStats stats;
    Matrix block_vec;
    kernels::col_mean_parallel(ens.members, block_vec, stats.mean);
    if (with_covariance) {
        kernels::covariance_blocked(ens.members, stats.mean, stats.covariance);
    }
    return stats;
}

AssimilationContext build_context(const AssimilationConfig& cfg, const TimeGrid& grid,
                                  const AifVector& aif) {
    validate(cfg);
    AssimilationContext ctx;
    ctx.cfg = cfg;
    ctx.grid = grid;

    const CovarianceMatrix cov = gaussian_covariance(grid, cfg.alpha, cfg.ell);
    const double jitter_start = cfg.jitter_rel * cfg.alpha;
    if (cfg.forecast_mode == ForecastMode::FusedLowRank) {
        ctx.spectral = spectral_factorize(cov, jitter_start);
    } else {
        ctx.chol = factorize(cov, jitter_start);
    }

    ctx.rows.reserve(static_cast<std::size_t>(grid.n_obs));
    for (int i = 1; i <= grid.n_obs; ++i) {
        ctx.rows.push_back(build_forward_row(aif, grid, i));
    }
    return ctx;
}

VoxelPosterior assimilate_voxel(const AssimilationContext& ctx, const Vector& observations,
                                const RngStream& voxel_rng) {
    const AssimilationConfig& cfg = ctx.cfg;
    if (observations.size() != ctx.grid.n_obs) {
        throw DimensionMismatch("got " + std::to_string(observations.size()) +
                                " observations, grid expects " +
                                std::to_string(ctx.grid.n_obs));
    }

    VoxelPosterior post;
    Ensemble ens = cfg.forecast_mode == ForecastMode::FusedLowRank
                       ? init_ensemble(cfg, ctx.spectral, voxel_rng)
                       : init_ensemble(cfg, ctx.chol, voxel_rng);

    kernels::Workspace ws;
    Matrix mean_buf;
    Matrix z_buf;
    const double fused_scale = std::sqrt(ctx.grid.s * ctx.grid.dtau);
    const double sub_scale = std::sqrt(ctx.grid.dtau);
    for (int i = 1; i <= ctx.grid.n_obs; ++i) {
        switch (cfg.forecast_mode) {
            case ForecastMode::SubSteps:
                for (int l = 0; l < ctx.grid.s; ++l) {
                    kernels::add_noise_parallel(ens.members, ctx.chol.lower, sub_scale,
                                                ens.member_rngs, z_buf);
                }
                break;
            case ForecastMode::Fused:
                kernels::add_noise_parallel(ens.members, ctx.chol.lower, fused_scale,
                                            ens.member_rngs, z_buf);
                break;
            case ForecastMode::FusedLowRank:
                kernels::add_noise_parallel(ens.members, ctx.spectral.basis, fused_scale,
                                            ens.member_rngs, z_buf);
                break;
        }
        analysis_step_ws(ens, ctx.rows[static_cast<std::size_t>(i - 1)], observations[i - 1],
                         cfg.sigma_e, cfg.perturb_observations, ws);
        if (cfg.record_history) {
            Vector mean;
            kernels::col_mean_parallel(ens.members, mean_buf, mean);
            post.history.push_back(std::move(mean));
        }
    }

    post.stats = compute_stats(ens, cfg.with_covariance);
    post.final_ensemble = std::move(ens);
    return post;
}

VoxelPosterior assimilate_voxel(const AssimilationConfig& cfg, const TimeGrid& grid,
                                const AifVector& aif, const Vector& observations,
                                const RngStream& voxel_rng) {
    return assimilate_voxel(build_context(cfg, grid, aif), observations, voxel_rng);
}

ExactPosterior exact_kalman_filter(const AssimilationConfig& cfg, const TimeGrid& grid,
                                   const AifVector& aif, const Vector& observations) {
    validate(cfg);
    if (observations.size() != grid.n_obs) {
        throw DimensionMismatch("got " + std::to_string(observations.size()) +
                                " observations, grid expects " + std::to_string(grid.n_obs));
    }

    const CovarianceMatrix cov = gaussian_covariance(grid, cfg.alpha, cfg.ell);
    const Matrix& sigma = cov.entries;

    ExactPosterior post;
    post.mean = Vector::Zero(grid.n_q);
    post.covariance = (cfg.sigma0 * cfg.sigma0) * sigma;

    const double walk = grid.s * grid.dtau;
    Vector ph(grid.n_q);
    for (int i = 1; i <= grid.n_obs; ++i) {
        post.covariance += walk * sigma;

        const ForwardRow row = build_forward_row(aif, grid, i);
        const int len = row.hi - row.lo + 1;
        const auto w = row.weights.segment(row.lo, len);
        ph.noalias() = post.covariance.middleCols(row.lo, len) * w;
        const double hph = w.dot(ph.segment(row.lo, len));
        const double denom = hph + cfg.sigma_e;

        const double misfit = observations[i - 1] - w.dot(post.mean.segment(row.lo, len));
        post.mean.noalias() += ph * (misfit / denom);
        // The rank-1 outer product is exactly symmetric entry by entry, so the
        // recursion keeps the covariance symmetric without resymmetrizing.
        post.covariance.noalias() -= (ph * ph.transpose()) / denom;
    }
    return post;
}

} // namespace perfusion
