#pragma once

#include "perfusion/covariance.hpp"
#include "perfusion/forward_model.hpp"
#include "perfusion/kernels.hpp"
#include "perfusion/rng.hpp"
#include "perfusion/time_grid.hpp"
#include "perfusion/types.hpp"

#include <vector>

namespace perfusion {

// How the s evolution sub-steps between observations are realized.
// SubSteps draws s increments per member through the Cholesky factor.
// Fused collapses them into one draw of variance s*dtau*(Sigma + jitter*I),
// which has the same distribution. FusedLowRank additionally routes the draw
// through the truncated spectral basis; it is the default because one draw
// then costs O(n_q * r) instead of O(n_q^2).
enum class ForecastMode { SubSteps, Fused, FusedLowRank };

struct AssimilationConfig {
    double sigma0 = 100.0;
    double sigma_e = 0.01;
    double alpha = 1e-9;
    double ell = 2.0;
    int n_e = 2000;
    bool record_history = false;
    bool perturb_observations = true;
    bool with_covariance = false;
    ForecastMode forecast_mode = ForecastMode::FusedLowRank;
    double jitter_rel = kDefaultJitterRel;
};

void validate(const AssimilationConfig& cfg);

struct Ensemble {
    Matrix members;                      // n_q x n_e, one column per member
    std::vector<RngStream> member_rngs;  // one stream per member

    Eigen::Index n_q() const { return members.rows(); }
    Eigen::Index n_e() const { return members.cols(); }
};

struct EnsembleStats {
    Vector mean;
    Matrix covariance;   // empty unless covariance was requested
};

struct VoxelPosterior {
    Ensemble final_ensemble;
    EnsembleStats stats;
    std::vector<Vector> history;   // posterior mean after each observation
};

struct ExactPosterior {
    Vector mean;
    Matrix covariance;
};

// Members drawn i.i.d. as sigma0 * (factor draw); member m's stream is
// rng.substream(m), so the ensemble is reproducible for any thread count.
Ensemble init_ensemble(const AssimilationConfig& cfg, const NoiseFactor& factor,
                       const RngStream& rng);
Ensemble init_ensemble(const AssimilationConfig& cfg, const SpectralFactor& factor,
                       const RngStream& rng);

// Advance by one observation interval: s sub-steps of k += sqrt(dtau)*noise.
void forecast_step(Ensemble& ens, const NoiseFactor& factor, const TimeGrid& grid);
// Distributionally equivalent single draws.
void forecast_step_fused(Ensemble& ens, const NoiseFactor& factor, const TimeGrid& grid);
void forecast_step_lowrank(Ensemble& ens, const SpectralFactor& factor, const TimeGrid& grid);

// Perturbed-observation update for one scalar observation. With perturb off,
// members share the unperturbed innovation (used to verify the mean-update
// formula); the default draws one perturbation per member from its stream.
void analysis_step(Ensemble& ens, const ForwardRow& row, double c_obs, double sigma_e,
                   bool perturb = true);

EnsembleStats compute_stats(const Ensemble& ens, bool with_covariance);

// Everything shareable across voxels: factorizations and forward rows are
// immutable once built, so one context can drive many voxels in parallel.
struct AssimilationContext {
    AssimilationConfig cfg;
    TimeGrid grid;
    std::vector<ForwardRow> rows;
    NoiseFactor chol;          // SubSteps and Fused modes
    SpectralFactor spectral;   // FusedLowRank mode
};

AssimilationContext build_context(const AssimilationConfig& cfg, const TimeGrid& grid,
                                  const AifVector& aif);

// Full per-voxel recursion: init, then forecast + analysis per observation.
VoxelPosterior assimilate_voxel(const AssimilationContext& ctx, const Vector& observations,
                                const RngStream& voxel_rng);
VoxelPosterior assimilate_voxel(const AssimilationConfig& cfg, const TimeGrid& grid,
                                const AifVector& aif, const Vector& observations,
                                const RngStream& voxel_rng);

// Closed-form linear-Gaussian recursion on the same model; the sampling-free
// limit the ensemble converges to, used as convergence oracle.
ExactPosterior exact_kalman_filter(const AssimilationConfig& cfg, const TimeGrid& grid,
                                   const AifVector& aif, const Vector& observations);

} // namespace perfusion
