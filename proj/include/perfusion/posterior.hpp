#pragma once

#include "perfusion/enkf.hpp"
#include "perfusion/types.hpp"

#include <array>

namespace perfusion {

struct SampleSet {
    Vector values;
};

enum class Functional { PointEvalAt0, MaxOverT };

struct DensityEstimate {
    Vector grid_points;
    Vector pdf_values;
    double bandwidth = 0.0;
    bool point_mass = false;
    double point_mass_location = 0.0;
};

struct PerfusionSummary {
    double mean_p = 0.0;
    double var_p = 0.0;
    double prob_low = 0.0;    // P(p < low threshold)
    double prob_mid = 0.0;    // P(mid_lo <= p < mid_hi)
    double prob_high = 0.0;   // P(p >= high threshold)
};

// thresholds = {low, mid_lo, mid_hi, high}
inline constexpr std::array<double, 4> kDefaultThresholds{10.0, 20.0, 40.0, 50.0};

SampleSet extract_samples(const Ensemble& ens, Functional functional, double rho);
SampleSet extract_samples(const VoxelPosterior& post, Functional functional, double rho);

// Silverman's normal-reference bandwidth 0.9*min(sd, IQR/1.34)*n^(-1/5);
// falls back to sd alone when the IQR vanishes, 0 when the spread is zero.
double silverman_bandwidth(const SampleSet& samples);

// Gaussian-kernel density; default grid is 512 points over
// [min - 3h, max + 3h]. Zero-spread input returns a point-mass estimate.
DensityEstimate kde(const SampleSet& samples);
DensityEstimate kde(const SampleSet& samples, const Vector& grid_points);

// Smoothed CDF: (1/n) sum Phi((x - x_i)/h).
double kde_cdf(const SampleSet& samples, double bandwidth, double x);

// Probability of [lo, hi) under the KDE; pass infinities for open ends.
// Zero-spread samples degrade to the exact indicator.
double range_probability(const SampleSet& samples, double lo, double hi);

// Variance of the KDE distribution itself: biased sample variance + h^2.
double kde_variance(const SampleSet& samples);

PerfusionSummary summarize_voxel(const VoxelPosterior& post, double rho,
                                 const std::array<double, 4>& thresholds = kDefaultThresholds);
PerfusionSummary summarize_samples(const SampleSet& samples,
                                   const std::array<double, 4>& thresholds = kDefaultThresholds);

} // namespace perfusion
