#include "perfusion/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace perfusion {

namespace {

void check_samples(const SampleSet& samples) {
    if (samples.values.size() < 2) {
        throw EmptySamples("need at least 2 samples, got " +
                           std::to_string(samples.values.size()));
    }
    if (!samples.values.allFinite()) {
        throw InvalidParams("samples must be finite");
    }
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= sorted.size()) {
        return sorted.back();
    }
    const double frac = pos - static_cast<double>(i);
    return sorted[i] * (1.0 - frac) + sorted[i + 1] * frac;
}

double std_normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

} // namespace

SampleSet extract_samples(const Ensemble& ens, Functional functional, double rho) {
    if (!(rho > 0.0)) {
        throw NonpositiveDensity("rho must be positive, got " + std::to_string(rho));
    }
    if (ens.n_e() < 2 || ens.n_q() < 1) {
        throw EmptySamples("ensemble must hold at least 2 members with nonempty state");
    }
    SampleSet s;
    s.values.resize(ens.n_e());
    for (Eigen::Index m = 0; m < ens.n_e(); ++m) {
        const double v = functional == Functional::PointEvalAt0 ? ens.members(0, m)
                                                                : ens.members.col(m).maxCoeff();
        s.values[m] = v / rho;
    }
    return s;
}

SampleSet extract_samples(const VoxelPosterior& post, Functional functional, double rho) {
    return extract_samples(post.final_ensemble, functional, rho);
}

double silverman_bandwidth(const SampleSet& samples) {
    check_samples(samples);
    const Eigen::Index n = samples.values.size();
    const double mean = samples.values.mean();
    const double sd = std::sqrt((samples.values.array() - mean).square().sum() /
                                static_cast<double>(n - 1));
    if (sd == 0.0) {
        return 0.0;
    }

    std::vector<double> sorted(samples.values.data(), samples.values.data() + n);
    std::sort(sorted.begin(), sorted.end());
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

DensityEstimate kde(const SampleSet& samples) {
    const double h = silverman_bandwidth(samples);
    if (h == 0.0) {
        DensityEstimate d;
        d.point_mass = true;
        d.point_mass_location = samples.values[0];
        return d;
    }
    const double lo = samples.values.minCoeff() - 3.0 * h;
    const double hi = samples.values.maxCoeff() + 3.0 * h;
    return kde(samples, Vector::LinSpaced(512, lo, hi));
}

DensityEstimate kde(const SampleSet& samples, const Vector& grid_points) {
    const double h = silverman_bandwidth(samples);
    DensityEstimate d;
    if (h == 0.0) {
        d.point_mass = true;
        d.point_mass_location = samples.values[0];
        return d;
    }
    d.bandwidth = h;
    d.grid_points = grid_points;
    d.pdf_values.resize(grid_points.size());
    const double norm = 1.0 / (static_cast<double>(samples.values.size()) * h *
                               std::sqrt(2.0 * M_PI));
    for (Eigen::Index g = 0; g < grid_points.size(); ++g) {
        const double x = grid_points[g];
        double acc = 0.0;
        for (Eigen::Index i = 0; i < samples.values.size(); ++i) {
            const double u = (x - samples.values[i]) / h;
            acc += std::exp(-0.5 * u * u);
        }
        d.pdf_values[g] = norm * acc;
    }
    return d;
}

double kde_cdf(const SampleSet& samples, double bandwidth, double x) {
    check_samples(samples);
    if (std::isinf(x)) {
        return x > 0.0 ? 1.0 : 0.0;
    }
    if (!(bandwidth > 0.0)) {
        throw NonpositiveParameter("bandwidth must be positive, got " +
                                   std::to_string(bandwidth));
    }
    double acc = 0.0;
    for (Eigen::Index i = 0; i < samples.values.size(); ++i) {
        acc += std_normal_cdf((x - samples.values[i]) / bandwidth);
    }
    return acc / static_cast<double>(samples.values.size());
}

double range_probability(const SampleSet& samples, double lo, double hi) {
    check_samples(samples);
    if (!(lo < hi)) {
        throw InvalidInterval("need lo < hi, got [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + ")");
    }
    const double h = silverman_bandwidth(samples);
    if (h == 0.0) {
        const double v = samples.values[0];
        return (v >= lo && v < hi) ? 1.0 : 0.0;
    }
    return kde_cdf(samples, h, hi) - kde_cdf(samples, h, lo);
}

double kde_variance(const SampleSet& samples) {
    check_samples(samples);
    const double h = silverman_bandwidth(samples);
    const double mean = samples.values.mean();
    const double biased_var = (samples.values.array() - mean).square().sum() /
                              static_cast<double>(samples.values.size());
    return biased_var + h * h;
}

PerfusionSummary summarize_samples(const SampleSet& samples,
                                   const std::array<double, 4>& thresholds) {
    check_samples(samples);
    if (!(thresholds[0] <= thresholds[1] && thresholds[1] < thresholds[2] &&
          thresholds[2] <= thresholds[3])) {
        throw InvalidParams("thresholds must satisfy low <= mid_lo < mid_hi <= high");
    }
    const double inf = std::numeric_limits<double>::infinity();
    PerfusionSummary s;
    s.mean_p = samples.values.mean();
    s.var_p = (samples.values.array() - s.mean_p).square().sum() /
              static_cast<double>(samples.values.size() - 1);
    s.prob_low = range_probability(samples, -inf, thresholds[0]);
    s.prob_mid = range_probability(samples, thresholds[1], thresholds[2]);
    s.prob_high = range_probability(samples, thresholds[3], inf);
    return s;
}

PerfusionSummary summarize_voxel(const VoxelPosterior& post, double rho,
                                 const std::array<double, 4>& thresholds) {
    return summarize_samples(extract_samples(post, Functional::PointEvalAt0, rho), thresholds);
}

} // namespace perfusion
