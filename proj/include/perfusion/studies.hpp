#pragma once

#include "perfusion/io.hpp"
#include "perfusion/phantom.hpp"
#include "perfusion/types.hpp"

#include <limits>
#include <string>
#include <vector>

namespace perfusion {

// One synthetic voxel plus EnKF parameters shared by all parameter studies.
struct StudyConfig {
    double T = 49.0;
    double dtau = 0.0625;
    double dt_obs = 0.25;
    double perfusion = 60.0;
    double mtt = 8.0;
    double rho = 1.0;
    double kernel_scale = 1e-4;
    AifParams aif;
    double sigma0 = 100.0;
    double sigma_e = 0.01;
    double alpha = 1e-9;
    double ell = 2.0;
    int n_e = 2000;
    std::uint64_t seed = 1;
    int n_seeds = 10;
    // The quadrature-refinement study defaults to the closed-form filter so
    // its convergence slope is free of Monte-Carlo noise; setting this runs
    // the ensemble filter instead.
    bool use_enkf_for_dtau = false;
};

StudyConfig parse_study_config(const io::ConfigMap& map);
StudyConfig read_study_config(const std::string& path);

struct StudyResult {
    std::string kind;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> y2;   // secondary metric; only the noise study fills it
    double slope = std::numeric_limits<double>::quiet_NaN();
};

// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

double total_variation(const Vector& v);

// kinds: ensemble_size, dtau, corr_length, dt_obs, noise.
// Writes plot-ready CSVs into out_dir (skipped when out_dir is empty).
StudyResult run_study(const std::string& kind, const StudyConfig& cfg,
                      const std::string& out_dir);

StudyResult run_ensemble_size_study(const StudyConfig& cfg, const std::string& out_dir);
StudyResult run_dtau_study(const StudyConfig& cfg, const std::string& out_dir);
StudyResult run_corr_length_study(const StudyConfig& cfg, const std::string& out_dir);
StudyResult run_dt_obs_study(const StudyConfig& cfg, const std::string& out_dir);
StudyResult run_noise_study(const StudyConfig& cfg, const std::string& out_dir);

} // namespace perfusion
