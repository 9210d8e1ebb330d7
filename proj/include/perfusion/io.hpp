#pragma once

#include "perfusion/enkf.hpp"
#include "perfusion/phantom.hpp"
#include "perfusion/posterior.hpp"
#include "perfusion/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace perfusion::io {

// Doubles are printed with "%.17g" so every CSV round-trips bit exactly.
std::string format_double(double v);
double parse_double(const std::string& s, const std::string& context);
long long parse_int(const std::string& s, const std::string& context);

// Plain-text key=value configuration. '#' starts a comment, blank lines are
// skipped, keys are unique. Ordered map so echoes are deterministic.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap read_config(const std::string& path);
void write_config(const std::string& path, const ConfigMap& map);

// Throws ValidationError naming the offending key when the map holds a key
// outside `allowed`.
void reject_unknown_keys(const ConfigMap& map, const std::vector<std::string>& allowed,
                         const std::string& context);

double get_double(const ConfigMap& map, const std::string& key, double fallback);
long long get_int(const ConfigMap& map, const std::string& key, long long fallback);
std::uint64_t get_u64(const ConfigMap& map, const std::string& key, std::uint64_t fallback);
bool get_bool(const ConfigMap& map, const std::string& key, bool fallback);
std::string get_string(const ConfigMap& map, const std::string& key,
                       const std::string& fallback);

// AIF series: header "# aif T=<..>", then one "time,concentration" per line.
void write_aif_csv(const std::string& path, const std::vector<double>& times,
                   const std::vector<double>& values, double T);
void read_aif_csv(const std::string& path, std::vector<double>& times,
                  std::vector<double>& values, double& T);

// Slice map: header "# map nx=<..> ny=<..>", then ny rows of nx values.
void write_map_csv(const std::string& path, int nx, int ny, const Vector& row_major);
void read_map_csv(const std::string& path, int& nx, int& ny, Vector& row_major);

// Measurements: header "# meas n_voxel=<..> n_obs=<..> dt_obs=<..>",
// then one voxel per row.
void write_meas_csv(const std::string& path, const Matrix& rows, double dt_obs);
void read_meas_csv(const std::string& path, Matrix& rows, double& dt_obs);

// Two-column series with optional trailing "# <k>=<v>" annotations.
void write_series_csv(const std::string& path, const std::string& header,
                      const std::vector<double>& x, const std::vector<double>& y,
                      const std::vector<std::pair<std::string, double>>& annotations = {});

// Mean-trajectory history: header "# kbar n_obs=<..> n_q=<..> dtau=<..>",
// one row per observation.
void write_history_csv(const std::string& path, const std::vector<Vector>& history,
                       double dtau);

ConfigMap phantom_spec_to_config(const PhantomSpec& spec);
PhantomSpec phantom_spec_from_config(const ConfigMap& map);
PhantomSpec read_phantom_spec(const std::string& path);

// Dataset directory: aif.csv, truth.csv, meas_clean.csv, meas_noisy.csv,
// spec.txt (key=value echo of the generating spec).
void write_dataset(const std::string& dir, const PhantomSpec& spec, const PhantomDataset& ds);

struct LoadedDataset {
    PhantomSpec spec;
    Vector truth_map;
    std::vector<double> aif_times;
    std::vector<double> aif_values;
    Matrix clean;
    Matrix noisy;
};

LoadedDataset read_dataset(const std::string& dir);

// Assimilation front-end settings; grid timing comes from the dataset, the
// config supplies the filter discretization and EnKF parameters. Optional
// echo keys (T, dt_obs, kernel_scale) must agree with the dataset if given.
struct RunConfig {
    AssimilationConfig enkf;
    double dtau = 0.0625;
    double rho = 1.0;
    std::uint64_t seed = 1;
    bool shared_noise = false;
    Functional functional = Functional::PointEvalAt0;
    std::optional<double> T;
    std::optional<double> dt_obs;
    std::optional<double> kernel_scale;
};

RunConfig parse_run_config(const ConfigMap& map);
RunConfig read_run_config(const std::string& path);

} // namespace perfusion::io
