#include "perfusion/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace perfusion::io {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string::size_type pos = 0;
    while (true) {
        const auto next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(trim(s.substr(pos)));
            break;
        }
        out.push_back(trim(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) {
        out.push_back(tok);
    }
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) {
        throw ValidationError("cannot open " + path + " for reading");
    }
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out.is_open()) {
        throw ValidationError("cannot open " + path + " for writing");
    }
    return out;
}

void finish_out(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out.good()) {
        throw ValidationError("failed writing " + path);
    }
}

// Parses a header of the form "# <tag> k1=v1 k2=v2 ...".
ConfigMap parse_header(const std::string& line, const std::string& tag,
                       const std::string& path) {
    const auto toks = split_ws(line);
    if (toks.size() < 2 || toks[0] != "#" || toks[1] != tag) {
        throw ValidationError(path + ": expected header \"# " + tag + " ...\", got \"" +
                              line + "\"");
    }
    ConfigMap map;
    for (std::size_t i = 2; i < toks.size(); ++i) {
        const auto eq = toks[i].find('=');
        if (eq == std::string::npos) {
            throw ValidationError(path + ": malformed header token \"" + toks[i] + "\"");
        }
        map[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
    }
    return map;
}

const std::string& header_value(const ConfigMap& map, const std::string& key,
                                const std::string& path) {
    const auto it = map.find(key);
    if (it == map.end()) {
        throw ValidationError(path + ": header misses " + key);
    }
    return it->second;
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& s, const std::string& context) {
    const std::string t = trim(s);
    if (t.empty()) {
        throw ValidationError(context + ": empty number");
    }
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
        throw ValidationError(context + ": cannot parse \"" + t + "\" as a finite number");
    }
    return v;
}

long long parse_int(const std::string& s, const std::string& context) {
    const std::string t = trim(s);
    if (t.empty()) {
        throw ValidationError(context + ": empty integer");
    }
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size() || errno == ERANGE) {
        throw ValidationError(context + ": cannot parse \"" + t + "\" as an integer");
    }
    return v;
}

ConfigMap read_config(const std::string& path) {
    std::ifstream in = open_in(path);
    ConfigMap map;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ValidationError(path + ":" + std::to_string(lineno) +
                                  ": expected key=value, got \"" + t + "\"");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) {
            throw ValidationError(path + ":" + std::to_string(lineno) + ": empty key");
        }
        if (!map.emplace(key, value).second) {
            throw ValidationError(path + ":" + std::to_string(lineno) + ": duplicate key \"" +
                                  key + "\"");
        }
    }
    return map;
}

void write_config(const std::string& path, const ConfigMap& map) {
    std::ofstream out = open_out(path);
    for (const auto& [key, value] : map) {
        out << key << " = " << value << "\n";
    }
    finish_out(out, path);
}

void reject_unknown_keys(const ConfigMap& map, const std::vector<std::string>& allowed,
                         const std::string& context) {
    for (const auto& [key, value] : map) {
        bool known = std::find(allowed.begin(), allowed.end(), key) != allowed.end();
        if (!known && key.rfind("region", 0) == 0) {
            known = std::find(allowed.begin(), allowed.end(), "region*") != allowed.end();
        }
        if (!known) {
            throw ValidationError(context + ": unknown key \"" + key + "\"");
        }
    }
}

double get_double(const ConfigMap& map, const std::string& key, double fallback) {
    const auto it = map.find(key);
    return it == map.end() ? fallback : parse_double(it->second, "key " + key);
}

long long get_int(const ConfigMap& map, const std::string& key, long long fallback) {
    const auto it = map.find(key);
    return it == map.end() ? fallback : parse_int(it->second, "key " + key);
}

std::uint64_t get_u64(const ConfigMap& map, const std::string& key, std::uint64_t fallback) {
    const auto it = map.find(key);
    if (it == map.end()) {
        return fallback;
    }
    const std::string t = trim(it->second);
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
        throw ValidationError("key " + key + ": cannot parse \"" + t +
                              "\" as an unsigned integer");
    }
    return v;
}

bool get_bool(const ConfigMap& map, const std::string& key, bool fallback) {
    const auto it = map.find(key);
    if (it == map.end()) {
        return fallback;
    }
    const std::string t = trim(it->second);
    if (t == "true" || t == "1") {
        return true;
    }
    if (t == "false" || t == "0") {
        return false;
    }
    throw ValidationError("key " + key + ": expected true/false/1/0, got \"" + t + "\"");
}

std::string get_string(const ConfigMap& map, const std::string& key,
                       const std::string& fallback) {
    const auto it = map.find(key);
    return it == map.end() ? fallback : it->second;
}

void write_aif_csv(const std::string& path, const std::vector<double>& times,
                   const std::vector<double>& values, double T) {
    if (times.size() != values.size()) {
        throw DimensionMismatch("aif times and values differ in length");
    }
    std::ofstream out = open_out(path);
    out << "# aif T=" << format_double(T) << "\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        out << format_double(times[i]) << "," << format_double(values[i]) << "\n";
    }
    finish_out(out, path);
}

void read_aif_csv(const std::string& path, std::vector<double>& times,
                  std::vector<double>& values, double& T) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw ValidationError(path + ": empty file");
    }
    const ConfigMap header = parse_header(line, "aif", path);
    T = parse_double(header_value(header, "T", path), path + " header T");

    times.clear();
    values.clear();
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        const auto cols = split(t, ',');
        if (cols.size() != 2) {
            throw ValidationError(path + ":" + std::to_string(lineno) +
                                  ": expected \"time,concentration\"");
        }
        const std::string ctx = path + ":" + std::to_string(lineno);
        times.push_back(parse_double(cols[0], ctx));
        values.push_back(parse_double(cols[1], ctx));
    }
    if (times.empty()) {
        throw ValidationError(path + ": no samples");
    }
}

void write_map_csv(const std::string& path, int nx, int ny, const Vector& row_major) {
    if (row_major.size() != static_cast<Eigen::Index>(nx) * ny) {
        throw DimensionMismatch("map has " + std::to_string(row_major.size()) +
                                " values, expected " + std::to_string(nx * ny));
    }
    std::ofstream out = open_out(path);
    out << "# map nx=" << nx << " ny=" << ny << "\n";
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
            out << format_double(row_major[static_cast<Eigen::Index>(y) * nx + x]);
            out << (x + 1 == nx ? "\n" : ",");
        }
    }
    finish_out(out, path);
}

void read_map_csv(const std::string& path, int& nx, int& ny, Vector& row_major) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw ValidationError(path + ": empty file");
    }
    const ConfigMap header = parse_header(line, "map", path);
    nx = static_cast<int>(parse_int(header_value(header, "nx", path), path + " nx"));
    ny = static_cast<int>(parse_int(header_value(header, "ny", path), path + " ny"));
    if (nx < 1 || ny < 1) {
        throw ValidationError(path + ": map dimensions must be positive");
    }

    row_major.resize(static_cast<Eigen::Index>(nx) * ny);
    int y = 0;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        if (y >= ny) {
            throw ValidationError(path + ": more rows than header declares");
        }
        const auto cols = split(t, ',');
        if (static_cast<int>(cols.size()) != nx) {
            throw ValidationError(path + ":" + std::to_string(lineno) + ": expected " +
                                  std::to_string(nx) + " columns, got " +
                                  std::to_string(cols.size()));
        }
        for (int x = 0; x < nx; ++x) {
            row_major[static_cast<Eigen::Index>(y) * nx + x] =
                parse_double(cols[static_cast<std::size_t>(x)],
                             path + ":" + std::to_string(lineno));
        }
        ++y;
    }
    if (y != ny) {
        throw ValidationError(path + ": expected " + std::to_string(ny) + " rows, got " +
                              std::to_string(y));
    }
}

void write_meas_csv(const std::string& path, const Matrix& rows, double dt_obs) {
    std::ofstream out = open_out(path);
    out << "# meas n_voxel=" << rows.rows() << " n_obs=" << rows.cols()
        << " dt_obs=" << format_double(dt_obs) << "\n";
    for (Eigen::Index j = 0; j < rows.rows(); ++j) {
        for (Eigen::Index i = 0; i < rows.cols(); ++i) {
            out << format_double(rows(j, i));
            out << (i + 1 == rows.cols() ? "\n" : ",");
        }
    }
    finish_out(out, path);
}

void read_meas_csv(const std::string& path, Matrix& rows, double& dt_obs) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw ValidationError(path + ": empty file");
    }
    const ConfigMap header = parse_header(line, "meas", path);
    const auto n_voxel = parse_int(header_value(header, "n_voxel", path), path + " n_voxel");
    const auto n_obs = parse_int(header_value(header, "n_obs", path), path + " n_obs");
    dt_obs = parse_double(header_value(header, "dt_obs", path), path + " dt_obs");
    if (n_voxel < 1 || n_obs < 0) {
        throw ValidationError(path + ": invalid measurement dimensions");
    }

    rows.resize(n_voxel, n_obs);
    Eigen::Index j = 0;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        if (j >= rows.rows()) {
            throw ValidationError(path + ": more rows than header declares");
        }
        const auto cols = split(t, ',');
        if (static_cast<Eigen::Index>(cols.size()) != rows.cols()) {
            throw ValidationError(path + ":" + std::to_string(lineno) + ": expected " +
                                  std::to_string(rows.cols()) + " columns, got " +
                                  std::to_string(cols.size()));
        }
        for (Eigen::Index i = 0; i < rows.cols(); ++i) {
            rows(j, i) = parse_double(cols[static_cast<std::size_t>(i)],
                                      path + ":" + std::to_string(lineno));
        }
        ++j;
    }
    if (j != rows.rows()) {
        throw ValidationError(path + ": expected " + std::to_string(rows.rows()) +
                              " rows, got " + std::to_string(j));
    }
}

void write_series_csv(const std::string& path, const std::string& header,
                      const std::vector<double>& x, const std::vector<double>& y,
                      const std::vector<std::pair<std::string, double>>& annotations) {
    if (x.size() != y.size()) {
        throw DimensionMismatch("series columns differ in length");
    }
    std::ofstream out = open_out(path);
    out << "# " << header << "\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
        out << format_double(x[i]) << "," << format_double(y[i]) << "\n";
    }
    for (const auto& [key, value] : annotations) {
        out << "# " << key << "=" << format_double(value) << "\n";
    }
    finish_out(out, path);
}

void write_history_csv(const std::string& path, const std::vector<Vector>& history,
                       double dtau) {
    std::ofstream out = open_out(path);
    const Eigen::Index n_q = history.empty() ? 0 : history.front().size();
    out << "# kbar n_obs=" << history.size() << " n_q=" << n_q
        << " dtau=" << format_double(dtau) << "\n";
    for (const Vector& mean : history) {
        for (Eigen::Index q = 0; q < mean.size(); ++q) {
            out << format_double(mean[q]);
            out << (q + 1 == mean.size() ? "\n" : ",");
        }
    }
    finish_out(out, path);
}

namespace {

const std::vector<std::string> kPhantomKeys = {
    "nx", "ny", "background_perfusion", "mtt", "aif_amplitude", "aif_t0", "aif_a",
    "aif_b", "T", "dt_obs", "dtau", "noise_variance", "baseline", "kernel_scale",
    "rho", "seed", "region*"};

} // namespace

ConfigMap phantom_spec_to_config(const PhantomSpec& spec) {
    ConfigMap map;
    map["nx"] = std::to_string(spec.nx);
    map["ny"] = std::to_string(spec.ny);
    map["background_perfusion"] = format_double(spec.background_perfusion);
    map["mtt"] = format_double(spec.mtt);
    map["aif_amplitude"] = format_double(spec.aif.amplitude);
    map["aif_t0"] = format_double(spec.aif.t0);
    map["aif_a"] = format_double(spec.aif.a);
    map["aif_b"] = format_double(spec.aif.b);
    map["T"] = format_double(spec.T);
    map["dt_obs"] = format_double(spec.dt_obs);
    map["dtau"] = format_double(spec.dtau);
    map["noise_variance"] = format_double(spec.noise_variance);
    map["baseline"] = format_double(spec.baseline);
    map["kernel_scale"] = format_double(spec.kernel_scale);
    map["rho"] = format_double(spec.rho);
    map["seed"] = std::to_string(spec.seed);
    for (std::size_t r = 0; r < spec.regions.size(); ++r) {
        const Region& reg = spec.regions[r];
        std::string v;
        if (reg.shape == Region::Shape::Disc) {
            v = "disc " + format_double(reg.cx) + " " + format_double(reg.cy) + " " +
                format_double(reg.radius) + " " + format_double(reg.perfusion);
        } else {
            v = "rect " + format_double(reg.x0) + " " + format_double(reg.y0) + " " +
                format_double(reg.x1) + " " + format_double(reg.y1) + " " +
                format_double(reg.perfusion);
        }
        map["region" + std::to_string(r + 1)] = v;
    }
    return map;
}

PhantomSpec phantom_spec_from_config(const ConfigMap& map) {
    reject_unknown_keys(map, kPhantomKeys, "phantom spec");
    PhantomSpec spec;
    spec.nx = static_cast<int>(get_int(map, "nx", spec.nx));
    spec.ny = static_cast<int>(get_int(map, "ny", spec.ny));
    spec.background_perfusion = get_double(map, "background_perfusion",
                                           spec.background_perfusion);
    spec.mtt = get_double(map, "mtt", spec.mtt);
    spec.aif.amplitude = get_double(map, "aif_amplitude", spec.aif.amplitude);
    spec.aif.t0 = get_double(map, "aif_t0", spec.aif.t0);
    spec.aif.a = get_double(map, "aif_a", spec.aif.a);
    spec.aif.b = get_double(map, "aif_b", spec.aif.b);
    spec.T = get_double(map, "T", spec.T);
    spec.dt_obs = get_double(map, "dt_obs", spec.dt_obs);
    spec.dtau = get_double(map, "dtau", spec.dtau);
    spec.noise_variance = get_double(map, "noise_variance", spec.noise_variance);
    spec.baseline = get_double(map, "baseline", spec.baseline);
    spec.kernel_scale = get_double(map, "kernel_scale", spec.kernel_scale);
    spec.rho = get_double(map, "rho", spec.rho);
    spec.seed = get_u64(map, "seed", spec.seed);

    // Region keys are applied in numeric order; the numbering must be dense
    // starting at 1 so override precedence is explicit.
    std::vector<std::pair<long long, std::string>> regions;
    for (const auto& [key, value] : map) {
        if (key.rfind("region", 0) == 0) {
            regions.emplace_back(parse_int(key.substr(6), "region key \"" + key + "\""),
                                 value);
        }
    }
    std::sort(regions.begin(), regions.end());
    for (std::size_t r = 0; r < regions.size(); ++r) {
        if (regions[r].first != static_cast<long long>(r + 1)) {
            throw ValidationError("region keys must be region1..regionN without gaps");
        }
        const auto toks = split_ws(regions[r].second);
        Region reg;
        const std::string ctx = "region" + std::to_string(r + 1);
        if (toks.size() == 5 && toks[0] == "disc") {
            reg.shape = Region::Shape::Disc;
            reg.cx = parse_double(toks[1], ctx);
            reg.cy = parse_double(toks[2], ctx);
            reg.radius = parse_double(toks[3], ctx);
            reg.perfusion = parse_double(toks[4], ctx);
        } else if (toks.size() == 6 && toks[0] == "rect") {
            reg.shape = Region::Shape::Rect;
            reg.x0 = parse_double(toks[1], ctx);
            reg.y0 = parse_double(toks[2], ctx);
            reg.x1 = parse_double(toks[3], ctx);
            reg.y1 = parse_double(toks[4], ctx);
            reg.perfusion = parse_double(toks[5], ctx);
        } else {
            throw ValidationError(ctx + ": expected \"disc cx cy radius perfusion\" or "
                                        "\"rect x0 y0 x1 y1 perfusion\"");
        }
        spec.regions.push_back(reg);
    }
    return spec;
}

PhantomSpec read_phantom_spec(const std::string& path) {
    return phantom_spec_from_config(read_config(path));
}

void write_dataset(const std::string& dir, const PhantomSpec& spec, const PhantomDataset& ds) {
    std::filesystem::create_directories(dir);
    std::vector<double> times(static_cast<std::size_t>(ds.grid.n_q));
    std::vector<double> values(static_cast<std::size_t>(ds.grid.n_q));
    for (int q = 0; q < ds.grid.n_q; ++q) {
        times[static_cast<std::size_t>(q)] = ds.grid.abscissa(q);
        values[static_cast<std::size_t>(q)] = ds.aif.values[q];
    }
    write_aif_csv(dir + "/aif.csv", times, values, ds.grid.final_time);
    write_map_csv(dir + "/truth.csv", spec.nx, spec.ny, ds.truth_map);
    write_meas_csv(dir + "/meas_clean.csv", ds.clean, ds.grid.dt_obs);
    write_meas_csv(dir + "/meas_noisy.csv", ds.noisy, ds.grid.dt_obs);
    write_config(dir + "/spec.txt", phantom_spec_to_config(spec));
}

LoadedDataset read_dataset(const std::string& dir) {
    LoadedDataset ds;
    ds.spec = read_phantom_spec(dir + "/spec.txt");

    int nx = 0, ny = 0;
    read_map_csv(dir + "/truth.csv", nx, ny, ds.truth_map);
    if (nx != ds.spec.nx || ny != ds.spec.ny) {
        throw ValidationError(dir + ": truth.csv is " + std::to_string(nx) + "x" +
                              std::to_string(ny) + " but spec.txt declares " +
                              std::to_string(ds.spec.nx) + "x" + std::to_string(ds.spec.ny));
    }

    double aif_T = 0.0;
    read_aif_csv(dir + "/aif.csv", ds.aif_times, ds.aif_values, aif_T);
    if (std::abs(aif_T - ds.spec.T) > 1e-9 * std::max(1.0, ds.spec.T)) {
        throw ValidationError(dir + ": aif.csv T disagrees with spec.txt");
    }

    double dt_clean = 0.0, dt_noisy = 0.0;
    read_meas_csv(dir + "/meas_clean.csv", ds.clean, dt_clean);
    read_meas_csv(dir + "/meas_noisy.csv", ds.noisy, dt_noisy);
    const double tol = 1e-9 * std::max(1.0, ds.spec.dt_obs);
    if (std::abs(dt_clean - ds.spec.dt_obs) > tol || std::abs(dt_noisy - ds.spec.dt_obs) > tol) {
        throw ValidationError(dir + ": measurement dt_obs disagrees with spec.txt");
    }
    const Eigen::Index n_voxel = static_cast<Eigen::Index>(ds.spec.nx) * ds.spec.ny;
    if (ds.clean.rows() != n_voxel || ds.noisy.rows() != n_voxel) {
        throw ValidationError(dir + ": measurement voxel count disagrees with spec.txt");
    }
    if (ds.clean.cols() != ds.noisy.cols()) {
        throw ValidationError(dir + ": clean and noisy measurements disagree in n_obs");
    }
    return ds;
}

namespace {

const std::vector<std::string> kRunKeys = {
    "dtau", "sigma0", "sigma_e", "alpha", "ell", "n_e", "seed", "forecast_mode",
    "shared_noise", "rho", "functional", "jitter_rel", "perturb_observations",
    "T", "dt_obs", "kernel_scale"};

} // namespace

RunConfig parse_run_config(const ConfigMap& map) {
    reject_unknown_keys(map, kRunKeys, "run config");
    RunConfig rc;
    rc.dtau = get_double(map, "dtau", rc.dtau);
    rc.enkf.sigma0 = get_double(map, "sigma0", rc.enkf.sigma0);
    rc.enkf.sigma_e = get_double(map, "sigma_e", rc.enkf.sigma_e);
    rc.enkf.alpha = get_double(map, "alpha", rc.enkf.alpha);
    rc.enkf.ell = get_double(map, "ell", rc.enkf.ell);
    rc.enkf.n_e = static_cast<int>(get_int(map, "n_e", rc.enkf.n_e));
    rc.enkf.jitter_rel = get_double(map, "jitter_rel", rc.enkf.jitter_rel);
    rc.enkf.perturb_observations =
        get_bool(map, "perturb_observations", rc.enkf.perturb_observations);
    rc.seed = get_u64(map, "seed", rc.seed);
    rc.shared_noise = get_bool(map, "shared_noise", rc.shared_noise);
    rc.rho = get_double(map, "rho", rc.rho);

    const std::string mode = get_string(map, "forecast_mode", "lowrank");
    if (mode == "lowrank") {
        rc.enkf.forecast_mode = ForecastMode::FusedLowRank;
    } else if (mode == "fused") {
        rc.enkf.forecast_mode = ForecastMode::Fused;
    } else if (mode == "substeps") {
        rc.enkf.forecast_mode = ForecastMode::SubSteps;
    } else {
        throw ValidationError("forecast_mode must be lowrank, fused, or substeps, got \"" +
                              mode + "\"");
    }

    const std::string functional = get_string(map, "functional", "point");
    if (functional == "point") {
        rc.functional = Functional::PointEvalAt0;
    } else if (functional == "max") {
        rc.functional = Functional::MaxOverT;
    } else {
        throw ValidationError("functional must be point or max, got \"" + functional + "\"");
    }

    if (map.count("T")) {
        rc.T = get_double(map, "T", 0.0);
    }
    if (map.count("dt_obs")) {
        rc.dt_obs = get_double(map, "dt_obs", 0.0);
    }
    if (map.count("kernel_scale")) {
        rc.kernel_scale = get_double(map, "kernel_scale", 0.0);
    }
    return rc;
}

RunConfig read_run_config(const std::string& path) {
    return parse_run_config(read_config(path));
}

} // namespace perfusion::io
