#pragma once

#include "perfusion/time_grid.hpp"
#include "perfusion/types.hpp"

#include <functional>
#include <vector>

namespace perfusion {

// Arterial input function evaluated at the quadrature abscissas.
struct AifVector {
    Vector values;
};

// Monotone piecewise-cubic interpolant (Fritsch-Carlson slopes). Preserves
// monotonicity of the data between nodes, so interpolated concentrations
// never overshoot below zero on nonnegative samples.
class Pchip {
public:
    Pchip(std::vector<double> times, std::vector<double> values);

    double operator()(double t) const;

    double t_min() const { return t_.front(); }
    double t_max() const { return t_.back(); }

private:
    std::vector<double> t_;
    std::vector<double> y_;
    std::vector<double> d_;
};

AifVector discretize_aif(const std::function<double(double)>& c_art, const TimeGrid& grid);

// Sampled series overload; samples must cover all abscissas of the grid.
AifVector discretize_aif(const std::vector<double>& sample_times,
                         const std::vector<double>& sample_values,
                         const TimeGrid& grid);

} // namespace perfusion
