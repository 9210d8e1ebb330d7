#include "perfusion/aif.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace perfusion {

namespace {

double sign(double x) {
    return (x > 0.0) - (x < 0.0);
}

// Fritsch-Carlson node slopes: harmonic-mean average of adjacent secants when
// they share a sign, zero otherwise, with the usual clamped endpoint formula.
std::vector<double> pchip_slopes(const std::vector<double>& t, const std::vector<double>& y) {
    const std::size_t n = t.size();
    std::vector<double> d(n, 0.0);
    if (n == 1) {
        return d;
    }
    if (n == 2) {
        d[0] = d[1] = (y[1] - y[0]) / (t[1] - t[0]);
        return d;
    }

    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = t[i + 1] - t[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }

    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] > 0.0) {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }

    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (sign(s) != sign(d0)) {
            s = 0.0;
        } else if (sign(d0) != sign(d1) && std::abs(s) > 3.0 * std::abs(d0)) {
            s = 3.0 * d0;
        }
        return s;
    };
    d[0] = endpoint(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return d;
}

} // namespace

Pchip::Pchip(std::vector<double> times, std::vector<double> values)
    : t_(std::move(times)), y_(std::move(values)) {
    if (t_.empty() || t_.size() != y_.size()) {
        throw InvalidParams("interpolant needs equally many times and values, nonempty");
    }
    for (std::size_t i = 0; i < t_.size(); ++i) {
        if (!std::isfinite(t_[i]) || !std::isfinite(y_[i])) {
            throw InvalidParams("interpolant samples must be finite");
        }
        if (i > 0 && !(t_[i] > t_[i - 1])) {
            throw InvalidParams("interpolant times must be strictly increasing");
        }
    }
    d_ = pchip_slopes(t_, y_);
}

double Pchip::operator()(double t) const {
    const double span = std::max(1.0, t_.back() - t_.front());
    const double tol = 1e-9 * span;
    if (t < t_.front() - tol || t > t_.back() + tol) {
        throw DomainError("time " + std::to_string(t) + " outside sampled range [" +
                          std::to_string(t_.front()) + ", " + std::to_string(t_.back()) + "]");
    }
    const double tc = std::clamp(t, t_.front(), t_.back());
    if (t_.size() == 1) {
        return y_[0];
    }

    const auto it = std::upper_bound(t_.begin(), t_.end(), tc);
    std::size_t i = static_cast<std::size_t>(std::distance(t_.begin(), it));
    i = std::clamp<std::size_t>(i, 1, t_.size() - 1) - 1;

    const double h = t_[i + 1] - t_[i];
    const double s = (tc - t_[i]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return y_[i] * (2.0 * s3 - 3.0 * s2 + 1.0) + y_[i + 1] * (-2.0 * s3 + 3.0 * s2) +
           h * d_[i] * (s3 - 2.0 * s2 + s) + h * d_[i + 1] * (s3 - s2);
}

AifVector discretize_aif(const std::function<double(double)>& c_art, const TimeGrid& grid) {
    AifVector aif;
    aif.values.resize(grid.n_q);
    for (int q = 0; q < grid.n_q; ++q) {
        const double v = c_art(grid.abscissa(q));
        if (!std::isfinite(v)) {
            throw DomainError("arterial input undefined at t = " + std::to_string(grid.abscissa(q)));
        }
        aif.values[q] = v;
    }
    return aif;
}

AifVector discretize_aif(const std::vector<double>& sample_times,
                         const std::vector<double>& sample_values,
                         const TimeGrid& grid) {
    const Pchip interp(sample_times, sample_values);
    const double last = grid.abscissa(grid.n_q - 1);
    const double tol = 1e-9 * std::max(1.0, grid.final_time);
    if (interp.t_min() > 0.0 + tol || interp.t_max() < last - tol) {
        throw DomainError("arterial input samples cover [" + std::to_string(interp.t_min()) +
                          ", " + std::to_string(interp.t_max()) + "] but abscissas need [0, " +
                          std::to_string(last) + "]");
    }
    return discretize_aif([&](double t) { return interp(t); }, grid);
}

} // namespace perfusion
