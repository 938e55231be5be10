#include "abrc/mackey_glass.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace abrc {

namespace {

bool near_integer(double v) { return std::abs(v - std::round(v)) < 1e-9 * std::max(1.0, std::abs(v)); }

}  // namespace

void MgParams::validate() const {
    if (!(beta > 0.0) || !(gamma > 0.0) || !(delay > 0.0) || !(exponent > 0.0)) {
        throw std::invalid_argument("MgParams: beta, gamma, delay and exponent must be positive");
    }
    if (!(step > 0.0) || step > 0.5) {
        throw std::invalid_argument("MgParams: step must be in (0, 0.5]");
    }
    if (!near_integer(delay / step) || !near_integer(delay / (step / 2.0))) {
        throw std::invalid_argument(
            "MgParams: delay must be an integer multiple of step and step/2 so delayed "
            "lookups land on stored grid points");
    }
    if (delay < 2.0 * step) {
        throw std::invalid_argument("MgParams: delay shorter than two steps is not supported");
    }
}

TimeSeries integrate_mg(const MgParams& p, double duration) {
    p.validate();
    if (!(duration > 0.0)) throw std::invalid_argument("integrate_mg: duration must be positive");

    const double h = p.step;
    const double hh = h / 2.0;
    const std::int64_t d2 = std::llround(p.delay / hh);   // delay in half steps
    const std::int64_t n_out = std::llround(std::floor(duration / h + 1e-9));
    const std::int64_t n_half = 2 * n_out;

    // Flat history over half steps; index j corresponds to time j * hh, with
    // j = 0 at t = 0. The pre-history covers [-delay - hh, 0] so the odd
    // (half-offset) chain can take its first step from t = -hh.
    const std::int64_t lead = d2 + 2;
    std::vector<double> u(static_cast<std::size_t>(lead + n_half + 1));
    auto at = [&](std::int64_t j) -> double& { return u[static_cast<std::size_t>(j + lead)]; };
    for (std::int64_t j = -lead; j <= 0; ++j) {
        const double t = static_cast<double>(j) * hh;
        at(j) = p.history_fn ? p.history_fn(t) : p.history;
    }

    const auto f = [&](double ut, double u_del) {
        return p.beta * u_del / (1.0 + std::pow(u_del, p.exponent)) - p.gamma * ut;
    };

    // Advance the two interleaved chains: each step computes u(j+2) from u(j)
    // with stage lookups at j - d2, j + 1 - d2 and j + 2 - d2, all of which
    // are already stored because d2 >= 4.
    for (std::int64_t j = -1; j + 2 <= n_half; ++j) {
        const double uj = at(j);
        const double k1 = f(uj, at(j - d2));
        const double k2 = f(uj + hh * k1, at(j + 1 - d2));
        const double k3 = f(uj + hh * k2, at(j + 1 - d2));
        const double k4 = f(uj + h * k3, at(j + 2 - d2));
        const double next = uj + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(next)) {
            throw std::runtime_error("integrate_mg: non-finite state at t = " +
                                     std::to_string(static_cast<double>(j + 2) * hh));
        }
        at(j + 2) = next;
    }

    TimeSeries out;
    out.t0 = 0.0;
    out.dt = h;
    out.units = TimeUnit::mg_units;
    out.values.resize(static_cast<std::size_t>(n_out + 1));
    for (std::int64_t i = 0; i <= n_out; ++i) {
        out.values[static_cast<std::size_t>(i)] = at(2 * i);
    }
    return out;
}

TimeSeries normalize_mg(const TimeSeries& series) {
    TimeSeries out = series;
    for (auto& v : out.values) {
        if (!std::isfinite(v)) throw std::invalid_argument("normalize_mg: non-finite sample");
        v = std::tanh(v - 1.0);
    }
    return out;
}

TimeSeries resample(const TimeSeries& series, double dt_out) {
    if (!(series.dt > 0.0)) throw std::invalid_argument("resample: input series has no time step");
    const double ratio = dt_out / series.dt;
    if (!(ratio >= 1.0) || !near_integer(ratio)) {
        throw std::invalid_argument("resample: dt_out = " + std::to_string(dt_out) +
                                    " is not an integer multiple of dt = " +
                                    std::to_string(series.dt));
    }
    const auto stride = static_cast<std::size_t>(std::llround(ratio));
    TimeSeries out = series;
    out.dt = dt_out;
    out.values.clear();
    for (std::size_t i = 0; i < series.values.size(); i += stride) {
        out.values.push_back(series.values[i]);
    }
    return out;
}

double sample_variance(const TimeSeries& series) {
    const auto n = series.values.size();
    if (n < 2) throw std::invalid_argument("sample_variance: need at least two samples");
    double mean = 0.0;
    for (double v : series.values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : series.values) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(n - 1);
}

}  // namespace abrc
