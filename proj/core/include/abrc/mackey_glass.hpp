#pragma once

#include <functional>
#include <vector>

namespace abrc {

enum class TimeUnit { mg_units, ns };

/// Uniformly sampled scalar signal. `unit_map_ns_per_mg` records how one
/// Mackey-Glass time unit maps onto wall-clock nanoseconds when the signal is
/// presented to the reservoir (one resampled step per sample period).
struct TimeSeries {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<double> values;
    TimeUnit units = TimeUnit::mg_units;
    double unit_map_ns_per_mg = 1.25;

    double time_at(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
};

struct MgParams {
    double beta = 0.2;
    double gamma = 0.1;
    double delay = 17.0;
    double exponent = 10.0;
    double step = 0.1;      // integration step, MG time units
    double history = 1.2;   // constant history on [-delay, 0]
    /// Optional history function overriding the constant (evaluated for t <= 0).
    std::function<double(double)> history_fn;

    void validate() const;
};

/// Integrate the Mackey-Glass delay-differential equation with the classical
/// 4-stage Runge-Kutta method. The solution is carried on two interleaved
/// full-step grids offset by half a step, so every stage reads its delayed
/// value from an exactly stored point (delay/step and delay/(step/2) must be
/// integers; no interpolation anywhere). Returns samples at the integration
/// step starting at t = 0.
TimeSeries integrate_mg(const MgParams& p, double duration);

/// Shift by -1 and squash through tanh, elementwise.
TimeSeries normalize_mg(const TimeSeries& series);

/// Decimation by an integer stride; no interpolation.
TimeSeries resample(const TimeSeries& series, double dt_out);

/// Sample variance (mean removed) of a series.
double sample_variance(const TimeSeries& series);

}  // namespace abrc
