#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abrc/closed_loop.hpp"
#include "abrc/glass_sim.hpp"
#include "abrc/mackey_glass.hpp"
#include "abrc/network_gen.hpp"
#include "abrc/readout.hpp"

namespace abrc {

/// Root-mean-square prediction error over [0, horizon] relative to the
/// prediction start, normalized by the target variance:
/// sqrt(sum (u - v)^2 / (M * variance)) over the M samples in the window.
/// Both series must share dt; they are aligned on absolute time.
double nrmse(const TimeSeries& target, const TimeSeries& predicted, double horizon,
             double variance);

struct DecayConfig {
    int n_samples_each_side = 200;
    int repetitions = 20;
    double fit_window_ns = 0.0;  // 0 = no extra cap beyond the zero-tail rule
    // Experiment plumbing (not part of the measurement definition):
    double t_sample_ns = 6.25;
    std::uint64_t seed = 1;
    int input_bits = 8;
};

struct DecayResult {
    double lambda_ns = 0.0;  // mean over repetitions
    double stderr_ns = 0.0;  // standard error of that mean
    int used_repetitions = 0;
    int discarded = 0;
};

/// Fading-memory decay time. Per repetition: two random input sequences that
/// agree for t >= 0 drive two copies of the reservoir from the same initial
/// state; the L2 distance between their Boolean states is fit to
/// exp(-t / lambda) on the sample grid (log-linear least squares on the
/// 5-sample trailing moving average, zeros excluded, over the first 80% of
/// samples before the average first reaches zero for good). Repetitions whose
/// states never differ are discarded with a warning.
DecayResult measure_decay_time(const ReservoirSpec& spec, const DecayConfig& cfg,
                               const SimConfig& sim);

/// Everything needed to train a reservoir on the Mackey-Glass task and score
/// closed-loop predictions. Produced once per experiment and shared across
/// reservoirs/trials.
struct PredictionTask {
    TimeSeries data;             // normalized, resampled to the sample period
    double variance = 0.0;       // variance of `data`, used by nrmse
    double t_sample_ns = 6.25;
    int training_samples = 1500;
    int settle_samples = 88;     // pre-training wash-out, ~50 mean delays
    int trial_warmup_samples = 200;
    int horizon_samples = 24;    // one Lyapunov time at dt = 5
    int latency_cycles = 1;
    std::vector<double> ridge_grid;
    SimConfig sim;
};

struct TrialScore {
    double nrmse_value = 0.0;
    TimeSeries predicted;  // ns units
    TimeSeries truth;      // matching window, ns units
};

struct ReservoirEvaluation {
    TrainedReadout readout;
    std::vector<TrialScore> trials;
    std::optional<DecayResult> decay;
};

/// Build the input schedule (quantized data words) for samples
/// [first, first + count) of the task data.
InputSchedule task_schedule(const PredictionTask& task, int first, int count, int n_bits);

/// Train a readout on the task's training window and run `n_trials`
/// closed-loop predictions on consecutive later windows.
ReservoirEvaluation evaluate_reservoir(const ReservoirSpec& spec, const PredictionTask& task,
                                       int n_trials);

enum class SweepAxis { rho, k, tau_bar, sigma };

struct SweepGrid {
    SweepAxis axis = SweepAxis::sigma;
    std::vector<double> values;
    int reservoirs_per_point = 3;
    int trials_per_reservoir = 3;
    bool measure_lambda = true;
    DecayConfig decay;
};

struct SweepPoint {
    double value = 0.0;
    std::vector<double> nrmse_samples;  // reservoirs x trials, flattened
    double nrmse_median = 0.0;
    double nrmse_mean = 0.0;
    double nrmse_stderr = 0.0;
    double lambda_mean = 0.0;
    double lambda_stderr = 0.0;
    int failures = 0;
    std::vector<std::string> failure_messages;
};

/// One-axis hyperparameter sweep. Reservoir seeds derive deterministically
/// from (base.seed, point index, reservoir index), so results are
/// reproducible bit-exactly; points and reservoirs may run in parallel.
std::vector<SweepPoint> run_sweep(const SweepGrid& grid, const Hyperparams& base,
                                  const PredictionTask& task);

struct SpectrumResult {
    std::vector<double> freqs;   // cycles per time unit of the series
    std::vector<double> power;   // normalized to unit peak
    double peak_freq = 0.0;
};

/// Averaged-periodogram power spectral density (Hann window, 50% overlap,
/// per-segment mean removal), normalized to unit maximum. Needs >= 256
/// samples; rejects constant series.
SpectrumResult power_spectrum(const TimeSeries& series, int segment_len = 0);

/// Pairs (u(t), u(t - embed_delay)) for all valid t; the delay must be an
/// integer multiple of the sampling step.
std::vector<std::array<double, 2>> delay_embed(const TimeSeries& series, double embed_delay);

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r_squared = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> values);

}  // namespace abrc
