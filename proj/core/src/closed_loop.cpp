#include "abrc/closed_loop.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

namespace abrc {

namespace {

double readout_value(const TrainedReadout& readout, const std::vector<std::uint8_t>& latched,
                     double direct_input) {
    const auto n = static_cast<Eigen::Index>(latched.size());
    double v = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (latched[static_cast<std::size_t>(i)]) v += readout.weights[i];
    }
    v += readout.weights[n] * direct_input;
    return v;
}

}  // namespace

DriveRecord drive_and_record(const ReservoirSpec& spec, const InputSchedule& input,
                             const SimConfig& cfg, int settle_samples, int latency_cycles) {
    if (latency_cycles < 1) throw std::invalid_argument("drive_and_record: latency_cycles < 1");
    const auto n_words = static_cast<int>(input.words.size());
    const int n_rows = n_words - settle_samples - latency_cycles;
    if (settle_samples < 0 || n_rows < 1) {
        throw std::invalid_argument("drive_and_record: schedule too short for " +
                                    std::to_string(settle_samples) + " settle samples");
    }

    SimConfig run_cfg = cfg;
    run_cfg.record_grid_ns = input.sample_period_ns;
    run_cfg.duration_ns = input.sample_period_ns * static_cast<double>(n_words);

    DriveRecord rec;
    rec.trace = simulate(spec, input, run_cfg);

    const int n = spec.n_nodes();
    rec.design.resize(n_rows, n + 1);
    rec.targets.resize(n_rows);
    for (int row = 0; row < n_rows; ++row) {
        const int m = settle_samples + row;
        const auto& state = rec.trace.boolean_states[static_cast<std::size_t>(m)];
        for (int i = 0; i < n; ++i) {
            rec.design(row, i) = state[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
        }
        rec.design(row, n) = input.words[static_cast<std::size_t>(m)].value();
        rec.targets[row] = input.words[static_cast<std::size_t>(m + latency_cycles)].value();
    }
    return rec;
}

TimeSeries run_closed_loop(const ReservoirSpec& spec, const TrainedReadout& readout,
                           const InputSchedule& warmup, int horizon_cycles, const ClockedRun& clk,
                           const SimConfig& cfg) {
    if (horizon_cycles < 0) throw std::invalid_argument("run_closed_loop: negative horizon");
    if (clk.latency_cycles < 1) throw std::invalid_argument("run_closed_loop: latency_cycles < 1");
    if (readout.weights.size() != spec.n_nodes() + 1) {
        throw std::invalid_argument("run_closed_loop: readout size does not match the reservoir");
    }
    if (!(clk.sample_period_ns > 0.0)) {
        throw std::invalid_argument("run_closed_loop: sample period must be positive");
    }

    const auto n_warmup = static_cast<int>(warmup.words.size());
    std::vector<std::uint8_t> modes = clk.mode_schedule;
    if (modes.empty()) {
        modes.assign(static_cast<std::size_t>(n_warmup + horizon_cycles), 0);
        for (int m = 0; m < n_warmup; ++m) modes[static_cast<std::size_t>(m)] = 1;
    }
    int stored_needed = 0;
    for (auto m : modes) stored_needed += m != 0;
    if (stored_needed > n_warmup) {
        throw std::invalid_argument("run_closed_loop: mode schedule needs more stored words than provided");
    }

    const int n_bits = spec.input_bits();
    const std::int64_t t_sample = to_fs(clk.sample_period_ns);
    const auto total = static_cast<int>(modes.size());

    SimConfig run_cfg = cfg;
    run_cfg.duration_ns = clk.sample_period_ns * static_cast<double>(total);
    run_cfg.record_grid_ns = clk.sample_period_ns;
    run_cfg.validate(spec);

    auto engine = make_engine(spec, run_cfg);

    // Pipeline registers: the latch and word from `latency_cycles` edges ago.
    std::deque<std::vector<std::uint8_t>> latch_pipe;
    std::deque<FixedPointWord> word_pipe;
    const std::vector<std::uint8_t> zero_state(static_cast<std::size_t>(spec.n_nodes()), 0);
    for (int i = 0; i < clk.latency_cycles; ++i) {
        latch_pipe.push_back(zero_state);
        word_pipe.push_back(FixedPointWord{0, n_bits});
    }

    int first_auto = total;
    for (int m = 0; m < total; ++m) {
        if (modes[static_cast<std::size_t>(m)] == 0) {
            first_auto = m;
            break;
        }
    }

    TimeSeries out;
    out.t0 = clk.sample_period_ns * static_cast<double>(first_auto);
    out.dt = clk.sample_period_ns;
    out.units = TimeUnit::ns;

    int stored_idx = 0;
    for (int m = 0; m < total; ++m) {
        const auto latch_here = engine->boolean_state();  // X(t_m-)
        FixedPointWord w{0, n_bits};
        if (modes[static_cast<std::size_t>(m)] != 0) {
            w = warmup.words[static_cast<std::size_t>(stored_idx++)];
            if (w.n_bits != n_bits) {
                throw std::invalid_argument("run_closed_loop: warmup word width mismatch");
            }
        } else {
            const double v =
                readout_value(readout, latch_pipe.front(), word_pipe.front().value());
            if (!std::isfinite(v)) {
                throw std::runtime_error("run_closed_loop: non-finite readout at cycle " +
                                         std::to_string(m));
            }
            w = quantize(v, n_bits);
            out.values.push_back(w.value());
        }
        engine->apply_word(w);
        engine->advance_to(static_cast<std::int64_t>(m + 1) * t_sample);
        latch_pipe.push_back(latch_here);
        latch_pipe.pop_front();
        word_pipe.push_back(w);
        word_pipe.pop_front();
    }
    return out;
}

}  // namespace abrc
