#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "abrc/glass_sim.hpp"

namespace abrc {

namespace {

/// Reference engine: synchronous fixed-step integration. Per step every node
/// reads its delayed Boolean inputs from per-node history rings, evaluates
/// its truth table, advances x by the exact exponential update and refreshes
/// its thresholded output. Delays are quantized to whole steps (at least one,
/// so reads always see committed history).
class FixedStepEngine final : public GlassEngine {
public:
    FixedStepEngine(const ReservoirSpec& spec, const SimConfig& cfg) : spec_(spec) {
        n_ = spec.n_nodes();
        k_ = spec.in_degree();
        h_fs_ = to_fs(cfg.step_ns);
        if (h_fs_ <= 0) throw std::invalid_argument("fixed-step engine: step below 1 fs");
        h_ns_ = to_ns(h_fs_);

        x_.assign(n_, 0.0);
        state_.assign(n_, 0);
        alpha_.resize(n_);
        for (int i = 0; i < n_; ++i) {
            alpha_[i] = std::exp(-h_ns_ / spec.node_time_constants_ns[i]);
        }

        // Per-node incoming links: source and delay in steps.
        in_links_.resize(n_);
        std::vector<std::int64_t> max_delay(n_, 1);
        for (int i = 0; i < n_; ++i) {
            for (int s = 0; s < k_; ++s) {
                const int src = spec.sources[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)];
                const std::int64_t d_fs = to_fs(spec.link_delays_ns(i, src));
                const auto steps = std::max<std::int64_t>(1, (2 * d_fs + h_fs_) / (2 * h_fs_));
                in_links_[i].push_back({src, steps});
                max_delay[src] = std::max(max_delay[src], steps);
            }
        }
        hist_.resize(n_);
        cap_.resize(n_);
        for (int j = 0; j < n_; ++j) {
            cap_[j] = static_cast<std::size_t>(max_delay[j]) + 1;
            hist_[j].assign(cap_[j], 0);  // all-zero delay-line history
        }
        scratch_.assign(n_, 0);
    }

    void apply_word(FixedPointWord w) override {
        u_pattern_ = w.bit_pattern() << k_;
    }

    void advance_to(std::int64_t t_fs) override {
        if (t_fs < now_fs_) throw std::invalid_argument("advance_to: time going backwards");
        if ((t_fs - now_fs_) % h_fs_ != 0) {
            throw std::invalid_argument("fixed-step engine: target time not on the step grid");
        }
        while (now_fs_ < t_fs) step_once();
    }

    std::int64_t now_fs() const override { return now_fs_; }
    const std::vector<std::uint8_t>& boolean_state() const override { return state_; }
    std::vector<double> continuous_state() const override { return x_; }
    const std::vector<Transition>& transitions() const override { return transitions_; }
    void set_record_transitions(bool on) override { record_transitions_ = on; }

private:
    struct Link {
        int src;
        std::int64_t delay_steps;
    };

    void step_once() {
        const std::int64_t next_step = step_ + 1;
        for (int i = 0; i < n_; ++i) {
            std::uint32_t idx = u_pattern_;
            const auto& links = in_links_[i];
            for (int s = 0; s < k_; ++s) {
                const auto& ln = links[static_cast<std::size_t>(s)];
                const std::int64_t at = step_ - ln.delay_steps;
                std::uint8_t bit = 0;
                if (at >= 0) {
                    bit = hist_[ln.src][static_cast<std::size_t>(at) % cap_[ln.src]];
                }
                idx |= static_cast<std::uint32_t>(bit) << (k_ - 1 - s);
            }
            const bool target = spec_.luts[static_cast<std::size_t>(i)][idx] == '1';
            const double level = target ? 1.0 : 0.0;
            x_[i] = level + (x_[i] - level) * alpha_[i];
            const std::uint8_t nx = x_[i] >= spec_.node_thresholds[i] ? 1 : 0;
            scratch_[i] = nx;
        }
        now_fs_ += h_fs_;
        for (int i = 0; i < n_; ++i) {
            if (scratch_[i] != state_[i]) {
                state_[i] = scratch_[i];
                if (record_transitions_) {
                    transitions_.push_back({now_fs_, i, scratch_[i] != 0});
                }
            }
            hist_[i][static_cast<std::size_t>(next_step) % cap_[i]] = state_[i];
        }
        step_ = next_step;
        if (!(std::isfinite(x_[0]))) {
            throw std::runtime_error("fixed-step engine: non-finite state at t = " +
                                     std::to_string(to_ns(now_fs_)) + " ns");
        }
    }

    const ReservoirSpec& spec_;
    int n_ = 0;
    int k_ = 0;
    std::int64_t h_fs_ = 0;
    double h_ns_ = 0.0;
    std::int64_t now_fs_ = 0;
    std::int64_t step_ = 0;
    std::uint32_t u_pattern_ = 0;

    std::vector<double> x_;
    std::vector<double> alpha_;
    std::vector<std::uint8_t> state_;
    std::vector<std::uint8_t> scratch_;
    std::vector<std::vector<Link>> in_links_;
    std::vector<std::vector<std::uint8_t>> hist_;
    std::vector<std::size_t> cap_;
    std::vector<Transition> transitions_;
    bool record_transitions_ = false;
};

}  // namespace

std::unique_ptr<GlassEngine> make_fixed_step_engine(const ReservoirSpec& spec,
                                                    const SimConfig& cfg) {
    return std::make_unique<FixedStepEngine>(spec, cfg);
}

}  // namespace abrc
