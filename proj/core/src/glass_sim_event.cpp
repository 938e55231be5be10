#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "abrc/glass_sim.hpp"

namespace abrc {

namespace {

/// Production engine: a time-ordered queue of Boolean arrivals and threshold
/// crossings. Each node tracks its continuous variable lazily (value at the
/// last evaluation plus the exact exponential law). A pending crossing is
/// cancelled by bumping the node's epoch whenever its gate target changes, so
/// pulses shorter than the remaining crossing time never propagate.
///
/// Determinism: events are ordered by (time, node, kind, sequence); arrivals
/// at a node fire before its crossing at the same tick so the crossing always
/// reflects the final gate target.
class EventEngine final : public GlassEngine {
public:
    EventEngine(const ReservoirSpec& spec, const SimConfig& cfg)
        : spec_(spec), max_events_(cfg.max_events) {
        n_ = spec.n_nodes();
        k_ = spec.in_degree();
        nodes_.resize(n_);
        for (int i = 0; i < n_; ++i) {
            auto& nd = nodes_[static_cast<std::size_t>(i)];
            nd.x = 0.0;
            nd.t_ref = 0;
            nd.output = false;
            nd.target = false;
            nd.epoch = 0;
            nd.rec_bits = 0;
            nd.gamma = spec.node_time_constants_ns[i];
            nd.q = spec.node_thresholds[i];
        }
        out_links_.resize(n_);
        for (int i = 0; i < n_; ++i) {
            const auto& srcs = spec.sources[static_cast<std::size_t>(i)];
            for (int s = 0; s < k_; ++s) {
                const int src = srcs[static_cast<std::size_t>(s)];
                OutLink link;
                link.dest = i;
                link.delay_fs = to_fs(spec.link_delays_ns(i, src));
                link.dest_mask = 1u << (k_ - 1 - s);
                out_links_[static_cast<std::size_t>(src)].push_back(link);
            }
        }
        state_.assign(static_cast<std::size_t>(n_), 0);
    }

    void apply_word(FixedPointWord w) override {
        u_pattern_ = w.bit_pattern() << k_;
        for (int i = 0; i < n_; ++i) reevaluate(i, now_fs_);
    }

    void advance_to(std::int64_t t_fs) override {
        if (t_fs < now_fs_) throw std::invalid_argument("advance_to: time going backwards");
        while (!queue_.empty() && queue_.top().t < t_fs) {
            const Event ev = queue_.top();
            queue_.pop();
            if (++processed_ > max_events_) {
                throw std::runtime_error(
                    "event engine: exceeded the configured event bound (" +
                    std::to_string(max_events_) + " events) at t = " +
                    std::to_string(to_ns(ev.t)) + " ns");
            }
            now_fs_ = ev.t;
            auto& nd = nodes_[static_cast<std::size_t>(ev.node)];
            if (ev.kind == Event::kArrival) {
                if (ev.value) {
                    nd.rec_bits |= ev.mask;
                } else {
                    nd.rec_bits &= ~ev.mask;
                }
                reevaluate(ev.node, ev.t);
            } else {  // crossing
                if (ev.epoch != nd.epoch) continue;  // superseded
                nd.output = nd.target;
                nd.x = nd.q;
                nd.t_ref = ev.t;
                ++nd.epoch;
                state_[static_cast<std::size_t>(ev.node)] = nd.output ? 1 : 0;
                if (record_transitions_) transitions_.push_back({ev.t, ev.node, nd.output});
                for (const auto& link : out_links_[static_cast<std::size_t>(ev.node)]) {
                    push_event(Event{ev.t + link.delay_fs, link.dest, Event::kArrival, 0,
                                     link.dest_mask, nd.output});
                }
            }
        }
        now_fs_ = t_fs;
    }

    std::int64_t now_fs() const override { return now_fs_; }
    const std::vector<std::uint8_t>& boolean_state() const override { return state_; }

    std::vector<double> continuous_state() const override {
        std::vector<double> x(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            const auto& nd = nodes_[static_cast<std::size_t>(i)];
            x[static_cast<std::size_t>(i)] =
                relax_node(nd.x, nd.target, to_ns(now_fs_ - nd.t_ref), nd.gamma);
        }
        return x;
    }

    const std::vector<Transition>& transitions() const override { return transitions_; }
    void set_record_transitions(bool on) override { record_transitions_ = on; }

private:
    struct Event {
        static constexpr std::int8_t kArrival = 0;
        static constexpr std::int8_t kCrossing = 1;

        std::int64_t t;
        std::int32_t node;
        std::int8_t kind;
        std::uint32_t epoch;  // crossings only
        std::uint32_t mask;   // arrivals only
        bool value;
        std::uint64_t seq;

        bool operator>(const Event& o) const {
            if (t != o.t) return t > o.t;
            if (node != o.node) return node > o.node;
            if (kind != o.kind) return kind > o.kind;
            return seq > o.seq;
        }
    };

    struct Node {
        double x;
        std::int64_t t_ref;
        bool output;
        bool target;
        std::uint32_t epoch;
        std::uint32_t rec_bits;
        double gamma;
        double q;
    };

    struct OutLink {
        int dest;
        std::int64_t delay_fs;
        std::uint32_t dest_mask;
    };

    void push_event(Event ev) {
        ev.seq = seq_++;
        queue_.push(ev);
    }

    void reevaluate(int node, std::int64_t t) {
        auto& nd = nodes_[static_cast<std::size_t>(node)];
        const std::uint32_t idx = u_pattern_ | nd.rec_bits;
        const bool target = spec_.luts[static_cast<std::size_t>(node)][idx] == '1';
        if (target == nd.target) return;
        nd.x = relax_node(nd.x, nd.target, to_ns(t - nd.t_ref), nd.gamma);
        nd.t_ref = t;
        nd.target = target;
        ++nd.epoch;  // cancels any pending crossing
        if (target != nd.output) {
            const auto dt = crossing_time(nd.x, target, nd.q, nd.gamma);
            if (dt) {
                const auto dt_fs = std::max<std::int64_t>(0, to_fs(*dt));
                push_event(Event{t + dt_fs, node, Event::kCrossing, nd.epoch, 0, target});
            } else {
                // x is already on the target's side: the output flips now.
                push_event(Event{t, node, Event::kCrossing, nd.epoch, 0, target});
            }
        }
    }

    const ReservoirSpec& spec_;
    int n_ = 0;
    int k_ = 0;
    std::uint64_t max_events_ = 0;
    std::uint64_t processed_ = 0;
    std::uint64_t seq_ = 0;
    std::int64_t now_fs_ = 0;
    std::uint32_t u_pattern_ = 0;

    std::vector<Node> nodes_;
    std::vector<std::vector<OutLink>> out_links_;
    std::vector<std::uint8_t> state_;
    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue_;
    std::vector<Transition> transitions_;
    bool record_transitions_ = false;
};

}  // namespace

std::unique_ptr<GlassEngine> make_fixed_step_engine(const ReservoirSpec&, const SimConfig&);

std::unique_ptr<GlassEngine> make_engine(const ReservoirSpec& spec, const SimConfig& cfg) {
    if (cfg.engine == EngineKind::fixed_step) return make_fixed_step_engine(spec, cfg);
    return std::make_unique<EventEngine>(spec, cfg);
}

}  // namespace abrc
