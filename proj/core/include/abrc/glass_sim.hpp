#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "abrc/fixed_point.hpp"
#include "abrc/network_gen.hpp"

namespace abrc {

/// All simulation timestamps are integer counts of a 1 fs base tick, which
/// makes event ordering exact and platform-independent.
inline constexpr double kFsPerNs = 1.0e6;

inline std::int64_t to_fs(double t_ns) { return std::llround(t_ns * kFsPerNs); }
inline double to_ns(std::int64_t t_fs) { return static_cast<double>(t_fs) / kFsPerNs; }

enum class EngineKind { fixed_step, event_driven };

struct SimConfig {
    double step_ns = 0.005;       // fixed-step engine only
    double duration_ns = 0.0;
    double record_grid_ns = 6.25; // state-sampling period, normally t_sample
    EngineKind engine = EngineKind::event_driven;
    std::uint64_t max_events = 500'000'000;  // event-queue abort bound
    bool record_continuous = false;          // fixed-step engine only
    bool record_transitions = false;

    void validate(const ReservoirSpec& spec) const;
};

/// Piecewise-constant input drive: word m applies on
/// [m * sample_period_ns, (m+1) * sample_period_ns); the last word holds.
struct InputSchedule {
    double sample_period_ns = 6.25;
    std::vector<FixedPointWord> words;
};

struct Transition {
    std::int64_t t_fs;
    std::int32_t node;
    bool value;
};

struct StateTrace {
    std::vector<double> times_ns;
    std::vector<std::vector<std::uint8_t>> boolean_states;
    std::vector<std::vector<double>> continuous_states;  // reference engine only
    std::vector<Transition> transitions;                 // only if recorded
};

/// Exact relaxation of one Glass node toward a Boolean target:
/// returns L + (x0 - L) * exp(-dt / gamma) with L = target.
double relax_node(double x0, bool target, double dt_ns, double gamma_ns);

/// Forward time at which the relaxing trajectory crosses the threshold q, or
/// nullopt when x0 is already on the target's side of q.
std::optional<double> crossing_time(double x0, bool target, double q, double gamma_ns);

/// Incremental simulation engine. boolean_state() after advance_to(t) is the
/// left limit X(t-): events scheduled exactly at t have not yet fired, so a
/// register latching on a clock edge at t sees the pre-edge state.
class GlassEngine {
public:
    virtual ~GlassEngine() = default;

    /// Change the input word, effective from the current time.
    virtual void apply_word(FixedPointWord w) = 0;

    /// Advance simulated time to t_fs, processing everything strictly before.
    virtual void advance_to(std::int64_t t_fs) = 0;

    virtual std::int64_t now_fs() const = 0;
    virtual const std::vector<std::uint8_t>& boolean_state() const = 0;
    virtual std::vector<double> continuous_state() const = 0;
    virtual const std::vector<Transition>& transitions() const = 0;
    virtual void set_record_transitions(bool on) = 0;
};

std::unique_ptr<GlassEngine> make_engine(const ReservoirSpec& spec, const SimConfig& cfg);

/// Run a full drive: initial condition x = 0 with all-zero delay history,
/// Boolean state recorded on the record grid (left limits), input words
/// applied at multiples of the schedule's sample period.
StateTrace simulate(const ReservoirSpec& spec, const InputSchedule& input, const SimConfig& cfg);

}  // namespace abrc
