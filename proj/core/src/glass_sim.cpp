#include "abrc/glass_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace abrc {

void SimConfig::validate(const ReservoirSpec& spec) const {
    if (!(duration_ns > 0.0)) throw std::invalid_argument("SimConfig: duration_ns must be positive");
    if (!(record_grid_ns > 0.0)) {
        throw std::invalid_argument("SimConfig: record_grid_ns must be positive");
    }
    if (engine == EngineKind::fixed_step) {
        if (!(step_ns > 0.0)) throw std::invalid_argument("SimConfig: step_ns must be positive");
        const double gamma_min = spec.node_time_constants_ns.minCoeff();
        if (step_ns > gamma_min / 20.0) {
            throw std::invalid_argument("SimConfig: step_ns = " + std::to_string(step_ns) +
                                        " exceeds min(gamma)/20 = " +
                                        std::to_string(gamma_min / 20.0));
        }
        const std::int64_t h = to_fs(step_ns);
        const std::int64_t g = to_fs(record_grid_ns);
        if (h <= 0 || g % h != 0) {
            throw std::invalid_argument(
                "SimConfig: record_grid_ns must be an integer multiple of step_ns");
        }
    }
    if (max_events == 0) throw std::invalid_argument("SimConfig: max_events must be positive");
}

double relax_node(double x0, bool target, double dt_ns, double gamma_ns) {
    const double level = target ? 1.0 : 0.0;
    return level + (x0 - level) * std::exp(-dt_ns / gamma_ns);
}

std::optional<double> crossing_time(double x0, bool target, double q, double gamma_ns) {
    if (target) {
        if (x0 >= q) return std::nullopt;           // already at or above threshold
        return gamma_ns * std::log((x0 - 1.0) / (q - 1.0));
    }
    if (x0 < q) return std::nullopt;                // already below threshold
    return gamma_ns * std::log(x0 / q);
}

StateTrace simulate(const ReservoirSpec& spec, const InputSchedule& input, const SimConfig& cfg) {
    cfg.validate(spec);
    if (!(input.sample_period_ns > 0.0)) {
        throw std::invalid_argument("simulate: sample_period_ns must be positive");
    }
    for (const auto& w : input.words) {
        if (w.n_bits != spec.input_bits()) {
            throw std::invalid_argument("simulate: input word width does not match the spec");
        }
    }

    auto engine = make_engine(spec, cfg);
    engine->set_record_transitions(cfg.record_transitions);

    const std::int64_t end = to_fs(cfg.duration_ns);
    const std::int64_t grid = to_fs(cfg.record_grid_ns);
    const std::int64_t t_sample = to_fs(input.sample_period_ns);

    StateTrace trace;
    std::size_t next_word = 0;
    std::int64_t next_edge = input.words.empty() ? end + 1 : 0;
    std::int64_t next_record = 0;

    while (next_record <= end || next_edge <= end) {
        const std::int64_t t = std::min(next_record, next_edge);
        if (t > end) break;
        engine->advance_to(t);
        if (t == next_record) {
            trace.times_ns.push_back(to_ns(t));
            trace.boolean_states.push_back(engine->boolean_state());
            if (cfg.record_continuous) trace.continuous_states.push_back(engine->continuous_state());
            next_record += grid;
        }
        if (t == next_edge) {
            engine->apply_word(input.words[next_word]);
            ++next_word;
            next_edge = next_word < input.words.size() ? static_cast<std::int64_t>(next_word) * t_sample
                                                       : end + 1;
        }
    }
    engine->advance_to(end);
    if (cfg.record_transitions) trace.transitions = engine->transitions();
    return trace;
}

}  // namespace abrc
