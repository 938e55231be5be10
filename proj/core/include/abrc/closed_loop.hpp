#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "abrc/glass_sim.hpp"
#include "abrc/mackey_glass.hpp"
#include "abrc/readout.hpp"

namespace abrc {

/// Synchronous-clock model for the input/output layers. The global clock
/// period equals the input sample period; the readout value registered at an
/// edge was computed from the state latched `latency_cycles` edges earlier,
/// so the fed-back word at cycle m depends only on data through cycle m-1.
struct ClockedRun {
    double sample_period_ns = 6.25;
    int latency_cycles = 1;
    /// Optional explicit per-cycle mode (1 = training word from the stored
    /// schedule, 0 = autonomous feedback). When empty, run_closed_loop uses
    /// all-training for the warmup followed by all-autonomous.
    std::vector<std::uint8_t> mode_schedule;
};

/// Everything recorded while driving a reservoir with a stored schedule:
/// design-matrix rows are [X(t_m-), dequantized u_m] against target
/// u_(m + latency). Rows start after `settle_samples` warmup cycles.
struct DriveRecord {
    Eigen::MatrixXd design;   // M x (N+1)
    Eigen::VectorXd targets;  // M
    StateTrace trace;         // states on the sample grid, full run
};

DriveRecord drive_and_record(const ReservoirSpec& spec, const InputSchedule& input,
                             const SimConfig& cfg, int settle_samples, int latency_cycles);

/// Closed-loop (autonomous) operation: the stored warmup words drive the
/// reservoir, then at every subsequent clock edge the readout of the
/// previously latched state is quantized and becomes the next input word.
/// Returns the dequantized prediction sequence as a TimeSeries in ns, one
/// sample per cycle, starting at the first autonomous edge.
TimeSeries run_closed_loop(const ReservoirSpec& spec, const TrainedReadout& readout,
                           const InputSchedule& warmup, int horizon_cycles, const ClockedRun& clk,
                           const SimConfig& cfg);

}  // namespace abrc
