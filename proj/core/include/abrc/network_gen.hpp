#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "abrc/fixed_point.hpp"

namespace abrc {

/// Mean single-inverter propagation delay on the target fabric, in ns. Link
/// delays are quantized to multiples of two inverter delays.
inline constexpr double kInverterDelayNs = 0.19;

/// Node time constants are drawn from a truncated normal with these moments;
/// with q = 0.5 a single inverter delay is gamma * ln 2, which reproduces the
/// measured 0.19 +/- 0.05 ns inverter delay.
inline constexpr double kGammaMeanNs = 0.274;
inline constexpr double kGammaSdNs = 0.072;

/// Largest network accepted by the dense eigen-decomposition used for
/// spectral-radius scaling.
inline constexpr int kMaxNodes = 200;

struct Hyperparams {
    int n_nodes = 100;
    double spectral_radius = 1.5;
    int in_degree = 2;
    double mean_delay_ns = 11.0;
    double input_density = 0.5;
    int input_bits = 8;
    std::uint64_t seed = 1;
    WeightScale input_weight_scale = WeightScale::normalized;

    void validate() const;  // throws std::invalid_argument with diagnostics
};

/// A complete random reservoir instance. Immutable after construction and
/// safe to share between threads.
///
/// Conventions:
///  - weights(i, j) is the link j -> i; every row has exactly in_degree
///    non-zero entries and the matrix is scaled to the requested spectral
///    radius.
///  - sources[i] lists the source nodes of row i in ascending order; this
///    fixes the truth-table input order.
///  - A node's truth table has in_degree + input_bits inputs. Table position
///    c (0 = all inputs low) is read by writing c in binary with the input
///    word's bits first (sign bit most significant) followed by the recurrent
///    inputs in `sources` order, last source at bit 0.
///  - input_bit_weights row i holds the per-bit input weights (LSB first),
///    normally the expansion of input_weights_effective[i].
struct ReservoirSpec {
    Hyperparams hp;
    Eigen::MatrixXd weights;                  // N x N
    Eigen::VectorXd input_weights_effective;  // N, zero for non-input nodes
    Eigen::MatrixXd input_bit_weights;        // N x input_bits
    Eigen::MatrixXd link_delays_ns;           // N x N, zero <=> no link
    Eigen::VectorXd node_time_constants_ns;   // gamma_i > 0
    Eigen::VectorXd node_thresholds;          // q_i in (0, 1)
    double inverter_delay_ns = kInverterDelayNs;
    std::vector<std::vector<int>> sources;    // per node, ascending
    std::vector<std::string> luts;            // per node, '0'/'1', length 2^(k+n)

    int n_nodes() const { return static_cast<int>(weights.rows()); }
    int in_degree() const { return hp.in_degree; }
    int input_bits() const { return hp.input_bits; }
    int lut_inputs() const { return hp.in_degree + hp.input_bits; }

    /// Recompute `sources` from the weight sparsity pattern and `luts` from
    /// the weights. Needed after constructing a spec by hand.
    void finalize();

    /// Throws if any structural invariant is violated.
    void validate() const;
};

/// Largest absolute eigenvalue of a square matrix (dense decomposition).
/// Rejects non-square or non-finite input and matrices larger than kMaxNodes.
double spectral_radius(const Eigen::MatrixXd& m);

/// Construct a random reservoir. Pure function of the hyperparameters:
/// identical inputs give bit-identical specs. Draw order (one xoshiro256++
/// stream seeded from hp.seed): per-node source sets, link weights, input
/// node set, effective input weights, per-link delays, node time constants.
ReservoirSpec build_reservoir(const Hyperparams& hp);

/// Truth table of one node as a '0'/'1' string of length 2^(k+n); position 0
/// is the all-inputs-low row.
std::string derive_lut(const ReservoirSpec& spec, int node_index);

/// The 3-node, 1-bit-input demo network used in the generator documentation
/// and as a golden vector in the tests. Its input weights are explicit
/// per-bit weights and its delays are {10, 15, 6, 7, 12, 10} inverter pairs.
ReservoirSpec three_node_example();

}  // namespace abrc
