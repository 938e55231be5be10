#include "abrc/network_gen.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "abrc/rng.hpp"

namespace abrc {

namespace {

int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

}  // namespace

void Hyperparams::validate() const {
    if (n_nodes < 1) throw std::invalid_argument("Hyperparams: n_nodes must be positive");
    if (n_nodes > kMaxNodes) {
        throw std::invalid_argument("Hyperparams: n_nodes = " + std::to_string(n_nodes) +
                                    " exceeds the dense eigen-decomposition limit of " +
                                    std::to_string(kMaxNodes));
    }
    if (!(spectral_radius > 0.0)) {
        throw std::invalid_argument("Hyperparams: spectral_radius must be positive");
    }
    if (in_degree < 1 || in_degree > n_nodes) {
        throw std::invalid_argument("Hyperparams: in_degree must be in [1, n_nodes], got " +
                                    std::to_string(in_degree));
    }
    if (!(input_density > 0.0) || input_density > 1.0) {
        throw std::invalid_argument("Hyperparams: input_density must be in (0, 1]");
    }
    if (round_half_up(input_density * n_nodes) < 1) {
        throw std::invalid_argument(
            "Hyperparams: input_density * n_nodes rounds to zero input nodes (density " +
            std::to_string(input_density) + ", N " + std::to_string(n_nodes) + ")");
    }
    if (input_bits < 1 || input_bits > 16) {
        throw std::invalid_argument("Hyperparams: input_bits must be in [1, 16]");
    }
    if (!(mean_delay_ns > 0.0)) {
        throw std::invalid_argument("Hyperparams: mean_delay_ns must be positive");
    }
    if (in_degree + input_bits > 22) {
        throw std::invalid_argument("Hyperparams: truth table with 2^(k+n) > 2^22 entries");
    }
}

double spectral_radius(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("spectral_radius: non-square matrix");
    if (m.rows() == 0) throw std::invalid_argument("spectral_radius: empty matrix");
    if (m.rows() > kMaxNodes) {
        throw std::invalid_argument("spectral_radius: matrix larger than " +
                                    std::to_string(kMaxNodes) + " is not supported");
    }
    if (!m.allFinite()) throw std::invalid_argument("spectral_radius: non-finite entries");
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("spectral_radius: eigen-decomposition failed");
    }
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

void ReservoirSpec::finalize() {
    const int n = n_nodes();
    sources.assign(static_cast<std::size_t>(n), {});
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (weights(i, j) != 0.0) sources[static_cast<std::size_t>(i)].push_back(j);
        }
    }
    luts.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) luts[static_cast<std::size_t>(i)] = derive_lut(*this, i);
}

void ReservoirSpec::validate() const {
    const int n = n_nodes();
    const int k = in_degree();
    if (weights.cols() != n || link_delays_ns.rows() != n || link_delays_ns.cols() != n ||
        input_weights_effective.size() != n || node_time_constants_ns.size() != n ||
        node_thresholds.size() != n || input_bit_weights.rows() != n ||
        input_bit_weights.cols() != input_bits()) {
        throw std::invalid_argument("ReservoirSpec: inconsistent dimensions");
    }
    if (!(inverter_delay_ns > 0.0)) {
        throw std::invalid_argument("ReservoirSpec: inverter_delay_ns must be positive");
    }
    for (int i = 0; i < n; ++i) {
        int nonzero = 0;
        for (int j = 0; j < n; ++j) {
            const bool w = weights(i, j) != 0.0;
            const bool d = link_delays_ns(i, j) != 0.0;
            if (w != d) {
                throw std::invalid_argument("ReservoirSpec: delay/weight sparsity mismatch at (" +
                                            std::to_string(i) + ", " + std::to_string(j) + ")");
            }
            if (w) ++nonzero;
            if (link_delays_ns(i, j) < 0.0) {
                throw std::invalid_argument("ReservoirSpec: negative link delay");
            }
        }
        if (nonzero != k) {
            throw std::invalid_argument("ReservoirSpec: row " + std::to_string(i) + " has " +
                                        std::to_string(nonzero) + " links, expected " +
                                        std::to_string(k));
        }
        if (!(node_time_constants_ns[i] > 0.0)) {
            throw std::invalid_argument("ReservoirSpec: non-positive node time constant");
        }
        if (!(node_thresholds[i] > 0.0 && node_thresholds[i] < 1.0)) {
            throw std::invalid_argument("ReservoirSpec: threshold outside (0, 1)");
        }
    }
    const std::size_t lut_len = std::size_t{1} << lut_inputs();
    if (luts.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("ReservoirSpec: missing truth tables (call finalize)");
    }
    for (const auto& lut : luts) {
        if (lut.size() != lut_len) throw std::invalid_argument("ReservoirSpec: bad LUT length");
    }
}

std::string derive_lut(const ReservoirSpec& spec, int node_index) {
    const int n = spec.n_nodes();
    if (node_index < 0 || node_index >= n) {
        throw std::invalid_argument("derive_lut: node index out of range");
    }
    const int k = spec.in_degree();
    const int bits = spec.input_bits();
    const auto& srcs = spec.sources[static_cast<std::size_t>(node_index)];
    if (static_cast<int>(srcs.size()) != k) {
        throw std::invalid_argument("derive_lut: sources not derived (call finalize)");
    }
    const std::size_t entries = std::size_t{1} << (k + bits);
    std::string lut(entries, '0');
    for (std::size_t c = 0; c < entries; ++c) {
        double sum = 0.0;
        // Recurrent inputs occupy the low k bits, first source highest.
        for (int s = 0; s < k; ++s) {
            const int bit_pos = k - 1 - s;
            if (c & (std::size_t{1} << bit_pos)) sum += spec.weights(node_index, srcs[s]);
        }
        // Input word occupies the high bits, sign bit most significant;
        // input_bit_weights is stored LSB first.
        for (int j = 0; j < bits; ++j) {
            if (c & (std::size_t{1} << (k + j))) sum += spec.input_bit_weights(node_index, j);
        }
        if (sum > 0.0) lut[c] = '1';
    }
    return lut;
}

ReservoirSpec build_reservoir(const Hyperparams& hp) {
    hp.validate();
    const int n = hp.n_nodes;
    const int k = hp.in_degree;
    Rng rng(hp.seed);

    ReservoirSpec spec;
    spec.hp = hp;
    spec.weights = Eigen::MatrixXd::Zero(n, n);
    spec.link_delays_ns = Eigen::MatrixXd::Zero(n, n);
    spec.input_weights_effective = Eigen::VectorXd::Zero(n);
    spec.node_time_constants_ns = Eigen::VectorXd::Zero(n);
    spec.node_thresholds = Eigen::VectorXd::Constant(n, 0.5);
    spec.inverter_delay_ns = kInverterDelayNs;

    // Source sets: k distinct nodes per row, sampled uniformly from all N
    // (self-loops permitted), via partial Fisher-Yates, then sorted so the
    // truth-table input order is canonical.
    std::vector<int> idx(static_cast<std::size_t>(n));
    spec.sources.assign(static_cast<std::size_t>(n), {});
    for (int i = 0; i < n; ++i) {
        std::iota(idx.begin(), idx.end(), 0);
        for (int j = 0; j < k; ++j) {
            const auto pick = j + static_cast<int>(rng.uniform_index(
                                      static_cast<std::uint64_t>(n - j)));
            std::swap(idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(pick)]);
        }
        auto& s = spec.sources[static_cast<std::size_t>(i)];
        s.assign(idx.begin(), idx.begin() + k);
        std::sort(s.begin(), s.end());
    }

    // Link weights uniform in [-1, 1]; exact zeros redrawn so the sparsity
    // pattern stays well-defined.
    for (int i = 0; i < n; ++i) {
        for (int j : spec.sources[static_cast<std::size_t>(i)]) {
            double w;
            do {
                w = rng.uniform(-1.0, 1.0);
            } while (w == 0.0);
            spec.weights(i, j) = w;
        }
    }

    const double sr = spectral_radius(spec.weights);
    if (!(sr > 0.0)) {
        throw std::runtime_error("build_reservoir: drawn weight matrix has zero spectral radius");
    }
    spec.weights *= hp.spectral_radius / sr;

    // Input node set and effective input weights.
    const int n_inputs = round_half_up(hp.input_density * n);
    std::iota(idx.begin(), idx.end(), 0);
    for (int j = 0; j < n_inputs; ++j) {
        const auto pick =
            j + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n - j)));
        std::swap(idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(pick)]);
    }
    std::vector<int> input_nodes(idx.begin(), idx.begin() + n_inputs);
    std::sort(input_nodes.begin(), input_nodes.end());
    for (int node : input_nodes) {
        double w;
        do {
            w = rng.uniform(-1.0, 1.0);
        } while (w == 0.0);
        spec.input_weights_effective[node] = w;
    }

    // Per-link transport delays: uniform in [tau/2, 3*tau/2], rounded to the
    // nearest multiple of two inverter delays (at least one pair).
    const double pair_ns = 2.0 * spec.inverter_delay_ns;
    for (int i = 0; i < n; ++i) {
        for (int j : spec.sources[static_cast<std::size_t>(i)]) {
            const double draw = rng.uniform(0.5 * hp.mean_delay_ns, 1.5 * hp.mean_delay_ns);
            const auto pairs = std::max<std::int64_t>(1, std::llround(draw / pair_ns));
            spec.link_delays_ns(i, j) = static_cast<double>(pairs) * pair_ns;
        }
    }

    // Heterogeneous node time constants, truncated to positive.
    for (int i = 0; i < n; ++i) {
        double g;
        do {
            g = rng.normal(kGammaMeanNs, kGammaSdNs);
        } while (!(g > 0.0));
        spec.node_time_constants_ns[i] = g;
    }

    spec.input_bit_weights = Eigen::MatrixXd::Zero(n, hp.input_bits);
    for (int i = 0; i < n; ++i) {
        const auto w =
            expand_input_weights(spec.input_weights_effective[i], hp.input_bits,
                                 hp.input_weight_scale);
        for (int j = 0; j < hp.input_bits; ++j) spec.input_bit_weights(i, j) = w[static_cast<std::size_t>(j)];
    }

    spec.finalize();
    return spec;
}

ReservoirSpec three_node_example() {
    ReservoirSpec spec;
    spec.hp.n_nodes = 3;
    spec.hp.spectral_radius = spectral_radius((Eigen::MatrixXd(3, 3) << 0.1, 0.3, 0.0,  //
                                               -0.2, 0.0, 0.1,                          //
                                               -0.3, 0.2, 0.0)
                                                  .finished());
    spec.hp.in_degree = 2;
    spec.hp.input_density = 1.0;
    spec.hp.input_bits = 1;
    spec.hp.mean_delay_ns = 10.0 * 2.0 * kInverterDelayNs;
    spec.hp.seed = 0;

    spec.weights.resize(3, 3);
    spec.weights << 0.1, 0.3, 0.0,  //
        -0.2, 0.0, 0.1,             //
        -0.3, 0.2, 0.0;

    // Explicit per-bit input weights for the 1-bit input.
    spec.input_bit_weights.resize(3, 1);
    spec.input_bit_weights << 0.1, -0.2, 0.2;
    spec.input_weights_effective.resize(3);
    spec.input_weights_effective << 0.1, -0.2, 0.2;

    // Delays in inverter pairs: {{10, 15, 0}, {6, 0, 7}, {12, 10, 0}}.
    const double pair_ns = 2.0 * kInverterDelayNs;
    spec.link_delays_ns.resize(3, 3);
    spec.link_delays_ns << 10, 15, 0,  //
        6, 0, 7,                       //
        12, 10, 0;
    spec.link_delays_ns *= pair_ns;

    spec.node_time_constants_ns = Eigen::VectorXd::Constant(3, kGammaMeanNs);
    spec.node_thresholds = Eigen::VectorXd::Constant(3, 0.5);
    spec.inverter_delay_ns = kInverterDelayNs;
    spec.finalize();
    return spec;
}

}  // namespace abrc
