#include "abrc/fixed_point.hpp"

#include <stdexcept>
#include <string>

namespace abrc {

FixedPointWord quantize(double value, int n_bits) {
    if (n_bits < 1 || n_bits > 30) {
        throw std::invalid_argument("quantize: n_bits must be in [1, 30], got " +
                                    std::to_string(n_bits));
    }
    if (!std::isfinite(value)) {
        throw std::invalid_argument("quantize: non-finite input");
    }
    const double scale = std::ldexp(1.0, n_bits - 1);  // 2^(n-1)
    const std::int32_t lo = static_cast<std::int32_t>(-scale);
    const std::int32_t hi = static_cast<std::int32_t>(scale) - 1;
    const double scaled = std::floor(value * scale + 0.5);
    std::int32_t code;
    if (scaled < static_cast<double>(lo)) {
        code = lo;
    } else if (scaled > static_cast<double>(hi)) {
        code = hi;
    } else {
        code = static_cast<std::int32_t>(scaled);
    }
    return FixedPointWord{code, n_bits};
}

std::vector<double> expand_input_weights(double effective, int n_bits, WeightScale scale) {
    if (n_bits < 1 || n_bits > 30) {
        throw std::invalid_argument("expand_input_weights: n_bits must be in [1, 30]");
    }
    const double s = scale == WeightScale::normalized ? std::ldexp(1.0, 1 - n_bits) : 1.0;
    std::vector<double> w(static_cast<std::size_t>(n_bits));
    for (int j = 1; j < n_bits; ++j) {
        w[static_cast<std::size_t>(j - 1)] = std::ldexp(1.0, j - 1) * s * effective;
    }
    w[static_cast<std::size_t>(n_bits - 1)] = -std::ldexp(1.0, n_bits - 1) * s * effective;
    return w;
}

}  // namespace abrc
