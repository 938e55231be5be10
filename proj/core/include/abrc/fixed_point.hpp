#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace abrc {

/// n-bit two's-complement sample of a signal in [-1, 1).
/// The represented value is code / 2^(n-1).
struct FixedPointWord {
    std::int32_t code = 0;
    int n_bits = 8;

    double value() const { return std::ldexp(static_cast<double>(code), 1 - n_bits); }

    /// The raw n-bit pattern (sign bit at position n_bits-1), e.g. for
    /// indexing a truth table or emitting to hardware.
    std::uint32_t bit_pattern() const {
        return static_cast<std::uint32_t>(code) & ((1u << n_bits) - 1u);
    }

    bool operator==(const FixedPointWord&) const = default;
};

/// How the per-bit input weights are scaled relative to the effective weight.
/// `normalized` multiplies the two's-complement bit weights by 2^(1-n) so the
/// weighted bit-sum equals effective * represented_value exactly; `literal`
/// keeps the raw powers of two (bit-sum equals effective * integer code).
enum class WeightScale { normalized, literal };

/// Round a real value to the nearest n-bit code via floor(x * 2^(n-1) + 0.5),
/// saturating outside [-1, 1). Throws on non-finite input.
FixedPointWord quantize(double value, int n_bits);

inline double dequantize(FixedPointWord w) { return w.value(); }

/// Per-bit input weights for a scalar effective weight, LSB first; the last
/// entry is the (negative) sign-bit weight of the two's-complement code.
std::vector<double> expand_input_weights(double effective, int n_bits,
                                         WeightScale scale = WeightScale::normalized);

}  // namespace abrc
