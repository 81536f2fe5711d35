// coding.hpp - optional outer channel code: rate-1/2 constraint-length-7
// convolutional encoder with generators (133, 171) octal, a row-column
// block interleaver, and soft-decision Viterbi decoding whose branch
// metrics honor the per-carrier error variances of the equalizer in use.

#pragma once

#include <cstdint>
#include <vector>

#include "uwofdm/types.hpp"

namespace uwofdm {

struct ConvCode {
    static constexpr int constraint_length = 7;
    static constexpr unsigned generator0 = 0133;  ///< octal
    static constexpr unsigned generator1 = 0171;  ///< octal
    static constexpr int flush_bits = constraint_length - 1;
    static constexpr double rate = 0.5;
};

/// Zero-tail encoding: 6 flush bits are appended, the output holds
/// 2*(input+6) coded bits.
std::vector<std::uint8_t> conv_encode(const std::vector<std::uint8_t>& bits);

/// Row-column block interleaver: write row-wise into rows x cols, read
/// column-wise. Throws ShapeMismatch unless size == rows*cols.
template <typename T>
std::vector<T> interleave(const std::vector<T>& x, int rows, int cols);
template <typename T>
std::vector<T> deinterleave(const std::vector<T>& x, int rows, int cols);

/// Per-coded-bit log-likelihood ratios; positive favors bit 0.
struct SoftMetrics {
    std::vector<double> llr;
    std::vector<double> variance_per_bit;
};

/// LLRs for Gray QPSK: llr = 2 sqrt(2/sigma_d^2) * component / variance,
/// real component for the first bit of the pair, imaginary for the second.
/// variances[i] is the complex error variance of the carrier of symbol i.
SoftMetrics soft_demap_qpsk(const CVec& d_hat, const RVec& variances, double sigma_d_sq);

/// Maximum-likelihood sequence over the 64-state trellis with zero-tail
/// termination; returns the information bits (flush bits dropped).
std::vector<std::uint8_t> viterbi_decode(const std::vector<double>& llr);

// -- template definitions ----------------------------------------------------

namespace detail {
void check_shape(size_t size, int rows, int cols);
}

template <typename T>
std::vector<T> interleave(const std::vector<T>& x, int rows, int cols)
{
    detail::check_shape(x.size(), rows, cols);
    const size_t n = x.size();
    std::vector<T> out(n);
    for (size_t k = 0; k < n; ++k) {
        const size_t r = k / static_cast<size_t>(cols);
        const size_t c = k % static_cast<size_t>(cols);
        out[c * static_cast<size_t>(rows) + r] = x[k];
    }
    return out;
}

template <typename T>
std::vector<T> deinterleave(const std::vector<T>& x, int rows, int cols)
{
    detail::check_shape(x.size(), rows, cols);
    const size_t n = x.size();
    std::vector<T> out(n);
    for (size_t k = 0; k < n; ++k) {
        const size_t c = k / static_cast<size_t>(rows);
        const size_t r = k % static_cast<size_t>(rows);
        out[r * static_cast<size_t>(cols) + c] = x[k];
    }
    return out;
}

} // namespace uwofdm
