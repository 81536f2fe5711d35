#include "uwofdm/coding.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <limits>

#include "uwofdm/errors.hpp"

namespace uwofdm {
namespace detail {

void check_shape(size_t size, int rows, int cols)
{
    if (rows <= 0 || cols <= 0 || size != static_cast<size_t>(rows) * static_cast<size_t>(cols))
        throw ShapeMismatch("interleaver: " + std::to_string(size) + " items do not fill " +
                            std::to_string(rows) + "x" + std::to_string(cols));
}

} // namespace detail

namespace {

// The 7-bit window is (current bit << 6) | state, state bit 5 holding the
// most recent past bit.
inline std::uint8_t parity7(unsigned w) { return static_cast<std::uint8_t>(std::popcount(w) & 1); }

struct Trellis {
    // Indexed by (state << 1) | bit.
    std::array<std::uint8_t, 128> out0{}, out1{}, next{};

    Trellis()
    {
        for (unsigned s = 0; s < 64; ++s)
            for (unsigned b = 0; b < 2; ++b) {
                const unsigned w = (b << 6) | s;
                out0[(s << 1) | b] = parity7(w & ConvCode::generator0);
                out1[(s << 1) | b] = parity7(w & ConvCode::generator1);
                next[(s << 1) | b] = static_cast<std::uint8_t>((b << 5) | (s >> 1));
            }
    }
};

const Trellis& trellis()
{
    static const Trellis t;
    return t;
}

} // namespace

std::vector<std::uint8_t> conv_encode(const std::vector<std::uint8_t>& bits)
{
    const Trellis& t = trellis();
    std::vector<std::uint8_t> out;
    out.reserve(2 * (bits.size() + ConvCode::flush_bits));
    unsigned state = 0;
    auto push = [&](unsigned b) {
        const unsigned idx = (state << 1) | (b & 1);
        out.push_back(t.out0[idx]);
        out.push_back(t.out1[idx]);
        state = t.next[idx];
    };
    for (std::uint8_t b : bits) push(b);
    for (int i = 0; i < ConvCode::flush_bits; ++i) push(0);
    return out;
}

SoftMetrics soft_demap_qpsk(const CVec& d_hat, const RVec& variances, double sigma_d_sq)
{
    if (variances.size() != d_hat.size())
        throw DimensionMismatch("soft_demap_qpsk: one variance per symbol required");
    if (sigma_d_sq <= 0.0) throw ConfigError("soft_demap_qpsk: sigma_d_sq must be positive");

    const double scale = 2.0 * std::sqrt(2.0 / sigma_d_sq);
    SoftMetrics m;
    m.llr.resize(2 * static_cast<size_t>(d_hat.size()));
    m.variance_per_bit.resize(m.llr.size());
    for (Eigen::Index i = 0; i < d_hat.size(); ++i) {
        const double v = variances[i];
        if (!(v > 0.0))
            throw NonpositiveVariance("soft_demap_qpsk: variance of symbol " +
                                      std::to_string(i) + " is not positive");
        m.llr[2 * static_cast<size_t>(i)] = scale * d_hat[i].real() / v;
        m.llr[2 * static_cast<size_t>(i) + 1] = scale * d_hat[i].imag() / v;
        m.variance_per_bit[2 * static_cast<size_t>(i)] = v;
        m.variance_per_bit[2 * static_cast<size_t>(i) + 1] = v;
    }
    return m;
}

std::vector<std::uint8_t> viterbi_decode(const std::vector<double>& llr)
{
    if (llr.size() % 2 != 0) throw LengthOdd("viterbi_decode: LLR count must be even");
    const size_t steps = llr.size() / 2;
    const Trellis& t = trellis();
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();

    std::array<double, 64> metric;
    metric.fill(kNegInf);
    metric[0] = 0.0;
    // Survivor per (step, state): predecessor state and input bit.
    std::vector<std::array<std::uint8_t, 64>> survivor(steps);

    std::array<double, 64> next_metric;
    for (size_t i = 0; i < steps; ++i) {
        const double l0 = llr[2 * i], l1 = llr[2 * i + 1];
        next_metric.fill(kNegInf);
        for (unsigned s = 0; s < 64; ++s) {
            if (metric[s] == kNegInf) continue;
            for (unsigned b = 0; b < 2; ++b) {
                const unsigned idx = (s << 1) | b;
                const double cand = metric[s] + (t.out0[idx] ? -l0 : l0) +
                                    (t.out1[idx] ? -l1 : l1);
                const unsigned ns = t.next[idx];
                if (cand > next_metric[ns]) {
                    next_metric[ns] = cand;
                    survivor[i][ns] = static_cast<std::uint8_t>((s << 1) | b);
                }
            }
        }
        metric = next_metric;
    }

    // Zero-tail termination: trace back from state 0 when reachable.
    unsigned state = 0;
    if (metric[0] == kNegInf) {
        double best = kNegInf;
        for (unsigned s = 0; s < 64; ++s)
            if (metric[s] > best) {
                best = metric[s];
                state = s;
            }
    }
    std::vector<std::uint8_t> bits(steps);
    for (size_t i = steps; i-- > 0;) {
        const std::uint8_t rec = survivor[i][state];
        bits[i] = rec & 1;
        state = rec >> 1;
    }
    const size_t info = steps > static_cast<size_t>(ConvCode::flush_bits)
                            ? steps - ConvCode::flush_bits
                            : 0;
    bits.resize(info);
    return bits;
}

} // namespace uwofdm
