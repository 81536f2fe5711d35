#include "uwofdm/txrx.hpp"

#include <cmath>

#include "uwofdm/dft.hpp"
#include "uwofdm/errors.hpp"

namespace uwofdm {

BitMapping BitMapping::qpsk(double sigma_d_sq)
{
    const double a = std::sqrt(sigma_d_sq / 2.0);
    BitMapping m;
    m.constellation = {cplx(a, a), cplx(a, -a), cplx(-a, a), cplx(-a, -a)};
    return m;
}

CVec qpsk_map(const std::vector<std::uint8_t>& bits, double sigma_d_sq)
{
    if (bits.size() % 2 != 0) throw OddBitCount("qpsk_map needs an even bit count");
    const BitMapping m = BitMapping::qpsk(sigma_d_sq);
    CVec out(static_cast<Eigen::Index>(bits.size() / 2));
    for (size_t i = 0; i < bits.size(); i += 2)
        out[static_cast<Eigen::Index>(i / 2)] =
            m.constellation[static_cast<size_t>((bits[i] & 1) << 1 | (bits[i + 1] & 1))];
    return out;
}

std::vector<std::uint8_t> qpsk_demap(const CVec& symbols)
{
    std::vector<std::uint8_t> bits(static_cast<size_t>(symbols.size()) * 2);
    for (Eigen::Index i = 0; i < symbols.size(); ++i) {
        bits[2 * static_cast<size_t>(i)] = symbols[i].real() < 0.0 ? 1 : 0;
        bits[2 * static_cast<size_t>(i) + 1] = symbols[i].imag() < 0.0 ? 1 : 0;
    }
    return bits;
}

TxFrame generate_frame(const CVec& d, const GeneratorSet& gen, const SystemConfig& config)
{
    if (d.size() != config.n_data)
        throw DimensionMismatch("generate_frame: data vector length differs from N_d");

    TxFrame f;
    f.data = d;
    f.redundant = gen.red_map * d;
    f.code_word.resize(config.n_data + config.n_red);
    f.code_word << f.data, f.redundant;

    f.freq = CVec::Zero(config.dft_len);
    for (size_t i = 0; i < gen.sorted_carrier.size(); ++i)
        f.freq[gen.sorted_carrier[i]] = f.code_word[static_cast<Eigen::Index>(i)];

    f.time = dft_inverse(f.freq);
    f.transmit = f.time;
    f.transmit.tail(config.uw_len) += config.uw;
    return f;
}

RxPrepared prepare_receive(const CVec& y_time, const ChannelRealization& channel,
                           const GeneratorSet& gen, const SystemConfig& config)
{
    if (y_time.size() != config.dft_len)
        throw DimensionMismatch("prepare_receive: symbol length differs from N");

    const CVec y_freq = dft_forward(y_time);

    // Known UW contribution per carrier; zero unique words skip the DFT.
    CVec uw_freq;
    const bool have_uw = config.uw.size() > 0 && config.uw.squaredNorm() > 0.0;
    if (have_uw) {
        CVec uw_time = CVec::Zero(config.dft_len);
        uw_time.tail(config.uw_len) = config.uw;
        uw_freq = dft_forward(uw_time);
    }

    const Eigen::Index m = static_cast<Eigen::Index>(gen.occupied.size());
    RxPrepared r;
    r.downsized.resize(m);
    r.uw_corrected.resize(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const int c = gen.occupied[static_cast<size_t>(k)];
        r.downsized[k] = y_freq[c];
        r.uw_corrected[k] = y_freq[c] - (have_uw ? channel.freq[c] * uw_freq[c] : cplx(0, 0));
    }
    r.sorted.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const int c = gen.sorted_carrier[static_cast<size_t>(i)];
        r.sorted[i] = y_freq[c] - (have_uw ? channel.freq[c] * uw_freq[c] : cplx(0, 0));
    }
    return r;
}

} // namespace uwofdm
