#include "uwofdm/channel.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "uwofdm/dft.hpp"
#include "uwofdm/errors.hpp"
#include "uwofdm/rng.hpp"

namespace uwofdm {

ChannelRealization ChannelRealization::from_taps(const CVec& taps, const SystemConfig& config)
{
    config.validate();
    const int n = config.dft_len;
    if (taps.size() > n)
        throw LengthExceedsN("channel has " + std::to_string(taps.size()) +
                             " taps, DFT length is " + std::to_string(n));
    ChannelRealization c;
    c.taps = CVec::Zero(n);
    c.taps.head(taps.size()) = taps;
    c.freq = dft_forward(c.taps);

    const auto data_idx = config.data_indices();
    const auto& red_idx = config.redundant_indices;
    c.gain_data.resize(config.n_data);
    for (int i = 0; i < config.n_data; ++i) c.gain_data[i] = c.freq[data_idx[i]];
    c.gain_red.resize(config.n_red);
    for (int i = 0; i < config.n_red; ++i) c.gain_red[i] = c.freq[red_idx[i]];
    c.gain_sorted.resize(config.n_data + config.n_red);
    c.gain_sorted << c.gain_data, c.gain_red;

    std::set<int> zeros(config.zero_indices.begin(), config.zero_indices.end());
    c.gain_occ.resize(config.n_data + config.n_red);
    Eigen::Index k = 0;
    for (int i = 0; i < n; ++i)
        if (!zeros.count(i)) c.gain_occ[k++] = c.freq[i];
    return c;
}

ChannelRealization ChannelRealization::impulse(const SystemConfig& config)
{
    CVec h = CVec::Zero(1);
    h[0] = 1.0;
    return from_taps(h, config);
}

NoiseModel NoiseModel::from_time_variance(double sigma_n_sq, const SystemConfig& config)
{
    if (sigma_n_sq < 0.0) throw ConfigError("noise variance must be nonnegative");
    NoiseModel m;
    m.sigma_n_sq = sigma_n_sq;
    m.sigma_v_sq = config.dft_len * sigma_n_sq;
    return m;
}

ChannelRealization draw_multipath(double tau_rms_s, const SystemConfig& config,
                                  std::uint64_t seed)
{
    if (!(tau_rms_s > 0.0))
        throw InvalidDelaySpread("tau_rms must be positive (use ChannelRealization::impulse "
                                 "for the flat-channel limit)");
    if (config.uw_len < 1) throw ConfigError("multipath model needs uw_len >= 1");

    const double ts = 1.0 / config.sample_rate_hz;
    auto eng = make_engine({seed, stream::channel});
    std::normal_distribution<double> gauss(0.0, 1.0);

    CVec h(config.uw_len);
    for (int k = 0; k < config.uw_len; ++k) {
        const double power = std::exp(-k * ts / tau_rms_s);
        const double s = std::sqrt(power / 2.0);
        h[k] = cplx(s * gauss(eng), s * gauss(eng));
    }
    h /= h.norm();
    return ChannelRealization::from_taps(h, config);
}

CVec apply_channel(const CVec& x_time, const ChannelRealization& channel,
                   const NoiseModel& noise, std::uint64_t seed)
{
    const Eigen::Index n = channel.taps.size();
    if (x_time.size() != n)
        throw DimensionMismatch("apply_channel: symbol length differs from DFT length");

    // Frequency-domain product; equals time-domain cyclic convolution under
    // the library's DFT convention.
    CVec y = dft_inverse(CVec(dft_forward(x_time).cwiseProduct(channel.freq)));

    if (noise.sigma_n_sq > 0.0) {
        auto eng = make_engine({seed, stream::noise});
        std::normal_distribution<double> gauss(0.0, std::sqrt(noise.sigma_n_sq / 2.0));
        for (Eigen::Index i = 0; i < n; ++i) y[i] += cplx(gauss(eng), gauss(eng));
    }
    return y;
}

void save_snapshot(const ChannelRealization& channel, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot write snapshot: " + path);
    out.precision(17);
    // Trailing zero padding is dropped; taps are significant up to the last
    // nonzero entry.
    Eigen::Index last = channel.taps.size() - 1;
    while (last > 0 && channel.taps[last] == cplx(0.0, 0.0)) --last;
    for (Eigen::Index i = 0; i <= last; ++i)
        out << channel.taps[i].real() << " " << channel.taps[i].imag() << "\n";
    if (!out) throw IoError("write failed: " + path);
}

ChannelRealization load_snapshot(const std::string& path, const SystemConfig& config)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open snapshot: " + path);
    std::vector<cplx> taps;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        double re, im;
        if (!(ss >> re >> im)) {
            std::string rest;
            ss.clear();
            ss >> rest;
            if (rest.empty() && line.find_first_not_of(" \t\r\n") == std::string::npos)
                continue;  // blank line
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected 're im'");
        }
        std::string extra;
        if (ss >> extra)
            throw ParseError(path + ":" + std::to_string(lineno) + ": trailing content");
        taps.emplace_back(re, im);
    }
    if (static_cast<int>(taps.size()) > config.dft_len)
        throw LengthExceedsN("snapshot has " + std::to_string(taps.size()) +
                             " taps, DFT length is " + std::to_string(config.dft_len));
    CVec h(static_cast<Eigen::Index>(taps.size()));
    for (size_t i = 0; i < taps.size(); ++i) h[static_cast<Eigen::Index>(i)] = taps[i];
    return ChannelRealization::from_taps(h, config);
}

} // namespace uwofdm
