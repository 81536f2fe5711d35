// channel.hpp - multipath channel realizations, AWGN, and the diagonal
// frequency-domain channel matrices in every ordering the receiver needs.

#pragma once

#include <cstdint>
#include <string>

#include "uwofdm/config.hpp"
#include "uwofdm/types.hpp"

namespace uwofdm {

/**
 * One channel realization: time-domain taps plus the derived per-carrier
 * gains. gain_sorted holds the data-carrier gains first and the redundant
 * ones last, matching the receiver's re-sorted symbol order; gain_data and
 * gain_red are its two halves.
 */
struct ChannelRealization {
    CVec taps;         ///< h_c, zero-padded to dft_len
    CVec freq;         ///< F * taps
    CVec gain_occ;     ///< occupied carriers, ascending carrier order
    CVec gain_sorted;  ///< [gain_data; gain_red]
    CVec gain_data;    ///< data carriers
    CVec gain_red;     ///< redundant carriers

    /// Derives all per-carrier gains from time-domain taps.
    /// Throws LengthExceedsN when more than dft_len taps are given.
    static ChannelRealization from_taps(const CVec& taps, const SystemConfig& config);

    /// Unit impulse (flat channel); the tau_rms -> 0 limit.
    static ChannelRealization impulse(const SystemConfig& config);
};

/// Time-domain complex noise variance per sample and its per-subcarrier
/// image under the unnormalized DFT.
struct NoiseModel {
    double sigma_n_sq = 0.0;
    double sigma_v_sq = 0.0;  ///< dft_len * sigma_n_sq

    static NoiseModel from_time_variance(double sigma_n_sq, const SystemConfig& config);
};

/**
 * Draws an exponentially decaying tapped delay line: uw_len taps at sample
 * spacing 1/f_s, tap k power proportional to exp(-k*T_s/tau_rms), each tap
 * circularly-symmetric complex Gaussian, normalized to unit energy.
 */
ChannelRealization draw_multipath(double tau_rms_s, const SystemConfig& config,
                                  std::uint64_t seed);

/// Cyclic convolution with the channel taps plus i.i.d. circularly-symmetric
/// complex Gaussian noise of per-sample variance sigma_n_sq.
CVec apply_channel(const CVec& x_time, const ChannelRealization& channel,
                   const NoiseModel& noise, std::uint64_t seed);

/// Snapshot files: one "re im" tap per line, 17 significant digits.
void save_snapshot(const ChannelRealization& channel, const std::string& path);
ChannelRealization load_snapshot(const std::string& path, const SystemConfig& config);

} // namespace uwofdm
