// config.hpp - system configuration: dimensions, subcarrier index sets,
// unique word and power levels.

#pragma once

#include <string>
#include <vector>

#include "uwofdm/types.hpp"

namespace uwofdm {

/**
 * All dimensional parameters of a UW-OFDM setup.
 *
 * Invariants (checked by validate()):
 *   - n_red == uw_len (one redundant subcarrier per unique-word sample)
 *   - n_data + n_red + n_zero == dft_len
 *   - zero_indices and redundant_indices are disjoint subsets of [0, dft_len)
 *   - the data indices ([0, dft_len) minus the two sets) number n_data
 *
 * The order of redundant_indices is significant: it fixes the column order
 * of the redundancy map and thereby the sorting permutation. zero_indices
 * order does not matter.
 */
struct SystemConfig {
    int dft_len = 0;     ///< N
    int uw_len = 0;      ///< N_u, unique word length in samples
    int n_data = 0;      ///< N_d
    int n_red = 0;       ///< N_r
    int n_zero = 0;      ///< N_z
    std::vector<int> zero_indices;
    std::vector<int> redundant_indices;
    CVec uw;                       ///< time-domain unique word, length uw_len
    double sigma_d_sq = 1.0;       ///< per-symbol QAM variance
    double sample_rate_hz = 20e6;  ///< f_s

    /// Data-subcarrier indices in ascending order.
    std::vector<int> data_indices() const;

    /// Throws ConfigError / DimensionMismatch when an invariant is broken.
    void validate() const;

    /// 64-carrier WLAN-style grid: zero carriers {0, 27..37}, 36 data and
    /// 16 redundant carriers at the energy-optimal positions, zero UW.
    static SystemConfig wlan64();

    /// Key = value text file; see README for the format.
    static SystemConfig load(const std::string& path);
    void save(const std::string& path) const;
};

} // namespace uwofdm
