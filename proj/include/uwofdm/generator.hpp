// generator.hpp - deterministic code structure of the UW-OFDM symbol:
// zero-carrier insertion, data/redundant sorting, the redundancy map T that
// forces the time-domain tail to zero, and the systematic generator [I; T].

#pragma once

#include <cstdint>
#include <vector>

#include "uwofdm/config.hpp"
#include "uwofdm/types.hpp"

namespace uwofdm {

/**
 * Matrices defining the code structure for one configuration.
 *
 * With F the DFT matrix, the frequency-domain symbol is
 * x_f = zero_insertion * sorting * [d; r], and the mixing matrix
 * F^{-1} * zero_insertion * sorting splits into four blocks; the lower two
 * (tail rows) determine the redundancy map via mix22 * T = -mix21.
 */
struct GeneratorSet {
    RMat zero_insertion;  ///< B: dft_len x (n_data+n_red), one 1 per column
    RMat sorting;         ///< P: occupied-carrier order <- [data; redundant]
    CMat mix11, mix12;    ///< head rows of F^{-1} B P
    CMat mix21, mix22;    ///< tail (uw_len) rows of F^{-1} B P
    CMat red_map;         ///< T: n_red x n_data
    CMat code_gen;        ///< G_s = [I; T]: (n_data+n_red) x n_data

    /// Carrier index of each sorted position (data block first, then the
    /// redundant block in configured order). Equivalent to B*P as a map.
    std::vector<int> sorted_carrier;
    /// Occupied (non-zero) carrier indices in ascending order.
    std::vector<int> occupied;
};

/// Symbol-energy decomposition: mean energy of one transmit symbol split
/// into data, redundant-carrier and unique-word contributions.
struct EnergyReport {
    double data = 0;        ///< n_data * sigma_d^2 / N
    double redundant = 0;   ///< sigma_d^2 * tr(T T^H) / N
    double uw = 0;          ///< x_u^H x_u
    double total = 0;
    double trace_tth = 0;   ///< tr(T T^H)
};

/// Builds all code-structure matrices. T is obtained from a pivoted LU
/// solve of mix22 * T = -mix21, never by forming an inverse.
/// Throws SingularM22 when the reciprocal condition estimate of mix22
/// falls below 1e-12 (degenerate redundant-carrier placement).
GeneratorSet build_generator_set(const SystemConfig& config);

EnergyReport energy_report(const GeneratorSet& gen, const SystemConfig& config);

enum class PlacementStrategy {
    exhaustive,            ///< all C(N - N_z, N_r) subsets; capped at 1e6
    pairwise_swap_descent, ///< best single redundant<->data swap until no improvement
};

/**
 * Searches for a redundant-carrier placement minimizing tr(T T^H).
 *
 * The template fixes N, N_u and the zero carriers; its redundant_indices
 * seed the descent. Ties break toward the lexicographically smallest index
 * set, and placements with singular mix22 are skipped. The seed parameter
 * is reserved for randomized restarts and does not affect either strategy.
 * objective_trace, when given, receives the objective after the initial
 * point and after every accepted step (descent) or the best-so-far values
 * (exhaustive).
 */
SystemConfig optimize_redundant_placement(const SystemConfig& config_template,
                                          PlacementStrategy strategy,
                                          std::uint64_t seed,
                                          std::vector<double>* objective_trace = nullptr);

} // namespace uwofdm
