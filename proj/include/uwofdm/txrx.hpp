// txrx.hpp - transmit-side frame generation and receive-side preparation.
//
// Transmit: QPSK symbols -> redundant loading -> IDFT -> unique word added
// in time domain. Receive: DFT -> zero-carrier removal -> UW influence
// subtraction -> re-sorting, producing the linear model y = H_s G_s d + v.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "uwofdm/channel.hpp"
#include "uwofdm/config.hpp"
#include "uwofdm/generator.hpp"
#include "uwofdm/types.hpp"

namespace uwofdm {

/// Gray-labeled QPSK at average energy sigma_d^2. The first bit of each
/// pair selects the real sign, the second the imaginary sign (0 -> +).
struct BitMapping {
    int bits_per_symbol = 2;
    std::array<cplx, 4> constellation;  ///< indexed by (first<<1)|second

    static BitMapping qpsk(double sigma_d_sq);
};

CVec qpsk_map(const std::vector<std::uint8_t>& bits, double sigma_d_sq);
std::vector<std::uint8_t> qpsk_demap(const CVec& symbols);

/// Every intermediate of one transmit symbol.
struct TxFrame {
    CVec data;       ///< d
    CVec redundant;  ///< r = T d
    CVec code_word;  ///< c_s = [d; r]
    CVec freq;       ///< B P c_s
    CVec time;       ///< F^{-1} freq (zero tail)
    CVec transmit;   ///< time + [0; uw]
};

TxFrame generate_frame(const CVec& d, const GeneratorSet& gen, const SystemConfig& config);

/// Receive-side intermediates up to the linear model.
struct RxPrepared {
    CVec downsized;     ///< y_d: occupied carriers of the received DFT
    CVec uw_corrected;  ///< y_c = y_d - H_d B^T x_u_freq
    CVec sorted;        ///< y = P^T y_c
};

RxPrepared prepare_receive(const CVec& y_time, const ChannelRealization& channel,
                           const GeneratorSet& gen, const SystemConfig& config);

} // namespace uwofdm
