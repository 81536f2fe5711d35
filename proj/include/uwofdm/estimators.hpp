// estimators.hpp - linear data estimators for the model y = H_s G_s d + v.
//
// Classical (zero-forcing) family: channel inversion (CI), time-domain
// windowing (TDW), the BLUE in direct and matrix-inversion-lemma-reduced
// forms, and arbitrary members of the SVD-parameterized ZF family.
// Bayesian family: the LMMSE batch equalizer in three algebraically
// equivalent forms, and the sequential LMMSE that avoids matrix inversion.
// Every equalizer carries its analytic error covariance.

#pragma once

#include <vector>

#include "uwofdm/channel.hpp"
#include "uwofdm/config.hpp"
#include "uwofdm/generator.hpp"
#include "uwofdm/types.hpp"

namespace uwofdm {

enum class EqualizerKind {
    ci,
    tdw,
    blue_direct,
    blue_reduced,
    lmmse_wiener,
    lmmse_direct,
    lmmse_reduced,
    zf_family,  ///< arbitrary-A member, not one of the named designs
};

const char* to_string(EqualizerKind kind);
EqualizerKind equalizer_kind_from_string(const std::string& name);

/// A determined equalizer: d_hat = gain * y, with the analytic covariance
/// of the estimation error d - d_hat.
struct Equalizer {
    EqualizerKind kind{};
    CMat gain;       ///< E: n_data x (n_data+n_red)
    CMat error_cov;  ///< C_ee: n_data x n_data, Hermitian
};

/// SVD factorization of H_s G_s with the free parameter of the ZF family.
struct ZfFamilyMember {
    CMat a_free;          ///< A: n_data x n_red
    CMat u, v;            ///< unitary factors
    RVec singular_values; ///< diagonal of Sigma
};

/// Per-carrier channel inversion, redundant carriers dropped.
Equalizer build_ci(const ChannelRealization& channel, const GeneratorSet& gen,
                   const NoiseModel& noise);

/// Channel inversion followed by zeroing the guard-interval time samples.
Equalizer build_tdw(const ChannelRealization& channel, const GeneratorSet& gen,
                    const SystemConfig& config, const NoiseModel& noise);

/// Staged TDW application (divide, re-insert zeros, IFFT, window, FFT,
/// strip, re-sort, extract); equals build_tdw(...).gain * y.
CVec apply_tdw_fast(const CVec& y, const ChannelRealization& channel,
                    const GeneratorSet& gen, const SystemConfig& config);

/// Gauss-Markov optimum of the ZF family, via an n_data x n_data
/// Hermitian-positive-definite solve.
Equalizer build_blue_direct(const ChannelRealization& channel, const GeneratorSet& gen,
                            const NoiseModel& noise);

/// Same estimator through the matrix inversion lemma; only an
/// n_red x n_red Hermitian solve is performed.
Equalizer build_blue_reduced(const ChannelRealization& channel, const GeneratorSet& gen,
                             const NoiseModel& noise);

enum class LmmseForm {
    wiener,   ///< channel inversion followed by Wiener smoothing
    direct,   ///< regularized pseudoinverse; tolerates channel nulls
    reduced,  ///< matrix-inversion-lemma form
};

Equalizer build_lmmse(const ChannelRealization& channel, const GeneratorSet& gen,
                      const NoiseModel& noise, double sigma_d_sq, LmmseForm form);

/// Arbitrary ZF-family member E = V [Sigma^{-1} A] U^H; the returned
/// equalizer has kind zf_family and covariance N sigma_n^2 E E^H.
Equalizer zf_family_member(const ChannelRealization& channel, const GeneratorSet& gen,
                           const CMat& a_free, const NoiseModel& noise,
                           ZfFamilyMember* factors = nullptr);

/// Same construction from precomputed factors; avoids repeating the SVD
/// when sweeping the free parameter on a fixed channel.
Equalizer zf_family_member_from(const ZfFamilyMember& factors, const CMat& a_free,
                                const NoiseModel& noise);

/// Closed-form error covariance for the given kind. ZF kinds reduce to
/// N sigma_n^2 E E^H; LMMSE kinds return the covariance fixed at
/// determination (their gain already depends on the noise level).
CMat error_covariance(const Equalizer& eq, const NoiseModel& noise);

// -- sequential LMMSE ------------------------------------------------------

enum class SequentialLevel {
    generic,      ///< textbook recursion on full vectors/matrices
    diagonal,     ///< exploits the diagonal system matrix
    partitioned,  ///< additionally exploits uncorrelated data symbols
};

/**
 * Gains and final MSE matrix of the sequential LMMSE pass over the
 * n_data + n_red scalar observations. For the first n_data steps the gain
 * splits into a scalar for the one touched data symbol and a vector for
 * the redundant block; the last n_red steps use full gain vectors.
 */
struct SequentialEqualizer {
    std::vector<cplx> data_gains;   ///< k_d[n], n < n_data
    std::vector<CVec> red_gains;    ///< k_r[n] (length n_red), n < n_data
    std::vector<CVec> joint_gains;  ///< k[n] (length n_data+n_red), last n_red steps
    CMat mse_final;                 ///< M[n_data+n_red-1]
    double sigma_v_sq = 0.0;
    double sigma_d_sq = 0.0;

    /// Upper-left n_data block of mse_final; equals the batch LMMSE C_ee.
    CMat error_cov() const;
};

/// Runs the n_data+n_red determination iterations at the given
/// simplification level. All levels produce identical gains and MSE matrix
/// up to rounding. Requires sigma_n_sq > 0 (ZeroNoise otherwise).
SequentialEqualizer sequential_lmmse_determine(const ChannelRealization& channel,
                                               const GeneratorSet& gen,
                                               const NoiseModel& noise, double sigma_d_sq,
                                               SequentialLevel level);

/// Replays the estimate updates for one received symbol; returns the first
/// n_data entries, identical to the batch LMMSE estimate.
CVec sequential_lmmse_estimate(const SequentialEqualizer& seq, const CVec& y,
                               const ChannelRealization& channel);

} // namespace uwofdm
