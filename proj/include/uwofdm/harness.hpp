// harness.hpp - Monte-Carlo BER engine: Eb/N0 sweeps across estimators and
// channel modes with deterministic seeding, CSV/plot-data emission, and
// per-subcarrier variance/BER diagnostics.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "uwofdm/channel.hpp"
#include "uwofdm/config.hpp"
#include "uwofdm/estimators.hpp"
#include "uwofdm/generator.hpp"

namespace uwofdm {

enum class ChannelMode { awgn, snapshot, ensemble };

/// Channel selection. Text forms: "awgn", "snapshot:PATH",
/// "ensemble:TAU_NS[:COUNT]" (tau in nanoseconds; COUNT pre-drawn
/// realizations cycled frame by frame, default 256).
struct ChannelSpec {
    ChannelMode mode = ChannelMode::awgn;
    std::string snapshot_path;
    double tau_rms_s = 100e-9;
    int ensemble_size = 256;

    static ChannelSpec parse(const std::string& text);
    std::string str() const;
};

enum class CodeMode { none, r12 };
const char* to_string(CodeMode mode);
CodeMode code_mode_from_string(const std::string& name);

struct StopRule {
    long long min_bit_errors = 100;
    long long max_bits = 10'000'000;
};

/// One simulation request; loadable from a key = value file (see README).
struct RunSpec {
    std::string config_path;  ///< empty selects the built-in wlan64 setup
    std::vector<EqualizerKind> estimators;
    ChannelSpec channel;
    std::vector<double> ebn0_db_grid;
    CodeMode code = CodeMode::none;
    StopRule stop;
    std::uint64_t master_seed = 1;
    std::string output_path;

    static RunSpec load(const std::string& path);
    void validate() const;
};

struct BerResult {
    EqualizerKind kind{};
    double ebn0_db = 0;
    long long bits_sent = 0;
    long long bit_errors = 0;
    double ber = 0;
    double ci_low = 0;   ///< Wilson 95%
    double ci_high = 0;
    bool reached_min_errors = false;  ///< false marks a max_bits truncation
};

/// Wilson score interval at 95% confidence.
std::pair<double, double> wilson_interval_95(long long errors, long long bits);

/**
 * Noise variance per complex time-domain sample for a target Eb/N0.
 * Convention: Eb is the total transmit energy per information bit,
 * Eb = E_total / (n_data * bits_per_symbol * code_rate), including the
 * redundant-carrier and unique-word energy; sigma_n^2 = Eb * 10^(-dB/10).
 */
double ebn0_to_sigma_n(double ebn0_db, const SystemConfig& config, const GeneratorSet& gen,
                       double code_rate);

/// Runs the sweep. workers <= 0 selects the hardware concurrency. Results
/// are bit-identical for any worker count at a fixed spec.
std::vector<BerResult> run_ber(const RunSpec& spec, int workers = 0);

/// Per-data-carrier analytic error variance (diag C_ee / sigma_d^2) of two
/// estimators on one fixed channel, plus empirical per-carrier BERs.
struct SubcarrierDiagnostics {
    std::vector<double> variance_a, variance_b;
    std::vector<double> ber_a, ber_b;
    std::vector<double> ber_diff;  ///< ber_a - ber_b
};

SubcarrierDiagnostics subcarrier_diagnostics(EqualizerKind kind_a, EqualizerKind kind_b,
                                             const SystemConfig& config,
                                             const ChannelRealization& channel,
                                             double ebn0_db, long long bits,
                                             std::uint64_t seed);

/// CSV columns: estimator, code, channel, ebn0_db, bits, errors, ber,
/// ci_low, ci_high.
std::string csv_string(const std::vector<BerResult>& results, const RunSpec& spec);
void emit_csv(const std::vector<BerResult>& results, const RunSpec& spec,
              const std::string& path);

/// Plot-friendly text: one commented block per estimator series.
std::string plotdata_string(const std::vector<BerResult>& results, const RunSpec& spec);
void emit_plotdata(const std::vector<BerResult>& results, const RunSpec& spec,
                   const std::string& path);

} // namespace uwofdm
