#include "uwofdm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "uwofdm/coding.hpp"
#include "uwofdm/errors.hpp"
#include "uwofdm/rng.hpp"
#include "uwofdm/txrx.hpp"

namespace uwofdm {
namespace {

constexpr int kBatchFrames = 256;        // stop rule granularity, worker-independent
constexpr int kResampleLimit = 1000;     // per ensemble slot
constexpr int kInterleaverCols = 16;

std::string trim(const std::string& s)
{
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Equalizer build_kind(EqualizerKind kind, const ChannelRealization& ch, const GeneratorSet& gen,
                     const SystemConfig& cfg, const NoiseModel& noise)
{
    switch (kind) {
        case EqualizerKind::ci: return build_ci(ch, gen, noise);
        case EqualizerKind::tdw: return build_tdw(ch, gen, cfg, noise);
        case EqualizerKind::blue_direct: return build_blue_direct(ch, gen, noise);
        case EqualizerKind::blue_reduced: return build_blue_reduced(ch, gen, noise);
        case EqualizerKind::lmmse_wiener:
            return build_lmmse(ch, gen, noise, cfg.sigma_d_sq, LmmseForm::wiener);
        case EqualizerKind::lmmse_direct:
            return build_lmmse(ch, gen, noise, cfg.sigma_d_sq, LmmseForm::direct);
        case EqualizerKind::lmmse_reduced:
            return build_lmmse(ch, gen, noise, cfg.sigma_d_sq, LmmseForm::reduced);
        case EqualizerKind::zf_family:
            throw ConfigError("zf_family needs an explicit A matrix; not a sweep estimator");
    }
    throw UnknownKind("bad EqualizerKind value");
}

std::vector<std::uint8_t> draw_bits(std::uint64_t master, std::uint64_t frame, size_t count)
{
    auto eng = make_engine({master, stream::bits, frame});
    std::vector<std::uint8_t> bits(count);
    std::uint64_t word = 0;
    int have = 0;
    for (size_t i = 0; i < count; ++i) {
        if (have == 0) {
            word = eng();
            have = 64;
        }
        bits[i] = static_cast<std::uint8_t>(word & 1);
        word >>= 1;
        --have;
    }
    return bits;
}

long long hamming(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b)
{
    long long e = 0;
    for (size_t i = 0; i < a.size(); ++i) e += a[i] != b[i];
    return e;
}

/// Smallest symbols-per-frame giving a coded block that fills the
/// row-column interleaver (cols fixed at 16) with at least two rows.
int coded_symbols_per_frame(int n_data)
{
    for (int l = 1; l <= 64; ++l) {
        const int coded = 2 * n_data * l;
        if (coded % kInterleaverCols == 0 && coded / kInterleaverCols >= 2) return l;
    }
    throw ConfigError("no frame length fills the interleaver for N_d = " +
                      std::to_string(n_data));
}

struct FrameFormat {
    int symbols = 1;     ///< OFDM symbols per frame
    int info_bits = 0;   ///< counted bits per frame
    int coded_bits = 0;  ///< 0 for uncoded
    int rows = 0;        ///< interleaver rows
};

FrameFormat frame_format(const SystemConfig& cfg, CodeMode code)
{
    FrameFormat f;
    if (code == CodeMode::none) {
        f.symbols = 1;
        f.info_bits = 2 * cfg.n_data;
        return f;
    }
    f.symbols = coded_symbols_per_frame(cfg.n_data);
    f.coded_bits = 2 * cfg.n_data * f.symbols;
    f.info_bits = f.coded_bits / 2 - ConvCode::flush_bits;
    f.rows = f.coded_bits / kInterleaverCols;
    return f;
}

struct FrameContext {
    const SystemConfig* cfg;
    const GeneratorSet* gen;
    const NoiseModel* noise;
    const FrameFormat* fmt;
    std::uint64_t master;
};

/// One uncoded frame; returns bit errors.
long long run_frame_uncoded(const FrameContext& c, const ChannelRealization& ch,
                            const Equalizer& eq, std::uint64_t frame)
{
    const auto bits = draw_bits(c.master, frame, static_cast<size_t>(c.fmt->info_bits));
    const CVec d = qpsk_map(bits, c.cfg->sigma_d_sq);
    const TxFrame tx = generate_frame(d, *c.gen, *c.cfg);
    const CVec y_time =
        apply_channel(tx.transmit, ch, *c.noise, derive_seed({c.master, frame, 0}));
    const RxPrepared rx = prepare_receive(y_time, ch, *c.gen, *c.cfg);
    const CVec d_hat = eq.gain * rx.sorted;
    return hamming(bits, qpsk_demap(d_hat));
}

long long run_frame_coded(const FrameContext& c, const ChannelRealization& ch,
                          const Equalizer& eq, std::uint64_t frame)
{
    const auto info = draw_bits(c.master, frame, static_cast<size_t>(c.fmt->info_bits));
    const auto coded = interleave(conv_encode(info), c.fmt->rows, kInterleaverCols);

    const RVec variances = eq.error_cov.diagonal().real();
    std::vector<double> llr;
    llr.reserve(coded.size());
    const int per_symbol = 2 * c.cfg->n_data;
    for (int s = 0; s < c.fmt->symbols; ++s) {
        std::vector<std::uint8_t> slice(coded.begin() + s * per_symbol,
                                        coded.begin() + (s + 1) * per_symbol);
        const CVec d = qpsk_map(slice, c.cfg->sigma_d_sq);
        const TxFrame tx = generate_frame(d, *c.gen, *c.cfg);
        const CVec y_time = apply_channel(tx.transmit, ch, *c.noise,
                                          derive_seed({c.master, frame, static_cast<std::uint64_t>(s)}));
        const RxPrepared rx = prepare_receive(y_time, ch, *c.gen, *c.cfg);
        const CVec d_hat = eq.gain * rx.sorted;
        const SoftMetrics m = soft_demap_qpsk(d_hat, variances, c.cfg->sigma_d_sq);
        llr.insert(llr.end(), m.llr.begin(), m.llr.end());
    }
    const auto decoded = viterbi_decode(deinterleave(llr, c.fmt->rows, kInterleaverCols));
    return hamming(info, decoded);
}

} // namespace

ChannelSpec ChannelSpec::parse(const std::string& text)
{
    ChannelSpec s;
    if (text == "awgn") {
        s.mode = ChannelMode::awgn;
        return s;
    }
    if (text.rfind("snapshot:", 0) == 0) {
        s.mode = ChannelMode::snapshot;
        s.snapshot_path = text.substr(9);
        if (s.snapshot_path.empty()) throw ConfigError("snapshot: needs a path");
        return s;
    }
    if (text.rfind("ensemble:", 0) == 0) {
        s.mode = ChannelMode::ensemble;
        std::string rest = text.substr(9);
        const size_t colon = rest.find(':');
        try {
            s.tau_rms_s = std::stod(colon == std::string::npos ? rest : rest.substr(0, colon)) * 1e-9;
            if (colon != std::string::npos) s.ensemble_size = std::stoi(rest.substr(colon + 1));
        } catch (const std::exception&) {
            throw ConfigError("bad ensemble spec: " + text);
        }
        if (s.tau_rms_s <= 0 || s.ensemble_size <= 0)
            throw ConfigError("ensemble needs positive tau and count");
        return s;
    }
    throw ConfigError("unknown channel mode: " + text +
                      " (expected awgn | snapshot:PATH | ensemble:TAU_NS[:COUNT])");
}

std::string ChannelSpec::str() const
{
    switch (mode) {
        case ChannelMode::awgn: return "awgn";
        case ChannelMode::snapshot: return "snapshot:" + snapshot_path;
        case ChannelMode::ensemble: {
            std::ostringstream os;
            os << "ensemble:" << tau_rms_s * 1e9 << ":" << ensemble_size;
            return os.str();
        }
    }
    return "?";
}

const char* to_string(CodeMode mode) { return mode == CodeMode::none ? "none" : "r12"; }

CodeMode code_mode_from_string(const std::string& name)
{
    if (name == "none") return CodeMode::none;
    if (name == "r12") return CodeMode::r12;
    throw ConfigError("unknown code mode: " + name + " (expected none | r12)");
}

void RunSpec::validate() const
{
    if (estimators.empty()) throw ConfigError("run spec: estimator list is empty");
    if (ebn0_db_grid.empty()) throw ConfigError("run spec: Eb/N0 grid is empty");
    if (stop.min_bit_errors < 100)
        throw ConfigError("run spec: min_bit_errors must be at least 100");
    if (stop.max_bits < 1) throw ConfigError("run spec: max_bits must be positive");
    for (EqualizerKind k : estimators)
        if (k == EqualizerKind::zf_family)
            throw ConfigError("run spec: zf_family is not a sweep estimator");
}

RunSpec RunSpec::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open run spec: " + path);
    RunSpec spec;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "config") spec.config_path = val;
            else if (key == "estimators") {
                std::stringstream ss(val);
                std::string item;
                while (std::getline(ss, item, ','))
                    spec.estimators.push_back(equalizer_kind_from_string(trim(item)));
            } else if (key == "channel") spec.channel = ChannelSpec::parse(val);
            else if (key == "ebn0_db") {
                std::stringstream ss(val);
                std::string item;
                while (std::getline(ss, item, ','))
                    spec.ebn0_db_grid.push_back(std::stod(trim(item)));
            } else if (key == "code") spec.code = code_mode_from_string(val);
            else if (key == "min_bit_errors") spec.stop.min_bit_errors = std::stoll(val);
            else if (key == "max_bits") spec.stop.max_bits = std::stoll(val);
            else if (key == "master_seed") spec.master_seed = std::stoull(val);
            else if (key == "out") spec.output_path = val;
            else throw ParseError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    spec.validate();
    return spec;
}

std::pair<double, double> wilson_interval_95(long long errors, long long bits)
{
    if (bits <= 0) return {0.0, 1.0};
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(bits);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double ebn0_to_sigma_n(double ebn0_db, const SystemConfig& config, const GeneratorSet& gen,
                       double code_rate)
{
    const EnergyReport e = energy_report(gen, config);
    const double eb = e.total / (config.n_data * 2.0 * code_rate);
    return eb * std::pow(10.0, -ebn0_db / 10.0);
}

std::vector<BerResult> run_ber(const RunSpec& spec, int workers)
{
    spec.validate();
    const SystemConfig cfg =
        spec.config_path.empty() ? SystemConfig::wlan64() : SystemConfig::load(spec.config_path);
    const GeneratorSet gen = build_generator_set(cfg);
    const double rate = spec.code == CodeMode::r12 ? ConvCode::rate : 1.0;
    const FrameFormat fmt = frame_format(cfg, spec.code);

    if (workers <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        workers = hc == 0 ? 1 : static_cast<int>(std::min(hc, 16u));
    }

    // Channel realizations are fixed up front so that results cannot depend
    // on scheduling. Ensemble slots are cycled frame by frame.
    std::vector<ChannelRealization> base_channels;
    switch (spec.channel.mode) {
        case ChannelMode::awgn:
            base_channels.push_back(ChannelRealization::impulse(cfg));
            break;
        case ChannelMode::snapshot:
            base_channels.push_back(load_snapshot(spec.channel.snapshot_path, cfg));
            break;
        case ChannelMode::ensemble:
            for (int i = 0; i < spec.channel.ensemble_size; ++i)
                base_channels.push_back(draw_multipath(
                    spec.channel.tau_rms_s, cfg,
                    derive_seed({spec.master_seed, stream::channel,
                                 static_cast<std::uint64_t>(i), 0})));
            break;
    }

    std::vector<BerResult> results;
    for (EqualizerKind kind : spec.estimators) {
        for (double ebn0 : spec.ebn0_db_grid) {
            const NoiseModel noise =
                NoiseModel::from_time_variance(ebn0_to_sigma_n(ebn0, cfg, gen, rate), cfg);

            // Determine the equalizer per channel; a null that breaks this
            // estimator gets the slot resampled (ensemble mode only).
            std::vector<ChannelRealization> channels = base_channels;
            std::vector<Equalizer> eqs(channels.size());
            for (size_t c = 0; c < channels.size(); ++c) {
                std::uint64_t attempt = 0;
                for (;;) {
                    try {
                        eqs[c] = build_kind(kind, channels[c], gen, cfg, noise);
                        break;
                    } catch (const ZeroChannelGain&) {
                        if (spec.channel.mode != ChannelMode::ensemble) throw;
                        if (++attempt > kResampleLimit)
                            throw ChannelResampleLimitExceeded(
                                "ensemble slot " + std::to_string(c) + " kept hitting nulls");
                        channels[c] = draw_multipath(
                            spec.channel.tau_rms_s, cfg,
                            derive_seed({spec.master_seed, stream::channel,
                                         static_cast<std::uint64_t>(c), attempt}));
                    }
                }
            }

            const FrameContext ctx{&cfg, &gen, &noise, &fmt, spec.master_seed};
            const long long frames_cap =
                std::max<long long>(1, spec.stop.max_bits / fmt.info_bits);

            std::atomic<long long> total_errors{0};
            long long frames_done = 0;
            bool reached = false;
            while (true) {
                const long long batch =
                    std::min<long long>(kBatchFrames, frames_cap - frames_done);
                std::atomic<long long> next{frames_done};
                const long long batch_end = frames_done + batch;
                std::exception_ptr failure;
                std::mutex failure_mutex;
                auto work = [&]() {
                    try {
                        long long local = 0;
                        for (;;) {
                            const long long f = next.fetch_add(1);
                            if (f >= batch_end) break;
                            const auto& ch = channels[static_cast<size_t>(
                                f % static_cast<long long>(channels.size()))];
                            const auto& eq = eqs[static_cast<size_t>(
                                f % static_cast<long long>(channels.size()))];
                            local += spec.code == CodeMode::none
                                         ? run_frame_uncoded(ctx, ch, eq,
                                                             static_cast<std::uint64_t>(f))
                                         : run_frame_coded(ctx, ch, eq,
                                                           static_cast<std::uint64_t>(f));
                        }
                        total_errors.fetch_add(local);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                };
                if (workers == 1 || batch < 4) {
                    work();
                } else {
                    std::vector<std::thread> pool;
                    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
                    for (auto& t : pool) t.join();
                }
                if (failure) std::rethrow_exception(failure);
                frames_done = batch_end;
                if (total_errors.load() >= spec.stop.min_bit_errors) {
                    reached = true;
                    break;
                }
                if (frames_done >= frames_cap) break;
            }

            BerResult r;
            r.kind = kind;
            r.ebn0_db = ebn0;
            r.bits_sent = frames_done * fmt.info_bits;
            r.bit_errors = total_errors.load();
            r.ber = r.bits_sent ? static_cast<double>(r.bit_errors) / r.bits_sent : 0.0;
            std::tie(r.ci_low, r.ci_high) = wilson_interval_95(r.bit_errors, r.bits_sent);
            r.reached_min_errors = reached;
            results.push_back(r);
        }
    }
    return results;
}

SubcarrierDiagnostics subcarrier_diagnostics(EqualizerKind kind_a, EqualizerKind kind_b,
                                             const SystemConfig& config,
                                             const ChannelRealization& channel,
                                             double ebn0_db, long long bits,
                                             std::uint64_t seed)
{
    const GeneratorSet gen = build_generator_set(config);
    const NoiseModel noise =
        NoiseModel::from_time_variance(ebn0_to_sigma_n(ebn0_db, config, gen, 1.0), config);
    const Equalizer eq_a = build_kind(kind_a, channel, gen, config, noise);
    const Equalizer eq_b = build_kind(kind_b, channel, gen, config, noise);

    SubcarrierDiagnostics d;
    const int nd = config.n_data;
    d.variance_a.resize(nd);
    d.variance_b.resize(nd);
    for (int i = 0; i < nd; ++i) {
        d.variance_a[i] = eq_a.error_cov(i, i).real() / config.sigma_d_sq;
        d.variance_b[i] = eq_b.error_cov(i, i).real() / config.sigma_d_sq;
    }

    const long long frames = std::max<long long>(1, bits / (2 * nd));
    std::vector<long long> err_a(nd, 0), err_b(nd, 0);
    for (long long f = 0; f < frames; ++f) {
        const auto bits_tx = draw_bits(seed, static_cast<std::uint64_t>(f),
                                       static_cast<size_t>(2 * nd));
        const CVec dvec = qpsk_map(bits_tx, config.sigma_d_sq);
        const TxFrame tx = generate_frame(dvec, gen, config);
        const CVec y_time = apply_channel(tx.transmit, channel, noise,
                                          derive_seed({seed, static_cast<std::uint64_t>(f), 0}));
        const RxPrepared rx = prepare_receive(y_time, channel, gen, config);
        const auto bits_a = qpsk_demap(CVec(eq_a.gain * rx.sorted));
        const auto bits_b = qpsk_demap(CVec(eq_b.gain * rx.sorted));
        for (int i = 0; i < nd; ++i) {
            err_a[i] += (bits_a[2 * i] != bits_tx[2 * i]) + (bits_a[2 * i + 1] != bits_tx[2 * i + 1]);
            err_b[i] += (bits_b[2 * i] != bits_tx[2 * i]) + (bits_b[2 * i + 1] != bits_tx[2 * i + 1]);
        }
    }
    d.ber_a.resize(nd);
    d.ber_b.resize(nd);
    d.ber_diff.resize(nd);
    for (int i = 0; i < nd; ++i) {
        d.ber_a[i] = static_cast<double>(err_a[i]) / (2.0 * frames);
        d.ber_b[i] = static_cast<double>(err_b[i]) / (2.0 * frames);
        d.ber_diff[i] = d.ber_a[i] - d.ber_b[i];
    }
    return d;
}

namespace {

void format_result_line(std::ostringstream& out, const BerResult& r, const RunSpec& spec)
{
    out << to_string(r.kind) << ',' << to_string(spec.code) << ',' << spec.channel.str() << ','
        << r.ebn0_db << ',' << r.bits_sent << ',' << r.bit_errors << ',';
    out.setf(std::ios::scientific);
    out.precision(8);
    out << r.ber << ',' << r.ci_low << ',' << r.ci_high;
    out.unsetf(std::ios::scientific);
    out.precision(6);
    out << '\n';
}

} // namespace

std::string csv_string(const std::vector<BerResult>& results, const RunSpec& spec)
{
    std::ostringstream out;
    out << "estimator,code,channel,ebn0_db,bits,errors,ber,ci_low,ci_high\n";
    for (const auto& r : results) format_result_line(out, r, spec);
    return out.str();
}

void emit_csv(const std::vector<BerResult>& results, const RunSpec& spec,
              const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write CSV: " + path);
    out << csv_string(results, spec);
    if (!out) throw IoError("write failed: " + path);
}

std::string plotdata_string(const std::vector<BerResult>& results, const RunSpec& spec)
{
    std::ostringstream out;
    bool first = true;
    EqualizerKind current{};
    for (const auto& r : results) {
        if (first || r.kind != current) {
            if (!first) out << "\n\n";
            out << "# estimator=" << to_string(r.kind) << " code=" << to_string(spec.code)
                << " channel=" << spec.channel.str() << "\n";
            out << "# ebn0_db ber ci_low ci_high\n";
            current = r.kind;
            first = false;
        }
        out.setf(std::ios::scientific);
        out.precision(8);
        out << r.ebn0_db << ' ' << r.ber << ' ' << r.ci_low << ' ' << r.ci_high << "\n";
        out.unsetf(std::ios::scientific);
    }
    return out.str();
}

void emit_plotdata(const std::vector<BerResult>& results, const RunSpec& spec,
                   const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write plot data: " + path);
    out << plotdata_string(results, spec);
    if (!out) throw IoError("write failed: " + path);
}

} // namespace uwofdm
