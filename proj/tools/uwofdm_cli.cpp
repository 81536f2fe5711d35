// uwofdm_cli.cpp - command-line front end
//
// Subcommands: design, complexity, channel, simulate, diagnose.
// Exit codes: 0 success, 2 configuration/input error, 3 numerical failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "uwofdm/channel.hpp"
#include "uwofdm/complexity.hpp"
#include "uwofdm/config.hpp"
#include "uwofdm/errors.hpp"
#include "uwofdm/generator.hpp"
#include "uwofdm/harness.hpp"

namespace {

using namespace uwofdm;

SystemConfig load_or_default(const std::string& path)
{
    return path.empty() ? SystemConfig::wlan64() : SystemConfig::load(path);
}

std::vector<EqualizerKind> parse_estimators(const std::string& list)
{
    std::vector<EqualizerKind> kinds;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) kinds.push_back(equalizer_kind_from_string(item));
    return kinds;
}

std::vector<double> parse_grid(const std::string& list)
{
    std::vector<double> grid;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) grid.push_back(std::stod(item));
    return grid;
}

int cmd_design(const std::string& config_path, const std::string& optimize,
               std::uint64_t seed, const std::string& out_path)
{
    SystemConfig cfg = load_or_default(config_path);
    std::vector<double> trace;
    if (optimize == "exhaustive")
        cfg = optimize_redundant_placement(cfg, PlacementStrategy::exhaustive, seed, &trace);
    else if (optimize == "swap")
        cfg = optimize_redundant_placement(cfg, PlacementStrategy::pairwise_swap_descent, seed,
                                           &trace);
    else if (optimize != "none")
        throw ConfigError("--optimize expects none | exhaustive | swap");

    const GeneratorSet gen = build_generator_set(cfg);
    const EnergyReport e = energy_report(gen, cfg);

    std::cout << "redundant_indices =";
    for (int i : cfg.redundant_indices) std::cout << ' ' << i;
    std::cout << "\n";
    if (!trace.empty()) {
        std::cout << "objective trace  =";
        for (double v : trace) std::cout << ' ' << v;
        std::cout << "\n";
    }
    std::cout << "tr(T T^H)        = " << e.trace_tth << "\n"
              << "E_data           = " << e.data << "\n"
              << "E_redundant      = " << e.redundant << "\n"
              << "E_uw             = " << e.uw << "\n"
              << "E_total          = " << e.total << "\n";
    if (!out_path.empty()) {
        cfg.save(out_path);
        std::cout << "config written to " << out_path << "\n";
    }
    return 0;
}

int cmd_complexity(const std::string& config_path, const std::string& out_path)
{
    const SystemConfig cfg = load_or_default(config_path);
    const auto rows = table2_report(cfg);
    std::cout << render_cme_table(rows) << "\n" << render_cme_csv(rows);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write " + out_path);
        out << render_cme_csv(rows);
    }
    return 0;
}

int cmd_channel(const std::string& config_path, double tau_ns, std::uint64_t seed,
                const std::string& out_path, const std::string& show_path)
{
    const SystemConfig cfg = load_or_default(config_path);
    if (!show_path.empty()) {
        const ChannelRealization ch = load_snapshot(show_path, cfg);
        std::cout << "# carrier |H| dB\n";
        for (int i = 0; i < cfg.dft_len; ++i)
            std::cout << i << " " << 20.0 * std::log10(std::abs(ch.freq[i])) << "\n";
        return 0;
    }
    const ChannelRealization ch = draw_multipath(tau_ns * 1e-9, cfg, seed);
    if (out_path.empty()) throw ConfigError("channel --draw needs --out PATH");
    save_snapshot(ch, out_path);
    std::cout << "snapshot written to " << out_path << "\n";
    return 0;
}

int cmd_simulate(const std::string& spec_path, const std::string& config_path,
                 const std::string& estimators, const std::string& channel,
                 const std::string& ebn0, const std::string& code, long long min_errors,
                 long long max_bits, bool seed_given, std::uint64_t seed,
                 const std::string& out_path, int workers, bool plotdata)
{
    RunSpec spec;
    if (!spec_path.empty()) spec = RunSpec::load(spec_path);
    if (!config_path.empty()) spec.config_path = config_path;
    if (!estimators.empty()) spec.estimators = parse_estimators(estimators);
    if (!channel.empty()) spec.channel = ChannelSpec::parse(channel);
    if (!ebn0.empty()) spec.ebn0_db_grid = parse_grid(ebn0);
    if (!code.empty()) spec.code = code_mode_from_string(code);
    if (min_errors > 0) spec.stop.min_bit_errors = min_errors;
    if (max_bits > 0) spec.stop.max_bits = max_bits;
    if (seed_given) spec.master_seed = seed;
    if (!out_path.empty()) spec.output_path = out_path;
    spec.validate();

    const auto results = run_ber(spec, workers);
    if (!spec.output_path.empty()) {
        if (plotdata)
            emit_plotdata(results, spec, spec.output_path);
        else
            emit_csv(results, spec, spec.output_path);
        std::cout << "results written to " << spec.output_path << "\n";
    } else {
        std::cout << (plotdata ? plotdata_string(results, spec) : csv_string(results, spec));
    }
    return 0;
}

int cmd_diagnose(const std::string& config_path, const std::string& channel,
                 const std::string& estimators, double ebn0, long long bits,
                 std::uint64_t seed, const std::string& out_path)
{
    const SystemConfig cfg = load_or_default(config_path);
    const ChannelSpec cs = ChannelSpec::parse(channel);
    if (cs.mode != ChannelMode::snapshot)
        throw ConfigError("diagnose works on a fixed snapshot (--channel snapshot:PATH)");
    const ChannelRealization ch = load_snapshot(cs.snapshot_path, cfg);
    const auto kinds = parse_estimators(estimators);
    if (kinds.size() != 2) throw ConfigError("diagnose needs exactly two estimators");

    const SubcarrierDiagnostics d =
        subcarrier_diagnostics(kinds[0], kinds[1], cfg, ch, ebn0, bits, seed);

    std::ostringstream out;
    out << "carrier,variance_" << to_string(kinds[0]) << ",variance_" << to_string(kinds[1])
        << ",ber_" << to_string(kinds[0]) << ",ber_" << to_string(kinds[1]) << ",ber_diff\n";
    for (size_t i = 0; i < d.variance_a.size(); ++i)
        out << i << ',' << d.variance_a[i] << ',' << d.variance_b[i] << ',' << d.ber_a[i] << ','
            << d.ber_b[i] << ',' << d.ber_diff[i] << "\n";
    if (out_path.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(out_path);
        if (!f) throw IoError("cannot write " + out_path);
        f << out.str();
        std::cout << "diagnostics written to " << out_path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"UW-OFDM baseband link laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_path, optimize = "none", show_path, spec_path;
    std::string estimators, channel, ebn0_list, code;
    std::uint64_t seed = 1;
    double tau_ns = 100.0, ebn0 = 4.0;
    long long min_errors = 0, max_bits = 0, bits = 1'000'000;
    int workers = 0;
    bool plotdata = false;

    auto* design = app.add_subcommand("design", "build the code structure, report energy");
    design->add_option("--config", config_path, "system config file");
    design->add_option("--optimize", optimize, "none | exhaustive | swap");
    design->add_option("--seed", seed, "optimizer seed");
    design->add_option("--out", out_path, "write the (optimized) config here");

    auto* complexity = app.add_subcommand("complexity", "operation-count table");
    complexity->add_option("--config", config_path, "system config file");
    complexity->add_option("--out", out_path, "also write the CSV here");

    auto* chan = app.add_subcommand("channel", "draw or inspect channel snapshots");
    chan->add_option("--config", config_path, "system config file");
    chan->add_option("--tau-ns", tau_ns, "rms delay spread in ns");
    chan->add_option("--seed", seed, "draw seed");
    chan->add_option("--out", out_path, "snapshot file to write");
    chan->add_option("--show", show_path, "print |H| of an existing snapshot");

    auto* sim = app.add_subcommand("simulate", "Monte-Carlo BER sweep");
    sim->add_option("--spec", spec_path, "run spec file (flags override)");
    sim->add_option("--config", config_path, "system config file");
    sim->add_option("--estimators", estimators, "comma list, e.g. ci,tdw,blue_direct");
    sim->add_option("--channel", channel, "awgn | snapshot:PATH | ensemble:TAU_NS[:COUNT]");
    sim->add_option("--ebn0", ebn0_list, "comma list of Eb/N0 points in dB");
    sim->add_option("--code", code, "none | r12");
    sim->add_option("--min-errors", min_errors, "stop rule: bit errors per point");
    sim->add_option("--max-bits", max_bits, "stop rule: bit budget per point");
    sim->add_option("--seed", seed, "master seed");
    sim->add_option("--out", out_path, "CSV output path");
    sim->add_option("--workers", workers, "worker threads (0 = auto)");
    sim->add_flag("--plotdata", plotdata, "emit plot-data blocks instead of CSV");

    auto* diag = app.add_subcommand("diagnose", "per-subcarrier variance and BER");
    diag->add_option("--config", config_path, "system config file");
    diag->add_option("--channel", channel, "snapshot:PATH")->required();
    diag->add_option("--estimators", estimators, "exactly two, e.g. ci,tdw")->required();
    diag->add_option("--ebn0", ebn0, "Eb/N0 in dB");
    diag->add_option("--bits", bits, "bits for the empirical per-carrier BER");
    diag->add_option("--seed", seed, "seed");
    diag->add_option("--out", out_path, "CSV output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (design->parsed()) return cmd_design(config_path, optimize, seed, out_path);
        if (complexity->parsed()) return cmd_complexity(config_path, out_path);
        if (chan->parsed()) return cmd_channel(config_path, tau_ns, seed, out_path, show_path);
        if (sim->parsed())
            return cmd_simulate(spec_path, config_path, estimators, channel, ebn0_list, code,
                                min_errors, max_bits, sim->count("--seed") > 0, seed, out_path,
                                workers, plotdata);
        if (diag->parsed())
            return cmd_diagnose(config_path, channel, estimators, ebn0, bits, seed, out_path);
    } catch (const uwofdm::NumericFamilyError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const uwofdm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
