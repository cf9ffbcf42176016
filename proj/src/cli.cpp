#include "omabench/cli.hpp"

#include "omabench/bench_harness.hpp"
#include "omabench/campaign_config.hpp"
#include "omabench/error.hpp"
#include "omabench/noise_model.hpp"
#include "omabench/record_io.hpp"
#include "omabench/tables.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

namespace omabench {

namespace {

struct SimulateArgs {
    std::string beam;
    std::string out;
    std::string config;
    std::uint64_t seed = kDefaultSeed;
};

struct CorruptArgs {
    std::string in;
    std::string out;
    double nl = 0.0;
    std::uint64_t seed = kDefaultSeed;
};

struct IdentifyArgs {
    std::string in;
    std::string out;
    std::string method;
    std::string beam;
    std::string config;
    std::string diagram;
    std::string curves;
    long reference = -1;
    std::uint64_t seed = kDefaultSeed;
};

struct BenchArgs {
    std::string config;
    std::string out;
    int jobs = 0;
    std::optional<int> runs;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

struct ReportArgs {
    std::string in;
    std::string out;
};

CampaignConfig config_or_default(const std::string& path) {
    return path.empty() ? CampaignConfig{} : load_config(path);
}

int simulate(const SimulateArgs& a, std::ostream& out) {
    CampaignConfig cfg = config_or_default(a.config);
    cfg.master_seed = a.seed;
    const BeamCase b = build_beam_case(cfg, parse_support(a.beam));
    write_record_csv(std::filesystem::path(a.out), b.clean);
    out << "wrote " << b.clean.channels() << " channels x " << b.clean.samples() << " samples to " << a.out << '\n';
    return kExitSuccess;
}

int corrupt_record(const CorruptArgs& a, std::ostream& out) {
    const MultiChannelRecord record = read_record_csv(std::filesystem::path(a.in));
    const CorruptedRecord c = corrupt(record, {a.nl, a.seed});
    write_record_csv(std::filesystem::path(a.out), c.noisy);
    out << "nominal SNR " << format_double(c.report.nominal_snr_db) << " dB, realized mean "
        << format_double(c.report.mean_snr_db()) << " dB\n";
    return kExitSuccess;
}

int identify(const IdentifyArgs& a, std::ostream& out) {
    const CampaignConfig cfg = config_or_default(a.config);
    const MultiChannelRecord record = read_record_csv(std::filesystem::path(a.in));
    const GlobalSystem system = assemble_model(cfg.beam_model(parse_support(a.beam)));
    if (system.channels() != record.channels()) {
        throw InvalidInput("record has " + std::to_string(record.channels()) + " channels but beam " + a.beam +
                           " has " + std::to_string(system.channels()));
    }
    const ModalSolution reference = modal_analysis(system, cfg.reference_modes, cfg.damping_ratio);
    const Method method = parse_method(a.method);

    IdentifiedModeSet identified;
    switch (method) {
        case Method::PP: identified = pp_identify(record, a.reference, cfg.frequency_domain); break;
        case Method::FDD: {
            SingularValueCurves curves;
            identified = fdd_identify(record, cfg.frequency_domain, &curves);
            if (!a.curves.empty()) write_text(a.curves, singular_values_csv(curves));
            break;
        }
        case Method::SSI: {
            StabilizationDiagram diagram;
            identified = ssi_identify(record, cfg.hankel, cfg.stabilization, &diagram);
            if (!a.diagram.empty()) write_text(a.diagram, stabilization_csv(diagram));
            break;
        }
    }
    MethodResult result;
    result.method = method;
    result.pairing = pair_to_reference(identified, reference, cfg.reference_modes, cfg.pairing);
    write_text(a.out, identified_modes_csv(result, reference, identified));
    out << to_string(method) << ": " << identified.modes.size() << " modes found, "
        << result.pairing.identified_count() << " of " << cfg.reference_modes << " paired\n";
    return kExitSuccess;
}

int bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
    CampaignConfig cfg = load_config(a.config);
    if (!a.out.empty()) cfg.output_dir = a.out;
    if (a.runs) cfg.runs = *a.runs;
    if (a.seed) cfg.master_seed = *a.seed;
    cfg.validate();
    const int jobs = resolve_jobs(a.jobs > 0 ? a.jobs : cfg.jobs);
    const BenchHarness harness(cfg);
    std::size_t last_percent = 101;
    const auto progress = [&](std::size_t done, std::size_t total) {
        if (a.quiet) return;
        const std::size_t percent = 100 * done / total;
        if (percent / 10 != last_percent / 10 || done == total) {
            err << "bench: " << done << "/" << total << " runs\n";
            last_percent = percent;
        }
    };
    const BenchmarkReport report = harness.run_campaign(jobs, progress);
    write_outputs(report, cfg.output_dir);
    out << "wrote " << report.runs.size() << " runs to " << cfg.output_dir;
    if (report.failures > 0) out << " (" << report.failures << " identifier failures)";
    out << '\n';
    return kExitSuccess;
}

int report(const ReportArgs& a, std::ostream& out) {
    const BenchmarkReport r = load_report(a.in);
    const std::filesystem::path dir = a.out.empty() ? std::filesystem::path(a.in).parent_path() : std::filesystem::path(a.out);
    write_tables(r, dir.empty() ? std::filesystem::path(".") : dir);
    out << "tables for " << r.runs.size() << " runs written to " << (dir.empty() ? "." : dir.string()) << '\n';
    return kExitSuccess;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Benchmark of output-only modal identification on simulated beams", "oma_bench"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Write a noise-free acceleration record");
    sim_cmd->add_option("--beam", sim.beam, "Support condition: CF, SS, CS or CC")->required();
    sim_cmd->add_option("--out", sim.out, "Output CSV")->required();
    sim_cmd->add_option("--seed", sim.seed, "Master seed for the excitation")->capture_default_str();
    sim_cmd->add_option("--config", sim.config, "Campaign config supplying beam and excitation parameters");

    CorruptArgs cor;
    auto* cor_cmd = app.add_subcommand("corrupt", "Add white measurement noise to a record");
    cor_cmd->add_option("--in", cor.in, "Input CSV")->required();
    cor_cmd->add_option("--out", cor.out, "Output CSV")->required();
    cor_cmd->add_option("--nl", cor.nl, "Noise level (noise RMS / signal RMS)")->required()->check(CLI::NonNegativeNumber);
    cor_cmd->add_option("--seed", cor.seed, "Noise seed")->capture_default_str();

    IdentifyArgs idf;
    auto* idf_cmd = app.add_subcommand("identify", "Identify modes and pair them with the FE reference");
    idf_cmd->add_option("--in", idf.in, "Input CSV")->required();
    idf_cmd->add_option("--out", idf.out, "Output CSV of paired modes")->required();
    idf_cmd->add_option("--method", idf.method, "pp, fdd or ssi")->required();
    idf_cmd->add_option("--beam", idf.beam, "Support condition of the reference model")->required();
    idf_cmd->add_option("--config", idf.config, "Campaign config supplying identifier options");
    idf_cmd->add_option("--reference", idf.reference, "PP reference channel (0-based, default loudest)");
    idf_cmd->add_option("--diagram", idf.diagram, "SSI: stabilization diagram CSV");
    idf_cmd->add_option("--curves", idf.curves, "FDD: singular value curves CSV");
    idf_cmd->add_option("--seed", idf.seed, "Accepted for uniformity; identification is deterministic");

    BenchArgs ben;
    auto* ben_cmd = app.add_subcommand("bench", "Run the Monte Carlo campaign");
    ben_cmd->add_option("--config", ben.config, "Campaign JSON")->required();
    ben_cmd->add_option("--out", ben.out, "Output directory (overrides the config)");
    ben_cmd->add_option("--jobs", ben.jobs, "Parallel runs (default: OMA_BENCH_JOBS, then all cores)");
    ben_cmd->add_option("--runs", ben.runs, "Runs per noise level (overrides the config)");
    ben_cmd->add_option("--seed", ben.seed, "Master seed (overrides the config)");
    ben_cmd->add_flag("--quiet", ben.quiet, "No progress output");

    ReportArgs rep;
    auto* rep_cmd = app.add_subcommand("report", "Re-emit tables from a stored report.json");
    rep_cmd->add_option("--in", rep.in, "report.json")->required();
    rep_cmd->add_option("--out", rep.out, "Output directory (default: beside the report)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitSuccess : kExitUsage;
    }

    try {
        if (sim_cmd->parsed()) return simulate(sim, out);
        if (cor_cmd->parsed()) return corrupt_record(cor, out);
        if (idf_cmd->parsed()) return identify(idf, out);
        if (ben_cmd->parsed()) return bench(ben, out, err);
        if (rep_cmd->parsed()) return report(rep, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    err << app.help();
    return kExitUsage;
}

int run_cli(int argc, const char* const* argv) { return run_cli(argc, argv, std::cout, std::cerr); }

}  // namespace omabench
