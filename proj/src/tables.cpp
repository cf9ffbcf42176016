#include "omabench/tables.hpp"

#include "omabench/error.hpp"
#include "omabench/noise_model.hpp"
#include "omabench/record_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace omabench {

using nlohmann::ordered_json;

namespace {

std::string cell(const std::optional<double>& value) {
    return value ? format_double(*value) : std::string(kDash);
}

std::string snr_cell(double noise_level) {
    return noise_level > 0.0 ? format_double(nl_to_snr_db(noise_level)) : std::string("inf");
}

ordered_json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd vector_from(const ordered_json& node) {
    const auto values = node.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

ordered_json method_json(const MethodResult& m) {
    ordered_json out;
    out["method"] = to_string(m.method);
    out["error"] = m.error ? ordered_json(*m.error) : ordered_json(nullptr);
    out["frequencies_hz"] = m.frequencies_hz;
    out["diagnostics"] = m.diagnostics;
    ordered_json pairs = ordered_json::array();
    for (std::size_t k = 0; k < m.pairing.pairs.size(); ++k) {
        const ModePair& p = m.pairing.pairs[k];
        ordered_json pj;
        pj["mode"] = p.reference_index + 1;
        pj["identified_index"] = p.identified_index ? ordered_json(*p.identified_index) : ordered_json(nullptr);
        pj["mac"] = p.mac;
        pj["frequency_hz"] = p.frequency_hz ? ordered_json(*p.frequency_hz) : ordered_json(nullptr);
        pj["error_percent"] = p.error_percent ? ordered_json(*p.error_percent) : ordered_json(nullptr);
        pj["shape"] = k < m.paired_shapes.size() && m.paired_shapes[k].size() > 0 ? vector_json(m.paired_shapes[k])
                                                                                  : ordered_json(nullptr);
        pairs.push_back(std::move(pj));
    }
    out["pairs"] = std::move(pairs);
    return out;
}

std::optional<double> optional_double(const ordered_json& node) {
    if (node.is_null()) return std::nullopt;
    return node.get<double>();
}

MethodResult method_from(const ordered_json& node) {
    MethodResult m;
    m.method = parse_method(node.at("method").get<std::string>());
    if (!node.at("error").is_null()) m.error = node.at("error").get<std::string>();
    m.frequencies_hz = node.at("frequencies_hz").get<std::vector<double>>();
    m.diagnostics = node.at("diagnostics").get<std::vector<std::string>>();
    for (const auto& pj : node.at("pairs")) {
        ModePair p;
        p.reference_index = pj.at("mode").get<int>() - 1;
        if (!pj.at("identified_index").is_null()) p.identified_index = pj.at("identified_index").get<int>();
        p.mac = pj.at("mac").get<double>();
        p.frequency_hz = optional_double(pj.at("frequency_hz"));
        p.error_percent = optional_double(pj.at("error_percent"));
        m.pairing.pairs.push_back(p);
        m.paired_shapes.push_back(pj.at("shape").is_null() ? Eigen::VectorXd() : vector_from(pj.at("shape")));
    }
    return m;
}

}  // namespace

std::string report_to_json(const BenchmarkReport& report) {
    ordered_json root;
    root["schema_version"] = kConfigSchemaVersion;
    root["config"] = ordered_json::parse(config_to_json(report.config));
    ordered_json refs = ordered_json::array();
    for (const auto& b : report.beams) {
        refs.push_back({{"beam", b.id()},
                        {"frequencies_hz", vector_json(b.reference.frequencies_hz)},
                        {"channel_nodes", b.system.channel_nodes}});
    }
    root["references"] = std::move(refs);
    root["failures"] = report.failures;
    ordered_json runs = ordered_json::array();
    for (const auto& r : report.runs) {
        ordered_json rj;
        rj["beam"] = to_string(r.beam);
        rj["noise_level"] = r.noise_level;
        rj["run"] = r.run;
        ordered_json snr = ordered_json::array();
        for (double v : r.snr_db) snr.push_back(std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr));
        rj["snr_db"] = std::move(snr);
        ordered_json methods = ordered_json::array();
        for (const auto& m : r.methods) methods.push_back(method_json(m));
        rj["methods"] = std::move(methods);
        runs.push_back(std::move(rj));
    }
    root["runs"] = std::move(runs);
    return root.dump(1) + "\n";
}

BenchmarkReport report_from_json(std::string_view text) {
    BenchmarkReport report;
    try {
        const ordered_json root = ordered_json::parse(text);
        if (root.at("schema_version").get<int>() != kConfigSchemaVersion) {
            throw InvalidInput("report schema_version is not supported");
        }
        report.config = parse_config(root.at("config").dump());
        for (auto support : report.config.beams) report.beams.push_back(build_beam_case(report.config, support));
        report.failures = root.at("failures").get<int>();
        for (const auto& rj : root.at("runs")) {
            RunResult r;
            r.beam = parse_support(rj.at("beam").get<std::string>());
            r.noise_level = rj.at("noise_level").get<double>();
            r.run = rj.at("run").get<int>();
            for (const auto& v : rj.at("snr_db")) {
                r.snr_db.push_back(v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>());
            }
            for (const auto& mj : rj.at("methods")) r.methods.push_back(method_from(mj));
            report.runs.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed report: ") + e.what());
    }
    return report;
}

BenchmarkReport load_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open report '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return report_from_json(buffer.str());
}

std::string frequency_table_csv(const BenchmarkReport& report, SupportCondition beam) {
    const BeamCase& b = report.beam(beam);
    const int n = report.config.reference_modes;
    std::ostringstream out;
    out << "noise_level,snr_db,worst_run,method";
    for (int k = 1; k <= n; ++k) out << ",mode_" << k;
    out << "\nreference," << kDash << ',' << kDash << ",FE";
    for (int k = 0; k < n; ++k) out << ',' << format_double(b.reference.frequencies_hz(k));
    out << '\n';
    for (double nl : report.config.noise_levels) {
        const RunResult* worst = report.worst_case(beam, nl);
        if (!worst) continue;
        for (Method method : report.config.methods) {
            out << format_double(nl) << ',' << snr_cell(nl) << ',' << worst->run << ',' << to_string(method);
            const MethodResult* m = worst->find(method);
            for (int k = 0; k < n; ++k) {
                std::optional<double> f;
                if (m && k < static_cast<int>(m->pairing.pairs.size())) {
                    f = m->pairing.pairs[static_cast<std::size_t>(k)].frequency_hz;
                }
                out << ',' << cell(f);
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string mac_table_csv(const BenchmarkReport& report, SupportCondition beam) {
    std::ostringstream out;
    out << "noise_level,snr_db,method,mode,min,mean,std,max,identified,runs,worst_run_mac\n";
    for (double nl : report.config.noise_levels) {
        const RunResult* worst = report.worst_case(beam, nl);
        for (Method method : report.config.methods) {
            const MethodResult* wm = worst ? worst->find(method) : nullptr;
            for (int k = 0; k < report.config.reference_modes; ++k) {
                const MacStatistics s = report.mac_statistics(beam, nl, method, k);
                out << format_double(nl) << ',' << snr_cell(nl) << ',' << to_string(method) << ',' << k + 1 << ','
                    << format_double(s.min) << ',' << format_double(s.mean) << ',' << format_double(s.std) << ','
                    << format_double(s.max) << ',' << s.identified << ',' << s.runs << ',';
                if (wm && k < static_cast<int>(wm->pairing.pairs.size())) {
                    out << format_double(wm->pairing.pairs[static_cast<std::size_t>(k)].mac);
                } else {
                    out << kDash;
                }
                out << '\n';
            }
        }
    }
    return out.str();
}

std::string error_table_csv(const BenchmarkReport& report) {
    std::ostringstream out;
    out << "beam,method,mode,reference_hz,mean_error_percent,levels_identified,levels\n";
    for (const auto& b : report.beams) {
        for (Method method : report.config.methods) {
            for (int k = 0; k < report.config.reference_modes; ++k) {
                double sum = 0.0;
                int hits = 0;
                int levels = 0;
                for (double nl : report.config.noise_levels) {
                    const RunResult* worst = report.worst_case(b.support, nl);
                    if (!worst) continue;
                    ++levels;
                    const MethodResult* m = worst->find(method);
                    if (!m || k >= static_cast<int>(m->pairing.pairs.size())) continue;
                    const auto& err = m->pairing.pairs[static_cast<std::size_t>(k)].error_percent;
                    if (err) {
                        sum += *err;
                        ++hits;
                    }
                }
                out << b.id() << ',' << to_string(method) << ',' << k + 1 << ','
                    << format_double(b.reference.frequencies_hz(k)) << ','
                    << (hits > 0 ? format_double(sum / hits) : std::string(kDash)) << ',' << hits << ',' << levels
                    << '\n';
            }
        }
    }
    return out.str();
}

std::string anpsd_csv(const Anpsd& spectrum, double band_lo_hz, double band_hi_hz) {
    std::ostringstream out;
    out << "frequency_hz,value\n";
    for (Eigen::Index k = 0; k < spectrum.frequencies.size(); ++k) {
        const double f = spectrum.frequencies(k);
        if (f < band_lo_hz || f > band_hi_hz) continue;
        out << format_double(f) << ',' << format_double(spectrum.values(k)) << '\n';
    }
    return out.str();
}

std::string modeshape_csv(const BenchmarkReport& report, SupportCondition beam, int mode, double noise_level) {
    const BeamCase& b = report.beam(beam);
    if (mode < 0 || mode >= report.config.reference_modes) throw InvalidParameter("mode index out of range");
    const RunResult* worst = report.worst_case(beam, noise_level);
    const Eigen::VectorXd reference = unit_normalize(b.reference.channel_shapes.col(mode));
    std::ostringstream out;
    out << "channel,node,reference";
    for (Method method : report.config.methods) out << ',' << to_string(method);
    out << '\n';
    for (Eigen::Index j = 0; j < reference.size(); ++j) {
        out << j + 1 << ',' << b.system.channel_nodes[static_cast<std::size_t>(j)] << ','
            << format_double(reference(j));
        for (Method method : report.config.methods) {
            const MethodResult* m = worst ? worst->find(method) : nullptr;
            const Eigen::VectorXd* shape = nullptr;
            if (m && mode < static_cast<int>(m->paired_shapes.size()) &&
                m->paired_shapes[static_cast<std::size_t>(mode)].size() == reference.size()) {
                shape = &m->paired_shapes[static_cast<std::size_t>(mode)];
            }
            out << ',' << (shape ? format_double((*shape)(j)) : std::string(kDash));
        }
        out << '\n';
    }
    return out.str();
}

std::string stabilization_csv(const StabilizationDiagram& diagram) {
    std::ostringstream out;
    out << "order,frequency_hz,damping,stable_f,stable_d,stable_mac\n";
    for (const auto& e : diagram.entries) {
        out << e.order << ',' << format_double(e.frequency_hz) << ',' << format_double(e.damping) << ','
            << int(e.stable_frequency) << ',' << int(e.stable_damping) << ',' << int(e.stable_mac) << '\n';
    }
    return out.str();
}

std::string singular_values_csv(const SingularValueCurves& curves) {
    std::ostringstream out;
    out << "frequency_hz,value\n";
    for (Eigen::Index k = 0; k < curves.frequencies.size(); ++k) {
        out << format_double(curves.frequencies(k)) << ',' << format_double(curves.first(k)) << '\n';
    }
    return out.str();
}

std::string identified_modes_csv(const MethodResult& result, const ModalSolution& reference,
                                 const IdentifiedModeSet& identified) {
    std::ostringstream out;
    out << "mode,reference_hz,frequency_hz,error_percent,mac,damping\n";
    for (const auto& p : result.pairing.pairs) {
        std::optional<double> damping;
        if (p.identified_index) damping = identified.modes[static_cast<std::size_t>(*p.identified_index)].damping;
        out << p.reference_index + 1 << ',' << format_double(reference.frequencies_hz(p.reference_index)) << ','
            << cell(p.frequency_hz) << ',' << cell(p.error_percent) << ',' << format_double(p.mac) << ','
            << cell(damping) << '\n';
    }
    return out.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw InvalidInput("write failed for '" + path.string() + "'");
}

void write_tables(const BenchmarkReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_text(dir / "campaign_resolved.json", config_to_json(report.config));
    write_text(dir / "table_err.csv", error_table_csv(report));
    const auto& peaks = report.config.frequency_domain.peaks;
    for (const auto& b : report.beams) {
        write_text(dir / ("table_freq_" + b.id() + ".csv"), frequency_table_csv(report, b.support));
        write_text(dir / ("table_mac_" + b.id() + ".csv"), mac_table_csv(report, b.support));
        for (double nl : report.config.noise_levels) {
            const RunResult* worst = report.worst_case(b.support, nl);
            if (!worst) continue;
            const std::string level = format_double(nl);
            const CorruptedRecord record =
                corrupt(b.clean, {nl, noise_seed(report.config.master_seed, b.support, nl, worst->run)});
            const Anpsd spectrum = anpsd(psd(record.noisy, report.config.frequency_domain.spectral));
            write_text(dir / ("anpsd_" + b.id() + "_" + level + ".csv"),
                       anpsd_csv(spectrum, peaks.band_lo_hz, peaks.band_hi_hz));
            for (int k = 0; k < report.config.reference_modes; ++k) {
                write_text(dir / ("modeshape_" + b.id() + "_" + std::to_string(k + 1) + "_" + level + ".csv"),
                           modeshape_csv(report, b.support, k, nl));
            }
        }
    }
}

void write_outputs(const BenchmarkReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_text(dir / "report.json", report_to_json(report));
    write_tables(report, dir);
}

}  // namespace omabench
