#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "omabench/beam_fem.hpp"
#include "omabench/bench_harness.hpp"
#include "omabench/campaign_config.hpp"
#include "omabench/error.hpp"
#include "omabench/modal_metrics.hpp"
#include "omabench/noise_model.hpp"
#include "omabench/oma_freq.hpp"
#include "omabench/oma_ssi.hpp"
#include "omabench/tables.hpp"

namespace py = pybind11;
using namespace omabench;

namespace {

py::list modes_to_list(const IdentifiedModeSet& set) {
    py::list out;
    for (const auto& m : set.modes) {
        py::dict d;
        d["frequency_hz"] = m.frequency_hz;
        d["shape"] = m.shape;
        d["damping"] = m.damping ? py::cast(*m.damping) : py::none();
        d["quality"] = m.quality;
        out.append(d);
    }
    return out;
}

py::dict method_to_dict(const MethodResult& r) {
    py::dict d;
    d["method"] = std::string(to_string(r.method));
    d["error"] = r.error ? py::cast(*r.error) : py::none();
    d["frequencies_hz"] = r.frequencies_hz;
    py::list pairs;
    for (std::size_t k = 0; k < r.pairing.pairs.size(); ++k) {
        const ModePair& p = r.pairing.pairs[k];
        py::dict pd;
        pd["mode"] = p.reference_index + 1;
        pd["identified"] = p.identified_index.has_value();
        pd["mac"] = p.mac;
        pd["frequency_hz"] = p.frequency_hz ? py::cast(*p.frequency_hz) : py::none();
        pd["error_percent"] = p.error_percent ? py::cast(*p.error_percent) : py::none();
        pd["shape"] = k < r.paired_shapes.size() && r.paired_shapes[k].size() > 0 ? py::cast(r.paired_shapes[k])
                                                                                  : py::none();
        pairs.append(pd);
    }
    d["pairs"] = pairs;
    return d;
}

CampaignConfig config_from(const std::string& json_text) {
    return json_text.empty() ? CampaignConfig{} : parse_config(json_text);
}

}  // namespace

PYBIND11_MODULE(_omabench, m) {
    m.doc() = "Output-only modal identification benchmark on simulated Euler-Bernoulli beams";

    py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    m.attr("DEFAULT_SEED") = kDefaultSeed;

    py::enum_<SupportCondition>(m, "SupportCondition")
        .value("CF", SupportCondition::CF)
        .value("SS", SupportCondition::SS)
        .value("CS", SupportCondition::CS)
        .value("CC", SupportCondition::CC);

    py::enum_<Method>(m, "Method").value("PP", Method::PP).value("FDD", Method::FDD).value("SSI", Method::SSI);

    py::class_<MultiChannelRecord>(m, "Record", "Uniformly sampled multichannel record (channels x samples)")
        .def(py::init<double, RowMatrix, std::vector<std::string>>(), py::arg("sample_rate"), py::arg("data"),
             py::arg("labels") = std::vector<std::string>{})
        .def_property_readonly("sample_rate", &MultiChannelRecord::sample_rate)
        .def_property_readonly("data", [](const MultiChannelRecord& r) { return RowMatrix(r.data()); })
        .def_property_readonly("labels", &MultiChannelRecord::labels)
        .def_property_readonly("channels", &MultiChannelRecord::channels)
        .def_property_readonly("samples", &MultiChannelRecord::samples)
        .def("__repr__", [](const MultiChannelRecord& r) {
            return "<Record channels=" + std::to_string(r.channels()) + " samples=" + std::to_string(r.samples()) +
                   " rate=" + std::to_string(r.sample_rate()) + ">";
        });

    m.def(
        "analytical_frequencies",
        [](SupportCondition support, int n) { return analytical_frequencies(support, n, BeamModel{}); },
        py::arg("support"), py::arg("n") = 5, "Closed-form natural frequencies (Hz) of the default beam");

    m.def(
        "modal_analysis",
        [](SupportCondition support, int n_modes, int elements) {
            BeamModel model;
            model.support = support;
            model.n_elements = elements;
            const GlobalSystem system = assemble_model(model);
            const ModalSolution modal = modal_analysis(system, n_modes);
            py::dict d;
            d["frequencies_hz"] = modal.frequencies_hz;
            d["channel_shapes"] = modal.channel_shapes;
            d["channel_nodes"] = system.channel_nodes;
            return d;
        },
        py::arg("support"), py::arg("n_modes") = 5, py::arg("elements") = 10,
        "FE natural frequencies and channel mode shapes of the default beam");

    m.def(
        "simulate",
        [](SupportCondition support, std::uint64_t seed, const std::string& config_json) {
            CampaignConfig cfg = config_from(config_json);
            cfg.master_seed = seed;
            py::gil_scoped_release release;
            return build_beam_case(cfg, support).clean;
        },
        py::arg("support"), py::arg("seed") = kDefaultSeed, py::arg("config_json") = "",
        "Noise-free accelerations under band-limited forces at every channel node");

    m.def(
        "corrupt",
        [](const MultiChannelRecord& record, double noise_level, std::uint64_t seed) {
            const CorruptedRecord c = corrupt(record, {noise_level, seed});
            return py::make_tuple(c.noisy, c.report.snr_db);
        },
        py::arg("record"), py::arg("noise_level"), py::arg("seed") = kDefaultSeed,
        "Add per-channel white noise scaled to NL times the channel RMS; returns (record, snr_db)");

    m.def("nl_to_snr_db", &nl_to_snr_db, py::arg("noise_level"));

    m.def("mac", &mac, py::arg("phi"), py::arg("psi"), "Modal assurance criterion of two real vectors");

    m.def(
        "pp_identify",
        [](const MultiChannelRecord& record, long reference) {
            IdentifiedModeSet set;
            {
                py::gil_scoped_release release;
                set = pp_identify(record, reference);
            }
            return modes_to_list(set);
        },
        py::arg("record"), py::arg("reference") = -1, "Peak picking on the averaged normalized PSD");

    m.def(
        "fdd_identify",
        [](const MultiChannelRecord& record) {
            IdentifiedModeSet set;
            {
                py::gil_scoped_release release;
                set = fdd_identify(record);
            }
            return modes_to_list(set);
        },
        py::arg("record"), "Frequency domain decomposition");

    m.def(
        "ssi_identify",
        [](const MultiChannelRecord& record, int block_rows, std::vector<int> decimation) {
            HankelOptions options;
            options.block_rows = block_rows;
            if (!decimation.empty()) options.decimation = std::move(decimation);
            IdentifiedModeSet set;
            {
                py::gil_scoped_release release;
                set = ssi_identify(record, options, CampaignConfig::default_stabilization());
            }
            return modes_to_list(set);
        },
        py::arg("record"), py::arg("block_rows") = 10, py::arg("decimation") = std::vector<int>{},
        "Data-driven stochastic subspace identification with stabilization");

    m.def(
        "identify_and_pair",
        [](const MultiChannelRecord& record, Method method, SupportCondition support, const std::string& config_json) {
            const CampaignConfig cfg = config_from(config_json);
            const GlobalSystem system = assemble_model(cfg.beam_model(support));
            const ModalSolution reference = modal_analysis(system, cfg.reference_modes, cfg.damping_ratio);
            MethodResult result;
            {
                py::gil_scoped_release release;
                result = identify_and_pair(record, method, reference, cfg.reference_modes, cfg);
            }
            return method_to_dict(result);
        },
        py::arg("record"), py::arg("method"), py::arg("support"), py::arg("config_json") = "",
        "Identify with one method and pair against the FE reference modes");

    m.def("default_config_json", [] { return config_to_json(CampaignConfig{}); },
          "Fully resolved default campaign config");
    m.def("config_to_json", [](const std::string& text) { return config_to_json(parse_config(text)); },
          py::arg("json_text"), "Resolve a partial campaign config, filling defaults");

    m.def(
        "run_single",
        [](const std::string& config_json, SupportCondition support, double noise_level, int run) {
            const BenchHarness harness(config_from(config_json));
            RunResult r;
            {
                py::gil_scoped_release release;
                r = harness.run_single(support, noise_level, run);
            }
            py::dict d;
            d["beam"] = std::string(to_string(r.beam));
            d["noise_level"] = r.noise_level;
            d["run"] = r.run;
            d["snr_db"] = r.snr_db;
            py::list methods;
            for (const auto& mr : r.methods) methods.append(method_to_dict(mr));
            d["methods"] = methods;
            return d;
        },
        py::arg("config_json"), py::arg("support"), py::arg("noise_level"), py::arg("run"),
        "One simulate, corrupt, identify and score pass");

    m.def(
        "run_campaign",
        [](const std::string& config_json, int jobs, const std::string& output_dir) {
            const BenchHarness harness(config_from(config_json));
            py::gil_scoped_release release;
            const BenchmarkReport report = harness.run_campaign(jobs);
            if (!output_dir.empty()) write_outputs(report, output_dir);
            return report_to_json(report);
        },
        py::arg("config_json"), py::arg("jobs") = 0, py::arg("output_dir") = "",
        "Full Monte Carlo campaign; returns report.json text and optionally writes every table");
}
