#include "omabench/bench_harness.hpp"

#include "omabench/error.hpp"
#include "omabench/noise_model.hpp"
#include "omabench/oma_freq.hpp"
#include "omabench/oma_ssi.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <thread>

namespace omabench {

std::uint64_t force_seed(std::uint64_t master, SupportCondition beam, Eigen::Index channel) {
    return derive_seed(master, SeedPurpose::Force, to_string(beam), {static_cast<std::uint64_t>(channel)});
}

std::uint64_t noise_seed(std::uint64_t master, SupportCondition beam, double noise_level, int run) {
    return derive_seed(master, SeedPurpose::Noise, to_string(beam),
                       {std::bit_cast<std::uint64_t>(noise_level), static_cast<std::uint64_t>(run)});
}

BeamCase build_beam_case(const CampaignConfig& config, SupportCondition support) {
    BeamCase out;
    out.support = support;
    out.system = assemble_model(config.beam_model(support));
    out.all_modes = modal_analysis(out.system, 0, config.damping_ratio);
    if (out.all_modes.modes() < config.reference_modes) {
        throw InvalidParameter("beam " + out.id() + " has only " + std::to_string(out.all_modes.modes()) +
                               " modes, fewer than reference_modes");
    }
    out.reference = modal_analysis(out.system, config.reference_modes, config.damping_ratio);

    const auto& ex = config.excitation;
    const Eigen::Index channels = out.system.channels();
    const auto samples = static_cast<Eigen::Index>(std::llround(ex.duration_s / ex.time_step_s)) + 1;
    RowMatrix forces(channels, samples);
    for (Eigen::Index c = 0; c < channels; ++c) {
        forces.row(c) = band_limited_force(ex.duration_s, ex.sample_rate(), ex.band_lo_hz, ex.band_hi_hz, ex.rms_n,
                                           force_seed(config.master_seed, support, c))
                            .transpose();
    }
    out.clean = transient_response(out.system, out.all_modes,
                                   MultiChannelRecord(ex.sample_rate(), std::move(forces), out.system.channel_labels()),
                                   ex.time_step_s, ex.duration_s);
    return out;
}

const MethodResult* RunResult::find(Method method) const {
    for (const auto& m : methods) {
        if (m.method == method) return &m;
    }
    return nullptr;
}

double RunResult::min_mac(Method method) const {
    const MethodResult* m = find(method);
    if (!m || m->pairing.pairs.empty()) return 0.0;
    double lowest = 1.0;
    for (const auto& p : m->pairing.pairs) lowest = std::min(lowest, p.mac);
    return lowest;
}

const BeamCase& BenchmarkReport::beam(SupportCondition support) const {
    for (const auto& b : beams) {
        if (b.support == support) return b;
    }
    throw InvalidParameter("beam " + std::string(to_string(support)) + " is not part of the report");
}

std::vector<const RunResult*> BenchmarkReport::runs_for(SupportCondition beam, double noise_level) const {
    std::vector<const RunResult*> out;
    for (const auto& r : runs) {
        if (r.beam == beam && r.noise_level == noise_level) out.push_back(&r);
    }
    return out;
}

MacStatistics BenchmarkReport::mac_statistics(SupportCondition beam, double noise_level, Method method,
                                              int mode) const {
    MacStatistics s;
    std::vector<double> values;
    for (const RunResult* r : runs_for(beam, noise_level)) {
        const MethodResult* m = r->find(method);
        if (!m || mode < 0 || mode >= static_cast<int>(m->pairing.pairs.size())) continue;
        const ModePair& p = m->pairing.pairs[static_cast<std::size_t>(mode)];
        values.push_back(p.mac);
        if (p.identified_index) ++s.identified;
    }
    s.runs = static_cast<int>(values.size());
    if (values.empty()) return s;
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double sq = 0.0;
        for (double v : values) sq += (v - s.mean) * (v - s.mean);
        s.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
    }
    return s;
}

const RunResult* BenchmarkReport::worst_case(SupportCondition beam, double noise_level) const {
    const Method key = std::find(config.methods.begin(), config.methods.end(), Method::PP) != config.methods.end()
                           ? Method::PP
                           : config.methods.front();
    const RunResult* worst = nullptr;
    double worst_mac = std::numeric_limits<double>::infinity();
    for (const RunResult* r : runs_for(beam, noise_level)) {
        const double m = r->min_mac(key);
        if (m < worst_mac || (m == worst_mac && worst && r->run < worst->run)) {
            worst_mac = m;
            worst = r;
        }
    }
    return worst;
}

BenchHarness::BenchHarness(CampaignConfig config) : config_(std::move(config)) { config_.validate(); }

const BeamCase& BenchHarness::beam(SupportCondition support) const {
    std::lock_guard lock(mutex_);
    auto& slot = cache_[support];
    if (!slot) slot = std::make_shared<const BeamCase>(build_beam_case(config_, support));
    return *slot;
}

MultiChannelRecord BenchHarness::noisy_record(SupportCondition support, double noise_level, int run,
                                              std::vector<double>* snr_db) const {
    const BeamCase& b = beam(support);
    const CorruptedRecord corrupted =
        corrupt(b.clean, {noise_level, noise_seed(config_.master_seed, support, noise_level, run)});
    if (snr_db) *snr_db = corrupted.report.snr_db;
    return corrupted.noisy;
}

MethodResult identify_and_pair(const MultiChannelRecord& record, Method method, const ModalSolution& reference,
                               int n_reference, const CampaignConfig& config) {
    MethodResult out;
    out.method = method;
    IdentifiedModeSet identified;
    identified.method = method;
    try {
        switch (method) {
            case Method::PP: identified = pp_identify(record, -1, config.frequency_domain); break;
            case Method::FDD: identified = fdd_identify(record, config.frequency_domain); break;
            case Method::SSI: identified = ssi_identify(record, config.hankel, config.stabilization); break;
        }
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    out.diagnostics = identified.diagnostics;
    for (const auto& m : identified.modes) out.frequencies_hz.push_back(m.frequency_hz);
    out.pairing = pair_to_reference(identified, reference, n_reference, config.pairing);
    for (const auto& p : out.pairing.pairs) {
        if (!p.identified_index) {
            out.paired_shapes.emplace_back();
            continue;
        }
        Eigen::VectorXd shape = identified.modes[static_cast<std::size_t>(*p.identified_index)].shape;
        if (shape.dot(reference.channel_shapes.col(p.reference_index)) < 0.0) shape = -shape;
        out.paired_shapes.push_back(std::move(shape));
    }
    return out;
}

RunResult BenchHarness::run_single(SupportCondition support, double noise_level, int run) const {
    if (run < 0) throw InvalidParameter("run index must be >= 0");
    if (!(noise_level >= 0.0)) throw InvalidParameter("noise level must be >= 0");
    RunResult out;
    out.beam = support;
    out.noise_level = noise_level;
    out.run = run;
    const MultiChannelRecord record = noisy_record(support, noise_level, run, &out.snr_db);
    const BeamCase& b = beam(support);
    for (Method method : config_.methods) {
        out.methods.push_back(identify_and_pair(record, method, b.reference, config_.reference_modes, config_));
    }
    return out;
}

BenchmarkReport BenchHarness::run_campaign(int jobs,
                                           const std::function<void(std::size_t, std::size_t)>& progress) const {
    struct Task {
        SupportCondition beam;
        double noise_level;
        int run;
    };
    std::vector<Task> tasks;
    for (auto support : config_.beams) {
        for (double nl : config_.noise_levels) {
            for (int r = 0; r < config_.runs; ++r) tasks.push_back({support, nl, r});
        }
    }
    BenchmarkReport report;
    report.config = config_;
    for (auto support : config_.beams) report.beams.push_back(beam(support));

    std::vector<RunResult> results(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::mutex progress_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= tasks.size()) return;
            try {
                results[k] = run_single(tasks[k].beam, tasks[k].noise_level, tasks[k].run);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(tasks.size());
                return;
            }
            const std::size_t finished = done.fetch_add(1) + 1;
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(finished, tasks.size());
            }
        }
    };
    const int threads = std::max(1, std::min<int>(resolve_jobs(jobs), static_cast<int>(tasks.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    report.runs = std::move(results);
    for (const auto& r : report.runs) {
        for (const auto& m : r.methods) report.failures += m.error ? 1 : 0;
    }
    return report;
}

int resolve_jobs(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("OMA_BENCH_JOBS")) {
        int value = 0;
        const char* end = env + std::char_traits<char>::length(env);
        const auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec == std::errc() && ptr == end && value > 0) return value;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace omabench
