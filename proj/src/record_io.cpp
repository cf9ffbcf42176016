#include "omabench/record_io.hpp"

#include "omabench/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace omabench {

std::string format_double(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

double parse_double(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\r' || text.back() == '\t')) text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size()) {
        throw InvalidInput("not a number: '" + std::string(text) + "'");
    }
    return value;
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

}  // namespace

void write_record_csv(std::ostream& out, const MultiChannelRecord& record) {
    out << "time";
    for (const auto& label : record.labels()) out << ',' << label;
    out << '\n';
    const double dt = record.dt();
    std::string line;
    for (Eigen::Index i = 0; i < record.samples(); ++i) {
        line = format_double(static_cast<double>(i) * dt);
        for (Eigen::Index j = 0; j < record.channels(); ++j) {
            line += ',';
            line += format_double(record.data()(j, i));
        }
        line += '\n';
        out << line;
    }
}

void write_record_csv(const std::filesystem::path& path, const MultiChannelRecord& record) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open '" + path.string() + "' for writing");
    write_record_csv(out, record);
    if (!out) throw InvalidInput("failed writing '" + path.string() + "'");
}

MultiChannelRecord read_record_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidInput("empty record file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split(line);
    if (header.size() < 2 || header.front() != "time") {
        throw InvalidInput("record header must be 'time,<label>...'");
    }
    std::vector<std::string> labels(header.begin() + 1, header.end());
    const auto channels = static_cast<Eigen::Index>(labels.size());

    std::vector<double> times;
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = split(line);
        if (static_cast<Eigen::Index>(fields.size()) != channels + 1) {
            throw InvalidInput("row " + std::to_string(times.size() + 2) + " has the wrong field count");
        }
        times.push_back(parse_double(fields[0]));
        for (Eigen::Index j = 0; j < channels; ++j) values.push_back(parse_double(fields[j + 1]));
    }
    if (times.size() < 2) throw InvalidInput("record needs at least two samples");
    const double span = times.back() - times.front();
    if (!(span > 0.0)) throw InvalidInput("time column must increase");
    const double rate = static_cast<double>(times.size() - 1) / span;
    const double step = times[1] - times[0];
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (std::abs((times[i] - times[i - 1]) - step) > 1e-6 * std::abs(step)) {
            throw InvalidInput("time column is not uniformly sampled");
        }
    }

    const auto samples = static_cast<Eigen::Index>(times.size());
    RowMatrix data(channels, samples);
    for (Eigen::Index i = 0; i < samples; ++i) {
        for (Eigen::Index j = 0; j < channels; ++j) data(j, i) = values[i * channels + j];
    }
    // Snap the rate to the value implied by the first step when the two agree.
    const double rate_first = 1.0 / step;
    return MultiChannelRecord(std::abs(rate_first - rate) <= 1e-9 * rate ? rate_first : rate, std::move(data),
                              std::move(labels));
}

MultiChannelRecord read_record_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
    return read_record_csv(in);
}

}  // namespace omabench
