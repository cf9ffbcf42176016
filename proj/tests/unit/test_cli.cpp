#include "omabench/beam_fem.hpp"
#include "omabench/cli.hpp"
#include "omabench/record_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

using namespace omabench;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::initializer_list<std::string> args) {
    std::vector<std::string> storage{"oma_bench"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : storage) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::istringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ',')) row.push_back(field);
        rows.push_back(std::move(row));
    }
    return rows;
}

class CliTest : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        dir_ = fs::temp_directory_path() / "omabench_cli_test";
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        ASSERT_EQ(cli({"simulate", "--beam", "CF", "--out", path("cf.csv")}).code, kExitSuccess);
    }
    static void TearDownTestSuite() { fs::remove_all(dir_); }
    static std::string path(const std::string& name) { return (dir_ / name).string(); }
    static void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }
    static fs::path dir_;
};

fs::path CliTest::dir_;

}  // namespace

TEST_F(CliTest, SimulateWritesNoiseFreeRecord) {
    const MultiChannelRecord rec = read_record_csv(fs::path(path("cf.csv")));
    EXPECT_EQ(rec.channels(), 10);
    EXPECT_EQ(rec.samples(), 50001);
    EXPECT_DOUBLE_EQ(rec.sample_rate(), 1.0e4);
    EXPECT_EQ(rec.labels().front(), "2");
    EXPECT_EQ(rec.labels().back(), "11");
}

TEST_F(CliTest, SeedDeterminismAndDefault) {
    ASSERT_EQ(cli({"simulate", "--beam", "CF", "--out", path("seeded.csv"), "--seed", "20190417"}).code, kExitSuccess);
    EXPECT_EQ(slurp(path("seeded.csv")), slurp(path("cf.csv")));
    ASSERT_EQ(cli({"simulate", "--beam", "CF", "--out", path("other.csv"), "--seed", "7"}).code, kExitSuccess);
    EXPECT_NE(slurp(path("other.csv")), slurp(path("cf.csv")));
    ASSERT_EQ(cli({"corrupt", "--in", path("cf.csv"), "--out", path("n1.csv"), "--nl", "0.5", "--seed", "3"}).code, 0);
    ASSERT_EQ(cli({"corrupt", "--in", path("cf.csv"), "--out", path("n2.csv"), "--nl", "0.5", "--seed", "3"}).code, 0);
    EXPECT_EQ(slurp(path("n1.csv")), slurp(path("n2.csv")));
}

TEST_F(CliTest, CorruptAtZeroNoiseIsIdentity) {
    const CliRun r = cli({"corrupt", "--in", path("cf.csv"), "--out", path("same.csv"), "--nl", "0"});
    EXPECT_EQ(r.code, kExitSuccess);
    EXPECT_EQ(slurp(path("same.csv")), slurp(path("cf.csv")));
}

TEST_F(CliTest, CorruptReportsNominalSnr) {
    const CliRun r = cli({"corrupt", "--in", path("cf.csv"), "--out", path("noisy.csv"), "--nl", "0.2"});
    EXPECT_EQ(r.code, kExitSuccess);
    EXPECT_NE(r.out.find("13.97"), std::string::npos) << r.out;
}

TEST_F(CliTest, IdentifyPeakPickingNoiseFree) {
    const CliRun r = cli({"identify", "--in", path("cf.csv"), "--method", "pp", "--beam", "CF", "--out", path("pp.csv")});
    ASSERT_EQ(r.code, kExitSuccess) << r.err;
    const auto rows = parse_csv(slurp(path("pp.csv")));
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"mode", "reference_hz", "frequency_hz", "error_percent", "mac", "damping"}));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        ASSERT_NE(rows[i][2], "-") << "mode " << i;
        EXPECT_NEAR(parse_double(rows[i][2]), parse_double(rows[i][1]), 0.4) << "mode " << i;
    }
}

TEST_F(CliTest, IdentifyWritesDiagramAndCurves) {
    ASSERT_EQ(cli({"identify", "--in", path("cf.csv"), "--method", "fdd", "--beam", "CF", "--out", path("fdd.csv"),
                   "--curves", path("sv.csv")})
                  .code,
              kExitSuccess);
    EXPECT_EQ(parse_csv(slurp(path("sv.csv")))[0], (std::vector<std::string>{"frequency_hz", "value"}));
    ASSERT_EQ(cli({"identify", "--in", path("cf.csv"), "--method", "SSI", "--beam", "CF", "--out", path("ssi.csv"),
                   "--diagram", path("diagram.csv")})
                  .code,
              kExitSuccess);
    const auto diagram = parse_csv(slurp(path("diagram.csv")));
    EXPECT_EQ(diagram[0].size(), 6u);
    EXPECT_GT(diagram.size(), 10u);
    for (std::size_t i = 1; i < parse_csv(slurp(path("ssi.csv"))).size(); ++i) {
        EXPECT_NE(parse_csv(slurp(path("ssi.csv")))[i][5], "-");
    }
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(cli({}).code, kExitUsage);
    EXPECT_EQ(cli({"simulate", "--beam", "CF", "--out", path("x.csv"), "--bogus"}).code, kExitUsage);
    const CliRun unknown = cli({"frobnicate"});
    EXPECT_EQ(unknown.code, kExitUsage);
    EXPECT_FALSE(unknown.err.empty());
    EXPECT_EQ(cli({"bench"}).code, kExitUsage);
    EXPECT_EQ(cli({"corrupt", "--in", path("cf.csv"), "--out", path("x.csv"), "--nl", "-1"}).code, kExitUsage);
    EXPECT_EQ(cli({"simulate", "--beam", "XY", "--out", path("x.csv")}).code, kExitUsage);
    EXPECT_EQ(cli({"corrupt", "--in", path("missing.csv"), "--out", path("x.csv"), "--nl", "1"}).code, kExitUsage);
    EXPECT_EQ(cli({"identify", "--in", path("cf.csv"), "--method", "pp", "--beam", "SS", "--out", path("x.csv")}).code,
              kExitUsage);
    EXPECT_EQ(cli({"identify", "--in", path("cf.csv"), "--method", "efdd", "--beam", "CF", "--out", path("x.csv")}).code,
              kExitUsage);
    EXPECT_EQ(cli({"--help"}).code, kExitSuccess);
}

TEST_F(CliTest, BenchDefaultConfigWritesEveryOutput) {
    write("campaign.json", R"({"schema_version":1,"runs":1})");
    const CliRun r = cli({"bench", "--config", path("campaign.json"), "--out", path("bench"), "--quiet"});
    ASSERT_EQ(r.code, kExitSuccess) << r.err;
    EXPECT_TRUE(r.err.empty());
    const fs::path out = path("bench");
    std::vector<std::string> names{"report.json", "campaign_resolved.json", "table_err.csv"};
    for (const char* beam : {"CF", "SS", "CS", "CC"}) {
        names.push_back(std::string("table_freq_") + beam + ".csv");
        names.push_back(std::string("table_mac_") + beam + ".csv");
        for (const char* nl : {"0.05", "0.1", "0.2", "0.5", "0.75", "1", "2"}) {
            names.push_back(std::string("anpsd_") + beam + "_" + nl + ".csv");
            for (int k = 1; k <= 5; ++k) {
                names.push_back(std::string("modeshape_") + beam + "_" + std::to_string(k) + "_" + nl + ".csv");
            }
        }
    }
    for (const auto& name : names) {
        ASSERT_TRUE(fs::exists(out / name)) << name;
        EXPECT_GT(fs::file_size(out / name), 0u) << name;
    }
}

TEST_F(CliTest, ResolvedConfigReproducesOutputs) {
    write("small.json", R"({"beams":["SS"],"noise_levels":[0.5],"runs":2,"methods":["PP","FDD"]})");
    ASSERT_EQ(cli({"bench", "--config", path("small.json"), "--out", path("first"), "--jobs", "2"}).code, kExitSuccess);
    ASSERT_EQ(cli({"bench", "--config", path("first/campaign_resolved.json"), "--out", path("second"), "--jobs", "1",
                   "--quiet"})
                  .code,
              kExitSuccess);
    for (const auto& entry : fs::directory_iterator(path("first"))) {
        const std::string name = entry.path().filename().string();
        if (name == "campaign_resolved.json" || name == "report.json") continue;  // embed the output directory
        EXPECT_EQ(slurp(entry.path()), slurp(fs::path(path("second")) / name)) << name;
    }
}

TEST_F(CliTest, ReportReEmitsTables) {
    write("tiny.json", R"({"beams":["CC"],"noise_levels":[0.2],"runs":1,"methods":["FDD"]})");
    ASSERT_EQ(cli({"bench", "--config", path("tiny.json"), "--out", path("tiny"), "--quiet"}).code, kExitSuccess);
    ASSERT_EQ(cli({"report", "--in", path("tiny/report.json"), "--out", path("again")}).code, kExitSuccess);
    for (const char* name : {"table_freq_CC.csv", "table_mac_CC.csv", "table_err.csv", "anpsd_CC_0.2.csv"}) {
        EXPECT_EQ(slurp(fs::path(path("tiny")) / name), slurp(fs::path(path("again")) / name)) << name;
    }
    EXPECT_EQ(cli({"report", "--in", path("nothing.json")}).code, kExitUsage);
}
