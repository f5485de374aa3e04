#include "commands.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace situp;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

void write_spec(const fs::path& p, const std::string& name, int frames, const std::string& extra)
{
    std::ofstream(p) << "name = " << name << "\nwidth = 200\nheight = 160\nframes = " << frames
                     << "\nseed = 3\ntarget_w = 30\ntarget_h = 30\n" << extra;
}

class CliTest : public ::testing::Test {
protected:
    static void SetUpTestSuite()
    {
        dir_ = std::make_unique<situp::test::TempDir>("cli");
        write_spec(dir_->path() / "a.spec", "alpha", 12, "scale_rate = 1.01\nattributes = SV\n");
        write_spec(dir_->path() / "b.spec", "beta", 10, "velocity_x = 1\nattributes = FM\n");
        ASSERT_EQ(run_cli({"synth", "--spec", (dir_->path() / "a.spec").string(), "--out", (root() / "alpha").string()}).code, 0);
        ASSERT_EQ(run_cli({"synth", "--spec", (dir_->path() / "b.spec").string(), "--out", (root() / "beta").string()}).code, 0);
    }
    static void TearDownTestSuite() { dir_.reset(); }

    static fs::path root() { return dir_->path() / "root"; }
    static fs::path tmp() { return dir_->path(); }

    static std::unique_ptr<situp::test::TempDir> dir_;
};

std::unique_ptr<situp::test::TempDir> CliTest::dir_;

}  // namespace

TEST_F(CliTest, HelpDocumentsEverySubcommand)
{
    const auto r = run_cli({"--help"});
    EXPECT_EQ(r.code, 0);
    for (const char* sub : {"track", "eval", "synth", "ablate"}) {
        EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
    }
    const auto e = run_cli({"eval", "--help"});
    EXPECT_EQ(e.code, 0);
    for (const char* flag : {"--root", "--out", "--attr", "--parallel", "--pool", "--criterion", "--config"}) {
        EXPECT_NE(e.out.find(flag), std::string::npos) << flag;
    }
}

TEST_F(CliTest, UsageErrors)
{
    EXPECT_EQ(run_cli({}).code, 1);
    EXPECT_EQ(run_cli({"dance"}).code, 1);
    EXPECT_EQ(run_cli({"track", "--seq", (root() / "alpha").string(), "--out", (tmp() / "x.txt").string(), "--bogus"}).code, 1);
    EXPECT_EQ(run_cli({"track", "--seq", (root() / "alpha").string(), "--out", (tmp() / "x.txt").string(), "--criterion", "psr"}).code, 1);
    EXPECT_EQ(run_cli({"track", "--seq", (root() / "alpha").string(), "--out", (tmp() / "x.txt").string(), "--pool", "0.9,1.1"}).code, 1);
    EXPECT_EQ(run_cli({"track", "--seq", (tmp() / "missing").string(), "--out", (tmp() / "x.txt").string()}).code, 1);
    fs::create_directories(tmp() / "empty_root");
    EXPECT_EQ(run_cli({"eval", "--root", (tmp() / "empty_root").string(), "--out", (tmp() / "er").string()}).code, 1);
    EXPECT_EQ(run_cli({"eval", "--root", root().string(), "--out", (tmp() / "er").string(), "--attr", "XX"}).code, 1);
}

TEST_F(CliTest, SynthOutputLoads)
{
    const auto seq = load_otb(root() / "alpha");
    EXPECT_EQ(seq.frame_count(), 12u);
    EXPECT_EQ(seq.attributes, (std::vector<std::string>{"SV"}));
}

TEST_F(CliTest, TrackWritesOneRowPerFrame)
{
    const fs::path out = tmp() / "track" / "alpha.txt";
    const auto r = run_cli({"track", "--seq", (root() / "alpha").string(), "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = read_file(out);
    EXPECT_EQ(line_count(rows), 12u);
    EXPECT_EQ(rows.substr(0, 2), "1,");
    const auto diag = read_file(out.string() + ".diag.csv");
    EXPECT_EQ(line_count(diag), 12u);
    EXPECT_NE(diag.find("apce_1.015"), std::string::npos);

    const fs::path base = tmp() / "track" / "alpha_base.txt";
    ASSERT_EQ(run_cli({"track", "--seq", (root() / "alpha").string(), "--out", base.string(), "--pool", "1.0"}).code, 0);
    std::istringstream in(read_file(base));
    std::string line;
    while (std::getline(in, line)) {
        EXPECT_NE(line.find(",30,30"), std::string::npos) << line;
    }
    const fs::path mr = tmp() / "track" / "alpha_mr.txt";
    EXPECT_EQ(run_cli({"track", "--seq", (root() / "alpha").string(), "--out", mr.string(), "--criterion", "maxresp"}).code, 0);
}

TEST_F(CliTest, EvalCoversAllSequencesAndIsParallelSafe)
{
    const fs::path serial = tmp() / "eval_serial";
    const fs::path parallel = tmp() / "eval_parallel";
    ASSERT_EQ(run_cli({"eval", "--root", root().string(), "--out", serial.string(), "--parallel", "1"}).code, 0);
    ASSERT_EQ(run_cli({"eval", "--root", root().string(), "--out", parallel.string(), "--parallel", "4"}).code, 0);
    const auto per_seq = read_file(serial / "per_sequence.csv");
    EXPECT_EQ(line_count(per_seq), 3u);
    EXPECT_NE(per_seq.find("alpha"), std::string::npos);
    EXPECT_NE(per_seq.find("beta"), std::string::npos);
    for (const char* f : {"table.csv", "per_sequence.csv", "curves/SITUP_ALL_success.csv", "curves/SITUP_ALL_precision.csv",
             "trajectories/SITUP/alpha.txt", "trajectories/SITUP/beta.txt"}) {
        EXPECT_EQ(read_file(serial / f), read_file(parallel / f)) << f;
        EXPECT_FALSE(read_file(serial / f).empty()) << f;
    }
}

TEST_F(CliTest, EvalAttributeFilter)
{
    const fs::path out = tmp() / "eval_sv";
    ASSERT_EQ(run_cli({"eval", "--root", root().string(), "--out", out.string(), "--attr", "SV"}).code, 0);
    const auto table = read_file(out / "table.csv");
    EXPECT_EQ(line_count(table), 2u);
    EXPECT_NE(table.find("SITUP,SV,"), std::string::npos);
}

TEST_F(CliTest, EvalSkipsBrokenSequences)
{
    const fs::path broken_root = tmp() / "broken_root";
    fs::create_directories(broken_root);
    fs::copy(root() / "beta", broken_root / "beta", fs::copy_options::recursive);
    fs::create_directories(broken_root / "bad");
    std::ofstream(broken_root / "bad" / "groundtruth_rect.txt") << "1,1,5,5\n";
    const auto r = run_cli({"eval", "--root", broken_root.string(), "--out", (tmp() / "eval_broken").string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("excluded 1"), std::string::npos);
}

TEST_F(CliTest, AblateWithSingletonPoolGivesIdenticalTraces)
{
    const fs::path out = tmp() / "ablate";
    ASSERT_EQ(run_cli({"ablate", "--seq", (root() / "alpha").string(), "--out", out.string(), "--pool", "1.0"}).code, 0);
    std::istringstream in(read_file(out / "ablation.csv"));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "frame,iou_apce,iou_maxresp,scale_ratio_apce,scale_ratio_maxresp");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) {
            cols.push_back(c);
        }
        ASSERT_EQ(cols.size(), 5u);
        EXPECT_EQ(cols[1], cols[2]);
        EXPECT_EQ(cols[3], cols[4]);
        ++rows;
    }
    EXPECT_EQ(rows, 12u);
}

TEST_F(CliTest, ConfigFile)
{
    std::ofstream(tmp() / "c.cfg") << "pool = 1.0\ncriterion = maxresp\n";
    const fs::path out = tmp() / "cfg_track.txt";
    ASSERT_EQ(run_cli({"track", "--seq", (root() / "alpha").string(), "--out", out.string(), "--config", (tmp() / "c.cfg").string()}).code, 0);
    std::ofstream(tmp() / "bad.cfg") << "colour = red\n";
    EXPECT_EQ(run_cli({"track", "--seq", (root() / "alpha").string(), "--out", out.string(), "--config", (tmp() / "bad.cfg").string()}).code, 1);
}
