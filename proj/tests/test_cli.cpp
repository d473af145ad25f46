#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "arena/cli.hpp"
#include "arena/run.hpp"

using namespace arena;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
protected:
    fs::path dir;
    void SetUp() override {
        dir = fs::temp_directory_path() / ("arena_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }

    std::vector<std::string> small_train(const std::string& out) const {
        return {"train", "--variant", "ag_weights", "--n", "4", "--d_t", "3", "--s_r", "2", "--tournament_games", "2",
                "--budget", "100000", "--seed", "1", "--out", out};
    }
};

}  // namespace

TEST_F(CliTest, DraftSpacePrintsExactInteger) {
    const auto r = run({"draft-space", "--size", "160", "--turns", "30", "--choices", "3"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out.size(), 200u);  // 199 digits and a newline
    EXPECT_EQ(r.out.substr(0, 3), "133");
    EXPECT_EQ(run({"draft-space", "--size", "3", "--turns", "1", "--choices", "3"}).out, "6\n");
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"nope"}).code, kExitUsage);
    EXPECT_EQ(run({"train"}).code, kExitUsage);
    EXPECT_EQ(run({"train", "--out", path("r"), "--variant", "bogus"}).code, kExitUsage);
    EXPECT_EQ(run({"train", "--out", path("r"), "--player", "smart"}).code, kExitUsage);
    EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST_F(CliTest, KdDivisibilityError) {
    const auto r = run({"train", "--variant", "ag_weights_kd", "--K", "3", "--g", "100", "--out", path("r")});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("divide"), std::string::npos) << r.err;
}

TEST_F(CliTest, DataErrors) {
    EXPECT_EQ(run({"train", "--out", path("r"), "--cards", path("missing.txt")}).code, kExitData);
    {
        std::ofstream(path("bad.txt")) << "1;A;creature;1;1;0;------;0;0;0\n";
    }
    EXPECT_EQ(run({"cards", "--check", path("bad.txt")}).code, kExitData);
    EXPECT_EQ(run({"curve", "--run", path("nowhere")}).code, kExitData);
}

TEST_F(CliTest, CardsRoundTrip) {
    EXPECT_EQ(run({"cards", "--out", path("cards.txt")}).code, kExitOk);
    const auto r = run({"cards", "--check", path("cards.txt")});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("160 cards"), std::string::npos);
}

TEST_F(CliTest, TrainIsByteDeterministic) {
    const auto a = run(small_train(path("a")));
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_NE(a.out.find("best.json"), std::string::npos);
    ASSERT_EQ(run(small_train(path("b"))).code, kExitOk);
    std::size_t gens = 0;
    for (const auto& e : fs::directory_iterator(dir / "a")) {
        const auto name = e.path().filename();
        EXPECT_EQ(slurp(e.path()), slurp(dir / "b" / name)) << name;
        gens += name.string().rfind("gen_", 0) == 0;
    }
    EXPECT_EQ(gens, 3u);
    for (const char* f : {"config.json", "drafts.txt", "curve.csv", "best.json"}) EXPECT_TRUE(fs::exists(dir / "a" / f));
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
    {
        std::ofstream cfg(path("run.cfg"));
        cfg << "# training setup\nvariant = ag\nn = 4\nd_t = 2\ns_r = 2\ntournament_games = 2\nseed = 5\n";
    }
    const auto r = run({"train", "--config", path("run.cfg"), "--seed", "9", "--out", path("r")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto cfg = nlohmann::json::parse(slurp(dir / "r" / "config.json"));
    EXPECT_EQ(cfg["variant"], "ag");
    EXPECT_EQ(cfg["n"], 4);
    EXPECT_EQ(cfg["seed"], 9);
    EXPECT_EQ(run({"train", "--config", path("missing.cfg"), "--out", path("x")}).code, kExitData);
}

TEST_F(CliTest, RunDirectoryReloads) {
    ASSERT_EQ(run(small_train(path("r"))).code, kExitOk);
    const auto cards = generate_card_set(kDefaultCardSeed, kDefaultCardCount);
    const auto loaded = load_run_dir(dir / "r", cards);
    EXPECT_EQ(loaded.history.generations.size(), 3u);
    EXPECT_EQ(loaded.config.n, 4u);
    EXPECT_EQ(loaded.config.variant, Variant::AgWeights);
    EXPECT_EQ(loaded.drafts.size(), 3u);
    EXPECT_EQ(loaded.drafts, training_drafts(cards, loaded.config));
    EXPECT_EQ(loaded.best.size(), 160u);
}

TEST_F(CliTest, EvaluationCommands) {
    ASSERT_EQ(run(small_train(path("r"))).code, kExitOk);
    auto r = run({"curve", "--run", path("r"), "--drafts", "2", "--games", "2", "--out", path("c")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(slurp(dir / "c" / "curve.csv").substr(0, 12), "cost,winrate");

    r = run({"correlate", "--run", path("r"), "--drafts", "2", "--games", "2", "--out", path("c")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("pearson r"), std::string::npos);
    EXPECT_EQ(slurp(dir / "c" / "correlation.csv").substr(0, 25), "checkpoint,train_wr,eval_");

    r = run({"champions", "--run", path("r"), "--stride", "2", "--games", "2", "--out", path("c")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(slurp(dir / "c" / "champions.csv").substr(0, 15), "champion_id,gen");

    r = run({"eval", "--policies", path("r"), (dir / "r" / "best.json").string(), "--drafts", "3", "--games", "2",
             "--reps", "2", "--out", path("e")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(slurp(dir / "e" / "matchup.csv").substr(0, 16), "row,col,mean,std");
    EXPECT_EQ(run({"eval", "--policies", path("r"), "--out", path("e")}).code, kExitUsage);
}

TEST_F(CliTest, SimulateAndReplay) {
    {
        std::ofstream d0(path("d0.txt")), d1(path("d1.txt"));
        for (int i = 1; i <= 30; ++i) {
            d0 << i << '\n';
            d1 << i + 30 << ',';
        }
    }
    auto r = run({"simulate", "--deck0", path("d0.txt"), "--deck1", path("d1.txt"), "--seed", "9"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.rfind("outcome: ", 0), 0u);

    r = run({"simulate", "--deck0", path("d0.txt"), "--deck1", path("d1.txt"), "--seed", "9", "--log"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("\"type\":\"header\""), std::string::npos);
    {
        std::ofstream(path("g.jsonl")) << r.out;
    }
    r = run({"simulate", "--replay", path("g.jsonl")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("consistent"), std::string::npos);

    {
        std::ofstream(path("short.txt")) << "1 2 3\n";
    }
    EXPECT_EQ(run({"simulate", "--deck0", path("short.txt"), "--deck1", path("d1.txt")}).code, kExitData);
}
