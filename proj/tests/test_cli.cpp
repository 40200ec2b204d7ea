#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "commands.hpp"
#include "support/generators.hpp"

using namespace opencospan;
using namespace opencospan::cli;
namespace fs = std::filesystem;

namespace
{

struct Run {
    int code;
    std::string out;
};

std::string model(const std::string &name)
{
    return std::string(OPENCOSPAN_MODELS) + "/" + name;
}

// Runs the CLI through the shell with stderr discarded.
Run run(const std::string &args, const std::string &env = "")
{
    std::string cmd = env + (env.empty() ? "" : " ") + OPENCOSPAN_CLI + " " + args + " 2>/dev/null";
    FILE *p = popen(cmd.c_str(), "r");
    if (!p) {
        return {-1, ""};
    }
    std::string out;
    std::array<char, 4096> buf{};
    while (auto n = std::fread(buf.data(), 1, buf.size(), p)) {
        out.append(buf.data(), n);
    }
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Cli : public ::testing::Test
{
protected:
    void SetUp() override
    {
        auto info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir = fs::temp_directory_path() / (std::string("opencospan_cli_") + info->name());
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override
    {
        fs::remove_all(dir);
    }
    std::string tmp(const std::string &name) const
    {
        return (dir / name).string();
    }
    void write(const std::string &name, const std::string &text) const
    {
        std::ofstream(tmp(name)) << text;
    }
    fs::path dir;
};

std::string slurp(const std::string &path)
{
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<double>> parse_csv(const std::string &text, std::string *header)
{
    std::istringstream in(text);
    std::string line;
    std::getline(in, *header);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            row.push_back(std::stod(cell));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

TEST_F(Cli, ComposeSirHalvesGivesSir)
{
    auto r = run("compose " + model("sir_left.json") + " " + model("sir_right.json") + " -o " + tmp("sir.json"));
    ASSERT_EQ(r.code, 0);
    auto got = LoadedCospan<PetriNetWithRates>::from_model(load_model(tmp("sir.json"))).as_decorated();
    auto want = LoadedCospan<PetriNetWithRates>::from_model(load_model(model("sir.json"))).as_decorated();
    EXPECT_TRUE(iso_cospan(got, want).has_value());
    EXPECT_EQ(load_model(tmp("sir.json")).names.apex, (std::vector<std::string>{"S", "I", "R"}));
}

TEST_F(Cli, ComposeWithIdentityIsIso)
{
    auto r = run("compose " + model("id.json") + " " + model("open_graph.json") + " " + model("id.json"));
    ASSERT_EQ(r.code, 0);
    auto got = LoadedCospan<Graph>::from_model(model_from_json(json::parse(r.out))).as_decorated();
    auto want = LoadedCospan<Graph>::from_model(load_model(model("open_graph.json"))).as_decorated();
    EXPECT_TRUE(iso_cospan(got, want).has_value());
}

TEST_F(Cli, ComposeOpenGraphWithItself)
{
    auto r = run("compose " + model("open_graph.json") + " " + model("open_graph.json"));
    ASSERT_EQ(r.code, 0);
    auto m = LoadedCospan<Graph>::from_model(model_from_json(json::parse(r.out))).as_decorated();
    EXPECT_EQ(m.apex().size, 7u);
    EXPECT_EQ(m.decoration.edge_count(), 10u);
}

TEST_F(Cli, ComposeMismatchedFeetIsDomainError)
{
    EXPECT_EQ(run("compose " + model("open_graph.json") + " " + model("sir.json")).code, 2);
    EXPECT_EQ(run("compose " + model("sir.json") + " " + model("sir.json")).code, 2);
}

TEST_F(Cli, TensorAddsFeet)
{
    auto r = run("tensor " + model("open_graph.json") + " " + model("id.json") + " -o " + tmp("t.json"));
    ASSERT_EQ(r.code, 0);
    auto m = LoadedCospan<Graph>::from_model(load_model(tmp("t.json"))).as_decorated();
    EXPECT_EQ(m.foot_left().size, 2u);
    EXPECT_EQ(m.apex().size, 5u);
}

TEST_F(Cli, ConvertRoundTripIsByteIdentical)
{
    for (const char *name : {"open_graph.json", "id.json", "sir_left.json"}) {
        SCOPED_TRACE(name);
        auto original = serialize(load_model(model(name)));
        auto s = run("convert " + model(name) + " --to structured -o " + tmp("s.json"));
        if (std::string(name) == "sir_left.json") {
            EXPECT_EQ(s.code, 2);
            continue;
        }
        ASSERT_EQ(s.code, 0);
        EXPECT_EQ(load_model(tmp("s.json")).representation(), "structured");
        ASSERT_EQ(run("convert " + tmp("s.json") + " --to decorated -o " + tmp("d.json")).code, 0);
        EXPECT_EQ(slurp(tmp("d.json")), original);
    }
}

TEST_F(Cli, ConvertEmptyModelRoundTrip)
{
    write("empty.json", R"({"version": "1", "kind": "petri", "payload": {"representation": "decorated",
        "footLeft": 0, "footRight": 0, "legLeft": [], "legRight": [],
        "system": {"places": 0, "transitions": []}}})");
    auto original = serialize(load_model(tmp("empty.json")));
    ASSERT_EQ(run("convert " + tmp("empty.json") + " --to structured -o " + tmp("s.json")).code, 0);
    ASSERT_EQ(run("convert " + tmp("s.json") + " --to decorated -o " + tmp("d.json")).code, 0);
    EXPECT_EQ(slurp(tmp("d.json")), original);
}

TEST_F(Cli, ConvertNonDiscreteFootIsDomainError)
{
    write("loop.json", R"({"version": "1", "kind": "graph", "payload": {"representation": "structured",
        "footLeft": {"nodes": 1, "edges": 1, "src": [0], "tgt": [0]},
        "legLeft": {"vertices": [0], "edges": [0]},
        "footRight": 0, "legRight": [],
        "system": {"nodes": 1, "edges": 1, "src": [0], "tgt": [0]}}})");
    EXPECT_EQ(run("convert " + tmp("loop.json") + " --to decorated").code, 2);
}

TEST_F(Cli, ConvertStructuredInput)
{
    auto r = run("convert " + model("open_graph_structured.json") + " --to decorated");
    ASSERT_EQ(r.code, 0);
    auto got = LoadedCospan<Graph>::from_model(model_from_json(json::parse(r.out))).as_decorated();
    auto want = LoadedCospan<Graph>::from_model(load_model(model("open_graph.json"))).as_decorated();
    EXPECT_TRUE(iso_cospan(got, want).has_value());
}

TEST_F(Cli, ConvertRejectsUnknownTarget)
{
    EXPECT_EQ(run("convert " + model("open_graph.json") + " --to nonsense").code, 3);
}

TEST_F(Cli, GrayboxSirField)
{
    auto r = run("graybox " + model("sir.json") + " -o " + tmp("g.json"));
    ASSERT_EQ(r.code, 0);
    auto m = load_model(tmp("g.json"));
    EXPECT_EQ(m.kind, "dynam");
    auto sys = open_dynam_from_json(m.payload);
    std::vector<double> c{0.5, 0.25, 0.125};
    auto v = sys.decoration.evaluate(c);
    EXPECT_NEAR(v[0], -0.3 * 0.5 * 0.25, 1e-15);
    EXPECT_NEAR(v[1], 0.3 * 0.5 * 0.25 - 0.1 * 0.25, 1e-15);
    EXPECT_NEAR(v[2], 0.1 * 0.25, 1e-15);
    EXPECT_EQ(run("graybox " + model("open_graph.json")).code, 2);
}

TEST_F(Cli, SimulateDecay)
{
    auto r = run("simulate " + model("decay.json") + " --config " + model("decay_sim.json") + " --out " + tmp("d.csv"));
    ASSERT_EQ(r.code, 0);
    std::string header;
    auto rows = parse_csv(slurp(tmp("d.csv")), &header);
    EXPECT_EQ(header, "t,A");
    ASSERT_EQ(rows.size(), 11u);
    for (const auto &row : rows) {
        EXPECT_NEAR(row[1], std::exp(-0.5 * row[0]), 1e-6);
    }
}

TEST_F(Cli, SimulateFirstStepMatchesOpenRateEquation)
{
    write("cfg.json", R"({"t0": 0, "t1": 1e-4, "dt": 1e-5,
        "initialState": {"S": 0.9, "I": 0.1, "R": 0},
        "schedule": {"inflows": {"i3": [[0, 0.2]]}, "outflows": {"o1": [[0, 0.05]]}}})");
    auto r = run("simulate " + model("sir.json") + " --config " + tmp("cfg.json"));
    ASSERT_EQ(r.code, 0);
    std::string header;
    auto rows = parse_csv(r.out, &header);
    EXPECT_EQ(header, "t,S,I,R");
    ASSERT_GE(rows.size(), 2u);
    auto sys = dynam_from_model(load_model(model("sir.json")));
    FlowSchedule sched = FlowSchedule::zero(sys);
    sched.inflows[2] = PiecewiseConstant::constant(0.2, 0.0);
    sched.outflows[0] = PiecewiseConstant::constant(0.05, 0.0);
    std::vector<double> c0{0.9, 0.1, 0.0};
    auto rhs = open_rate_rhs(sys, sched, 0.0, c0);
    const double h = rows[1][0] - rows[0][0];
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR((rows[1][i + 1] - rows[0][i + 1]) / h, rhs[i], 1e-6);
    }
}

TEST_F(Cli, SimulateBadConfigs)
{
    write("dt0.json", R"({"t0": 0, "t1": 1, "dt": 0})");
    write("unknown.json", R"({"t0": 0, "t1": 1, "dt": 0.1, "initialState": {"Q": 1}})");
    write("extra.json", R"({"t0": 0, "t1": 1, "dt": 0.1, "method": "euler"})");
    write("broken.json", R"({"t0": 0, )");
    EXPECT_EQ(run("simulate " + model("decay.json") + " --config " + tmp("dt0.json")).code, 2);
    EXPECT_EQ(run("simulate " + model("decay.json") + " --config " + tmp("unknown.json")).code, 2);
    EXPECT_EQ(run("simulate " + model("decay.json") + " --config " + tmp("extra.json")).code, 3);
    EXPECT_EQ(run("simulate " + model("decay.json") + " --config " + tmp("broken.json")).code, 3);
    EXPECT_EQ(run("simulate " + model("decay.json") + " --config " + tmp("missing.json")).code, 3);
    EXPECT_EQ(run("simulate " + model("open_graph.json") + " --config " + model("decay_sim.json")).code, 2);
}

TEST_F(Cli, CheckCompanionOnFunction)
{
    auto r = run("check " + model("function_merge.json") + " --laws companion");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("PASS companion"), std::string::npos);
    EXPECT_EQ(run("check " + model("function_merge.json") + " --laws companion --kind dynam").code, 0);
}

TEST_F(Cli, CheckLawsOnModels)
{
    auto r = run("check " + model("open_graph.json") + " --laws validate,roundtrip,unitors");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("PASS validate"), std::string::npos);
    EXPECT_NE(r.out.find("PASS roundtrip"), std::string::npos);
    EXPECT_NE(r.out.find("PASS unitors"), std::string::npos);

    auto rated = run("check " + model("sir.json") + " --laws validate,roundtrip");
    EXPECT_EQ(rated.code, 2);
    EXPECT_NE(rated.out.find("PASS validate"), std::string::npos);
    EXPECT_NE(rated.out.find("FAIL roundtrip"), std::string::npos);

    EXPECT_EQ(run("check " + model("sir.json") + " --laws graybox").code, 0);
    EXPECT_EQ(run("check " + model("sir_left.json") + " " + model("sir_right.json") + " --laws graybox").code, 0);
}

TEST_F(Cli, CheckIsoAndBudget)
{
    ASSERT_EQ(run("compose " + model("sir_left.json") + " " + model("sir_right.json") + " -o " + tmp("c.json")).code,
              0);
    auto args = "check " + tmp("c.json") + " " + model("sir.json") + " --laws iso";
    EXPECT_EQ(run(args).code, 0);
    auto starved = run(args, "OPENCOSPAN_ISO_BUDGET=0");
    EXPECT_EQ(starved.code, 2);
    EXPECT_NE(starved.out.find("FAIL iso"), std::string::npos);
    EXPECT_EQ(run(args, "OPENCOSPAN_ISO_BUDGET=lots").code, 3);
    EXPECT_EQ(run("check " + model("open_graph.json") + " " + model("sir.json") + " --laws iso").code, 2);
}

TEST_F(Cli, UsageAndIoErrors)
{
    EXPECT_EQ(run("").code, 3);
    EXPECT_EQ(run("frobnicate").code, 3);
    EXPECT_EQ(run("compose " + model("sir.json")).code, 3);
    EXPECT_EQ(run("compose " + tmp("nope.json") + " " + model("sir.json")).code, 3);
    EXPECT_EQ(run("check " + model("sir.json") + " --laws nonsense").code, 3);
    write("bad.json", R"({"version": "1", "kind": "graph"})");
    EXPECT_EQ(run("convert " + tmp("bad.json") + " --to structured").code, 3);
    write("invalid.json", R"({"version": "1", "kind": "graph", "payload": {"nodes": 1, "edges": 1,
        "src": [0], "tgt": [4]}})");
    EXPECT_EQ(run("check " + tmp("invalid.json")).code, 2);
}

TEST_F(Cli, EveryWrittenFileReloads)
{
    std::vector<std::string> outputs;
    auto go = [&](const std::string &args, const std::string &out) {
        ASSERT_EQ(run(args + " -o " + tmp(out)).code, 0) << args;
        outputs.push_back(tmp(out));
    };
    go("compose " + model("open_graph.json") + " " + model("open_graph.json"), "a.json");
    go("tensor " + model("sir.json") + " " + model("decay.json"), "b.json");
    go("convert " + model("open_graph.json") + " --to structured", "c.json");
    go("graybox " + model("water.json"), "d.json");
    go("compose " + tmp("c.json") + " " + tmp("c.json"), "e.json");
    for (const auto &f : outputs) {
        SCOPED_TRACE(f);
        auto m = load_model(f);
        EXPECT_NO_THROW(validate_model(m));
        EXPECT_EQ(serialize(m), slurp(f));
    }
}

TEST(CliFunctions, CallableInProcess)
{
    std::ostringstream out, err;
    EXPECT_EQ(cmd_compose({model("sir_left.json"), model("sir_right.json")}, "", out, err), 0);
    auto m = model_from_json(json::parse(out.str()));
    EXPECT_EQ(m.kind, "petri_rates");
    std::ostringstream out2, err2;
    EXPECT_EQ(cmd_convert(model("sir.json"), "structured", "", out2, err2), 2);
    EXPECT_NE(err2.str().find("no structured representation"), std::string::npos);
}

TEST(CliFunctions, NamesGlueAcrossComposite)
{
    auto m = combine_models({load_model(model("open_graph.json")), load_model(model("open_graph.json"))}, false);
    EXPECT_EQ(m.names.apex.size(), 7u);
    EXPECT_EQ(m.names.foot_left, (std::vector<std::string>{"x"}));
    EXPECT_EQ(m.names.foot_right, (std::vector<std::string>{"y"}));
}
