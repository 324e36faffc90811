#include "catalog.hpp"
#include "hpq/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hpq;
using namespace hpq::testing;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "hpq");
    std::vector<const char *> argv;
    for (const std::string &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &s)
{
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);)
        v.push_back(l);
    return v;
}

std::filesystem::path temp_file(const std::string &name)
{
    return std::filesystem::temp_directory_path() / ("hpq_test_" + std::to_string(::getpid()) + "_" + name);
}

} // namespace

TEST(Cli, Grids)
{
    EXPECT_EQ(parse_grid("1,2.5,3"), (std::vector<double>{1, 2.5, 3}));
    const auto g = parse_grid("0:1:0.25");
    ASSERT_EQ(g.size(), 5u);
    EXPECT_DOUBLE_EQ(g.back(), 1.0);
    EXPECT_THROW(parse_grid(""), InvalidInput);
    EXPECT_THROW(parse_grid("1:0:0.5"), InvalidInput);
    EXPECT_THROW(parse_grid("0:1:0"), InvalidInput);
    EXPECT_THROW(parse_grid("1,x"), InvalidInput);
    EXPECT_THROW(parse_grid("0:inf:1"), InvalidInput);
}

TEST(Cli, FieldDescriptors)
{
    const Manifold s3 = Manifold::sphere(3), s2 = Manifold::sphere(2), h3 = Manifold::heisenberg();
    EXPECT_EQ(parse_field("hopf", s3).describe(), VectorFieldSpec::hopf(1.0).describe());
    EXPECT_EQ(parse_field("hopf:2", s3).describe(), VectorFieldSpec::hopf(2.0).describe());
    EXPECT_EQ(parse_field("frame:3", h3).describe(), "frame(heisenberg,E3)");
    EXPECT_NO_THROW(parse_field("rotation", s2));
    EXPECT_NO_THROW(parse_field("rotation:1,0,0", s2));
    EXPECT_NO_THROW(parse_field("conformal:1,0,0,0", s3));
    EXPECT_NO_THROW(parse_field("quadratic:1,1,0,0@2", s3));
    EXPECT_NO_THROW(parse_field("profiled:1,-0.5", s2));
    EXPECT_NO_THROW(parse_field("parallel", Manifold::sphere_cross_line()));
    EXPECT_NO_THROW(parse_field("zero", h3));
    EXPECT_THROW(parse_field("hopf", s2), InvalidInput);
    EXPECT_THROW(parse_field("frame:1", s2), InvalidInput);
    EXPECT_THROW(parse_field("conformal:1,0", s3), InvalidInput);
    EXPECT_THROW(parse_field("nonsense", s3), InvalidInput);
}

TEST(Cli, ConfigRoundTrip)
{
    RunConfig c;
    c.command = Command::Scan;
    c.p_grid = {1.5, 2};
    c.q = -0.25;
    c.seed = 7;
    c.fd_step = 1e-4;
    const RunConfig d = config_from_json(to_json(c));
    EXPECT_EQ(to_json(d).dump(), to_json(c).dump());
    EXPECT_THROW(config_from_json(Json::parse(R"({"bogus": 1})")), InvalidInput);
    RunConfig bad;
    bad.samples = 0;
    EXPECT_THROW(bad.validate(), InvalidInput);
}

TEST(Cli, VerifyExitCodes)
{
    const Outcome pass = cli({"verify", "--model", "sphere:3", "--field", "hopf:1", "--p", "2", "--q", "1"});
    EXPECT_EQ(pass.code, kExitPass) << pass.err;
    const Json j = Json::parse(pass.out);
    EXPECT_EQ(j["command"], "verify");
    EXPECT_TRUE(j.contains("config"));
    EXPECT_TRUE(j.contains("results"));
    EXPECT_TRUE(j["summary"]["pass"].get<bool>());
    EXPECT_LE(j["summary"]["max"].get<double>(), 1e-8);
    EXPECT_GE(j["summary"]["max"].get<double>(), 0.0);

    EXPECT_EQ(cli({"verify", "--model", "sphere:2", "--field", "rotation", "--p", "1", "--q", "0"}).code,
              kExitResidual);
    EXPECT_EQ(cli({"verify", "--model", "sphere:3", "--field", "conformal:1,0,0,0", "--p", "4", "--q", "-1"}).code,
              kExitPass);
    EXPECT_EQ(cli({"verify", "--model", "sphere:2", "--field", "frame:1"}).code, kExitInvalid);
    EXPECT_EQ(cli({"verify", "--bogus"}).code, kExitInvalid);
    EXPECT_EQ(cli({"frobnicate"}).code, kExitInvalid);
    EXPECT_EQ(cli({}).code, kExitInvalid);
    EXPECT_EQ(cli({"verify", "--samples", "-3"}).code, kExitInvalid);
    EXPECT_EQ(cli({"verify", "--fd-step", "1"}).code, kExitInvalid);
    EXPECT_EQ(cli({"verify", "--equation", "killing", "--model", "sphere:2", "--field", "conformal:1,0,0"}).code,
              kExitInvalid);
    // F = t^-200 overflows on the sampling region
    EXPECT_EQ(cli({"verify", "--model", "sphere:2", "--field", "profiled:1,-200"}).code, kExitDomain);
}

TEST(Cli, EquationsAndCsv)
{
    for (const char *eq : {"section", "killing", "map", "map-horizontal", "map-vertical"}) {
        const Outcome o = cli({"verify", "--equation", eq, "--samples", "20"});
        EXPECT_EQ(o.code, kExitPass) << eq << o.err;
    }
    const Outcome csv = cli({"verify", "--format", "csv", "--samples", "10"});
    ASSERT_EQ(csv.code, kExitPass);
    const auto l = lines(csv.out);
    ASSERT_GE(l.size(), 2u);
    EXPECT_EQ(l.front(), "index,x0,x1,x2,x3,residual");
    EXPECT_EQ(l.size(), 11u);
}

TEST(Cli, Deterministic)
{
    const std::vector<std::string> args = {"verify", "--model", "sphere:2", "--field", "rotation", "--p", "1.5",
                                           "--q", "0.5", "--per-point", "--samples", "30"};
    const Outcome a = cli(args), b = cli(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.out.empty());
    auto other = args;
    other.insert(other.end(), {"--seed", "5"});
    EXPECT_NE(cli(other).out, a.out);
}

TEST(Cli, SeedFromEnvironment)
{
    const std::vector<std::string> args = {"verify", "--model", "sphere:2", "--field", "rotation", "--samples", "5",
                                           "--per-point"};
    const std::string base = cli(args).out;
    ::setenv("HPQ_SEED", "1234", 1);
    const std::string env = cli(args).out;
    auto flagged = args;
    flagged.insert(flagged.end(), {"--seed", "1234"});
    const std::string flag = cli(flagged).out;
    ::unsetenv("HPQ_SEED");
    EXPECT_NE(base, env);
    EXPECT_EQ(env, flag);
}

TEST(Cli, ConfigFileUnderFlags)
{
    const auto path = temp_file("config.json");
    {
        std::ofstream f(path);
        f << R"({"command": "verify", "model": "sphere:2", "field": "rotation", "p": 1.0, "q": 0.0, "samples": 20})";
    }
    const Outcome a = cli({"--config", path.string()});
    EXPECT_EQ(a.code, kExitResidual);
    EXPECT_EQ(Json::parse(a.out)["config"]["samples"], 20);
    // explicit flags win over the file
    const Outcome b = cli({"--config", path.string(), "--model", "sphere:3", "--field", "hopf:1", "--p", "2"});
    EXPECT_EQ(b.code, kExitPass) << b.err;
    EXPECT_EQ(Json::parse(b.out)["config"]["model"], "sphere:3");
    std::filesystem::remove(path);

    EXPECT_EQ(cli({"--config", "/nonexistent/hpq.json"}).code, kExitInvalid);
    const auto bad = temp_file("bad.json");
    {
        std::ofstream f(bad);
        f << R"({"command": "verify", "colour": "blue"})";
    }
    EXPECT_EQ(cli({"--config", bad.string()}).code, kExitInvalid);
    std::filesystem::remove(bad);
}

TEST(Cli, OutFile)
{
    const auto path = temp_file("report.json");
    const Outcome o = cli({"verify", "--samples", "10", "--out", path.string()});
    EXPECT_EQ(o.code, kExitPass);
    EXPECT_TRUE(o.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    EXPECT_EQ(Json::parse(ss.str())["command"], "verify");
    std::filesystem::remove(path);
}

TEST(Cli, HopfScan)
{
    const Outcome o = cli({"scan", "--model", "sphere:3", "--field", "hopf:1", "--p-grid", "1.5,2,3", "--q-grid",
                           "1", "--scale", "0.5,1,1.4142135623730951", "--format", "csv", "--samples", "50"});
    ASSERT_EQ(o.code, kExitPass) << o.err;
    const auto l = lines(o.out);
    ASSERT_EQ(l.size(), 10u);
    EXPECT_EQ(l[0], "p,q,scale,max,mean,below_tolerance");
    int zero_cells = 0;
    for (std::size_t i = 1; i < l.size(); ++i) {
        double p, q, k, mx, mean, below;
        ASSERT_EQ(std::sscanf(l[i].c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &p, &q, &k, &mx, &mean, &below), 6) << l[i];
        const bool expected = std::abs(p - (1.0 + 1.0 / (k * k))) < 1e-9;
        EXPECT_EQ(mx <= 1e-8, expected) << l[i];
        EXPECT_EQ(below == 1.0, expected) << l[i];
        zero_cells += expected;
    }
    EXPECT_EQ(zero_cells, 2); // k = 0.5 would need p = 5
    EXPECT_EQ(cli({"scan", "--p-grid", "", "--q-grid", "1"}).code, kExitInvalid);
    EXPECT_EQ(cli({"scan", "--p-grid", "1:0:1", "--q-grid", "1"}).code, kExitInvalid);
}

TEST(Cli, RotationScanHasNoZeroCell)
{
    const Outcome o = cli({"scan", "--model", "sphere:2", "--field", "rotation", "--p-grid", "0.5:4:0.5", "--q-grid",
                           "0:3:0.5", "--scale", "0.25,1,4", "--format", "csv", "--samples", "50"});
    ASSERT_EQ(o.code, kExitPass) << o.err;
    const auto l = lines(o.out);
    ASSERT_EQ(l.size(), 1u + 8 * 7 * 3);
    for (std::size_t i = 1; i < l.size(); ++i) {
        double v[6];
        ASSERT_EQ(std::sscanf(l[i].c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", v, v + 1, v + 2, v + 3, v + 4, v + 5), 6);
        EXPECT_GT(v[3], 1e-3) << l[i];
    }
}

TEST(Cli, Classify)
{
    const Outcome o = cli({"classify", "--n", "5", "--samples", "30"});
    EXPECT_EQ(o.code, kExitPass) << o.err;
    const Json j = Json::parse(o.out);
    const Json &r = j["results"][0];
    EXPECT_NEAR(r["p"].get<double>(), 4.0, 1e-9);
    EXPECT_EQ(r["k_mult"], 3);
    EXPECT_EQ(r["printed_quadratic_roots"].size(), 2u);
    EXPECT_FALSE(r["discrepancies"].empty());
    EXPECT_NE(o.err.find("discrepancy"), std::string::npos);
    const Outcome bad = cli({"classify", "--n", "4"});
    EXPECT_EQ(bad.code, kExitInvalid);
    EXPECT_NE(bad.err.find("n = 4"), std::string::npos);
}

TEST(Cli, Identities)
{
    const Outcome o = cli({"identities", "--n", "3", "--matrices", "2", "--samples", "5"});
    EXPECT_EQ(o.code, kExitPass) << o.err;
    EXPECT_TRUE(Json::parse(o.out)["summary"]["pass"].get<bool>());
    const Outcome csv = cli({"identities", "--n", "2", "--matrices", "1", "--samples", "3", "--format", "csv"});
    EXPECT_EQ(csv.code, kExitPass);
    EXPECT_EQ(lines(csv.out).size(), 1u + kIdentityCount);
}

TEST(Cli, TensionAndEnergy)
{
    const Outcome t = cli({"tension", "--model", "heisenberg", "--field", "frame:3", "--samples", "20"});
    EXPECT_EQ(t.code, kExitPass) << t.err;
    const Outcome e = cli({"energy", "--model", "sphere:3", "--field", "hopf:1", "--p", "2", "--q", "1", "--samples",
                           "200"});
    EXPECT_EQ(e.code, kExitPass) << e.err;
    const double energy = Json::parse(e.out)["results"][0]["energy"].get<double>();
    EXPECT_NEAR(energy, M_PI * M_PI / 2.0, 1e-10);
}

TEST(Cli, BinaryRuns)
{
    const std::string cmd = std::string("\"") + HPQ_CLI_PATH + "\" verify --samples 10 > /dev/null";
    EXPECT_EQ(WEXITSTATUS(std::system(cmd.c_str())), 0);
    const std::string fail =
        std::string("\"") + HPQ_CLI_PATH + "\" verify --model sphere:2 --field rotation --p 1 --q 0 > /dev/null";
    EXPECT_EQ(WEXITSTATUS(std::system(fail.c_str())), 1);
    const std::string help = std::string("\"") + HPQ_CLI_PATH + "\" --help > /dev/null";
    EXPECT_EQ(WEXITSTATUS(std::system(help.c_str())), 0);
}
