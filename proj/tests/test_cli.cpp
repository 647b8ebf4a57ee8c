#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "digerm/precubical.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env = "")
{
    const std::string cmd =
        (env.empty() ? "" : env + " ") + std::string(DIGERM_CLI_PATH) + " " + args + " 2>&1";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        res.out.append(buf.data(), n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string write_temp(const std::string& name, const std::string& content)
{
    std::string path = std::string("cli_fixture_") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

} // namespace

TEST_CASE("homology table for the globe")
{
    RunResult r = run("homology builtin:globe:2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("H_0^- = Z") != std::string::npos);
    CHECK(r.out.find("H_1^- = 0") != std::string::npos);
    CHECK(r.out.find("H_0^+ = Z") != std::string::npos);
}

TEST_CASE("validate flags a miswired square with exit code 1")
{
    digerm::PrecubicalSet k = digerm::gen_example("filled_square");
    k.faces.at("s").d0[1] = "c";
    std::string path = write_temp("miswired.json", digerm::emit_json(k).dump());
    RunResult r = run("validate " + path);
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("identity") != std::string::npos);
    CHECK(r.out.find("s") != std::string::npos);
}

TEST_CASE("check-invariance passes on hollow square edge subdivisions")
{
    std::string ops = write_temp(
        "ops.json", R"([{"kind":"edge","cell":"a","k":2},{"kind":"edge","cell":"b","k":1}])");
    RunResult r = run("check-invariance builtin:hollow_square --ops " + ops);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("oracle subcommand and JSON reports")
{
    RunResult r = run("oracle builtin:cube:3 --json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("realize rejects globular input")
{
    RunResult r = run("realize builtin:globe:1");
    CHECK(r.exit_code == 1);
}

TEST_CASE("missing subcommand and unknown flags are usage errors")
{
    CHECK(run("").exit_code == 2);
    CHECK(run("homology").exit_code == 2);
    CHECK(run("homology builtin:globe:1 --frobnicate").exit_code == 2);
}

TEST_CASE("files without a format key are rejected")
{
    std::string path = write_temp("noformat.json", R"({"cubes": {"0": ["v"]}})");
    RunResult r = run("validate " + path);
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("format") != std::string::npos);
}

TEST_CASE("byte-identical output for identical inputs and seeds")
{
    RunResult a = run("fuzz --seed 42 --count 4");
    RunResult b = run("fuzz --seed 42 --count 4");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("failures=0") != std::string::npos);

    // thread count must not affect the report
    RunResult threaded = run("fuzz --seed 42 --count 4", "DIGERM_THREADS=3");
    CHECK(threaded.out == a.out);

    RunResult c = run("realize builtin:cube:2");
    RunResult d = run("realize builtin:cube:2");
    CHECK(c.out == d.out);

    RunResult e = run("subdivide builtin:filled_square --ops " +
                      write_temp("grid.json", R"([{"kind":"grid","factors":[2,2]}])"));
    RunResult f = run("subdivide builtin:filled_square --ops cli_fixture_grid.json");
    CHECK(e.exit_code == 0);
    CHECK(e.out == f.out);
}

TEST_CASE("export-dot writes per-state skeletons")
{
    RunResult r = run("export-dot builtin:filled_square --state v00");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("graph \"branching.v00\"") != std::string::npos);
    CHECK(r.out.find("\"a\" -- \"b\"") != std::string::npos);

    RunResult m = run("export-dot builtin:filled_square --merging --state v11");
    CHECK(m.exit_code == 0);
    CHECK(m.out.find("graph \"merging.v11\"") != std::string::npos);
}

TEST_CASE("export-dot --json dumps the cell complexes")
{
    RunResult r = run("export-dot builtin:filled_square --state v00 --json");
    CHECK(r.exit_code == 0);
    digerm::json j = digerm::json::parse(r.out);
    CHECK(j["v00"]["cells"]["1"] == digerm::json::array({"s"}));
}

TEST_CASE("subdivide emits parseable output in the right format")
{
    std::string grid = write_temp("grid2.json", R"([{"kind":"grid","factors":[2,2]}])");
    RunResult r = run("subdivide builtin:filled_square --ops " + grid);
    CHECK(r.exit_code == 0);
    digerm::PrecubicalSet k = digerm::parse_precubical(digerm::json::parse(r.out));
    CHECK(digerm::validate(k).ok());
    CHECK(k.census() == std::vector<std::size_t>{9, 12, 4});

    std::string lens = write_temp("lens.json", R"([{"kind":"lens","cell":"s"}])");
    RunResult g = run("subdivide builtin:filled_square --ops " + lens);
    CHECK(g.exit_code == 0);
    CHECK(g.out.find("\"format\": \"globular\"") != std::string::npos);
}

TEST_CASE("homology --json emits both sides keyed by degree")
{
    RunResult r = run("homology builtin:torus --json");
    CHECK(r.exit_code == 0);
    digerm::json j = digerm::json::parse(r.out);
    CHECK(j["branching"]["0"]["rank"] == 0);
    CHECK(j["merging"]["0"]["rank"] == 0);
    CHECK(j["branching"]["2"]["rank"] == 0);
}

TEST_CASE("inapplicable op errors name the step")
{
    std::string ops = write_temp(
        "bad_ops.json", R"([{"kind":"edge","cell":"a","k":1},{"kind":"grid","factors":[2,2]}])");
    RunResult r = run("subdivide builtin:filled_square --ops " + ops);
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("op 2") != std::string::npos);
}
