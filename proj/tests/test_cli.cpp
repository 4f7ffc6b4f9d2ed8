#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path dir = fs::temp_directory_path() / "qident_cli_test";

int run(const std::string& args)
{
    const std::string cmd = std::string(QIDENT_BIN) + " " + args + " >" + (dir / "stdout").string() + " 2>" +
                            (dir / "stderr").string();
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct Dir {
    Dir() { fs::create_directories(dir); }
};
const Dir made;

} // namespace

TEST_CASE("list")
{
    REQUIRE(run("list") == 0);
    const std::string out = slurp(dir / "stdout");
    long entries = 0;
    std::istringstream is(out);
    for (std::string line; std::getline(is, line);)
        if (!line.empty() && line[0] != ' ') ++entries;
    CHECK(entries == 17);
    CHECK(out.find("3psi3delta1") != std::string::npos);
    CHECK(out.find("lambda:partition") != std::string::npos);
}

TEST_CASE("exit codes")
{
    CHECK(run("run --case jackson8phi7 --seed 42 --samples 20") == 0);
    CHECK(json::parse(slurp(dir / "stdout"))["summary"]["pass"] == 20);
    CHECK(run("run --case c1macdonald --param x=1") == 1);
    CHECK(run("run --case nope") == 2);
    CHECK(run("run --case flip --param lambda=[1,2]") == 2);
    CHECK(run("run --case flip --param zz=1") == 2);
    CHECK(run("run") == 2);
    CHECK(run("frobnicate") == 2);
    {
        std::ofstream(dir / "bad.json") << "{ not json";
    }
    CHECK(run("run --config " + (dir / "bad.json").string()) == 2);
}

TEST_CASE("config runs are deterministic")
{
    json cases = json::array();
    for (const char* id : {"bailey6psi6", "duality", "multilateralfinite", "summandinvariance"})
        cases.push_back(json{{"case", id}, {"samples", 3}});
    cases.push_back(json{{"case", "ramanujan1psi1"}, {"params", {{"b", {{"qpow", 1}}}, {"x", {0.5, 0.1}}}}});
    {
        std::ofstream(dir / "cfg.json") << json{{"seed", 9}, {"cases", cases}}.dump();
    }
    const std::string cfg = (dir / "cfg.json").string();
    REQUIRE(run("run --config " + cfg + " --out " + (dir / "a.json").string() + " --csv " +
                (dir / "a.csv").string()) == 0);
    REQUIRE(run("run --config " + cfg + " --parallelism 3 --out " + (dir / "b.json").string()) == 0);
    auto strip = [](json d) {
        d["meta"].erase("timestamp");
        for (auto& r : d["runs"]) r.erase("elapsed_ms");
        return d.dump();
    };
    const json a = json::parse(slurp(dir / "a.json")), b = json::parse(slurp(dir / "b.json"));
    CHECK(strip(a) == strip(b));
    CHECK(a["summary"]["total"] == 13);
    CHECK(a["meta"]["seed"] == 9);
    CHECK(slurp(dir / "a.csv").find("ramanujan1psi1") != std::string::npos);
}
