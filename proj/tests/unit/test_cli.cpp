#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"

using namespace opdeloc;
using namespace opdeloc::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("opdeloc_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write(const fs::path& p, const std::string& body) {
    std::ofstream(p) << body;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string error_of(const fs::path& p) {
    try {
        Config::load(p);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("config overrides and rejects unknown keys with their line") {
    const auto dir = scratch("config");
    const auto good = write(dir / "good.ini", "[general]\nseed = 5\n\n[battery]\nL = 4, 6\naxes = z\n");
    const auto cfg = Config::load(good);
    CHECK(cfg.text("general", "seed") == "5");
    CHECK(cfg.integers("battery", "L") == std::vector<int>{4, 6});
    CHECK(cfg.words("battery", "axes") == std::vector<std::string>{"z"});
    CHECK(cfg.integer("general", "realizations") == 200);

    const auto bad = write(dir / "bad.ini", "[general]\nseed = 5\n[battery]\n# comment\nLL = 4\n");
    CHECK(error_of(bad) == bad.string() + ":5: unknown key 'LL' in section [battery]");
    const auto section = write(dir / "section.ini", "[nope]\nx = 1\n");
    CHECK(error_of(section).find("unknown section [nope]") != std::string::npos);

    auto c = Config();
    c.set("general", "realizations", "many");
    CHECK_THROWS_AS(c.integer("general", "realizations"), ConfigError);
    CHECK_THROWS(c.set("general", "nope", "1"));
}

TEST_CASE("model labels") {
    CHECK(parse_model("full").kind == GraphFamily::Kind::complete);
    CHECK(parse_model("star").kind == GraphFamily::Kind::star);
    const auto ws = parse_model("ws(k=2,p=0.9)");
    CHECK(ws.kind == GraphFamily::Kind::watts_strogatz);
    CHECK(ws.ws.half_degree == 2);
    CHECK(ws.ws.rewire_prob == 0.9);
    CHECK(ws.label() == "ws(k=2,p=0.9)");
    CHECK_THROWS_AS(parse_model("lattice"), std::invalid_argument);
    CHECK(Config().models("ck-curves", "models").size() == 5u);
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
    std::ostringstream log;
    auto run = [&](const std::string& name, int threads) {
        Config cfg;
        cfg.set("general", "realizations", "12");
        cfg.set("general", "threads", std::to_string(threads));
        cfg.set("ratio-scaling", "L", "6, 8");
        cfg.set("ratio-scaling", "models", "full; ws(k=1,p=0.5)");
        cfg.set("battery", "L", "4, 6");
        cfg.set("battery", "models", "full; ws(k=1,p=0.5)");
        cfg.set("battery", "t_max", "4");
        const auto dir = scratch(name);
        RunContext ctx{cfg, dir, log};
        REQUIRE(cmd_ratio_scaling(ctx) == 0);
        REQUIRE(cmd_battery(ctx) == 0);
        return dir;
    };
    const auto a = run("a", 1);
    const auto b = run("b", 1);
    const auto c = run("c", 3);
    int files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        const auto name = entry.path().filename();
        INFO(name.string());
        CHECK(slurp(a / name) == slurp(b / name));
        CHECK(slurp(a / name) == slurp(c / name));
        ++files;
    }
    CHECK(files >= 5);
    CHECK(fs::exists(a / "pmax_summary.json"));
    const auto csv = slurp(a / "ratio_scaling.csv");
    CHECK(csv.rfind("# ", 0) == 0);
    CHECK(csv.find("general.seed") != std::string::npos);
}
