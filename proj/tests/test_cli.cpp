#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "oklim/green.hpp"
#include "oklim/limits.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(OKLIM_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const char* name) { return std::string(OKLIM_FIXTURES) + "/" + name; }

std::string scratch(const std::string& name, const std::string& content) {
    const std::string path = std::string(OKLIM_SCRATCH) + "/" + name;
    std::ofstream(path) << content;
    return path;
}

std::vector<std::string> data_lines(const std::string& csv) {
    std::vector<std::string> lines;
    std::stringstream in(csv);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#')
            lines.push_back(line);
    return lines;
}

double field(const std::string& line, int index) {
    std::stringstream in(line);
    std::string cell;
    for (int i = 0; i <= index; ++i)
        std::getline(in, cell, ',');
    return std::stod(cell);
}

} // namespace

TEST_SUITE("cli") {
    TEST_CASE("green") {
        const Run r = run("green --dim 3 --x 0.5,0.5,0.5");
        REQUIRE(r.code == 0);
        CHECK(json::parse(r.out).get<double>() == doctest::Approx(oklim::green_eval(3, {0.5, 0.5, 0.5})).epsilon(1e-15));
        CHECK(run("green --dim 2 --x 0,0").code == 2);
        const json g = json::parse(run("green --dim 3 --x 0.25,0,0 --regular").out);
        CHECK(g.contains("G"));
        CHECK(g.contains("g"));
        CHECK(run("green --dim 3 --x 0.25,0").code == 1);
        CHECK(run("green --dim 3 --x a,b,c").code == 1);
        CHECK(run("green --dim 5 --x 0.1,0.1").code == 1);
    }

    TEST_CASE("local") {
        const json p = json::parse(run("local --dim 2 --mass 20 --partition").out);
        CHECK(p["partition"]["n"] == 4);
        CHECK(p["partition"]["per_mass"].get<double>() == doctest::Approx(5.0));
        const json c = json::parse(run("local --dim 3 --mass 6.2831853 --concavity").out);
        CHECK(std::abs(c["concavity_coefficient"].get<double>()) < 1e-6);
        CHECK(run("local --dim 2 --mass -1").code == 1);
        CHECK(run("local --dim 2 --mass 0").code == 1);
    }

    TEST_CASE("energy") {
        const Run limit = run("energy --config " + fixture("two_balls.json"));
        REQUIRE(limit.code == 0);
        CHECK(limit.out.rfind("# manifest ", 0) == 0);
        const auto rows = data_lines(limit.out);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0] == "kind,eta,gamma,perimeter_term,self_h1_term,regular_self_term,cross_term,total,e0");
        const oklim::PointConfiguration pair(3, {{1.0, oklim::TorusPoint(3, {0, 0, 0})},
                                                 {1.0, oklim::TorusPoint(3, {0.5, 0.5, 0.5})}});
        CHECK(field(rows[1], 7) == doctest::Approx(oklim::f0_energy(pair).total).epsilon(1e-15));
        const Run sharp = run("energy --config " + fixture("two_balls.json") + " --eta 0.02");
        REQUIRE(sharp.code == 0);
        CHECK(data_lines(sharp.out)[1].rfind("sharp,0.02,", 0) == 0);
        const std::string coincident =
            scratch("coincident.json", R"({"dim":2,"particles":[{"mass":1,"position":[0.1,0.1]},{"mass":1,"position":[0.1,0.1]}]})");
        CHECK(run("energy --config " + coincident).code == 3);
        const std::string overlap =
            scratch("overlap.json", R"({"dim":2,"particles":[{"mass":1,"position":[0.1,0.1]},{"mass":1,"position":[0.15,0.1]}]})");
        CHECK(run("energy --config " + overlap + " --eta 0.1").code == 3);
        const std::string broken = scratch("broken.json", R"({"dim":2,"particles":[{"mass":1}]})");
        CHECK(run("energy --config " + broken).code == 1);
        CHECK(run("energy --config /nonexistent.json").code == 1);
    }

    TEST_CASE("expand") {
        const Run r = run("expand --config " + fixture("two_balls.json") + " --etas 0.04,0.02,0.01 --richardson");
        REQUIRE(r.code == 0);
        const auto rows = data_lines(r.out);
        REQUIRE(rows.size() == 6);
        CHECK(rows[4].rfind("richardson,", 0) == 0);
        CHECK(std::abs(field(rows[4], 4)) < 1e-3);
        CHECK(run("expand --config " + fixture("two_balls.json") + " --etas ''").code == 1);
        const std::string unequal =
            scratch("unequal.json", R"({"dim":2,"particles":[{"mass":1,"position":[0.1,0.1]},{"mass":2,"position":[0.6,0.6]}]})");
        CHECK(run("expand --config " + unequal + " --etas 0.01").code == 4);
    }

    TEST_CASE("place is reproducible") {
        const std::string path = std::string(OKLIM_SCRATCH) + "/place.json";
        const std::string args = "place --dim 2 --n 2 --mass 1 --restarts 5 --seed 7 --out " + path;
        REQUIRE(run(args).code == 0);
        json ja = json::parse(std::ifstream(path));
        REQUIRE(run(args).code == 0);
        json jb = json::parse(std::ifstream(path));
        CHECK(ja["result"]["converged"] == true);
        ja["manifest"].erase("wall_time");
        jb["manifest"].erase("wall_time");
        CHECK(ja.dump() == jb.dump());
        CHECK(ja["manifest"]["params"]["seed"] == "7");
    }

    TEST_CASE("place lattice comparison") {
        const json three = json::parse(run("place --dim 2 --n 3 --mass 1 --restarts 2 --lattice-compare").out);
        REQUIRE(three["lattice"].size() == 2);
        CHECK(three["lattice"][0]["lattice"] == "square");
        CHECK(three["lattice"][0].contains("skipped"));
        CHECK(three["lattice"][1].contains("skipped"));
        const json eight = json::parse(run("place --dim 2 --n 8 --mass 1 --restarts 2 --tol 1e-8 --lattice-compare").out);
        CHECK(eight["lattice"][0].contains("skipped"));
        CHECK(eight["lattice"][1].contains("energy"));
    }
}
