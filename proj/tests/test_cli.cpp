#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "support.hpp"

using namespace treeflip;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(TREEFLIP_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (const auto n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string fixture_path(const std::string& name) { return std::string(TREEFLIP_FIXTURE_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& content) {
    const auto p = std::filesystem::temp_directory_path() / ("treeflip_cli_" + name);
    std::ofstream(p) << content;
    return p.string();
}

} // namespace

TEST_CASE("validate and exit codes") {
    CHECK(run("validate " + fixture_path("four_point_diameter_pair.json")).code == 0);
    const auto bad = write_temp("bad.json", R"({"n": 4, "T": [[1,3],[2,4],[1,2]]})");
    CHECK(run("validate " + bad).code == 2);
    CHECK(run("validate /nonexistent.json").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("").code == 2);
}

TEST_CASE("classify prints one row per gap") {
    const auto r = run("classify " + fixture_path("bidirected_nine_cycle.json"));
    REQUIRE(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 13);
    CHECK(r.out.rfind("gap\te\tclass", 0) == 0);
    CHECK(r.out.find("\tnear\n") != std::string::npos);
}

TEST_CASE("conflict graph and acyclic subset") {
    const auto dot = run("conflict-graph " + fixture_path("bidirected_nine_cycle.json"));
    REQUIRE(dot.code == 0);
    CHECK(dot.out.find("digraph") != std::string::npos);

    const auto ac = run("acyclic " + fixture_path("bidirected_nine_cycle.json"));
    REQUIRE(ac.code == 0);
    CHECK(ac.out.find("vertices\t9\n") != std::string::npos);
    CHECK(ac.out.find("ac\t4\n") != std::string::npos);
    CHECK(ac.out.find("coefficient\t14/9\n") != std::string::npos);
}

TEST_CASE("sequence subcommand") {
    for (const char* method : {"general", "careful", "caterpillar"}) {
        const auto r = run(std::string("sequence --method ") + method + " --verify " +
                           fixture_path("caterpillars_distance_seven.json"));
        CHECK(r.code == 0);
        CHECK(r.out.find("verify\tok") != std::string::npos);
    }
    const auto j = run("sequence --method careful --verify --emit json " + fixture_path("caterpillars_distance_seven.json"));
    REQUIRE(j.code == 0);
    const auto parsed = json::parse(j.out);
    CHECK(parsed["verified"] == true);
    CHECK(parsed["bound_ok"] == true);
    const auto seq = sequence_from_json(parsed);
    CHECK(verify_sequence(seq, support::fixture("caterpillars_distance_seven.json").tp, true).ok);

    // Not a caterpillar: precondition failure is an input error.
    CHECK(run("sequence --method caterpillar " + fixture_path("bidirected_nine_cycle.json")).code == 2);
    CHECK(run("sequence --method sideways " + fixture_path("four_point_diameter_pair.json")).code == 2);
}

TEST_CASE("oracle subcommand") {
    auto r = run("oracle distance " + fixture_path("four_point_diameter_pair.json"));
    REQUIRE(r.code == 0);
    CHECK(r.out == "n\ttrees\tdistance\n4\t12\t3\n");
    r = run("oracle diameter --n 5");
    CHECK(r.out == "n\ttrees\tdiameter\n5\t55\t4\n");
    r = run("oracle radius --n 6");
    CHECK(r.out == "n\ttrees\tradius\n6\t273\t4\n");
    r = run("oracle eccentricity " + fixture_path("four_point_diameter_pair.json"));
    CHECK(r.code == 0);
    CHECK(run("oracle diameter").code == 2);
    CHECK(run("oracle diameter --n 10").code == 2);
}

TEST_CASE("blowup, certificate and threshold") {
    const auto b = run("blowup --k 2 " + fixture_path("bidirected_nine_cycle.json"));
    REQUIRE(b.code == 0);
    const auto blown = instance_from_json(json::parse(b.out));
    CHECK(blown.n == 31);

    const auto c = run("certificate --k 26 --k 800 " + fixture_path("bidirected_nine_cycle.json"));
    REQUIRE(c.code == 0);
    const auto cert = json::parse(c.out);
    CHECK(cert["vH"] == 9);
    CHECK(cert["acH"] == 4);
    CHECK(cert["coefficient"] == "14/9");
    CHECK(cert["bounds"][1]["bound"] == 10836);
    CHECK(run("certificate --k 3 " + fixture_path("bidirected_nine_cycle.json")).code == 2);

    CHECK(run("threshold --n 13 --vh 9 --ac 4").out == "758\n");
    CHECK(run("threshold --n 13 --vh 1 --ac 1").code == 1);
}

TEST_CASE("sweep and random subcommands") {
    const auto s = run("sweep --n 4 --mode careful");
    REQUIRE(s.code == 0);
    CHECK(s.out.find("\n4\tcareful\t12\t144\t0\t") != std::string::npos);
    CHECK(run("sweep --n 5 --mode caterpillar").code == 0);
    CHECK(run("sweep --n 4 --mode sideways").code == 2);

    const auto a = run("random --n 12 --seed 5 --steps 40");
    const auto again = run("random --n 12 --seed 5 --steps 40");
    REQUIRE(a.code == 0);
    CHECK(a.out == again.out);
    const auto inst = instance_from_json(json::parse(a.out));
    CHECK(inst.n == 12);
    // Emitted instances read back to the same JSON.
    CHECK(instance_to_json(inst).dump() + "\n" == a.out);
    CHECK(run("random --n 2").code == 2);

    const auto path = write_temp("random.json", a.out);
    CHECK(run("validate " + path).code == 0);
    CHECK(run("sequence --method careful --verify " + path).code == 0);
}
