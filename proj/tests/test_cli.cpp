#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "kpos/kpos.hpp"

using namespace kpos;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(KPOS_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    RunResult r;
    std::array<char, 4096> buf;
    while (size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string temp_file(const std::string& name, const nlohmann::json& j) {
    std::string path = std::string("/tmp/kpos_cli_") + name + ".json";
    std::ofstream(path) << j.dump();
    return path;
}

RationalMatrix pascal(int n) {
    RationalMatrix m(n);
    for (int i = 1; i <= n; ++i) m.at(i, 1) = m.at(1, i) = 1;
    for (int i = 2; i <= n; ++i)
        for (int j = 2; j <= n; ++j) m.at(i, j) = m.at(i - 1, j) + m.at(i, j - 1);
    return m;
}

}  // namespace

TEST_CASE("cli: test subcommand") {
    RunResult r = run("test --n 3 --k 2 --young \"\"");
    REQUIRE(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["minors"].size() == 9);
    TestSet t = test_set_from_json(j);
    CHECK(t.minors == k_test_from_young(YoungDiagram{}, 3, 2).minors);

    RunResult r2 = run("test --n 4 --k 4 --young 3,1");
    REQUIRE(r2.exit_code == 0);
    CHECK(nlohmann::json::parse(r2.out)["minors"].size() == 16);

    RunResult r3 = run("test --n 4 --k 2 --young 2,2 --path");
    REQUIRE(r3.exit_code == 0);
    nlohmann::json pj = nlohmann::json::parse(r3.out);
    int bridges = 0;
    for (const auto& step : pj["steps"])
        if (step["bridge"].get<bool>()) ++bridges;
    CHECK(bridges == 4);  // every box of 2,2 sits in the upper-left 2x2 square

    CHECK(run("test --n 3 --k 9 --young \"\"").exit_code == 2);
    CHECK(run("test --n 3").exit_code == 2);
}

TEST_CASE("cli: verify subcommand") {
    std::string pascal_path = temp_file("pascal", matrix_to_json(pascal(4)));
    RunResult pass = run("verify --matrix " + pascal_path + " --k 4");
    CHECK(pass.exit_code == 0);
    CHECK(nlohmann::json::parse(pass.out)["passed"] == true);

    RationalMatrix identity(3);
    for (int i = 1; i <= 3; ++i) identity.at(i, i) = 1;
    std::string id_path = temp_file("identity", matrix_to_json(identity));
    RunResult fail = run("verify --matrix " + id_path + " --k 1");
    CHECK(fail.exit_code == 1);
    CHECK(nlohmann::json::parse(fail.out)["passed"] == false);

    // verify against an explicit test set file
    std::string test_path =
        temp_file("test23", test_set_to_json(k_test_from_young(YoungDiagram{}, 3, 2)));
    std::string p3_path = temp_file("pascal3", matrix_to_json(pascal(3)));
    CHECK(run("verify --matrix " + p3_path + " --test " + test_path).exit_code == 0);

    CHECK(run("verify --matrix /nonexistent.json --k 2").exit_code == 2);
}

TEST_CASE("cli: graph subcommand") {
    RunResult r = run("graph --n 3 --k 2");
    REQUIRE(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["total_clusters"] == 50);
    std::vector<int> sizes;
    for (const auto& c : j["components"]) sizes.push_back(c["size"].get<int>());
    CHECK(sizes == std::vector<int>{14, 14, 5, 5, 4, 4, 2, 2});

    // env var node limit truncates
    RunResult trunc = run("graph --n 3 --k 3 2>/dev/null"); (void)trunc;
    setenv("KPOS_NODE_LIMIT", "10", 1);
    RunResult limited = run("graph --n 3 --k 3");
    unsetenv("KPOS_NODE_LIMIT");
    REQUIRE(limited.exit_code == 0);
    CHECK(nlohmann::json::parse(limited.out)["truncated"] == true);
}

TEST_CASE("cli: witness subcommand") {
    RunResult r = run("witness --k 2 --n 4 --anchor 2,2 --epsilon 1/100");
    REQUIRE(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["certified"] == true);
    RationalMatrix m = matrix_from_json(j["matrix"]);
    auto verdict = is_k_positive(m, 2);
    REQUIRE_FALSE(verdict.positive);
    CHECK(*verdict.failing == MinorId({2, 3}, {2, 3}));
    CHECK(run("witness --k 5 --n 6 --anchor 1,1").exit_code == 2);
}

TEST_CASE("cli: diagram subcommand") {
    RunResult ascii = run("diagram --n 3 --word lexmin --render ascii");
    REQUIRE(ascii.exit_code == 0);
    CHECK(ascii.out.find("track 1") != std::string::npos);
    RunResult svg = run("diagram --n 3 --word lexmin --render svg");
    CHECK(svg.out.find("<svg") != std::string::npos);
    RunResult seed = run("diagram --n 3 --word \"r2 r1 b1 b2\" --render seed");
    REQUIRE(seed.exit_code == 0);
    Seed s = seed_from_json(nlohmann::json::parse(seed.out));
    CHECK(s.vars.size() == 9);
    CHECK(run("diagram --n 3 --word e1 --render ascii").exit_code == 2);  // invalid word
}

TEST_CASE("cli: mutate round trip") {
    Seed s = diagram_seed(lex_words(3).first);
    std::string seed_path = temp_file("seed", seed_to_json(s));
    auto [track, index] = grid_chamber(3, 2, 2);
    int v = track * 100 + index;
    RunResult once = run("mutate --seed-file " + seed_path + " --at " + std::to_string(v));
    REQUIRE(once.exit_code == 0);
    Seed mutated = seed_from_json(nlohmann::json::parse(once.out));
    CHECK(clusters_equivalent(mutated, mutate_seed(s, v)));

    // mutating twice restores the seed
    RunResult twice = run("mutate --seed-file " + seed_path + " --at " + std::to_string(v) + " --at " +
                          std::to_string(v));
    REQUIRE(twice.exit_code == 0);
    Seed back = seed_from_json(nlohmann::json::parse(twice.out));
    CHECK(back.vars == s.vars);

    // frozen vertex -> usage error exit
    auto [ft, fi] = grid_chamber(3, 3, 1);
    CHECK(run("mutate --seed-file " + seed_path + " --at " + std::to_string(ft * 100 + fi))
              .exit_code == 2);
}

TEST_CASE("cli: falsify subcommand") {
    RunResult r = run("falsify --n 3 --k 2 --young \"\" --budget 200 --seed 5");
    REQUIRE(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.out)["found"] == false);
}
