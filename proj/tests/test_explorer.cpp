#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "kpos/explorer.hpp"

using namespace kpos;

TEST_CASE("explore: tiny total-positivity graphs") {
    ExchangeGraph g2 = explore(tp_seed(2), 100);
    CHECK(g2.nodes.size() == 2);  // one mutable vertex, two clusters
    CHECK_FALSE(g2.truncated);
    RationalMatrix tp = random_totally_positive(2, 9);
    for (const auto& [key, seed] : g2.nodes)
        for (const auto& [v, p] : seed.vars) CHECK(sign(p.eval(tp)) > 0);

    ExchangeGraph g3 = explore(tp_seed(3), 10000);
    CHECK(g3.nodes.size() == 50);
    CHECK_FALSE(g3.truncated);

    ExchangeGraph g4 = explore(tp_seed(4), 100);
    CHECK(g4.truncated);
    CHECK(g4.nodes.size() == 100);
}

TEST_CASE("explore: edges are involutive") {
    ExchangeGraph g = explore(tp_seed(3), 10000);
    int checked = 0;
    for (const auto& [a, b, v] : g.edges) {
        // Edge endpoints are stored key-sorted, and stored representatives can
        // carry the shared cluster on permuted vertex ids, so recover the edge
        // by finding a single mutation of either representative that lands on
        // the opposite endpoint.
        const Seed& sa = g.nodes.at(a);
        const Seed& sb = g.nodes.at(b);
        bool ok = cluster_key(mutate_seed(sa, v)) == b ||
                  cluster_key(mutate_seed(sb, v)) == a;
        if (!ok)
            for (int u : sa.quiver.vertices()) {
                if (sa.quiver.status(u) != VertexStatus::Mutable) continue;
                if (cluster_key(mutate_seed(sa, u)) == b) {
                    ok = true;
                    break;
                }
            }
        CHECK(ok);
        if (++checked >= 100) break;
    }
    CHECK(checked >= 50);
}

TEST_CASE("components: n=3 k=2 reproduces the eight-component split") {
    ComponentsResult res = components(3, 2);
    CHECK(res.total_clusters == 50);
    CHECK_FALSE(res.truncated);
    REQUIRE(res.components.size() == 8);
    std::vector<size_t> sizes;
    size_t total = 0;
    for (const auto& c : res.components) {
        sizes.push_back(c.size);
        total += c.size;
        CHECK(c.nodes.size() == c.size);
    }
    CHECK(sizes == std::vector<size_t>{14, 14, 5, 5, 4, 4, 2, 2});
    CHECK(total == 50);

    // the 5- and 2-node components' extended clusters avoid both key 2-minors
    std::string a_key = minor_poly(3, MinorId({2, 3}, {2, 3})).canonical_key();
    std::string j_key = minor_poly(3, MinorId({1, 2}, {1, 2})).canonical_key();
    for (const auto& c : res.components) {
        if (c.size != 5 && c.size != 2) continue;
        for (const auto& [key, seed] : c.nodes)
            for (const auto& [v, p] : seed.vars) {
                if (seed.quiver.status(v) == VertexStatus::Dead) continue;
                std::string pk = p.canonical_key();
                CHECK(pk != a_key);
                CHECK(pk != j_key);
            }
    }
}

TEST_CASE("components: k=n gives one full component") {
    ComponentsResult res = components(3, 3);
    REQUIRE(res.components.size() == 1);
    CHECK(res.components[0].size == 50);
    CHECK_THROWS_AS(components(4, 2), InputError);  // unrestricted only defined for n=3
}

TEST_CASE("components: n=4 k=2 restricted to the initial seed") {
    ComponentsResult res = components(4, 2, 100000, true);
    REQUIRE(res.components.size() == 1);
    CHECK(res.components[0].size == 132);  // type A5 cluster count
    CHECK_FALSE(res.truncated);
}

TEST_CASE("bridges between the two 14-node components") {
    ComponentsResult res = components(3, 2);
    REQUIRE(res.components.size() == 8);
    const auto& c1 = res.components[0];
    const auto& c2 = res.components[1];
    REQUIRE(c1.size == 14);
    REQUIRE(c2.size == 14);

    std::vector<Bridge> bridges = find_bridges(c1.nodes, c2.nodes, 3, 2, true);
    CHECK(bridges.size() == 4);

    auto names = letter_names_n3();
    std::set<std::pair<std::string, std::string>> got;
    for (const Bridge& b : bridges) {
        std::string from = cluster_display_name(c1.nodes.at(b.from), names);
        std::string to = cluster_display_name(c2.nodes.at(b.to), names);
        got.insert({std::min(from, to), std::max(from, to)});
    }
    std::set<std::pair<std::string, std::string>> want = {
        {"A,d,e,f", "J,d,e,f"},
        {"A,e,f,h", "J,e,f,h"},
        {"A,b,e,h", "J,b,e,h"},
        {"A,b,d,e", "J,b,d,e"}};
    CHECK(got == want);

    // a component has no bridges to itself
    CHECK(find_bridges(c1.nodes, c1.nodes, 3, 2, true).empty());
}

TEST_CASE("letter names cover the n=3 vocabulary") {
    auto names = letter_names_n3();
    CHECK(names.size() == 21);  // 9 entries + 9 two-minors + det + K + L
    CHECK(names.at(Polynomial::variable(1, 1).canonical_key()) == "a");
    CHECK(names.at(Polynomial::variable(3, 3).canonical_key()) == "j");
    CHECK(names.at(minor_poly(3, MinorId({2, 3}, {2, 3})).canonical_key()) == "A");
    CHECK(names.at(minor_poly(3, MinorId({1, 2}, {1, 2})).canonical_key()) == "J");
    CHECK(names.at(minor_poly(3, MinorId({1, 2, 3}, {1, 2, 3})).canonical_key()) == "det");
}

TEST_CASE("graph exports") {
    ExchangeGraph g = explore(tp_seed(3), 10000);
    auto names = letter_names_n3();
    std::string dot = graph_to_dot(g, names);
    CHECK(dot.find("graph exchange") != std::string::npos);
    CHECK(dot.find(" -- ") != std::string::npos);
    std::string jsonl = graph_to_jsonl(g, names);
    CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == static_cast<long>(g.edges.size()));
}
