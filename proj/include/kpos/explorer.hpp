#pragma once

#include <algorithm>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "kpos/verify.hpp"

namespace kpos {

/// Exchange graph fragment: clusters (up to variable permutation) reached by
/// BFS, with the undirected mutation edges among them.
struct ExchangeGraph {
    std::map<ClusterKey, Seed> nodes;
    std::set<std::tuple<ClusterKey, ClusterKey, int>> edges;  // (lesser key, greater key, vertex)
    bool truncated = false;
};

/// The total-positivity seed of the lexicographically minimal diagram.
inline Seed tp_seed(int n) { return diagram_seed(lex_words(n).first); }

/// BFS over seed mutation at mutable vertices, deduplicating by ClusterKey.
/// Stops inserting once `limit` nodes exist and flags truncation (mandatory:
/// the full algebra is infinite for n >= 4).
inline ExchangeGraph explore(const Seed& start, size_t limit) {
    if (limit < 1) throw InputError("node budget must be >= 1");
    ExchangeGraph g;
    std::deque<ClusterKey> frontier;
    ClusterKey k0 = cluster_key(start);
    g.nodes.emplace(k0, start);
    frontier.push_back(k0);
    while (!frontier.empty()) {
        ClusterKey key = frontier.front();
        frontier.pop_front();
        Seed s = g.nodes.at(key);  // copy: mutate_seed may reallocate the map
        for (int v : s.quiver.vertices()) {
            if (s.quiver.status(v) != VertexStatus::Mutable) continue;
            Seed ns = mutate_seed(s, v);
            ClusterKey nk = cluster_key(ns);
            auto it = g.nodes.find(nk);
            if (it == g.nodes.end()) {
                if (g.nodes.size() >= limit) {
                    g.truncated = true;
                    continue;
                }
                g.nodes.emplace(nk, std::move(ns));
                frontier.push_back(nk);
            }
            g.edges.insert({std::min(key, nk), std::max(key, nk), v});
        }
    }
    return g;
}

namespace detail {

/// n=3 rule for the K/L-extended structure: the determinant is the only dead
/// vertex and exactly its neighbors freeze. Returns the vertices of `s` that
/// stay mutable under the k=2 structure (callers pass TP-explored seeds).
inline std::vector<int> k_mutable_vertices_n3(const Seed& s) {
    static const std::string det_key = minor_poly(3, MinorId({1, 2, 3}, {1, 2, 3})).canonical_key();
    std::vector<int> det_vertices;
    for (const auto& [v, p] : s.vars)
        if (p.canonical_key() == det_key) det_vertices.push_back(v);
    std::vector<int> out;
    for (const auto& [v, p] : s.vars) {
        if (s.quiver.status(v) != VertexStatus::Mutable) continue;
        if (p.canonical_key() == det_key) continue;
        bool frozen = false;
        for (int d : det_vertices)
            if (s.quiver.adjacent(v, d)) frozen = true;
        if (!frozen) out.push_back(v);
    }
    return out;
}

}  // namespace detail

struct ComponentSummary {
    size_t size = 0;
    Seed sample;
    ClusterKey sample_key;
    std::map<ClusterKey, Seed> nodes;
    /// Sorted canonical keys of the variables every cluster in the component
    /// shares (the non-mutable ones of the k-structure).
    std::vector<std::string> constant_keys;
};

struct ComponentsResult {
    std::vector<ComponentSummary> components;  // sorted by size descending, then key
    size_t total_clusters = 0;
    bool truncated = false;
};

/// Splits the n=3 total-positivity exchange graph into k=2 components by
/// removing mutation edges at vertices the k-structure freezes or kills; for
/// restrict_to_initial, instead explores just the component of the k-initial
/// minors seed (any n).
inline ComponentsResult components(int n, int k, size_t limit = 100000,
                                   bool restrict_to_initial = false) {
    ComponentsResult out;
    if (restrict_to_initial) {
        Seed start = make_full_k_seed(tp_seed(n), n, k);
        ExchangeGraph g = explore(start, limit);
        ComponentSummary c;
        c.size = g.nodes.size();
        c.sample = g.nodes.begin()->second;
        c.sample_key = g.nodes.begin()->first;
        for (const auto& [v, p] : c.sample.vars)
            if (c.sample.quiver.status(v) != VertexStatus::Mutable)
                c.constant_keys.push_back(p.canonical_key());
        std::sort(c.constant_keys.begin(), c.constant_keys.end());
        c.nodes = g.nodes;
        out.components.push_back(std::move(c));
        out.total_clusters = g.nodes.size();
        out.truncated = g.truncated;
        return out;
    }
    if (k == n) {
        ExchangeGraph g = explore(tp_seed(n), limit);
        ComponentSummary c;
        c.size = g.nodes.size();
        c.sample = g.nodes.begin()->second;
        c.sample_key = g.nodes.begin()->first;
        c.nodes = g.nodes;
        out.components.push_back(std::move(c));
        out.total_clusters = g.nodes.size();
        out.truncated = g.truncated;
        return out;
    }
    if (n != 3)
        throw InputError("unrestricted component analysis is only defined for n=3 (or k=n)");
    ExchangeGraph g = explore(tp_seed(n), limit);
    out.total_clusters = g.nodes.size();
    out.truncated = g.truncated;
    std::set<ClusterKey> visited;
    for (const auto& [key, seed] : g.nodes) {
        if (visited.count(key)) continue;
        ComponentSummary comp;
        comp.sample = seed;
        comp.sample_key = key;
        std::deque<ClusterKey> frontier{key};
        visited.insert(key);
        size_t size = 0;
        while (!frontier.empty()) {
            ClusterKey cur = frontier.front();
            frontier.pop_front();
            ++size;
            const Seed& s = g.nodes.at(cur);
            comp.nodes.emplace(cur, s);
            for (int v : detail::k_mutable_vertices_n3(s)) {
                ClusterKey nk = cluster_key(mutate_seed(s, v));
                if (g.nodes.count(nk) && visited.insert(nk).second) frontier.push_back(nk);
            }
        }
        comp.size = size;
        // Constant variables: everything the k-structure does not mutate.
        std::set<int> mut;
        for (int v : detail::k_mutable_vertices_n3(comp.sample)) mut.insert(v);
        for (const auto& [v, p] : comp.sample.vars)
            if (!mut.count(v)) comp.constant_keys.push_back(p.canonical_key());
        std::sort(comp.constant_keys.begin(), comp.constant_keys.end());
        out.components.push_back(std::move(comp));
    }
    std::sort(out.components.begin(), out.components.end(),
              [](const ComponentSummary& a, const ComponentSummary& b) {
                  if (a.size != b.size) return a.size > b.size;
                  return a.sample_key < b.sample_key;
              });
    return out;
}

// ---- bridges ---------------------------------------------------------------

/// The test cluster of a seed: canonical keys of the non-dead variables plus
/// the solid k-minors needed to pad the set to n^2. Empty when no such
/// padding exists (the component admits no test cluster of size n^2).
inline std::vector<std::string> test_cluster_keys(const Seed& s, int n, int k,
                                                  bool n3_rule = false) {
    std::set<std::string> keys;
    std::string det_key = minor_poly(n, MinorId(index_range(1, n), index_range(1, n)))
                              .canonical_key();
    for (const auto& [v, p] : s.vars) {
        if (n3_rule) {
            if (p.canonical_key() == det_key) continue;  // the unique dead vertex
        } else if (s.quiver.status(v) == VertexStatus::Dead) {
            continue;
        }
        keys.insert(p.canonical_key());
    }
    for (const MinorId& id : solid_k_minors(n, k)) keys.insert(minor_poly(n, id).canonical_key());
    if (keys.size() != static_cast<size_t>(n) * n) return {};
    return {keys.begin(), keys.end()};
}

struct Bridge {
    ClusterKey from;  // node in the first component
    ClusterKey to;    // node in the second
    int vertex = 0;   // the k-frozen vertex mutated
};

/// Finds all frozen-vertex mutations connecting two component node sets with
/// equal test clusters. `n3_rule` selects the n=3 K/L structure (candidates:
/// TP-mutable vertices the k-structure froze); otherwise candidates are
/// frozen vertices adjacent to a dead vertex.
inline std::vector<Bridge> find_bridges(const std::map<ClusterKey, Seed>& g1,
                                        const std::map<ClusterKey, Seed>& g2, int n, int k,
                                        bool n3_rule = false) {
    std::vector<Bridge> out;
    for (const auto& [key, s] : g1) {
        auto tc = test_cluster_keys(s, n, k, n3_rule);
        if (tc.empty()) continue;
        std::vector<int> candidates;
        if (n3_rule) {
            std::set<int> kmut;
            for (int v : detail::k_mutable_vertices_n3(s)) kmut.insert(v);
            for (const auto& [v, p] : s.vars)
                if (s.quiver.status(v) == VertexStatus::Mutable && !kmut.count(v))
                    candidates.push_back(v);
        } else {
            for (const auto& [v, p] : s.vars) {
                if (s.quiver.status(v) != VertexStatus::Frozen) continue;
                for (int u : s.quiver.neighbors(v))
                    if (s.quiver.status(u) == VertexStatus::Dead) {
                        candidates.push_back(v);
                        break;
                    }
            }
        }
        for (int v : candidates) {
            Seed ns = n3_rule ? mutate_seed(s, v) : detail::mutate_seed_unchecked(s, v);
            ClusterKey nk = cluster_key(ns);
            auto it = g2.find(nk);
            if (it == g2.end()) continue;
            if (test_cluster_keys(ns, n, k, n3_rule) == tc) out.push_back({key, nk, v});
        }
    }
    return out;
}

// ---- naming and export -----------------------------------------------------

/// Letter names of the n=3 polynomials: entries a..j (no i), 2-minors A..J
/// (X = the minor complementary to entry x), det, and the two non-minor
/// variables K = a*A - det, L = j*J - det.
inline std::map<std::string, std::string> letter_names_n3() {
    std::map<std::string, std::string> out;
    const char* entry = "abcdefghj";
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::string low(1, entry[i * 3 + j]);
            out[Polynomial::variable(i + 1, j + 1).canonical_key()] = low;
            std::vector<int> rows, cols;
            for (int r = 1; r <= 3; ++r)
                if (r != i + 1) rows.push_back(r);
            for (int c = 1; c <= 3; ++c)
                if (c != j + 1) cols.push_back(c);
            std::string up = low;
            up[0] = static_cast<char>(up[0] - 'a' + 'A');
            out[minor_poly(3, MinorId(rows, cols)).canonical_key()] = up;
        }
    Polynomial det = minor_poly(3, MinorId({1, 2, 3}, {1, 2, 3}));
    out[det.canonical_key()] = "det";
    Polynomial A = minor_poly(3, MinorId({2, 3}, {2, 3}));
    Polynomial J = minor_poly(3, MinorId({1, 2}, {1, 2}));
    out[(Polynomial::variable(1, 1) * A - det).canonical_key()] = "K";
    out[(Polynomial::variable(3, 3) * J - det).canonical_key()] = "L";
    return out;
}

/// Short display name for a variable: letter name when known, else a digest.
inline std::string var_display_name(const Polynomial& p,
                                    const std::map<std::string, std::string>& names) {
    std::string key = p.canonical_key();
    auto it = names.find(key);
    if (it != names.end()) return it->second;
    size_t h = std::hash<std::string>{}(key);
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%06zx", h & 0xffffff);
    return buf;
}

/// Node label: sorted display names of the cluster variables.
inline std::string cluster_display_name(const Seed& s,
                                        const std::map<std::string, std::string>& names) {
    std::vector<std::string> parts;
    for (const auto& [v, p] : s.vars)
        if (s.quiver.status(v) == VertexStatus::Mutable) parts.push_back(var_display_name(p, names));
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ",") + p;
    return out;
}

inline std::string graph_to_dot(const ExchangeGraph& g,
                                const std::map<std::string, std::string>& names = {}) {
    std::map<ClusterKey, int> ids;
    std::string out = "graph exchange {\n";
    int next = 0;
    for (const auto& [key, seed] : g.nodes) {
        ids[key] = next;
        out += "  n" + std::to_string(next) + " [label=\"" + cluster_display_name(seed, names) +
               "\"];\n";
        ++next;
    }
    for (const auto& [a, b, v] : g.edges)
        if (ids.count(a) && ids.count(b))
            out += "  n" + std::to_string(ids.at(a)) + " -- n" + std::to_string(ids.at(b)) + ";\n";
    return out + "}\n";
}

/// One JSON object per edge, streaming-friendly.
inline std::string graph_to_jsonl(const ExchangeGraph& g,
                                  const std::map<std::string, std::string>& names = {}) {
    std::string out;
    for (const auto& [a, b, v] : g.edges) {
        nlohmann::json j = {{"a", cluster_display_name(g.nodes.at(a), names)},
                            {"b", cluster_display_name(g.nodes.at(b), names)},
                            {"vertex", v}};
        out += j.dump() + "\n";
    }
    return out;
}

}  // namespace kpos
