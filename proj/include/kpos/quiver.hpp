#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kpos/errors.hpp"
#include "kpos/polynomial.hpp"

namespace kpos {

enum class VertexStatus { Mutable, Frozen, Dead };

inline std::string status_str(VertexStatus s) {
    switch (s) {
        case VertexStatus::Mutable: return "mutable";
        case VertexStatus::Frozen: return "frozen";
        case VertexStatus::Dead: return "dead";
    }
    return "?";
}

inline VertexStatus status_from_str(const std::string& s) {
    if (s == "mutable") return VertexStatus::Mutable;
    if (s == "frozen") return VertexStatus::Frozen;
    if (s == "dead") return VertexStatus::Dead;
    throw InputError("unknown vertex status: " + s);
}

/// Directed multigraph with no loops or 2-cycles; arrows stored as ordered
/// pairs with positive multiplicity. Adding arrows cancels against opposite
/// ones so the 2-cycle-free invariant holds by construction.
class Quiver {
public:
    void add_vertex(int id, VertexStatus status) {
        if (status_.count(id)) throw InputError("duplicate vertex id");
        status_[id] = status;
    }

    bool has_vertex(int id) const { return status_.count(id) > 0; }
    VertexStatus status(int id) const { return status_.at(id); }
    void set_status(int id, VertexStatus s) { status_.at(id) = s; }

    std::vector<int> vertices() const {
        std::vector<int> out;
        for (const auto& [id, s] : status_) out.push_back(id);
        return out;
    }

    int arrow_mult(int src, int dst) const {
        auto it = arrows_.find({src, dst});
        return it == arrows_.end() ? 0 : it->second;
    }

    const std::map<std::pair<int, int>, int>& arrows() const { return arrows_; }

    void add_arrows(int src, int dst, int mult = 1) {
        if (src == dst) throw InputError("loops are not allowed");
        if (!has_vertex(src) || !has_vertex(dst)) throw InputError("arrow endpoint missing");
        net(src, dst, mult);
    }

    bool adjacent(int a, int b) const {
        return arrow_mult(a, b) > 0 || arrow_mult(b, a) > 0;
    }

    std::vector<int> neighbors(int v) const {
        std::set<int> out;
        for (const auto& [e, m] : arrows_) {
            if (e.first == v) out.insert(e.second);
            if (e.second == v) out.insert(e.first);
        }
        return {out.begin(), out.end()};
    }

    /// The three-step mutation rule at vertex v, on multiplicities:
    /// m_ik += m_iv * m_vk (with sign cancellation killing 2-cycles), then
    /// all arrows at v reverse. Involutive. Status of v is not consulted
    /// here; seed-level code enforces mutability.
    Quiver mutated(int v) const {
        if (!has_vertex(v)) throw InputError("mutation at unknown vertex");
        Quiver out = *this;
        std::vector<std::pair<int, int>> in, outgoing;  // (other, mult)
        for (const auto& [e, m] : arrows_) {
            if (e.second == v) in.emplace_back(e.first, m);
            if (e.first == v) outgoing.emplace_back(e.second, m);
        }
        for (const auto& [i, p] : in)
            for (const auto& [k, q] : outgoing) out.net(i, k, p * q);
        for (const auto& [i, p] : in) {
            out.net(i, v, -p);
            out.net(v, i, p);
        }
        for (const auto& [k, q] : outgoing) {
            out.net(v, k, -q);
            out.net(k, v, q);
        }
        return out;
    }

    void remove_vertex(int v) {
        status_.erase(v);
        for (auto it = arrows_.begin(); it != arrows_.end();) {
            if (it->first.first == v || it->first.second == v)
                it = arrows_.erase(it);
            else
                ++it;
        }
    }

    bool operator==(const Quiver&) const = default;

    /// DOT export. Mutable vertices render as solid circles; frozen labels
    /// carry an asterisk, dead a circled dot.
    std::string to_dot(const std::map<int, std::string>& labels = {}) const {
        std::string out = "digraph quiver {\n";
        for (const auto& [id, s] : status_) {
            auto it = labels.find(id);
            std::string name = it == labels.end() ? std::to_string(id) : it->second;
            std::string attrs;
            switch (s) {
                case VertexStatus::Mutable:
                    attrs = "shape=circle, style=filled, fillcolor=black, fontcolor=white";
                    break;
                case VertexStatus::Frozen:
                    name = "*" + name;
                    attrs = "shape=circle";
                    break;
                case VertexStatus::Dead:
                    name = "(o)" + name;
                    attrs = "shape=doublecircle";
                    break;
            }
            out += "  v" + std::to_string(id) + " [label=\"" + name + "\", " + attrs + "];\n";
        }
        for (const auto& [e, m] : arrows_) {
            out += "  v" + std::to_string(e.first) + " -> v" + std::to_string(e.second);
            if (m > 1) out += " [label=\"" + std::to_string(m) + "\"]";
            out += ";\n";
        }
        return out + "}\n";
    }

private:
    // Signed accumulate into the pair (src,dst)/(dst,src), keeping only one
    // direction with positive multiplicity.
    void net(int src, int dst, int delta) {
        int fwd = arrow_mult(src, dst) - arrow_mult(dst, src) + delta;
        arrows_.erase({src, dst});
        arrows_.erase({dst, src});
        if (fwd > 0)
            arrows_[{src, dst}] = fwd;
        else if (fwd < 0)
            arrows_[{dst, src}] = -fwd;
    }

    std::map<int, VertexStatus> status_;
    std::map<std::pair<int, int>, int> arrows_;
};

/// A quiver with one variable per vertex. Cluster = variables on mutable
/// vertices; extended cluster adds the frozen ones.
struct Seed {
    Quiver quiver;
    std::map<int, Polynomial> vars;

    const Polynomial& var(int v) const { return vars.at(v); }
};

/// Permutation-invariant cluster identity: sorted canonical keys of the
/// mutable variables.
using ClusterKey = std::string;

inline ClusterKey cluster_key(const Seed& s) {
    std::vector<std::string> keys;
    for (const auto& [v, p] : s.vars)
        if (s.quiver.status(v) == VertexStatus::Mutable) keys.push_back(p.canonical_key());
    std::sort(keys.begin(), keys.end());
    ClusterKey out;
    for (const auto& k : keys) out += k + ";";
    return out;
}

inline bool clusters_equivalent(const Seed& a, const Seed& b) {
    return cluster_key(a) == cluster_key(b);
}

namespace detail {

/// Exchange-relation mutation without the mutability check; used internally
/// for bridge detection, where mutation happens at a k-frozen vertex.
inline Seed mutate_seed_unchecked(const Seed& s, int v) {
    Polynomial in_product = Polynomial::constant(1);
    Polynomial out_product = Polynomial::constant(1);
    for (const auto& [e, m] : s.quiver.arrows()) {
        if (e.second == v)
            for (int i = 0; i < m; ++i) in_product = in_product * s.var(e.first);
        if (e.first == v)
            for (int i = 0; i < m; ++i) out_product = out_product * s.var(e.second);
    }
    Seed out{s.quiver.mutated(v), s.vars};
    out.vars[v] = poly_exact_div(in_product + out_product, s.var(v));
    return out;
}

}  // namespace detail

/// Seed mutation: x_v x_v' = prod_{i->v} x_i + prod_{v->k} x_k, arrows with
/// multiplicity, empty products = 1. The new variable comes from exact
/// division; a nonzero remainder is fatal.
inline Seed mutate_seed(const Seed& s, int v) {
    if (!s.quiver.has_vertex(v)) throw InputError("mutation at unknown vertex");
    if (s.quiver.status(v) != VertexStatus::Mutable)
        throw MutationError("mutation not allowed at " + status_str(s.quiver.status(v)) + " vertex");
    return detail::mutate_seed_unchecked(s, v);
}

/// Lookup table canonical_key -> MinorId over all minors of order <= n.
inline std::map<std::string, MinorId> minor_key_table(int n) {
    std::map<std::string, MinorId> out;
    for (const MinorId& id : enumerate_minor_ids(n, n))
        out.emplace(minor_poly(n, id).canonical_key(), id);
    return out;
}

/// Derives the full k-seed: every variable must be a minor; minors of order
/// > k become dead, their (non-dead) neighbors freeze. With delete_dead the
/// dead vertices are removed, giving the k-seed.
inline Seed make_full_k_seed(const Seed& s, int n, int k, bool delete_dead = false) {
    if (k < 1 || k > n) throw InputError("k must satisfy 1 <= k <= n");
    auto table = minor_key_table(n);
    Seed out = s;
    std::vector<int> dead;
    for (const auto& [v, p] : s.vars) {
        auto it = table.find(p.canonical_key());
        if (it == table.end())
            throw InputError("make_full_k_seed requires a seed whose variables are all minors");
        if (it->second.order() > k) {
            out.quiver.set_status(v, VertexStatus::Dead);
            dead.push_back(v);
        }
    }
    for (int d : dead)
        for (int u : out.quiver.neighbors(d))
            if (out.quiver.status(u) == VertexStatus::Mutable)
                out.quiver.set_status(u, VertexStatus::Frozen);
    if (delete_dead)
        for (int d : dead) {
            out.quiver.remove_vertex(d);
            out.vars.erase(d);
        }
    return out;
}

// ---- Seed JSON ------------------------------------------------------------

inline nlohmann::json seed_to_json(const Seed& s) {
    nlohmann::json vertices = nlohmann::json::array();
    for (const auto& [v, p] : s.vars)
        vertices.push_back({{"id", v},
                            {"status", status_str(s.quiver.status(v))},
                            {"var", poly_to_json(p)}});
    nlohmann::json arrows = nlohmann::json::array();
    for (const auto& [e, m] : s.quiver.arrows())
        arrows.push_back({{"src", e.first}, {"dst", e.second}, {"mult", m}});
    return {{"vertices", std::move(vertices)}, {"arrows", std::move(arrows)}};
}

inline Seed seed_from_json(const nlohmann::json& j) {
    Seed s;
    for (const auto& v : j.at("vertices")) {
        int id = v.at("id").get<int>();
        s.quiver.add_vertex(id, status_from_str(v.at("status").get<std::string>()));
        s.vars[id] = poly_from_json(v.at("var"));
    }
    for (const auto& a : j.at("arrows"))
        s.quiver.add_arrows(a.at("src").get<int>(), a.at("dst").get<int>(), a.at("mult").get<int>());
    return s;
}

}  // namespace kpos
