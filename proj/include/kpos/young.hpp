#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kpos/errors.hpp"
#include "kpos/wiring.hpp"

namespace kpos {

/// Partition with weakly decreasing row lengths, drawn as left-justified
/// boxes; must fit in an (n-1) x (n-1) square for wire count n.
struct YoungDiagram {
    std::vector<int> rows;  // trailing zeros trimmed

    YoungDiagram() = default;
    explicit YoungDiagram(std::vector<int> r) : rows(std::move(r)) {
        while (!rows.empty() && rows.back() == 0) rows.pop_back();
        for (size_t i = 0; i < rows.size(); ++i) {
            if (rows[i] < 0 || (i > 0 && rows[i] > rows[i - 1]))
                throw InputError("young diagram rows must be weakly decreasing and nonnegative");
        }
    }

    int row(int i) const {  // 1-based; 0 beyond the listed rows
        return i >= 1 && i <= static_cast<int>(rows.size()) ? rows[i - 1] : 0;
    }
    int box_count() const {
        int c = 0;
        for (int r : rows) c += r;
        return c;
    }
    bool fits(int n) const {
        return static_cast<int>(rows.size()) <= n - 1 && (rows.empty() || rows[0] <= n - 1);
    }
    bool operator==(const YoungDiagram&) const = default;
    auto operator<=>(const YoungDiagram&) const = default;

    std::string str() const {
        std::string out;
        for (size_t i = 0; i < rows.size(); ++i) out += (i ? "," : "") + std::to_string(rows[i]);
        return out;
    }
};

/// Parses comma-separated row lengths; "" is the empty diagram.
inline YoungDiagram parse_young(const std::string& text) {
    std::vector<int> rows;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            rows.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw InputError("bad young diagram row: " + item);
        }
    }
    return YoungDiagram(std::move(rows));
}

/// All diagrams fitting in a max_rows x max_cols box.
inline std::vector<YoungDiagram> enumerate_young(int max_rows, int max_cols) {
    std::vector<YoungDiagram> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int row, int cap) -> void {
        out.push_back(YoungDiagram(cur));
        if (row > max_rows) return;
        for (int len = cap; len >= 1; --len) {
            cur.push_back(len);
            self(self, row + 1, len);
            cur.pop_back();
        }
    };
    rec(rec, 1, max_cols);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// The diagram's word D(Y): start from b_1 ... b_{n-1} and insert r_i into the
/// gap after b_{l_i}; several r's in one gap go in decreasing order.
inline WiringWord word_from_young(const YoungDiagram& y, int n) {
    if (n < 2) throw InputError("word_from_young needs n >= 2");
    if (!y.fits(n)) throw InputError("young diagram does not fit in the (n-1) square");
    WiringWord w{n, {}};
    for (int gap = 0; gap <= n - 1; ++gap) {
        for (int i = n - 1; i >= 1; --i)
            if (y.row(i) == gap) append_r(w, i);
        if (gap < n - 1) append_b(w, gap + 1);
    }
    return w;
}

namespace detail {

// Boxes of Y on the d'th superdiagonal (cells (t, t+d)) and subdiagonal
// (cells (t+d, t)), d >= 0.
inline int super_boxes(const YoungDiagram& y, int d) {
    int c = 0;
    for (int t = 1; y.row(t) >= t + d; ++t) ++c;
    return c;
}
inline int sub_boxes(const YoungDiagram& y, int d) {
    int c = 0;
    for (int t = 1; y.row(t + d) >= t; ++t) ++c;
    return c;
}

}  // namespace detail

/// Closed-form chamber-minor grid of D(Y): entry (i,j) (1-based) is the minor
/// at grid vertex (i,j). Shift distances come from capped diagonal box
/// counts of Y.
inline std::vector<std::vector<MinorId>> chamber_grid_formula(const YoungDiagram& y, int n) {
    if (!y.fits(n)) throw InputError("young diagram does not fit in the (n-1) square");
    std::vector<std::vector<MinorId>> grid(n, std::vector<MinorId>(n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            MinorId id;
            if (i <= j) {
                int d = j - i;
                int p = std::min(n - j, detail::super_boxes(y, d));
                id = MinorId(index_range(1 + p, i + p), index_range(d + p + 1, j + p));
            } else {
                int d = i - j;
                int b = std::min(n - i, detail::sub_boxes(y, d));
                id = MinorId(index_range(d + b + 1, i + b), index_range(1 + b, j + b));
            }
            grid[i - 1][j - 1] = std::move(id);
        }
    return grid;
}

/// Chamber minors of D(Y) read off the actual diagram sweep, arranged on the
/// same (i,j) grid; the formula's ground-truth oracle.
inline std::vector<std::vector<MinorId>> chamber_grid_sweep(const YoungDiagram& y, int n) {
    std::vector<std::vector<MinorId>> grid(n, std::vector<MinorId>(n));
    for (const Chamber& c : chambers(word_from_young(y, n))) {
        auto [i, j] = grid_position(n, c.track, c.index);
        grid[i - 1][j - 1] = MinorId(c.red, c.blue);
    }
    return grid;
}

/// A candidate k-positivity test: n*n expressions, minors plus (rarely)
/// non-minor extras.
struct TestSet {
    int n = 0;
    int k = 0;
    std::set<MinorId> minors;
    std::vector<Polynomial> extras;

    size_t size() const { return minors.size() + extras.size(); }
};

/// All (n-k+1)^2 solid k-minors.
inline std::vector<MinorId> solid_k_minors(int n, int k) {
    std::vector<MinorId> out;
    for (int i = 1; i + k - 1 <= n; ++i)
        for (int j = 1; j + k - 1 <= n; ++j) out.push_back(solid_minor(i, j, k));
    return out;
}

/// The k-positivity test read off D(Y): chamber minors of tracks <= k plus
/// the solid k-minors the grid misses; always n^2 minors.
inline TestSet k_test_from_young(const YoungDiagram& y, int n, int k) {
    if (k < 1 || k > n) throw InputError("k must satisfy 1 <= k <= n");
    TestSet t;
    t.n = n;
    t.k = k;
    auto grid = chamber_grid_formula(y, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (std::min(i, j) <= k) t.minors.insert(grid[i - 1][j - 1]);
    for (const MinorId& id : solid_k_minors(n, k)) t.minors.insert(id);
    if (t.size() != static_cast<size_t>(n) * n)
        throw std::logic_error("k-test construction did not produce n^2 distinct minors");
    return t;
}

// ---- fundamental paths ----------------------------------------------------

struct PathMutation {
    int track = 0;
    bool bridge = false;    // mutation lands exactly on track k
    bool dead_noop = false; // track above k: bookkeeping only, no test change
};

struct PathStep {
    YoungDiagram young;
    std::optional<std::pair<int, int>> box;  // (row, new row length) added to reach this diagram
    std::vector<PathMutation> mutations;     // bottom-up, track 1 first
    bool bridge = false;
    TestSet test;
    int rank = 0;  // mutable vertices of the full k-seed at this diagram
};

struct PathReport {
    int n = 0;
    int k = 0;
    std::vector<PathStep> steps;
};

/// Walks a box-by-box chain of Young diagrams (starting at the empty diagram;
/// partial chains allowed) and reports, per step, the bottom-up mutation
/// tracks, bridge flags, the emitted test, and the sub-cluster-algebra rank.
inline PathReport fundamental_path(const std::vector<YoungDiagram>& ys, int n, int k) {
    if (ys.empty() || !ys.front().rows.empty())
        throw InputError("fundamental path must start at the empty diagram");
    PathReport rep;
    rep.n = n;
    rep.k = k;
    for (size_t s = 0; s < ys.size(); ++s) {
        const YoungDiagram& y = ys[s];
        if (!y.fits(n)) throw InputError("young diagram does not fit in the (n-1) square");
        PathStep step;
        step.young = y;
        if (s > 0) {
            const YoungDiagram& prev = ys[s - 1];
            int box_row = 0;
            for (int i = 1; i <= n - 1; ++i) {
                int diff = y.row(i) - prev.row(i);
                if (diff == 1 && box_row == 0)
                    box_row = i;
                else if (diff != 0)
                    throw InputError("consecutive diagrams must differ by one added box");
            }
            if (box_row == 0) throw InputError("consecutive diagrams must differ by one added box");
            int box_col = y.row(box_row);
            step.box = {box_row, box_col};
            int top = std::min(n - box_row, n - box_col);
            for (int j = 1; j <= top; ++j) {
                PathMutation m;
                m.track = j;
                m.bridge = j == k;
                m.dead_noop = j > k;
                step.bridge = step.bridge || m.bridge;
                step.mutations.push_back(m);
            }
        }
        step.test = k_test_from_young(y, n, k);
        Seed full = make_full_k_seed(diagram_seed(word_from_young(y, n)), n, k);
        for (int v : full.quiver.vertices())
            if (full.quiver.status(v) == VertexStatus::Mutable) ++step.rank;
        rep.steps.push_back(std::move(step));
    }
    return rep;
}

// ---- JSON -----------------------------------------------------------------

inline nlohmann::json test_set_to_json(const TestSet& t) {
    nlohmann::json minors = nlohmann::json::array();
    for (const MinorId& id : t.minors) minors.push_back(minor_id_to_json(id));
    nlohmann::json extras = nlohmann::json::array();
    for (const Polynomial& p : t.extras) extras.push_back(poly_to_json(p));
    nlohmann::json out = {{"n", t.n}, {"k", t.k}, {"minors", std::move(minors)}};
    if (!t.extras.empty()) out["extras"] = std::move(extras);
    return out;
}

inline TestSet test_set_from_json(const nlohmann::json& j) {
    TestSet t;
    t.n = j.at("n").get<int>();
    t.k = j.at("k").get<int>();
    for (const auto& m : j.at("minors")) t.minors.insert(minor_id_from_json(m));
    if (j.contains("extras"))
        for (const auto& p : j.at("extras")) t.extras.push_back(poly_from_json(p));
    return t;
}

inline nlohmann::json path_report_to_json(const PathReport& rep) {
    nlohmann::json steps = nlohmann::json::array();
    for (const PathStep& s : rep.steps) {
        nlohmann::json muts = nlohmann::json::array();
        for (const PathMutation& m : s.mutations)
            muts.push_back({{"track", m.track}, {"bridge", m.bridge}, {"dead_noop", m.dead_noop}});
        nlohmann::json step = {{"young", s.young.str()},
                               {"mutations", std::move(muts)},
                               {"bridge", s.bridge},
                               {"rank", s.rank},
                               {"test", test_set_to_json(s.test)}};
        if (s.box) step["box"] = {{"row", s.box->first}, {"col", s.box->second}};
        steps.push_back(std::move(step));
    }
    return {{"n", rep.n}, {"k", rep.k}, {"steps", std::move(steps)}};
}

}  // namespace kpos
