#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kpos/errors.hpp"
#include "kpos/quiver.hpp"

namespace kpos {

enum class WireColor { Red, Blue };  // red crossings are e_t, blue are f_t

struct Crossing {
    WireColor color;
    int track;  // 1-based, in [1, n-1]
    bool operator==(const Crossing&) const = default;
};

/// A double wiring diagram as a word in the crossings e_t (red) and f_t
/// (blue). Red wires start bottom-to-top as (n, ..., 1), blue as (1, ..., n);
/// a track-t crossing swaps the wires of its color at heights t and t+1.
struct WiringWord {
    int n = 0;
    std::vector<Crossing> tokens;
    bool operator==(const WiringWord&) const = default;
};

struct ValidationReport {
    bool ok = true;
    int first_violation = -1;  // token index, or tokens.size() for "word too short"
    std::string reason;
};

inline ValidationReport word_validate(const WiringWord& w) {
    const int n = w.n;
    if (n < 2) return {false, 0, "wire count must be >= 2"};
    // positions are 1-based bottom-to-top; at[p-1] = wire currently at height p
    std::vector<int> red(n), blue(n);
    for (int p = 1; p <= n; ++p) {
        red[p - 1] = n - p + 1;
        blue[p - 1] = p;
    }
    std::set<std::pair<int, int>> red_crossed, blue_crossed;
    for (size_t i = 0; i < w.tokens.size(); ++i) {
        const Crossing& c = w.tokens[i];
        if (c.track < 1 || c.track >= n)
            return {false, static_cast<int>(i), "crossing track out of range"};
        auto& at = c.color == WireColor::Red ? red : blue;
        auto& crossed = c.color == WireColor::Red ? red_crossed : blue_crossed;
        int a = at[c.track - 1], b = at[c.track];
        auto pair = std::minmax(a, b);
        if (!crossed.insert({pair.first, pair.second}).second)
            return {false, static_cast<int>(i), "same-color wire pair crosses twice"};
        std::swap(at[c.track - 1], at[c.track]);
    }
    const size_t want = static_cast<size_t>(n) * (n - 1) / 2;
    if (red_crossed.size() != want || blue_crossed.size() != want)
        return {false, static_cast<int>(w.tokens.size()), "some wire pair never crosses"};
    return {};
}

/// One chamber: the region above height `track` between two consecutive
/// track-`track` crossings (or the unbounded ends, or the single top region
/// at track n). Labeled by the red and blue wires passing below.
struct Chamber {
    int track = 0;
    int index = 0;  // 0-based ordinal, left to right within the track
    std::vector<int> red;   // sorted wire labels below (rows of the minor)
    std::vector<int> blue;  // (columns of the minor)
    std::optional<int> left_boundary;   // token index
    std::optional<int> right_boundary;  // token index
    WireColor left_color = WireColor::Red;
    WireColor right_color = WireColor::Red;
    bool bounded = false;

    /// Stable vertex id; words here are far shorter than 100 tokens.
    int id() const { return track * 100 + index; }
};

inline std::vector<Chamber> chambers(const WiringWord& w) {
    ValidationReport rep = word_validate(w);
    if (!rep.ok)
        throw InputError("invalid wiring word at token " + std::to_string(rep.first_violation) +
                         ": " + rep.reason);
    const int n = w.n;
    const int len = static_cast<int>(w.tokens.size());
    // Snapshot wire heights before each token and at the end.
    std::vector<int> red(n), blue(n);
    for (int p = 1; p <= n; ++p) {
        red[p - 1] = n - p + 1;
        blue[p - 1] = p;
    }
    std::vector<std::vector<int>> red_hist, blue_hist;  // hist[i] = state before token i
    for (int i = 0; i <= len; ++i) {
        red_hist.push_back(red);
        blue_hist.push_back(blue);
        if (i < len) {
            const Crossing& c = w.tokens[i];
            auto& at = c.color == WireColor::Red ? red : blue;
            std::swap(at[c.track - 1], at[c.track]);
        }
    }
    auto below = [](const std::vector<int>& at, int t) {
        std::vector<int> out(at.begin(), at.begin() + t);
        std::sort(out.begin(), out.end());
        return out;
    };
    std::vector<Chamber> out;
    for (int t = 1; t < n; ++t) {
        std::vector<int> bnd;  // track-t token indices
        for (int i = 0; i < len; ++i)
            if (w.tokens[i].track == t) bnd.push_back(i);
        for (int c = 0; c <= static_cast<int>(bnd.size()); ++c) {
            Chamber ch;
            ch.track = t;
            ch.index = c;
            int at_time = c == 0 ? 0 : bnd[c - 1] + 1;
            ch.red = below(red_hist[at_time], t);
            ch.blue = below(blue_hist[at_time], t);
            if (c > 0) {
                ch.left_boundary = bnd[c - 1];
                ch.left_color = w.tokens[bnd[c - 1]].color;
            }
            if (c < static_cast<int>(bnd.size())) {
                ch.right_boundary = bnd[c];
                ch.right_color = w.tokens[bnd[c]].color;
            }
            ch.bounded = ch.left_boundary && ch.right_boundary;
            out.push_back(std::move(ch));
        }
    }
    Chamber top;  // the single region above everything, labeled ([n],[n])
    top.track = n;
    top.index = 0;
    for (int i = 1; i <= n; ++i) {
        top.red.push_back(i);
        top.blue.push_back(i);
    }
    out.push_back(std::move(top));
    return out;
}

namespace detail {

/// The quiver arrows between chambers, by the five geometric conditions.
/// Set semantics; every arrow has multiplicity one and at least one bounded
/// endpoint; only same-track or adjacent-track chambers interact.
inline std::set<std::pair<int, int>> diagram_arrows(const std::vector<Chamber>& ch, int word_len) {
    auto lo = [&](const Chamber& c) { return c.left_boundary ? *c.left_boundary : -1; };
    auto hi = [&](const Chamber& c) { return c.right_boundary ? *c.right_boundary : word_len; };
    auto contains = [&](const Chamber& outer, const Chamber& inner) {
        return lo(outer) <= lo(inner) && hi(inner) <= hi(outer);
    };
    auto inside = [&](int pos, const Chamber& c) { return lo(c) < pos && pos < hi(c); };

    std::set<std::pair<int, int>> arrows;
    auto add = [&](const Chamber& src, const Chamber& dst) {
        if (src.bounded || dst.bounded) arrows.insert({src.id(), dst.id()});
    };

    for (const Chamber& c : ch)
        for (const Chamber& d : ch) {
            if (&c == &d) continue;
            // (1) same-track neighbors: the shared crossing orients the arrow
            // rightward when blue, leftward when red.
            if (c.track == d.track && d.index == c.index + 1 && c.right_boundary) {
                if (c.right_color == WireColor::Blue)
                    add(c, d);
                else
                    add(d, c);
            }
            if (std::abs(c.track - d.track) != 1) continue;
            // (2) d sits directly above/below c with a red left wall and a
            // blue right wall: arrow into d.
            if (d.left_boundary && d.left_color == WireColor::Red && d.right_boundary &&
                d.right_color == WireColor::Blue && contains(c, d))
                add(c, d);
            // (3) c has a blue left wall and red right wall and fits inside d:
            // arrow out of c.
            if (c.left_boundary && c.left_color == WireColor::Blue && c.right_boundary &&
                c.right_color == WireColor::Red && contains(d, c))
                add(c, d);
            if (d.track == c.track + 1) {
                // (4) staircase overlaps with the upper chamber d.
                if (d.left_boundary && d.left_color == WireColor::Red && c.right_boundary &&
                    c.right_color == WireColor::Red && inside(*d.left_boundary, c) &&
                    inside(*c.right_boundary, d))
                    add(c, d);
                if (d.right_boundary && d.right_color == WireColor::Blue && c.left_boundary &&
                    c.left_color == WireColor::Blue && inside(*d.right_boundary, c) &&
                    inside(*c.left_boundary, d))
                    add(c, d);
            }
            if (c.track == d.track + 1) {
                // (5) staircase overlaps with the upper chamber c.
                if (c.left_boundary && c.left_color == WireColor::Blue && d.right_boundary &&
                    d.right_color == WireColor::Blue && inside(*c.left_boundary, d) &&
                    inside(*d.right_boundary, c))
                    add(c, d);
                if (c.right_boundary && c.right_color == WireColor::Red && d.left_boundary &&
                    d.left_color == WireColor::Red && inside(*c.right_boundary, d) &&
                    inside(*d.left_boundary, c))
                    add(c, d);
            }
        }
    return arrows;
}

}  // namespace detail

/// The seed attached to a diagram: one vertex per chamber (bounded chambers
/// mutable, unbounded frozen), variable = the chamber minor |X_{r,b}|.
inline Seed diagram_seed(const WiringWord& w) {
    std::vector<Chamber> ch = chambers(w);
    Seed s;
    for (const Chamber& c : ch) {
        s.quiver.add_vertex(c.id(), c.bounded ? VertexStatus::Mutable : VertexStatus::Frozen);
        s.vars[c.id()] = minor_poly(w.n, MinorId(c.red, c.blue));
    }
    for (const auto& [src, dst] : detail::diagram_arrows(ch, static_cast<int>(w.tokens.size())))
        s.quiver.add_arrows(src, dst);
    return s;
}

// ---- local moves -----------------------------------------------------------

enum class MoveKind { Braid, Swap, Slide };

struct LocalMoveResult {
    WiringWord word;
    MoveKind kind;
    /// Chamber id (in the pre-move diagram) whose minor the move exchanges;
    /// empty for free slides.
    std::optional<int> moved_chamber;
};

namespace detail {

inline bool tokens_commute(const Crossing& a, const Crossing& b) {
    if (a.color != b.color) return a.track != b.track;
    return std::abs(a.track - b.track) >= 2;
}

// Ordinal of the track-t chamber whose left wall is token `pos`.
inline int chamber_index_after(const WiringWord& w, int track, int pos) {
    int idx = 0;
    for (int i = 0; i <= pos; ++i)
        if (w.tokens[i].track == track) ++idx;
    return idx;
}

}  // namespace detail

/// Applies the local move anchored at token `pos`:
///   - braid u v u -> v u v (same color, adjacent tracks),
///   - same-track red/blue swap e_t f_t <-> f_t e_t,
///   - free slide of commuting crossings.
/// The first two exchange one chamber minor; slides change nothing.
inline LocalMoveResult local_move(const WiringWord& w, int pos) {
    const int len = static_cast<int>(w.tokens.size());
    if (pos < 0 || pos + 1 >= len) throw InputError("no local move at this position");
    const Crossing a = w.tokens[pos], b = w.tokens[pos + 1];
    LocalMoveResult out{w, MoveKind::Slide, std::nullopt};
    if (a.track == b.track && a.color != b.color) {
        std::swap(out.word.tokens[pos], out.word.tokens[pos + 1]);
        out.kind = MoveKind::Swap;
        out.moved_chamber = a.track * 100 + detail::chamber_index_after(w, a.track, pos);
        return out;
    }
    if (a.color == b.color && std::abs(a.track - b.track) == 1) {
        if (pos + 2 < len && w.tokens[pos + 2] == a) {
            out.word.tokens[pos] = b;
            out.word.tokens[pos + 1] = a;
            out.word.tokens[pos + 2] = b;
            out.kind = MoveKind::Braid;
            out.moved_chamber = a.track * 100 + detail::chamber_index_after(w, a.track, pos);
            return out;
        }
        throw InputError("no local move at this position");
    }
    if (detail::tokens_commute(a, b)) {
        std::swap(out.word.tokens[pos], out.word.tokens[pos + 1]);
        return out;
    }
    throw InputError("no local move at this position");
}

// ---- canonical words -------------------------------------------------------

/// r_i = e_{n-i} ... e_2 e_1 appended to `w`.
inline void append_r(WiringWord& w, int i) {
    for (int t = w.n - i; t >= 1; --t) w.tokens.push_back({WireColor::Red, t});
}
/// b_i = f_1 f_2 ... f_{n-i} appended to `w`.
inline void append_b(WiringWord& w, int i) {
    for (int t = 1; t <= w.n - i; ++t) w.tokens.push_back({WireColor::Blue, t});
}

/// The lexicographically minimal word r_{n-1}...r_1 b_1...b_{n-1} and maximal
/// word b_1...b_{n-1} r_{n-1}...r_1.
inline std::pair<WiringWord, WiringWord> lex_words(int n) {
    if (n < 2) throw InputError("lex words need n >= 2");
    WiringWord mn{n, {}}, mx{n, {}};
    for (int i = n - 1; i >= 1; --i) append_r(mn, i);
    for (int i = 1; i <= n - 1; ++i) append_b(mn, i);
    for (int i = 1; i <= n - 1; ++i) append_b(mx, i);
    for (int i = n - 1; i >= 1; --i) append_r(mx, i);
    return {std::move(mn), std::move(mx)};
}

/// Bubble-sorts commuting adjacent tokens to the least word under the order
/// (red before blue, then track). Two words are slide-equivalent iff they
/// normalize identically.
inline WiringWord canonical_slide_form(WiringWord w) {
    auto less = [](const Crossing& a, const Crossing& b) {
        if (a.color != b.color) return a.color == WireColor::Red;
        return a.track < b.track;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < w.tokens.size(); ++i)
            if (detail::tokens_commute(w.tokens[i], w.tokens[i + 1]) &&
                less(w.tokens[i + 1], w.tokens[i])) {
                std::swap(w.tokens[i], w.tokens[i + 1]);
                changed = true;
            }
    }
    return w;
}

inline bool words_equal_mod_slides(const WiringWord& a, const WiringWord& b) {
    return a.n == b.n && canonical_slide_form(a).tokens == canonical_slide_form(b).tokens;
}

// ---- text forms ------------------------------------------------------------

inline std::string token_str(const Crossing& c) {
    return (c.color == WireColor::Red ? "e" : "f") + std::to_string(c.track);
}

inline std::string word_to_string(const WiringWord& w) {
    std::string out;
    for (size_t i = 0; i < w.tokens.size(); ++i) out += (i ? "," : "") + token_str(w.tokens[i]);
    return out;
}

/// Accepts "lexmin"/"lexmax", comma/space separated crossings "e1,f2,...",
/// or r/b group shorthand "r3 b1 r2 b2 b3 r1".
inline WiringWord parse_word(const std::string& text, int n) {
    if (text == "lexmin") return lex_words(n).first;
    if (text == "lexmax") return lex_words(n).second;
    WiringWord w{n, {}};
    std::string item;
    std::istringstream in(text);
    std::string normalized = text;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream stream(normalized);
    while (stream >> item) {
        if (item.size() < 2) throw InputError("bad crossing token: " + item);
        char kind = item[0];
        int idx;
        try {
            idx = std::stoi(item.substr(1));
        } catch (const std::exception&) {
            throw InputError("bad crossing token: " + item);
        }
        switch (kind) {
            case 'e': w.tokens.push_back({WireColor::Red, idx}); break;
            case 'f': w.tokens.push_back({WireColor::Blue, idx}); break;
            case 'r':
                if (idx < 1 || idx > n - 1) throw InputError("r index out of range: " + item);
                append_r(w, idx);
                break;
            case 'b':
                if (idx < 1 || idx > n - 1) throw InputError("b index out of range: " + item);
                append_b(w, idx);
                break;
            default: throw InputError("bad crossing token: " + item);
        }
    }
    if (w.tokens.empty()) throw InputError("empty wiring word");
    return w;
}

// ---- D(Y)-family grid naming ----------------------------------------------

/// For words in the Young-diagram family (lex-min through lex-max), track t
/// holds 2(n-t)+1 chambers whose grid names run
/// (n,t), (n-1,t), ..., (t,t), (t,t+1), ..., (t,n) left to right.
inline std::pair<int, int> grid_position(int n, int track, int index) {
    if (index <= n - track) return {n - index, track};
    return {track, track + index - (n - track)};
}

/// Inverse of grid_position: chamber (track, index) holding grid cell (i, j).
inline std::pair<int, int> grid_chamber(int n, int i, int j) {
    int t = std::min(i, j);
    int index = j >= i ? (n - i) + (j - i) : n - i;
    return {t, index};
}

// ---- rendering -------------------------------------------------------------

/// Fixed-width ASCII picture: one text row per wire height (top height first),
/// crossings marked between the two heights they swap, followed by a chamber
/// label listing per track.
inline std::string render_ascii(const WiringWord& w) {
    const int n = w.n;
    const int len = static_cast<int>(w.tokens.size());
    const int width = 4 * len + 6;
    // 2n-1 picture rows: even rows are wire heights n..1, odd rows are gaps.
    std::vector<std::string> grid(2 * n - 1, std::string(width, ' '));
    for (int p = 1; p <= n; ++p) {
        std::string& row = grid[2 * (n - p)];
        for (int x = 0; x < width; ++x) row[x] = '-';
    }
    for (int i = 0; i < len; ++i) {
        const Crossing& c = w.tokens[i];
        int x = 4 * i + 4;
        int gap_row = 2 * (n - c.track) - 1;
        grid[gap_row][x - 1] = c.color == WireColor::Red ? 'e' : 'f';
        grid[gap_row][x] = static_cast<char>('0' + c.track);
        grid[gap_row + 1][x - 1] = '/';
        grid[gap_row - 1][x] = '\\';
    }
    std::string out;
    for (const auto& row : grid) out += row + "\n";
    std::map<int, std::string> per_track;
    for (const Chamber& c : chambers(w)) {
        std::string label = "(" + MinorId(c.red, c.blue).str() + ")";
        auto& line = per_track[c.track];
        line += (line.empty() ? "" : "  ") + label;
    }
    for (auto it = per_track.rbegin(); it != per_track.rend(); ++it)
        out += "track " + std::to_string(it->first) + ": " + it->second + "\n";
    return out;
}

/// Minimal SVG: red and blue wire polylines plus chamber labels.
inline std::string render_svg(const WiringWord& w) {
    const int n = w.n;
    const int len = static_cast<int>(w.tokens.size());
    const int step = 40, margin = 30, row_h = 40;
    const int width = margin * 2 + step * (len + 1);
    const int height = margin * 2 + row_h * n;
    auto ycoord = [&](int pos) { return height - margin - row_h * (pos - 1); };
    auto xcoord = [&](int time) { return margin + step * time; };

    // Trace each wire's height through time.
    std::vector<int> red(n), blue(n);
    for (int p = 1; p <= n; ++p) {
        red[p - 1] = n - p + 1;
        blue[p - 1] = p;
    }
    // paths[color][wire] = list of (time, height)
    std::map<int, std::vector<std::pair<int, int>>> red_path, blue_path;
    auto record = [&](int time) {
        for (int p = 1; p <= n; ++p) {
            red_path[red[p - 1]].push_back({time, p});
            blue_path[blue[p - 1]].push_back({time, p});
        }
    };
    record(0);
    for (int i = 0; i < len; ++i) {
        const Crossing& c = w.tokens[i];
        auto& at = c.color == WireColor::Red ? red : blue;
        std::swap(at[c.track - 1], at[c.track]);
        record(i + 1);
    }
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    auto polyline = [&](const std::vector<std::pair<int, int>>& path, const char* color) {
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto& [t, p] : path) svg << xcoord(t) << "," << ycoord(p) << " ";
        svg << "\"/>\n";
    };
    for (const auto& [wire, path] : red_path) polyline(path, "red");
    for (const auto& [wire, path] : blue_path) polyline(path, "blue");
    for (const Chamber& c : chambers(w)) {
        int lo = c.left_boundary ? *c.left_boundary + 1 : 0;
        int hi = c.right_boundary ? *c.right_boundary + 1 : len + 1;
        double x = (xcoord(lo) + xcoord(hi)) / 2.0;
        double y = c.track == n ? margin / 2.0 + 8 : (ycoord(c.track) + ycoord(c.track + 1)) / 2.0;
        svg << "<text x=\"" << x << "\" y=\"" << y
            << "\" font-size=\"10\" text-anchor=\"middle\">" << MinorId(c.red, c.blue).str()
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace kpos
