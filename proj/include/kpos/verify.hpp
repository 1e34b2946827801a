#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "kpos/young.hpp"

namespace kpos {

/// Outcome of evaluating a test set: the first nonpositive member, if any.
struct Verdict {
    bool passed = true;
    std::optional<MinorId> failing_minor;
    std::optional<Polynomial> failing_extra;
    Rational value;  // value of the failing expression
};

/// Evaluates every member exactly; passes iff all values are > 0. Minors are
/// visited in id order, then extras.
inline Verdict run_test(const TestSet& t, const RationalMatrix& m) {
    if (t.n != m.n()) throw InputError("test set and matrix dimension mismatch");
    for (const MinorId& id : t.minors) {
        Rational v = minor(m, id);
        if (sign(v) <= 0) return {false, id, std::nullopt, v};
    }
    for (const Polynomial& p : t.extras) {
        Rational v = p.eval(m);
        if (sign(v) <= 0) return {false, std::nullopt, p, v};
    }
    return {};
}

inline nlohmann::json verdict_to_json(const Verdict& v) {
    nlohmann::json out = {{"passed", v.passed}};
    if (v.failing_minor) out["failing"] = minor_id_to_json(*v.failing_minor);
    if (v.failing_extra) out["failing_extra"] = poly_to_json(*v.failing_extra);
    if (!v.passed) out["value"] = rational_str(v.value);
    return out;
}

// ---- randomness -----------------------------------------------------------

namespace detail {

/// splitmix64-style mix of (seed, index) so each candidate gets an
/// independent, order-free stream.
inline std::mt19937_64 rng_for(uint64_t seed, uint64_t index) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return std::mt19937_64(z ^ (z >> 31));
}

inline Rational random_rational(std::mt19937_64& rng, long lo = -1000000, long hi = 1000000) {
    std::uniform_int_distribution<long> num(lo, hi);
    std::uniform_int_distribution<long> den(1, 1000000);
    return make_rational(num(rng), den(rng));
}

inline Rational random_positive_rational(std::mt19937_64& rng, long hi = 1000000) {
    std::uniform_int_distribution<long> num(1, hi);
    std::uniform_int_distribution<long> den(1, hi);
    return make_rational(num(rng), den(rng));
}

inline RationalMatrix random_matrix(int n, std::mt19937_64& rng) {
    RationalMatrix m(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) m.at(i, j) = random_rational(rng);
    return m;
}

inline RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b) {
    const int n = a.n();
    RationalMatrix out(n);
    for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= n; ++k) {
            if (a.at(i, k) == 0) continue;
            for (int j = 1; j <= n; ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return out;
}

}  // namespace detail

/// Transpose across the antidiagonal; permutes the minor values of a matrix
/// and preserves k-positivity, so it doubles adversarial families.
inline RationalMatrix antidiagonal_flip(const RationalMatrix& m) {
    const int n = m.n();
    RationalMatrix out(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) out.at(i, j) = m.at(n + 1 - j, n + 1 - i);
    return out;
}

/// Product of elementary bidiagonal factors (a full lower word, a positive
/// diagonal, a full upper word) with random positive parameters; certified
/// totally positive by the brute-force oracle before return.
inline RationalMatrix random_totally_positive(int n, uint64_t seed) {
    if (n < 1) throw InputError("matrix dimension must be >= 1");
    std::mt19937_64 rng = detail::rng_for(seed, 0x7095ULL);
    for (int attempt = 0; attempt < 20; ++attempt) {
        RationalMatrix m(n);
        for (int i = 1; i <= n; ++i) m.at(i, i) = detail::random_positive_rational(rng, 1000);
        auto apply_elementary = [&](bool lower, int i, const Rational& t) {
            // m <- m * E where E = I + t e_{i+1,i} (lower) or I + t e_{i,i+1}.
            RationalMatrix e(n);
            for (int d = 1; d <= n; ++d) e.at(d, d) = 1;
            if (lower)
                e.at(i + 1, i) = t;
            else
                e.at(i, i + 1) = t;
            m = detail::mat_mul(lower ? e : m, lower ? m : e);
        };
        for (int i = 1; i <= n - 1; ++i)
            for (int j = i; j >= 1; --j)
                apply_elementary(true, j, detail::random_positive_rational(rng, 1000));
        for (int i = 1; i <= n - 1; ++i)
            for (int j = i; j >= 1; --j)
                apply_elementary(false, j, detail::random_positive_rational(rng, 1000));
        if (is_k_positive(m, n).positive) return m;
    }
    throw std::logic_error("totally positive generation failed certification repeatedly");
}

// ---- witness matrices ------------------------------------------------------

struct WitnessSpec {
    int k = 2;          // 2 or 3
    int n = 0;
    int row = 1;        // anchor: target solid block rows [row, row+k-1]
    int col = 1;
    Rational epsilon = Rational(1, 100);
};

struct WitnessResult {
    RationalMatrix matrix;     // exactly one nonpositive minor of order <= k, at the block
    RationalMatrix companion;  // block replaced by its positive counterpart; totally positive
    Rational epsilon;          // final (possibly shrunk) epsilon
    int shrink_steps = 0;
    MinorId target;
};

namespace detail {

/// Exponent grid for the epsilon-power fill around the target block. Block
/// cells carry proxy exponents (the k=3 block's 1+epsilon cells count as
/// epsilon^0, its epsilon^4 corners as 4); the four quadrants are filled from
/// the cross rows/columns by min/max recurrences that keep every outside
/// 2x2 ratio strictly epsilon-separated.
inline std::vector<std::vector<long>> witness_exponents(const WitnessSpec& spec) {
    const int n = spec.n, k = spec.k, i = spec.row, j = spec.col;
    const int i2 = i + k - 1, j2 = j + k - 1;  // block bounds, inclusive
    std::vector<std::vector<long>> e(n + 1, std::vector<long>(n + 1, 0));

    // Block proxy exponents.
    if (k == 2) {
        e[i][j] = 1; e[i][j + 1] = 0;
        e[i + 1][j] = 0; e[i + 1][j + 1] = 1;
    } else {
        for (int r = i; r <= i2; ++r)
            for (int c = j; c <= j2; ++c) e[r][c] = 0;
        e[i][j + 2] = 4;
        e[i + 2][j] = 4;
    }

    // Cross rows and columns.
    if (k == 2) {
        for (int c = j + 2; c <= n; ++c) { e[i][c] = c - j; e[i + 1][c] = 0; }
        for (int c = 1; c < j; ++c) { e[i][c] = 0; e[i + 1][c] = j - c + 1; }
        for (int r = i + 2; r <= n; ++r) { e[r][j] = r - i; e[r][j + 1] = 0; }
        for (int r = 1; r < i; ++r) { e[r][j] = 0; e[r][j + 1] = i - r + 1; }
    } else {
        // The middle cross row/column sits two exponent steps below the
        // midpoint of its neighbors so every 2x2 against the block's
        // epsilon^4 corners stays strictly separated.
        for (int c = j + 3; c <= n; ++c) {
            e[i][c] = 4L * (c - j) - 4;
            e[i + 1][c] = 2L * (c - j) - 4;
            e[i + 2][c] = 0;
        }
        for (int c = 1; c < j; ++c) {
            e[i][c] = 0;
            e[i + 1][c] = 2L * (j - c);
            e[i + 2][c] = 4L * (j - c) + 4;
        }
        for (int r = i + 3; r <= n; ++r) {
            e[r][j] = 4L * (r - i) - 4;
            e[r][j + 1] = 2L * (r - i) - 4;
            e[r][j + 2] = 0;
        }
        for (int r = 1; r < i; ++r) {
            e[r][j] = 0;
            e[r][j + 1] = 2L * (i - r);
            e[r][j + 2] = 4L * (i - r) + 4;
        }
    }

    const long NONE = LONG_MIN;
    // Quadrant offset: the k=3 block needs double separation so its 3-minors
    // stay controlled by the epsilon^2 ratio bound.
    const long off = k == 3 ? 2 : 1;
    auto fill = [&](int r, int c, bool use_min, int s_lo, int s_hi, int t_lo, int t_hi) {
        long best = NONE;
        for (int s = s_lo; s <= s_hi; ++s)
            for (int t = t_lo; t <= t_hi; ++t) {
                long cand = e[r][t] + e[s][c] - e[s][t] + (use_min ? -off : off);
                if (best == NONE || (use_min ? cand < best : cand > best)) best = cand;
            }
        e[r][c] = best;
    };
    // Quadrants, in dependency order.
    for (int r = i2 + 1; r <= n; ++r)            // bottom-right: min - 1
        for (int c = j2 + 1; c <= n; ++c) fill(r, c, true, i, r - 1, j, c - 1);
    for (int r = i - 1; r >= 1; --r)             // top-right: max + 1
        for (int c = j2 + 1; c <= n; ++c) fill(r, c, false, r + 1, i2, j, c - 1);
    for (int r = i2 + 1; r <= n; ++r)            // bottom-left: max + 1
        for (int c = j - 1; c >= 1; --c) fill(r, c, false, i, r - 1, c + 1, j2);
    for (int r = i - 1; r >= 1; --r)             // top-left: min - 1
        for (int c = j - 1; c >= 1; --c) fill(r, c, true, r + 1, i2, c + 1, j2);
    return e;
}

/// Materializes the witness (and its positive companion) for a concrete
/// epsilon. Entries outside the block are epsilon powers; the block itself is
/// the fixed k x k pattern.
inline std::pair<RationalMatrix, RationalMatrix> witness_build(const WitnessSpec& spec) {
    const int n = spec.n, k = spec.k, i = spec.row, j = spec.col;
    const Rational& eps = spec.epsilon;
    auto e = witness_exponents(spec);
    RationalMatrix m(n), comp(n);
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c) {
            Rational v = rational_pow(eps, e[r][c]);
            m.at(r, c) = v;
            comp.at(r, c) = v;
        }
    if (k == 2) {
        m.at(i, j) = eps;         m.at(i, j + 1) = 1;
        m.at(i + 1, j) = 1;       m.at(i + 1, j + 1) = eps;
        comp.at(i, j) = 1;        comp.at(i, j + 1) = eps;
        comp.at(i + 1, j) = eps;  comp.at(i + 1, j + 1) = 1;
    } else {
        const Rational e4 = rational_pow(eps, 4);
        const Rational one_e = 1 + eps, one_2e = 1 + 2 * eps;
        Rational block[3][3] = {{one_e, one_e, e4}, {one_e, one_2e, one_e}, {e4, one_e, one_e}};
        Rational cblock[3][3] = {{1, eps, e4}, {eps, 1, eps}, {e4, eps, 1}};
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                m.at(i + r, j + c) = block[r][c];
                comp.at(i + r, j + c) = cblock[r][c];
            }
    }
    return {std::move(m), std::move(comp)};
}

}  // namespace detail

/// Builds the k-essentiality witness: a matrix whose unique nonpositive minor
/// of order <= k is the target solid k-minor, plus a totally positive
/// companion differing only in the block. Epsilon is halved (up to 10 times)
/// until the exhaustive scan certifies both properties.
inline WitnessResult witness_matrix(const WitnessSpec& spec) {
    if (spec.k != 2 && spec.k != 3) throw InputError("witness construction supports k = 2 or 3");
    if (spec.row < 1 || spec.col < 1 || spec.row + spec.k - 1 > spec.n ||
        spec.col + spec.k - 1 > spec.n)
        throw InputError("witness block does not fit in the matrix");
    if (!(spec.epsilon > 0 && spec.epsilon < 1))
        throw InputError("witness epsilon must lie in (0,1)");
    MinorId target = solid_minor(spec.row, spec.col, spec.k);
    WitnessSpec cur = spec;
    for (int shrink = 0; shrink <= 10; ++shrink) {
        auto [m, comp] = detail::witness_build(cur);
        bool ok = true;
        bool target_seen = false;
        for (const MinorId& id : enumerate_minor_ids(spec.n, spec.k)) {
            int s = sign(minor(m, id));
            if (id == target) {
                target_seen = s <= 0;
                if (!target_seen) { ok = false; break; }
            } else if (s <= 0) {
                ok = false;
                break;
            }
        }
        if (ok && target_seen && is_k_positive(comp, spec.n).positive)
            return {std::move(m), std::move(comp), cur.epsilon, shrink, target};
        cur.epsilon /= 2;
    }
    throw std::logic_error("witness certification failed even after shrinking epsilon");
}

// ---- falsification search --------------------------------------------------

namespace detail {

/// Candidate matrix for falsification index g: a deterministic mix of
/// uniform, totally positive, perturbed-TP, and (possibly flipped or
/// perturbed) witness matrices.
inline RationalMatrix falsify_candidate(const TestSet& t, uint64_t seed, uint64_t g,
                                        std::map<uint64_t, RationalMatrix>& witness_cache) {
    const int n = t.n;
    std::mt19937_64 rng = rng_for(seed, g);
    int kind = static_cast<int>(g % 6);
    const bool witness_ok = (t.k == 2 || t.k == 3) && n >= t.k;
    if (kind >= 3 && !witness_ok) kind -= 3;
    auto perturb = [&](RationalMatrix m) {
        std::uniform_int_distribution<int> pick(1, n);
        int i = pick(rng), j = pick(rng);
        Rational delta = random_rational(rng, -1000, 1000) / 1000;  // magnitude <= ~1e-3*1e3
        m.at(i, j) += delta / 1000;
        return m;
    };
    switch (kind) {
        case 0:
            return random_matrix(n, rng);
        case 1:
            return random_totally_positive(n, seed ^ g);
        case 2:
            return perturb(random_totally_positive(n, seed ^ (g * 3 + 1)));
        default: {
            std::uniform_int_distribution<int> pick(1, n - t.k + 1);
            int ar = pick(rng), ac = pick(rng);
            uint64_t key = static_cast<uint64_t>(ar) * 64 + ac;
            auto it = witness_cache.find(key);
            if (it == witness_cache.end()) {
                WitnessSpec spec;
                spec.k = t.k;
                spec.n = n;
                spec.row = ar;
                spec.col = ac;
                spec.epsilon = t.k == 2 ? Rational(1, 100) : Rational(1, 1000);
                it = witness_cache.emplace(key, witness_matrix(spec).matrix).first;
            }
            if (kind == 3) return it->second;
            if (kind == 4) return antidiagonal_flip(it->second);
            return perturb(it->second);
        }
    }
}

}  // namespace detail

/// Searches for a matrix that passes the test but is not k-positive. Workers
/// partition the candidate indices by residue; the returned counterexample is
/// the one with the smallest index, so the result is reproducible no matter
/// how many jobs run.
inline std::optional<RationalMatrix> falsify_test(const TestSet& t, size_t budget, uint64_t seed,
                                                  int jobs = 1) {
    if (jobs < 1) jobs = 1;
    std::vector<std::optional<std::pair<uint64_t, RationalMatrix>>> hits(jobs);
    auto worker = [&](int w) {
        std::map<uint64_t, RationalMatrix> cache;
        for (uint64_t g = w; g < budget; g += jobs) {
            RationalMatrix m = detail::falsify_candidate(t, seed, g, cache);
            if (run_test(t, m).passed && !is_k_positive(m, t.k).positive) {
                hits[w] = {{g, std::move(m)}};
                return;
            }
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
        for (auto& th : threads) th.join();
    }
    std::optional<std::pair<uint64_t, RationalMatrix>> best;
    for (auto& h : hits)
        if (h && (!best || h->first < best->first)) best = h;
    if (best) return best->second;
    return std::nullopt;
}

}  // namespace kpos
