#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kpos/errors.hpp"
#include "kpos/rational.hpp"

namespace kpos {

/// Names one minor |X_{I,J}|: strictly increasing 1-based row and column
/// index sets of equal size.
struct MinorId {
    std::vector<int> rows;
    std::vector<int> cols;

    MinorId() = default;
    MinorId(std::vector<int> r, std::vector<int> c) : rows(std::move(r)), cols(std::move(c)) {}

    int order() const { return static_cast<int>(rows.size()); }

    auto operator<=>(const MinorId&) const = default;

    void validate(int n) const {
        if (rows.empty() || rows.size() != cols.size())
            throw InputError("minor id needs equal, nonempty row/col sets");
        for (const auto* v : {&rows, &cols}) {
            int prev = 0;
            for (int i : *v) {
                if (i <= prev || i > n) throw InputError("minor index out of range or not increasing");
                prev = i;
            }
        }
    }

    std::string str() const {
        std::string s = "{";
        for (size_t i = 0; i < rows.size(); ++i) s += (i ? "," : "") + std::to_string(rows[i]);
        s += "},{";
        for (size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + std::to_string(cols[i]);
        return s + "}";
    }
};

/// Interval [lo, hi] as an index set.
inline std::vector<int> index_range(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

inline MinorId solid_minor(int row_start, int col_start, int order) {
    return MinorId(index_range(row_start, row_start + order - 1),
                   index_range(col_start, col_start + order - 1));
}

class RationalMatrix {
public:
    explicit RationalMatrix(int n) : n_(n), entries_(static_cast<size_t>(n) * n) {
        if (n < 1) throw InputError("matrix dimension must be >= 1");
    }
    RationalMatrix(int n, std::vector<Rational> entries) : n_(n), entries_(std::move(entries)) {
        if (n < 1) throw InputError("matrix dimension must be >= 1");
        if (entries_.size() != static_cast<size_t>(n) * n)
            throw InputError("matrix entry count does not match dimension");
    }

    int n() const { return n_; }
    const Rational& at(int i, int j) const { return entries_[idx(i, j)]; }
    Rational& at(int i, int j) { return entries_[idx(i, j)]; }

    bool operator==(const RationalMatrix&) const = default;

private:
    size_t idx(int i, int j) const {
        if (i < 1 || i > n_ || j < 1 || j > n_) throw InputError("matrix index out of range");
        return static_cast<size_t>(i - 1) * n_ + (j - 1);
    }

    int n_;
    std::vector<Rational> entries_;
};

namespace detail {

// Fraction-free (Bareiss) elimination; exact over the rationals. Pivots on
// the first nonzero entry in column order, correcting the sign for swaps.
inline Rational det_bareiss(std::vector<std::vector<Rational>> a) {
    const size_t sz = a.size();
    Rational prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < sz; ++k) {
        size_t pivot = k;
        while (pivot < sz && a[pivot][k] == 0) ++pivot;
        if (pivot == sz) return Rational(0);
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < sz; ++i)
            for (size_t j = k + 1; j < sz; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign > 0 ? a[sz - 1][sz - 1] : -a[sz - 1][sz - 1];
}

}  // namespace detail

/// det of the submatrix selected by `id`. Laplace for order <= 3, Bareiss
/// elimination above that; exact either way.
inline Rational minor(const RationalMatrix& m, const MinorId& id) {
    id.validate(m.n());
    const auto& r = id.rows;
    const auto& c = id.cols;
    switch (id.order()) {
        case 1:
            return m.at(r[0], c[0]);
        case 2:
            return m.at(r[0], c[0]) * m.at(r[1], c[1]) - m.at(r[0], c[1]) * m.at(r[1], c[0]);
        case 3:
            return m.at(r[0], c[0]) * (m.at(r[1], c[1]) * m.at(r[2], c[2]) - m.at(r[1], c[2]) * m.at(r[2], c[1]))
                 - m.at(r[0], c[1]) * (m.at(r[1], c[0]) * m.at(r[2], c[2]) - m.at(r[1], c[2]) * m.at(r[2], c[0]))
                 + m.at(r[0], c[2]) * (m.at(r[1], c[0]) * m.at(r[2], c[1]) - m.at(r[1], c[1]) * m.at(r[2], c[0]));
        default: {
            std::vector<std::vector<Rational>> sub(id.order(), std::vector<Rational>(id.order()));
            for (int i = 0; i < id.order(); ++i)
                for (int j = 0; j < id.order(); ++j) sub[i][j] = m.at(r[i], c[j]);
            return detail::det_bareiss(std::move(sub));
        }
    }
}

/// All MinorIds of order <= k in [n], ordered by order, then lexicographically
/// by rows, then by cols. Count is sum_{l=1..k} C(n,l)^2.
inline std::vector<MinorId> enumerate_minor_ids(int n, int k) {
    if (k < 1 || k > n) throw InputError("order bound k must satisfy 1 <= k <= n");
    std::vector<MinorId> out;
    for (int order = 1; order <= k; ++order) {
        std::vector<std::vector<int>> subsets;
        std::vector<int> cur(order);
        for (int i = 0; i < order; ++i) cur[i] = i + 1;
        while (true) {
            subsets.push_back(cur);
            int pos = order - 1;
            while (pos >= 0 && cur[pos] == n - (order - 1 - pos)) --pos;
            if (pos < 0) break;
            ++cur[pos];
            for (int i = pos + 1; i < order; ++i) cur[i] = cur[i - 1] + 1;
        }
        for (const auto& rows : subsets)
            for (const auto& cols : subsets) out.emplace_back(rows, cols);
    }
    return out;
}

struct PositivityVerdict {
    bool positive = true;
    std::optional<MinorId> failing;
    Rational value;  // value of the failing minor, when present
};

/// Brute-force k-positivity oracle: returns the first (in enumeration order)
/// minor of order <= k whose value is <= 0, or a positive verdict. Zero
/// counts as failure; positivity is strict.
inline PositivityVerdict is_k_positive(const RationalMatrix& m, int k) {
    for (const MinorId& id : enumerate_minor_ids(m.n(), k)) {
        Rational v = minor(m, id);
        if (sign(v) <= 0) return {false, id, v};
    }
    return {};
}

/// Lewis Carroll (Dodgson) residual: with M_A^B denoting M with rows A and
/// columns B removed,
///   det(M_a^b) det(M_a2^b2) - det(M_a^b2) det(M_a2^b) - det(M) det(M_{a,a2}^{b,b2}).
/// Identically zero for every square matrix; exposed so the identity can be
/// property-tested in exact arithmetic.
inline Rational dodgson_residual(const RationalMatrix& m, int a, int a2, int b, int b2) {
    const int n = m.n();
    if (n < 2) throw InputError("dodgson residual needs n >= 2");
    if (!(1 <= a && a < a2 && a2 <= n && 1 <= b && b < b2 && b2 <= n))
        throw InputError("dodgson indices must satisfy a < a2, b < b2 in range");
    auto complement = [n](std::initializer_list<int> removed) {
        std::vector<int> v;
        for (int i = 1; i <= n; ++i)
            if (std::find(removed.begin(), removed.end(), i) == removed.end()) v.push_back(i);
        return v;
    };
    auto det_without = [&](std::initializer_list<int> rows_removed, std::initializer_list<int> cols_removed) {
        return minor(m, MinorId(complement(rows_removed), complement(cols_removed)));
    };
    Rational full = minor(m, MinorId(index_range(1, n), index_range(1, n)));
    Rational inner = n == 2 ? Rational(1) : minor(m, MinorId(complement({a, a2}), complement({b, b2})));
    return det_without({a}, {b}) * det_without({a2}, {b2})
         - det_without({a}, {b2}) * det_without({a2}, {b})
         - full * inner;
}

// ---- JSON (matrix wire format) --------------------------------------------
// {"n": int, "entries": [["p/q", ...], ...]}, rationals as canonical strings.

inline nlohmann::json matrix_to_json(const RationalMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 1; i <= m.n(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 1; j <= m.n(); ++j) row.push_back(rational_str(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"n", m.n()}, {"entries", std::move(rows)}};
}

inline RationalMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        throw InputError("matrix json needs \"n\" and \"entries\"");
    int n = j.at("n").get<int>();
    RationalMatrix m(n);
    const auto& rows = j.at("entries");
    if (!rows.is_array() || rows.size() != static_cast<size_t>(n))
        throw InputError("matrix json: wrong row count");
    for (int i = 1; i <= n; ++i) {
        const auto& row = rows.at(i - 1);
        if (!row.is_array() || row.size() != static_cast<size_t>(n))
            throw InputError("matrix json: wrong column count");
        for (int j2 = 1; j2 <= n; ++j2) m.at(i, j2) = parse_rational(row.at(j2 - 1).get<std::string>());
    }
    return m;
}

inline nlohmann::json minor_id_to_json(const MinorId& id) {
    return {{"rows", id.rows}, {"cols", id.cols}};
}

inline MinorId minor_id_from_json(const nlohmann::json& j) {
    return MinorId(j.at("rows").get<std::vector<int>>(), j.at("cols").get<std::vector<int>>());
}

}  // namespace kpos
