#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "kpos/errors.hpp"
#include "kpos/matrix.hpp"
#include "kpos/rational.hpp"

namespace kpos {

/// One entry symbol x_{i,j}, 1-based.
struct Symbol {
    int row = 0;
    int col = 0;
    auto operator<=>(const Symbol&) const = default;
};

/// Sparse monomial: factors sorted by symbol, exponents > 0.
struct Monomial {
    std::vector<std::pair<Symbol, unsigned>> factors;

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [s, e] : factors) d += e;
        return d;
    }

    bool operator==(const Monomial&) const = default;

    Monomial operator*(const Monomial& o) const {
        Monomial out;
        auto a = factors.begin(), b = o.factors.begin();
        while (a != factors.end() || b != o.factors.end()) {
            if (b == o.factors.end() || (a != factors.end() && a->first < b->first))
                out.factors.push_back(*a++);
            else if (a == factors.end() || b->first < a->first)
                out.factors.push_back(*b++);
            else {
                out.factors.emplace_back(a->first, a->second + b->second);
                ++a, ++b;
            }
        }
        return out;
    }

    /// Whether `o` divides this monomial.
    bool divisible_by(const Monomial& o) const {
        auto a = factors.begin();
        for (const auto& [s, e] : o.factors) {
            while (a != factors.end() && a->first < s) ++a;
            if (a == factors.end() || a->first != s || a->second < e) return false;
        }
        return true;
    }

    /// Quotient; caller must have checked divisibility.
    Monomial operator/(const Monomial& o) const {
        Monomial out;
        auto b = o.factors.begin();
        for (const auto& [s, e] : factors) {
            unsigned sub = 0;
            if (b != o.factors.end() && b->first == s) sub = (b++)->second;
            if (e > sub) out.factors.emplace_back(s, e - sub);
        }
        return out;
    }
};

/// Graded lexicographic order, largest first (so map iteration starts at the
/// leading term). Ties by total degree break on the earliest symbol with a
/// differing exponent, higher exponent first.
struct GradedLexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        unsigned da = a.degree(), db = b.degree();
        if (da != db) return da > db;
        auto x = a.factors.begin(), y = b.factors.begin();
        while (x != a.factors.end() && y != b.factors.end()) {
            if (x->first != y->first) return x->first < y->first;  // nonzero exp at earlier symbol wins
            if (x->second != y->second) return x->second > y->second;
            ++x, ++y;
        }
        return x != a.factors.end();
    }
};

/// Sparse multivariate polynomial over Z in the entry symbols x_{i,j}.
/// Canonical: no zero coefficients stored, terms held in graded-lex order.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Integer, GradedLexGreater>;

    Polynomial() = default;

    static Polynomial constant(Integer c) {
        Polynomial p;
        if (c != 0) p.terms_.emplace(Monomial{}, std::move(c));
        return p;
    }
    static Polynomial variable(int row, int col) {
        Polynomial p;
        Monomial m;
        m.factors.emplace_back(Symbol{row, col}, 1u);
        p.terms_.emplace(std::move(m), Integer(1));
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(const Polynomial& a) { return Polynomial() - a; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
        return out;
    }

    /// Exact substitution of matrix entries for the symbols.
    Rational eval(const RationalMatrix& m) const {
        Rational total(0);
        for (const auto& [mono, coef] : terms_) {
            Rational term(coef);
            for (const auto& [s, e] : mono.factors) {
                if (s.row > m.n() || s.col > m.n())
                    throw InputError("polynomial symbol outside matrix dimension");
                term *= rational_pow(m.at(s.row, s.col), e);
            }
            total += term;
        }
        return total;
    }

    /// Injective key on canonical polynomials; equal polynomials give equal
    /// keys. Clusters hash as sorted multisets of these.
    std::string canonical_key() const {
        std::string out;
        for (const auto& [mono, coef] : terms_) {
            out += coef.get_str();
            for (const auto& [s, e] : mono.factors) {
                out += '.';
                out += std::to_string(s.row) + ',' + std::to_string(s.col) + '^' + std::to_string(e);
            }
            out += '|';
        }
        return out;
    }

    /// Diagnostic text form: sorted terms, "c*x[i,j]^e*...". Deterministic,
    /// not a wire format.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [mono, coef] : terms_) {
            Integer c = coef;
            if (first) {
                if (c < 0) { out += '-'; c = -c; }
            } else {
                out += c < 0 ? " - " : " + ";
                if (c < 0) c = -c;
            }
            first = false;
            bool wrote = false;
            if (c != 1 || mono.factors.empty()) {
                out += c.get_str();
                wrote = true;
            }
            for (const auto& [s, e] : mono.factors) {
                if (wrote) out += '*';
                out += "x[" + std::to_string(s.row) + ',' + std::to_string(s.col) + ']';
                if (e > 1) out += '^' + std::to_string(e);
                wrote = true;
            }
        }
        return out;
    }

private:
    void add_term(const Monomial& m, const Integer& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend Polynomial poly_exact_div(const Polynomial&, const Polynomial&);

    TermMap terms_;
};

/// Exact division: returns q with q*den == num, or throws DivisibilityError.
/// Long division by the leading term under graded-lex; the quotient must come
/// out with integer coefficients and zero remainder.
inline Polynomial poly_exact_div(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw InputError("division by the zero polynomial");
    const auto& dlt = *den.terms().begin();

    // Work over Q during elimination, then require integrality at the end.
    std::map<Monomial, Rational, GradedLexGreater> rem;
    for (const auto& [m, c] : num.terms()) rem.emplace(m, Rational(c));
    std::map<Monomial, Rational, GradedLexGreater> quot;

    while (!rem.empty()) {
        const auto& [lm, lc] = *rem.begin();
        if (!lm.divisible_by(dlt.first))
            throw DivisibilityError("nonzero remainder in exact polynomial division");
        Monomial qm = lm / dlt.first;
        Rational qc = lc / Rational(dlt.second);
        quot.emplace(qm, qc);
        for (const auto& [dm, dc] : den.terms()) {
            Monomial t = qm * dm;
            Rational delta = qc * Rational(dc);
            auto it = rem.find(t);
            if (it == rem.end()) {
                rem.emplace(std::move(t), -delta);
            } else {
                it->second -= delta;
                if (it->second == 0) rem.erase(it);
            }
        }
    }
    Polynomial out;
    for (auto& [m, c] : quot) {
        if (c.get_den() != 1)
            throw DivisibilityError("exact polynomial division produced a rational coefficient");
        out += Polynomial::constant(c.get_num()) * [&] {
            Polynomial mono = Polynomial::constant(1);
            for (const auto& [s, e] : m.factors)
                for (unsigned i = 0; i < e; ++i) mono = mono * Polynomial::variable(s.row, s.col);
            return mono;
        }();
    }
    return out;
}

/// The symbolic determinant |X_{I,J}| as a Polynomial: order! terms with
/// permutation-parity signs. Practical bound: order <= 6.
inline Polynomial minor_poly(int n, const MinorId& id) {
    id.validate(n);
    const int order = id.order();
    if (order > 6) throw InputError("symbolic minors supported up to order 6");
    std::vector<int> perm(order);
    std::iota(perm.begin(), perm.end(), 0);
    Polynomial out;
    do {
        int inversions = 0;
        for (int i = 0; i < order; ++i)
            for (int j = i + 1; j < order; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Polynomial term = Polynomial::constant(inversions % 2 == 0 ? 1 : -1);
        for (int i = 0; i < order; ++i)
            term = term * Polynomial::variable(id.rows[i], id.cols[perm[i]]);
        out += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// ---- JSON -----------------------------------------------------------------
// [[coeff, [[i, j, exp], ...]], ...] in canonical term order.

inline nlohmann::json poly_to_json(const Polynomial& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [mono, coef] : p.terms()) {
        nlohmann::json factors = nlohmann::json::array();
        for (const auto& [s, e] : mono.factors) factors.push_back({s.row, s.col, e});
        terms.push_back({coef.get_str(), std::move(factors)});
    }
    return terms;
}

inline Polynomial poly_from_json(const nlohmann::json& j) {
    Polynomial out;
    for (const auto& term : j) {
        Polynomial t = Polynomial::constant(Integer(term.at(0).get<std::string>()));
        for (const auto& f : term.at(1)) {
            int r = f.at(0).get<int>(), c = f.at(1).get<int>();
            unsigned e = f.at(2).get<unsigned>();
            for (unsigned i = 0; i < e; ++i) t = t * Polynomial::variable(r, c);
        }
        out += t;
    }
    return out;
}

}  // namespace kpos
