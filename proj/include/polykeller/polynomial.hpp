#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "monomial.hpp"
#include "rational.hpp"

namespace polykeller {

/// Sparse multivariate polynomial over the rationals, kept in canonical form:
/// no stored coefficient is zero, all monomials have the ambient arity, and
/// structural equality of the term maps is polynomial equality.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GrlexLess>;

    explicit Polynomial(int arity = 0) : arity_(arity) {
        if (arity < 0)
            throw std::invalid_argument("negative arity");
    }

    static Polynomial zero(int arity) { return Polynomial(arity); }

    static Polynomial constant(int arity, const Rational& c) {
        Polynomial f(arity);
        if (c != 0)
            f.terms_.emplace(Monomial(arity), c);
        return f;
    }

    static Polynomial one(int arity) { return constant(arity, 1); }

    /// x_{index} (0-based index into the ambient frame).
    static Polynomial variable(int arity, int index) {
        if (index < 0 || index >= arity)
            throw std::out_of_range("variable index out of range");
        std::vector<int> e(static_cast<std::size_t>(arity), 0);
        e[static_cast<std::size_t>(index)] = 1;
        Polynomial f(arity);
        f.terms_.emplace(Monomial(std::move(e)), Rational(1));
        return f;
    }

    static Polynomial term(const Monomial& m, const Rational& c) {
        Polynomial f(m.arity());
        if (c != 0)
            f.terms_.emplace(m, c);
        return f;
    }

    int arity() const { return arity_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

    Rational constant_value() const {
        if (terms_.empty())
            return Rational(0);
        if (!is_constant())
            throw std::logic_error("constant_value on nonconstant polynomial");
        return terms_.begin()->second;
    }

    /// Total degree; -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational coeff_of_constant() const { return coeff(Monomial(arity_)); }

    const Monomial& leading_monomial() const {
        if (terms_.empty())
            throw std::logic_error("leading monomial of zero");
        return terms_.rbegin()->first;
    }

    const Rational& leading_coeff() const {
        if (terms_.empty())
            throw std::logic_error("leading coefficient of zero");
        return terms_.rbegin()->second;
    }

    Polynomial operator-() const {
        Polynomial r(arity_);
        for (const auto& [m, c] : terms_)
            r.terms_.emplace(m, -c);
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_same_arity(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        check_same_arity(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_same_arity(b);
        Polynomial r(a.arity_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                r.add_term(ma * mb, ca * cb);
        return r;
    }

    friend Polynomial operator*(const Rational& c, const Polynomial& f) {
        Polynomial r(f.arity_);
        if (c == 0)
            return r;
        for (const auto& [m, k] : f.terms_)
            r.terms_.emplace(m, c * k);
        return r;
    }

    friend Polynomial operator*(const Polynomial& f, const Rational& c) { return c * f; }

    friend Polynomial operator+(const Polynomial& f, const Rational& c) {
        Polynomial r = f;
        r.add_term(Monomial(f.arity_), c);
        return r;
    }

    friend Polynomial operator-(const Polynomial& f, const Rational& c) { return f + (-c); }

    bool operator==(const Polynomial& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    /// Deterministic total order (arity, then term maps); used to sort factor
    /// lists and witnesses canonically.
    bool operator<(const Polynomial& o) const {
        if (arity_ != o.arity_)
            return arity_ < o.arity_;
        auto a = terms_.begin();
        auto b = o.terms_.begin();
        GrlexLess less;
        for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
            if (a->first != b->first)
                return less(a->first, b->first);
            if (a->second != b->second)
                return a->second < b->second;
        }
        return a == terms_.end() && b != o.terms_.end();
    }

    /// Degree in a single variable.
    int degree_in(int var) const {
        int d = 0;
        for (const auto& [m, c] : terms_)
            if (m.exponent(var) > d)
                d = m.exponent(var);
        return d;
    }

    bool depends_on(int var) const { return degree_in(var) > 0; }

    /// Coefficient of x_var^k, a polynomial free of x_var.
    Polynomial coeff_in(int var, int k) const {
        Polynomial r(arity_);
        for (const auto& [m, c] : terms_) {
            if (m.exponent(var) != k)
                continue;
            std::vector<int> e = m.exponents();
            e[static_cast<std::size_t>(var)] = 0;
            r.terms_.emplace(Monomial(std::move(e)), c);
        }
        return r;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0)
            return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

private:
    void check_same_arity(const Polynomial& o) const {
        if (arity_ != o.arity_)
            throw std::invalid_argument("arity mismatch");
    }

    int arity_;
    TermMap terms_;
};

inline Polynomial pow(const Polynomial& f, int k) {
    if (k < 0)
        throw std::invalid_argument("negative power");
    Polynomial r = Polynomial::one(f.arity());
    Polynomial base = f;
    while (k > 0) {
        if (k & 1)
            r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

/// Formal partial derivative with respect to x_var.
inline Polynomial differentiate(const Polynomial& f, int var) {
    if (var < 0 || var >= f.arity())
        throw std::out_of_range("differentiate: variable index out of range");
    Polynomial r(f.arity());
    for (const auto& [m, c] : f.terms()) {
        int e = m.exponent(var);
        if (e == 0)
            continue;
        std::vector<int> ex = m.exponents();
        ex[static_cast<std::size_t>(var)] = e - 1;
        r.add_term(Monomial(std::move(ex)), c * e);
    }
    return r;
}

/// Sum of the terms of total degree exactly k.
inline Polynomial homogeneous_part(const Polynomial& f, int k) {
    Polynomial r(f.arity());
    for (const auto& [m, c] : f.terms())
        if (m.degree() == k)
            r.add_term(m, c);
    return r;
}

inline bool is_homogeneous(const Polynomial& f) {
    if (f.is_zero())
        return true;
    int d = f.degree();
    return f.terms().begin()->first.degree() == d;
}

/// Exact composition f(images[0], ..., images[n-1]); the images share a
/// common arity which becomes the arity of the result.
inline Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images) {
    if (static_cast<int>(images.size()) != f.arity())
        throw std::invalid_argument("substitute: image count must equal arity");
    int out_arity = images.empty() ? 0 : images[0].arity();
    for (const auto& g : images)
        if (g.arity() != out_arity)
            throw std::invalid_argument("substitute: images must share an arity");

    // per-variable power cache; compositions reuse small powers heavily
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](int i, int e) -> const Polynomial& {
        auto& cache = powers[static_cast<std::size_t>(i)];
        if (cache.empty())
            cache.push_back(Polynomial::one(out_arity));
        while (static_cast<int>(cache.size()) <= e)
            cache.push_back(cache.back() * images[static_cast<std::size_t>(i)]);
        return cache[static_cast<std::size_t>(e)];
    };

    Polynomial r(out_arity);
    for (const auto& [m, c] : f.terms()) {
        Polynomial t = Polynomial::constant(out_arity, c);
        for (int i = 0; i < f.arity(); ++i)
            if (m.exponent(i) > 0)
                t = t * power(i, m.exponent(i));
        r += t;
    }
    return r;
}

inline Rational evaluate(const Polynomial& f, const std::vector<Rational>& point) {
    if (static_cast<int>(point.size()) != f.arity())
        throw std::invalid_argument("evaluate: point size must equal arity");
    Rational acc(0);
    for (const auto& [m, c] : f.terms()) {
        Rational t = c;
        for (int i = 0; i < f.arity(); ++i)
            for (int e = 0; e < m.exponent(i); ++e)
                t *= point[static_cast<std::size_t>(i)];
        acc += t;
    }
    return acc;
}

/// f = unit * primitive, where primitive has coprime integer coefficients and
/// positive leading (graded-lex) coefficient. unit(0) = 1, primitive(0) = 0.
inline std::pair<Rational, Polynomial> integer_normalized(const Polynomial& f) {
    if (f.is_zero())
        return {Rational(1), f};
    Integer den_lcm(1), num_gcd(0);
    for (const auto& [m, c] : f.terms()) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    }
    Rational unit = rational_of(num_gcd, den_lcm);
    if (f.leading_coeff() < 0)
        unit = -unit;
    Polynomial prim(f.arity());
    Rational inv = 1 / unit;
    for (const auto& [m, c] : f.terms())
        prim.add_term(m, c * inv);
    return {unit, prim};
}

/// The canonical associate: integer-primitive with positive leading coefficient.
inline Polynomial normalize_primitive(const Polynomial& f) {
    return integer_normalized(f).second;
}

/// Exact division: returns f/g when g divides f, nullopt otherwise.
inline std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g) {
    if (f.arity() != g.arity())
        throw std::invalid_argument("divide_exact: arity mismatch");
    if (g.is_zero())
        return f.is_zero() ? std::optional<Polynomial>(Polynomial::zero(f.arity())) : std::nullopt;
    Polynomial q(f.arity());
    Polynomial r = f;
    const Monomial& lg = g.leading_monomial();
    const Rational& cg = g.leading_coeff();
    while (!r.is_zero()) {
        auto m = r.leading_monomial().divide(lg);
        if (!m)
            return std::nullopt;
        Rational c = r.leading_coeff() / cg;
        Polynomial t = Polynomial::term(*m, c);
        q += t;
        r -= t * g;
    }
    return q;
}

} // namespace polykeller
