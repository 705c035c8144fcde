#pragma once

#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace polykeller {

/// Exponent vector of fixed arity with cached total degree. Ordered by
/// graded lexicographic: total degree first, then lex with x1 > x2 > ...
class Monomial {
public:
    explicit Monomial(int arity) : e_(static_cast<std::size_t>(arity), 0), total_(0) {}

    explicit Monomial(std::vector<int> exponents)
        : e_(std::move(exponents)), total_(std::accumulate(e_.begin(), e_.end(), 0)) {
        for (int x : e_)
            if (x < 0)
                throw std::invalid_argument("negative exponent in monomial");
    }

    int arity() const { return static_cast<int>(e_.size()); }
    int degree() const { return total_; }
    int exponent(int i) const { return e_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& exponents() const { return e_; }

    bool is_one() const { return total_ == 0; }

    Monomial operator*(const Monomial& o) const {
        std::vector<int> e(e_.size());
        for (std::size_t i = 0; i < e_.size(); ++i)
            e[i] = e_[i] + o.e_[i];
        Monomial m(static_cast<int>(e_.size()));
        m.e_ = std::move(e);
        m.total_ = total_ + o.total_;
        return m;
    }

    bool divisible_by(const Monomial& o) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] < o.e_[i])
                return false;
        return true;
    }

    std::optional<Monomial> divide(const Monomial& o) const {
        if (!divisible_by(o))
            return std::nullopt;
        std::vector<int> e(e_.size());
        for (std::size_t i = 0; i < e_.size(); ++i)
            e[i] = e_[i] - o.e_[i];
        Monomial m(static_cast<int>(e_.size()));
        m.e_ = std::move(e);
        m.total_ = total_ - o.total_;
        return m;
    }

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

private:
    std::vector<int> e_;
    int total_;
};

/// Graded-lex "less": the admissible order used for term maps and printing.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.degree() != b.degree())
            return a.degree() < b.degree();
        const auto& ea = a.exponents();
        const auto& eb = b.exponents();
        for (std::size_t i = 0; i < ea.size(); ++i)
            if (ea[i] != eb[i])
                return ea[i] < eb[i];
        return false;
    }
};

} // namespace polykeller
