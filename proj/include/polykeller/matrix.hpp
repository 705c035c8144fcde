#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "gcd.hpp"
#include "poly_map.hpp"
#include "polynomial.hpp"

namespace polykeller {

/// Rectangular matrix of polynomials sharing an ambient arity.
struct PolyMatrix {
    int rows = 0, cols = 0;
    std::vector<Polynomial> entries; // row-major

    PolyMatrix() = default;

    PolyMatrix(int r, int c, int arity)
        : rows(r), cols(c), entries(static_cast<std::size_t>(r) * static_cast<std::size_t>(c),
                                    Polynomial::zero(arity)) {}

    int arity() const { return entries.empty() ? 0 : entries[0].arity(); }

    Polynomial& at(int i, int j) {
        return entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
                       static_cast<std::size_t>(j)];
    }
    const Polynomial& at(int i, int j) const {
        return entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
                       static_cast<std::size_t>(j)];
    }

    bool operator==(const PolyMatrix& o) const {
        return rows == o.rows && cols == o.cols && entries == o.entries;
    }

    bool is_zero() const {
        for (const auto& e : entries)
            if (!e.is_zero())
                return false;
        return true;
    }

    static PolyMatrix identity(int n, int arity) {
        PolyMatrix m(n, n, arity);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = Polynomial::one(arity);
        return m;
    }

    PolyMatrix transposed() const {
        PolyMatrix t(cols, rows, arity());
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                t.at(j, i) = at(i, j);
        return t;
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.cols != b.rows)
            throw std::invalid_argument("matrix product shape mismatch");
        PolyMatrix r(a.rows, b.cols, a.arity());
        for (int i = 0; i < a.rows; ++i)
            for (int k = 0; k < a.cols; ++k) {
                const Polynomial& aik = a.at(i, k);
                if (aik.is_zero())
                    continue;
                for (int j = 0; j < b.cols; ++j)
                    if (!b.at(k, j).is_zero())
                        r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }

    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.rows != b.rows || a.cols != b.cols)
            throw std::invalid_argument("matrix sum shape mismatch");
        PolyMatrix r = a;
        for (std::size_t i = 0; i < r.entries.size(); ++i)
            r.entries[i] += b.entries[i];
        return r;
    }
};

/// Entry (i, j) is dF_i/dx_j.
inline PolyMatrix jacobian(const PolyMap& f) {
    PolyMatrix m(f.size(), f.arity(), f.arity());
    for (int i = 0; i < f.size(); ++i)
        for (int j = 0; j < f.arity(); ++j)
            m.at(i, j) = differentiate(f[i], j);
    return m;
}

/// Column of partials of f, as a map over the same frame.
inline PolyMap gradient(const Polynomial& f, const VariableFrame& frame) {
    if (frame.arity() != f.arity())
        throw std::invalid_argument("gradient: frame arity mismatch");
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<std::size_t>(f.arity()));
    for (int i = 0; i < f.arity(); ++i)
        comps.push_back(differentiate(f, i));
    return PolyMap(frame, std::move(comps));
}

inline PolyMatrix hessian(const Polynomial& f, const VariableFrame& frame) {
    return jacobian(gradient(f, frame));
}

namespace detail {

inline Polynomial det_cofactor(const PolyMatrix& m, std::vector<int>& cols, int row) {
    int n = m.rows;
    if (row == n)
        return Polynomial::one(m.arity());
    Polynomial acc(m.arity());
    int sign = 1;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        int col = cols[k];
        const Polynomial& e = m.at(row, col);
        if (!e.is_zero()) {
            cols.erase(cols.begin() + static_cast<long>(k));
            Polynomial sub = det_cofactor(m, cols, row + 1);
            cols.insert(cols.begin() + static_cast<long>(k), col);
            Polynomial t = e * sub;
            if (sign < 0)
                acc -= t;
            else
                acc += t;
        }
        sign = -sign;
    }
    return acc;
}

inline Polynomial det_bareiss(PolyMatrix m) {
    int n = m.rows;
    int arity = m.arity();
    bool negate = false;
    Polynomial prev = Polynomial::one(arity);
    for (int k = 0; k + 1 < n; ++k) {
        if (m.at(k, k).is_zero()) {
            int sel = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m.at(i, k).is_zero()) {
                    sel = i;
                    break;
                }
            if (sel < 0)
                return Polynomial::zero(arity);
            for (int j = 0; j < n; ++j)
                std::swap(m.at(k, j), m.at(sel, j));
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Polynomial num = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
                auto q = divide_exact(num, prev);
                if (!q)
                    throw std::logic_error("bareiss: inexact division");
                m.at(i, j) = *q;
            }
        prev = m.at(k, k);
    }
    Polynomial d = m.at(n - 1, n - 1);
    return negate ? -d : d;
}

} // namespace detail

/// Exact determinant: cofactor expansion for size <= 4, fraction-free
/// Bareiss elimination above that.
inline Polynomial determinant(const PolyMatrix& m) {
    if (m.rows != m.cols)
        throw std::invalid_argument("determinant: matrix is not square");
    if (m.rows == 0)
        return Polynomial::one(m.arity());
    if (m.rows <= 4) {
        std::vector<int> cols;
        for (int j = 0; j < m.cols; ++j)
            cols.push_back(j);
        return detail::det_cofactor(m, cols, 0);
    }
    return detail::det_bareiss(m);
}

inline bool is_symmetric(const PolyMatrix& m) {
    if (m.rows != m.cols)
        return false;
    for (int i = 0; i < m.rows; ++i)
        for (int j = i + 1; j < m.cols; ++j)
            if (m.at(i, j) != m.at(j, i))
                return false;
    return true;
}

struct KellerVerdict {
    bool ok = false;
    Polynomial det; // witness either way
};

/// det jac F is a nonzero constant ("Keller condition").
inline KellerVerdict is_keller(const PolyMap& f) {
    if (!f.is_square())
        throw std::invalid_argument("is_keller: map must be square");
    Polynomial d = determinant(jacobian(f));
    return {!d.is_zero() && d.is_constant(), d};
}

struct NilpotencyVerdict {
    bool ok = false;
    int index = 0;        // smallest k with M^k = 0, when nilpotent
    Polynomial witness;   // a nonzero entry of M^n otherwise
};

/// M^n = 0, decided by repeated squaring; the witness index is recovered by
/// a short linear scan once nilpotency is known.
inline NilpotencyVerdict is_nilpotent(const PolyMatrix& m) {
    if (m.rows != m.cols)
        throw std::invalid_argument("is_nilpotent: matrix is not square");
    int n = m.rows;
    if (n == 0)
        return {true, 1, Polynomial()};
    PolyMatrix s = m;
    int e = 1;
    while (e < n) {
        s = s * s;
        e *= 2;
    }
    if (!s.is_zero()) {
        PolyMatrix pn = m;
        for (int i = 1; i < n; ++i)
            pn = pn * m;
        for (const auto& entry : pn.entries)
            if (!entry.is_zero())
                return {false, 0, entry};
        return {false, 0, s.entries[0]}; // unreachable for integral domains
    }
    PolyMatrix q = m;
    int k = 1;
    while (!q.is_zero()) {
        q = q * m;
        ++k;
    }
    return {true, k, Polynomial()};
}

struct SingularMatrixError : std::runtime_error {
    SingularMatrixError() : std::runtime_error("singular matrix") {}
};

/// Square matrix of exact rationals.
struct ScalarMatrix {
    int n = 0;
    std::vector<Rational> a;

    ScalarMatrix() = default;
    explicit ScalarMatrix(int size)
        : n(size), a(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), Rational(0)) {}

    Rational& at(int i, int j) {
        return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
    }
    const Rational& at(int i, int j) const {
        return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
    }

    static ScalarMatrix identity(int size) {
        ScalarMatrix m(size);
        for (int i = 0; i < size; ++i)
            m.at(i, i) = 1;
        return m;
    }

    bool operator==(const ScalarMatrix& o) const { return n == o.n && a == o.a; }

    friend ScalarMatrix operator*(const ScalarMatrix& x, const ScalarMatrix& y) {
        if (x.n != y.n)
            throw std::invalid_argument("scalar matrix product shape mismatch");
        ScalarMatrix r(x.n);
        for (int i = 0; i < x.n; ++i)
            for (int k = 0; k < x.n; ++k) {
                if (x.at(i, k) == 0)
                    continue;
                for (int j = 0; j < x.n; ++j)
                    r.at(i, j) += x.at(i, k) * y.at(k, j);
            }
        return r;
    }

    std::vector<Rational> apply(const std::vector<Rational>& v) const {
        std::vector<Rational> r(static_cast<std::size_t>(n), Rational(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r[static_cast<std::size_t>(i)] += at(i, j) * v[static_cast<std::size_t>(j)];
        return r;
    }
};

inline Rational scalar_determinant(ScalarMatrix m) {
    Rational det(1);
    for (int k = 0; k < m.n; ++k) {
        int sel = -1;
        for (int i = k; i < m.n; ++i)
            if (m.at(i, k) != 0) {
                sel = i;
                break;
            }
        if (sel < 0)
            return Rational(0);
        if (sel != k) {
            for (int j = 0; j < m.n; ++j)
                std::swap(m.at(k, j), m.at(sel, j));
            det = -det;
        }
        det *= m.at(k, k);
        Rational inv = 1 / m.at(k, k);
        for (int i = k + 1; i < m.n; ++i) {
            Rational factor = m.at(i, k) * inv;
            if (factor == 0)
                continue;
            for (int j = k; j < m.n; ++j)
                m.at(i, j) -= factor * m.at(k, j);
        }
    }
    return det;
}

/// Exact Gauss-Jordan inverse; throws SingularMatrixError.
inline ScalarMatrix scalar_inverse(const ScalarMatrix& t) {
    int n = t.n;
    ScalarMatrix work = t;
    ScalarMatrix inv = ScalarMatrix::identity(n);
    for (int k = 0; k < n; ++k) {
        int sel = -1;
        for (int i = k; i < n; ++i)
            if (work.at(i, k) != 0) {
                sel = i;
                break;
            }
        if (sel < 0)
            throw SingularMatrixError();
        if (sel != k)
            for (int j = 0; j < n; ++j) {
                std::swap(work.at(k, j), work.at(sel, j));
                std::swap(inv.at(k, j), inv.at(sel, j));
            }
        Rational piv = 1 / work.at(k, k);
        for (int j = 0; j < n; ++j) {
            work.at(k, j) *= piv;
            inv.at(k, j) *= piv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || work.at(i, k) == 0)
                continue;
            Rational factor = work.at(i, k);
            for (int j = 0; j < n; ++j) {
                work.at(i, j) -= factor * work.at(k, j);
                inv.at(i, j) -= factor * inv.at(k, j);
            }
        }
    }
    return inv;
}

/// T^{-1} F(T x); preserves the Keller property (the two unit determinants
/// cancel).
inline PolyMap conjugate(const PolyMap& f, const ScalarMatrix& t) {
    if (!f.is_square() || f.arity() != t.n)
        throw std::invalid_argument("conjugate: shape mismatch");
    ScalarMatrix tinv = scalar_inverse(t);
    int n = f.arity();
    std::vector<Polynomial> images;
    images.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Polynomial e(n);
        for (int j = 0; j < n; ++j)
            if (t.at(i, j) != 0)
                e += t.at(i, j) * Polynomial::variable(n, j);
        images.push_back(std::move(e));
    }
    std::vector<Polynomial> ftx;
    ftx.reserve(f.components.size());
    for (const auto& c : f.components)
        ftx.push_back(substitute(c, images));
    std::vector<Polynomial> out(static_cast<std::size_t>(n), Polynomial::zero(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (tinv.at(i, j) != 0)
                out[static_cast<std::size_t>(i)] += tinv.at(i, j) * ftx[static_cast<std::size_t>(j)];
    return PolyMap(f.frame, std::move(out));
}

/// gcd over all 2x2 Jacobian minors det jac_{x_i,x_j}(f, g); zero when every
/// minor vanishes (dependent gradients).
inline Polynomial minor_gcd_pair(const Polynomial& f, const Polynomial& g) {
    if (f.arity() != g.arity())
        throw std::invalid_argument("minor_gcd_pair: arity mismatch");
    int n = f.arity();
    std::vector<Polynomial> df, dg;
    for (int i = 0; i < n; ++i) {
        df.push_back(differentiate(f, i));
        dg.push_back(differentiate(g, i));
    }
    // the fold starts from the first nonzero minor itself, so a lone minor
    // comes back unnormalized
    Polynomial acc = Polynomial::zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Polynomial minor = df[static_cast<std::size_t>(i)] * dg[static_cast<std::size_t>(j)] -
                               df[static_cast<std::size_t>(j)] * dg[static_cast<std::size_t>(i)];
            if (minor.is_zero())
                continue;
            acc = acc.is_zero() ? minor : gcd(acc, minor);
            if (acc.is_constant())
                return acc;
        }
    return acc;
}

} // namespace polykeller
