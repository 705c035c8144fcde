#pragma once

#include <vector>

#include "gcd.hpp"
#include "polynomial.hpp"

namespace polykeller {

enum class RuppertResult { AbsolutelyIrreducible, NotAbsolutelyIrreducible, Inapplicable };

namespace detail {

/// Exact rank of an integer matrix (fraction-free Bareiss elimination).
inline int integer_matrix_rank(std::vector<std::vector<Integer>> m) {
    if (m.empty())
        return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    Integer prev(1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t sel = rank;
        while (sel < rows && m[sel][col] == 0)
            ++sel;
        if (sel == rows)
            continue;
        std::swap(m[sel], m[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                Integer num = m[rank][col] * m[i][j] - m[i][col] * m[rank][j];
                mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return static_cast<int>(rank);
}

} // namespace detail

/// Ruppert's criterion for a square-free bivariate f with positive degree in
/// both variables: the linear system
///     f g_v - g f_v = f h_u - h f_u,
/// deg_u g <= m-1, deg_v g <= n, deg_u h <= m, deg_v h <= n-2,
/// has solution dimension s - 1, s the number of absolutely irreducible
/// factors. Dimension 0 is equivalent to absolute irreducibility.
inline RuppertResult ruppert_test(const Polynomial& f) {
    std::vector<int> vars;
    for (int i = 0; i < f.arity(); ++i)
        if (f.depends_on(i))
            vars.push_back(i);
    if (vars.size() != 2)
        return RuppertResult::Inapplicable;
    int u = vars[0], v = vars[1];
    int m = f.degree_in(u), n = f.degree_in(v);
    if (m < 1 || n < 1)
        return RuppertResult::Inapplicable;
    // square-freeness via the derivative criterion
    Polynomial g0 = gcd(gcd(f, differentiate(f, u)), differentiate(f, v));
    if (!g0.is_constant())
        return RuppertResult::Inapplicable;

    Polynomial fi = normalize_primitive(f);
    Polynomial fu = differentiate(fi, u);
    Polynomial fv = differentiate(fi, v);

    int g_cols = m * (n + 1);
    int h_cols = (m + 1) * (n - 1); // empty when n == 1
    if (h_cols < 0)
        h_cols = 0;
    int unknowns = g_cols + h_cols;

    // rows indexed by monomials u^a v^b of the residual, a <= 2m-1, b <= 2n-1
    int row_a = 2 * m, row_b = 2 * n;
    auto row_of = [&](int a, int b) { return a * row_b + b; };
    std::vector<std::vector<Integer>> mat(static_cast<std::size_t>(row_a * row_b),
                                          std::vector<Integer>(static_cast<std::size_t>(unknowns), Integer(0)));

    // contribution of one basis polynomial u^i v^j into column `col`:
    //   for g-columns:  f * d/dv(u^i v^j) - u^i v^j * f_v
    //   for h-columns: -f * d/du(u^i v^j) + u^i v^j * f_u
    auto add_poly = [&](const Polynomial& poly, int shift_u, int shift_v, int col, long scale) {
        for (const auto& [mono, c] : poly.terms()) {
            int a = mono.exponent(u) + shift_u;
            int b = mono.exponent(v) + shift_v;
            if (a < 0 || b < 0)
                continue;
            mat[static_cast<std::size_t>(row_of(a, b))][static_cast<std::size_t>(col)] +=
                scale * c.get_num();
        }
    };

    int col = 0;
    for (int i = 0; i <= m - 1; ++i)
        for (int j = 0; j <= n; ++j, ++col) {
            if (j > 0)
                add_poly(fi, i, j - 1, col, j); // f * j u^i v^(j-1)
            add_poly(fv, i, j, col, -1);        // - u^i v^j f_v
        }
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j + 2 <= n; ++j, ++col) {
            if (i > 0)
                add_poly(fi, i - 1, j, col, -i); // - f * i u^(i-1) v^j
            add_poly(fu, i, j, col, 1);          // + u^i v^j f_u
        }

    int rank = detail::integer_matrix_rank(std::move(mat));
    return rank == unknowns ? RuppertResult::AbsolutelyIrreducible
                            : RuppertResult::NotAbsolutelyIrreducible;
}

} // namespace polykeller
