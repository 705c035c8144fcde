#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "parse.hpp"
#include "polynomial.hpp"
#include "variable_frame.hpp"

namespace polykeller {

/// Ordered tuple of polynomials over a shared ambient frame (the maps F, G,
/// H, L of the underlying algebra). A map need not be square.
struct PolyMap {
    VariableFrame frame;
    std::vector<Polynomial> components;

    PolyMap() = default;

    PolyMap(VariableFrame fr, std::vector<Polynomial> comps)
        : frame(std::move(fr)), components(std::move(comps)) {
        for (const auto& c : components)
            if (c.arity() != frame.arity())
                throw std::invalid_argument("component arity must match frame");
    }

    int arity() const { return frame.arity(); }
    int size() const { return static_cast<int>(components.size()); }
    bool is_square() const { return size() == arity(); }

    const Polynomial& operator[](int i) const { return components.at(static_cast<std::size_t>(i)); }

    /// Max total degree over components (-1 for the empty/zero map).
    int degree() const {
        int d = -1;
        for (const auto& c : components)
            if (c.degree() > d)
                d = c.degree();
        return d;
    }

    static PolyMap identity(const VariableFrame& fr) {
        std::vector<Polynomial> comps;
        comps.reserve(static_cast<std::size_t>(fr.arity()));
        for (int i = 0; i < fr.arity(); ++i)
            comps.push_back(Polynomial::variable(fr.arity(), i));
        return PolyMap(fr, std::move(comps));
    }

    static PolyMap identity(int n) { return identity(default_frame(n)); }

    bool operator==(const PolyMap& o) const {
        return frame == o.frame && components == o.components;
    }
    bool operator!=(const PolyMap& o) const { return !(*this == o); }
};

/// F after G: component i is F_i(G_1, ..., G_n). Requires arity(F) == size(G).
inline PolyMap compose(const PolyMap& f, const PolyMap& g) {
    if (f.arity() != g.size())
        throw std::invalid_argument("compose: arity(F) must equal component count of G");
    std::vector<Polynomial> comps;
    comps.reserve(f.components.size());
    for (const auto& c : f.components)
        comps.push_back(substitute(c, g.components));
    return PolyMap(g.frame, std::move(comps));
}

inline PolyMap hadamard_power(const PolyMap& v, int d) {
    if (d < 1)
        throw std::invalid_argument("hadamard_power: exponent must be >= 1");
    std::vector<Polynomial> comps;
    comps.reserve(v.components.size());
    for (const auto& c : v.components)
        comps.push_back(pow(c, d));
    return PolyMap(v.frame, std::move(comps));
}

inline PolyMap hadamard_product(const PolyMap& v, const PolyMap& w) {
    if (v.size() != w.size() || v.arity() != w.arity())
        throw std::invalid_argument("hadamard_product: shape mismatch");
    std::vector<Polynomial> comps;
    comps.reserve(v.components.size());
    for (int i = 0; i < v.size(); ++i)
        comps.push_back(v[i] * w[i]);
    return PolyMap(v.frame, std::move(comps));
}

inline std::string print_poly_map(const PolyMap& f) {
    std::ostringstream out;
    out << "(";
    for (int i = 0; i < f.size(); ++i) {
        if (i)
            out << ", ";
        out << print_polynomial(f[i], f.frame);
    }
    out << ")";
    return out.str();
}

} // namespace polykeller
