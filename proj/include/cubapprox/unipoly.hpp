#pragma once

#include "cubapprox/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace cubapprox {

/// Dense univariate polynomial over Q, coefficients in ascending degree.
/// Trailing zeros are trimmed, so the zero polynomial is empty.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coeffs);

    static UniPoly monomial(int degree, const Rat& c = 1);
    /// x - root
    static UniPoly linear_root(const Rat& root);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Rat(0); }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator*(const Rat& c) const;
    bool operator==(const UniPoly& o) const = default;

    /// Quotient and remainder; divisor must be nonzero.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
    UniPoly derivative() const;
    UniPoly monic() const;
    Rat evaluate(const Rat& x) const;

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    std::vector<Int> primitive_integer() const;

private:
    void trim();
    std::vector<Rat> c_;
};

/// Monic gcd (zero if both are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// Yun decomposition: returns (a_1, a_2, ...) with p = lc * prod a_i^i, a_i
/// monic, squarefree and pairwise coprime.
std::vector<UniPoly> squarefree_decomposition(const UniPoly& p);

/// Distinct rational roots, ascending.
std::vector<Rat> rational_roots(const UniPoly& p);

/// Number of distinct real roots (Sturm sequence).
int count_real_roots(const UniPoly& p);

/// For a quartic without rational roots, a factorisation into two monic
/// quadratics over Q when one exists.
std::optional<std::pair<UniPoly, UniPoly>> split_quartic(const UniPoly& p);

}  // namespace cubapprox
