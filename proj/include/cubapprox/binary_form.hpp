#pragma once

#include "cubapprox/homform.hpp"
#include "cubapprox/rational.hpp"
#include "cubapprox/unipoly.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cubapprox {

/// Binary form sum_k c_k s^(d-k) t^k over Q. The zero form keeps its degree.
class BinaryForm {
public:
    BinaryForm() = default;
    /// coeffs[k] multiplies s^(d-k) t^k, d = coeffs.size() - 1.
    explicit BinaryForm(std::vector<Rat> coeffs);
    static BinaryForm zero(int degree);
    static BinaryForm s_power(int k);
    static BinaryForm t_power(int k);
    /// a*s + b*t
    static BinaryForm linear(const Rat& a, const Rat& b);
    /// Linear form vanishing at [s:t] = [root_s : root_t].
    static BinaryForm vanishing_at(const Rat& root_s, const Rat& root_t);
    /// t^d * p(s/t); p.degree() <= d.
    static BinaryForm homogenize(const UniPoly& p, int degree);
    static BinaryForm from_homform(const HomForm& f);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const;
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& coeff(int k) const { return c_[k]; }

    BinaryForm operator+(const BinaryForm& o) const;
    BinaryForm operator-(const BinaryForm& o) const;
    BinaryForm operator*(const BinaryForm& o) const;
    BinaryForm operator*(const Rat& c) const;
    bool operator==(const BinaryForm& o) const = default;

    Rat evaluate(const Rat& s, const Rat& t) const;
    BinaryForm ds() const;
    BinaryForm dt() const;

    /// Power of t dividing the form.
    int t_order() const;
    /// f(x, 1) as a univariate polynomial in x = s/t.
    UniPoly dehomogenize() const;
    /// f(1, y) as a univariate polynomial in y = t/s.
    UniPoly dehomogenize_s() const;

    /// Exact quotient; throws Error(InvalidArgument) if d does not divide.
    BinaryForm divide_exact(const BinaryForm& d) const;
    bool divides(const BinaryForm& d) const;
    /// Largest k with factor^k | *this (factor of positive degree).
    int multiplicity_of(const BinaryForm& factor) const;

    /// Primitive integer coefficients, first nonzero coefficient positive.
    BinaryForm normalized() const;
    /// b^2 - 4ac for a quadratic a s^2 + b st + c t^2.
    Rat discriminant() const;
    HomForm to_homform() const;

    std::string to_string() const;

private:
    std::vector<Rat> c_;
};

/// Gcd of binary forms, normalized; the zero form if both are zero.
BinaryForm gcd(const BinaryForm& a, const BinaryForm& b);

BinaryForm parse_binary_form(std::string_view text);

struct BinaryFactor {
    BinaryForm factor;  ///< normalized, irreducible over Q
    int multiplicity = 1;

    /// Root [s:t] when the factor is linear.
    std::optional<std::pair<Rat, Rat>> rational_root() const;
    /// Discriminant when the factor is quadratic.
    std::optional<Rat> quadratic_discriminant() const;
};

struct BinaryFactorization {
    Rat unit;
    std::vector<BinaryFactor> factors;

    BinaryForm product() const;
};

/// Factorisation over Q into irreducibles (complete up to degree 4 for the
/// part free of rational roots). Throws Error(ZeroInput) on the zero form.
BinaryFactorization factor_binary_form(const BinaryForm& form);

}  // namespace cubapprox
