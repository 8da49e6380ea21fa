#pragma once

#include "cubapprox/matrix.hpp"
#include "cubapprox/rational.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cubapprox {

using Exponent = std::vector<int>;

/// Graded-lexicographic order, largest monomial first.
struct GrlexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Sparse multivariate polynomial over Q. Zero coefficients are never stored.
class Poly {
public:
    using Terms = std::map<Exponent, Rat, GrlexGreater>;

    explicit Poly(int n_vars = 0) : n_vars_(n_vars) {}

    static Poly constant(int n_vars, const Rat& c);
    static Poly variable(int n_vars, int index);

    int n_vars() const { return n_vars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// -1 for the zero polynomial.
    int total_degree() const;
    bool is_homogeneous() const;

    Rat coefficient(const Exponent& e) const;
    void add_term(const Exponent& e, const Rat& c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& c) const;
    Poly pow(unsigned k) const;
    bool operator==(const Poly& o) const { return n_vars_ == o.n_vars_ && terms_ == o.terms_; }

    Poly derivative(int var) const;
    Rat evaluate(std::span<const Rat> point) const;
    Rat evaluate(std::span<const Int> point) const;

    /// Substitutes each variable by a polynomial (all over a common ring).
    Poly compose(std::span<const Poly> images) const;

    /// Renders with the given variable names (size n_vars).
    std::string to_string(std::span<const std::string> names) const;

private:
    int n_vars_;
    Terms terms_;
};

/// Variable names x0, x1, ..., x{n-1}.
std::vector<std::string> indexed_names(int n_vars);

/// Parses the polynomial text grammar: integer/rational coefficients,
/// operators + - * ^ and parentheses. With `names` empty the variables are
/// x0, x1, ...; n_vars is then max index + 1 unless `min_vars` is larger.
Poly parse_poly(std::string_view text, std::span<const std::string> names = {}, int min_vars = 0);

/// Homogeneous form of fixed degree in n_vars variables.
class HomForm {
public:
    HomForm() = default;
    HomForm(int n_vars, int degree) : poly_(n_vars), degree_(degree) {}
    /// Throws Error(InvalidArgument) when `p` is not homogeneous of `degree`.
    HomForm(Poly p, int degree);
    /// Degree inferred; the zero polynomial needs the explicit constructor.
    static HomForm from_poly(Poly p);

    int n_vars() const { return poly_.n_vars(); }
    int degree() const { return degree_; }
    const Poly& poly() const { return poly_; }
    const Poly::Terms& terms() const { return poly_.terms(); }
    bool is_zero() const { return poly_.is_zero(); }

    HomForm operator+(const HomForm& o) const;
    HomForm operator-(const HomForm& o) const;
    HomForm operator*(const HomForm& o) const;
    HomForm operator*(const Rat& c) const;
    bool operator==(const HomForm& o) const { return degree_ == o.degree_ && poly_ == o.poly_; }

    HomForm derivative(int var) const;
    Rat evaluate(std::span<const Rat> point) const { return poly_.evaluate(point); }
    Rat evaluate(std::span<const Int> point) const { return poly_.evaluate(point); }
    std::vector<Rat> gradient(std::span<const Int> point) const;

    /// Scales to a primitive integer form with positive leading coefficient.
    HomForm primitive() const;

    std::string to_string() const;
    std::string to_string(std::span<const std::string> names) const;

private:
    Poly poly_;
    int degree_ = 0;
};

HomForm parse_form(std::string_view text, int n_vars = 0);

/// Returns the form y -> form(M y). Throws Error(SingularChange) when M is
/// not invertible and Error(DimensionMismatch) when sizes disagree.
HomForm substitute_linear(const HomForm& form, const RatMatrix& m);

}  // namespace cubapprox
