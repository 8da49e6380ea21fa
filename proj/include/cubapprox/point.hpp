#pragma once

#include "cubapprox/place.hpp"
#include "cubapprox/rational.hpp"

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cubapprox {

/// Projective point with coprime integer coordinates, first nonzero positive.
class ProjPoint {
public:
    ProjPoint() = default;
    /// Canonicalizes; throws Error(ZeroInput) for the zero vector.
    explicit ProjPoint(std::vector<Int> coords);
    static ProjPoint from_rationals(std::span<const Rat> coords);

    const std::vector<Int>& coords() const { return c_; }
    const Int& operator[](std::size_t i) const { return c_[i]; }
    std::size_t size() const { return c_.size(); }
    std::vector<Rat> as_rationals() const { return {c_.begin(), c_.end()}; }

    bool operator==(const ProjPoint& o) const { return c_ == o.c_; }
    bool operator<(const ProjPoint& o) const;

    std::string to_string() const;

private:
    std::vector<Int> c_;
};

/// "a0:a1:...:an".
ProjPoint parse_point(std::string_view text);

/// max_i |x_i| of the canonical representative.
Int height(const ProjPoint& x);

/// Normalized projective distance at a place; exact in both cases.
struct DistValue {
    Place place;
    Rat value;        ///< in [0, 1] at p, in [0, 2] at the real place
    long exponent = 0;  ///< p-adic: value = p^-exponent (when nonzero)

    bool is_zero() const { return value == 0; }
    double to_double() const { return value.get_d(); }
    auto operator<=>(const DistValue& o) const { return cmp(value, o.value) <=> 0; }
    bool operator==(const DistValue& o) const { return value == o.value; }
};

/// max_{i<j} |x_i y_j - x_j y_i|_v / (|x|_v |y|_v). Throws DimensionMismatch.
DistValue dist(const ProjPoint& x, const ProjPoint& y, const Place& v);

/// Bounds used by the estimators, rounded outward at `precision` bits so that
/// derived minima are certified lower bounds.
double log_down(const Int& value, int precision = 128);
/// Upper bound for -log(d), d in (0, 1].
double neg_log_dist_up(const DistValue& d, int precision = 128);
/// Lower bound for delta = log H / (-log d); +inf when d = 1 and H > 1.
double delta_lower(const Int& height, const DistValue& d, int precision = 128);
/// Lower bound for H * d^gamma.
double height_dist_product_lower(const Int& height, const DistValue& d, const Rat& gamma, int precision = 128);

}  // namespace cubapprox
