#pragma once

#include "cubapprox/binary_form.hpp"
#include "cubapprox/homform.hpp"
#include "cubapprox/point.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cubapprox {

/// Approximation exponent: a positive rational or infinity.
struct Alpha {
    std::optional<Rat> value;  ///< empty means infinity

    static Alpha infinity() { return {}; }
    static Alpha of(const Rat& v) { return {v}; }
    bool is_infinite() const { return !value.has_value(); }
    bool operator==(const Alpha& o) const = default;
    bool operator<(const Alpha& o) const;
    std::string to_string() const;
};

/// Rational curve [C_0(s,t) : ... : C_n(s,t)] given by binary forms of one
/// common degree d >= 1 with no common factor.
class ParamCurve {
public:
    /// Divides out the common factor of the components. Throws ZeroInput when
    /// every component vanishes and InvalidArgument for a constant map.
    explicit ParamCurve(std::vector<BinaryForm> components);
    /// The line s*A + t*B.
    static ParamCurve line(const ProjPoint& a, const ProjPoint& b);

    int degree() const { return components_.front().degree(); }
    std::size_t ambient_size() const { return components_.size(); }
    const std::vector<BinaryForm>& components() const { return components_; }
    const BinaryForm& operator[](std::size_t i) const { return components_[i]; }

    std::vector<Rat> at(const Rat& s, const Rat& t) const;
    ProjPoint point_at(const Rat& s, const Rat& t) const;

    /// F(C(s,t)) as a binary form of degree deg(F) * d.
    BinaryForm pull_back(const HomForm& form) const;
    bool lies_on(const HomForm& form) const { return pull_back(form).is_zero(); }

    /// Binary form whose zeros are the parameters mapping to P (normalized);
    /// degree 0 when P is not on the curve.
    BinaryForm preimage_form(const ProjPoint& p) const;
    bool passes_through(const ProjPoint& p) const { return preimage_form(p).degree() > 0; }

    /// Image under x -> M x.
    ParamCurve transformed(const RatMatrix& m) const;

    bool operator==(const ParamCurve& o) const = default;
    std::string to_string() const;

private:
    std::vector<BinaryForm> components_;
};

/// "s; -s; t; -t".
ParamCurve parse_param_curve(std::string_view text);

}  // namespace cubapprox
