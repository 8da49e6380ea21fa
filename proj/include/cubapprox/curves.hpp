#pragma once

#include "cubapprox/binary_form.hpp"
#include "cubapprox/classifier.hpp"
#include "cubapprox/param_curve.hpp"
#include "cubapprox/place.hpp"
#include "cubapprox/point.hpp"
#include "cubapprox/quad_ext.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cubapprox {

/// One closed point q of the parameter line over P: an irreducible factor of
/// the preimage form. A factor of degree kappa_degree stands for that many
/// conjugate geometric branches sharing m_q and r_q.
struct BranchDatum {
    BinaryForm factor;                          ///< normalized, irreducible
    std::optional<std::pair<Rat, Rat>> root;    ///< [s:t] when kappa_degree == 1
    std::optional<QuadExt> quadratic_root;      ///< one root of factor(x, 1) when kappa_degree == 2
    int kappa_degree = 1;
    bool in_kv = true;
    int m_q = 1;
    int r_q = 1;  ///< 0 outside k_v, 1 for rational q, 2 otherwise

    std::string to_string() const;
};

/// Throws PointNotOnCurve when P is not on the image.
std::vector<BranchDatum> branch_data(const ParamCurve& c, const ProjPoint& p, const Place& v);

/// min over branches of d / (r_q m_q); infinity when no branch lies in k_v.
Alpha curve_alpha(const ParamCurve& c, const ProjPoint& p, const Place& v);
Alpha curve_alpha(const ParamCurve& c, const std::vector<BranchDatum>& branches);

struct ResidualConic {
    enum class Kind {
        Conic,            ///< irreducible conic through P, parametrized from P
        RationalLines,    ///< splits; the rational line(s) through P are returned
        DegenerateSplit,  ///< two lines through P conjugate over a quadratic field
        Contained,        ///< the plane lies in X
    };
    Kind kind = Kind::Conic;
    std::optional<ParamCurve> conic;
    std::vector<ParamCurve> lines;
    /// Plane coordinates x = u*P + s*A + t*B with ell = s*A + t*B.
    std::vector<ProjPoint> frame;
    HomForm restricted;  ///< X restricted to the plane, in (u, s, t)
    HomForm residual;    ///< restricted / u
    BinaryForm split;    ///< pair of lines through P when the conic is singular there
};

std::string to_string(ResidualConic::Kind kind);

/// Residual intersection of X with the plane through P and the rational line
/// ell. Throws PointOnLine when P lies on ell.
ResidualConic residual_conic(const HomForm& form, const ProjPoint& p, const ParamCurve& ell);

/// psi(y') = [y' g(y') : -f3(y')] in section coordinates (y_1, ..., y_n).
std::vector<Rat> section_psi(const TangentSection& s, std::span<const Rat> direction);
/// Ambient point for section coordinates (y_1, ..., y_n).
ProjPoint section_point(const TangentSection& s, std::span<const Rat> y);

struct ProjectionCurve {
    ParamCurve curve;                        ///< T' in ambient coordinates
    std::vector<std::vector<Rat>> direction; ///< the two rational points spanning T
    BinaryForm g_on_t;                       ///< g restricted to T; its roots are Q and its conjugate
    int attempts_used = 0;
};

/// Closure of psi(T) for a random rational line T in the direction space
/// meeting g = 0 in a conjugate pair defined over k_v but not over k and
/// off f3 = 0. Throws EmptyLocalQuadric when g has no smooth k_v point and
/// NoQuadraticPointFound after `attempts` lines.
ProjectionCurve projection_curve(const TangentSection& s, const Place& v, int attempts = 64,
                                 std::uint64_t seed = 0x5eed);

/// Surfaces: S_P itself, the nodal or cuspidal cubic psi(P^1) through P.
/// Throws InvalidArgument when S_P contains a line through P and
/// WorseThanNode when g vanishes.
ParamCurve section_curve(const TangentSection& s);

enum class Schedule {
    Dyadic,    ///< offsets 2^-i at the real place
    Harmonic,  ///< offsets 1/i at the real place
};

struct ApproxSequence {
    std::vector<ProjPoint> points;
    ProjPoint target;
    Place place;
    std::string provenance;
};

/// Convergents h/k of the continued fraction of (P + sqrt(D)) / Q, where D is
/// not a square and Q divides D - P^2.
std::vector<std::pair<Int, Int>> quadratic_convergents(const Int& p0, const Int& d, const Int& q0, int count);

/// Convergents of a real number known to lie strictly inside (lo, hi);
/// stops at the first partial quotient the interval does not determine.
std::vector<std::pair<Int, Int>> interval_convergents(const Rat& lo, const Rat& hi, int count);

/// Isolating intervals (lo, hi) of the real roots of a squarefree polynomial,
/// each refined to width below 2^-bits, in increasing order.
std::vector<std::pair<Rat, Rat>> real_root_intervals(const UniPoly& p, long bits);

/// Residues of a p-adic parameter root of the factor modulo p, p^2, ..., p^count,
/// as [s:t] pairs in the chart padic_projective_root reports.
std::vector<std::pair<Int, Int>> hensel_lifts(const BinaryForm& factor, const Int& p, int count);

/// Points C(t_i) with t_i -> q in k_v, distances to P strictly decreasing.
/// Throws BranchNotInKv when the branch is not defined over k_v.
ApproxSequence sequence_on_curve(const ParamCurve& c, const BranchDatum& b, const ProjPoint& p, const Place& v, int count,
                                 Schedule schedule = Schedule::Dyadic);

}  // namespace cubapprox
