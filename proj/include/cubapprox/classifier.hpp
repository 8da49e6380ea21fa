#pragma once

#include "cubapprox/binary_form.hpp"
#include "cubapprox/homform.hpp"
#include "cubapprox/local.hpp"
#include "cubapprox/param_curve.hpp"
#include "cubapprox/point.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cubapprox {

enum class Smoothness { Verified, AssumedSmooth, SingularAlong };

/// Cubic hypersurface X = {F = 0} in P^n, n >= 2.
struct CubicHypersurface {
    HomForm form;
    Smoothness smoothness = Smoothness::AssumedSmooth;
    std::string singular_description;

    /// Validates degree, dimension and irreducibility over Q. Throws
    /// Error(InvalidArgument) for reducible or malformed input.
    static CubicHypersurface make(HomForm form);
    int dimension() const { return form.n_vars() - 1; }
};

std::string_view to_string(Smoothness s);

/// True when F has a linear factor over Q (tested exactly on rational lines).
bool has_linear_factor(const HomForm& cubic);

/// Rational points of X with height <= bound where the gradient vanishes.
std::vector<ProjPoint> singular_rational_points(const CubicHypersurface& x, long bound);

/// Coordinates x = M y with P = M e_n, T_P = {y_0 = 0}, and
/// F(M (0, y', y_n)) = f3(y') + y_n g(y'), y' = (y_1, ..., y_{n-1}).
struct TangentSection {
    HomForm form;        ///< F
    ProjPoint point;     ///< P
    RatMatrix change;    ///< M
    RatMatrix inverse;   ///< M^-1
    HomForm tangent;     ///< gradient of F at P as a linear form
    HomForm f3;          ///< cubic in n-1 variables
    HomForm g;           ///< quadric in n-1 variables

    int ambient_dimension() const { return form.n_vars() - 1; }
    /// Ambient point of the direction y' (y_0 = y_n = 0).
    ProjPoint direction_point(std::span<const Rat> direction) const;
    /// S_P as a form in (y_1, ..., y_n): f3 + y_n g.
    HomForm section_form() const;
};

/// Throws PointNotOnX when F(P) != 0 and SingularAtP when the gradient vanishes.
TangentSection tangent_section(const HomForm& form, const ProjPoint& p);

struct LineSearch {
    std::vector<ParamCurve> lines;  ///< lines through P inside X, in canonical order
    bool exhaustive = false;
    long bound_used = 0;  ///< height bound of the direction search (0 when exact)
    std::string method;
};

/// Lines through P on X: common rational zeros of (f3, g).
LineSearch lines_through_point(const TangentSection& section, long search_bound);
LineSearch lines_through_point(const HomForm& form, const ProjPoint& p, long search_bound);

/// Some rational line on X: through P, or through another small-height
/// rational point found by enumeration up to `point_bound`.
std::optional<ParamCurve> find_rational_line(const HomForm& form, const ProjPoint& p, long point_bound, long search_bound);

enum class ConeShape { SplitRational, SplitQuadraticInKv, NonSplitOverKv, DoubleLine };
std::string_view to_string(ConeShape s);

struct TangentConeReport {
    ConeShape shape;
    BinaryForm quadric;  ///< g as a binary form in (y_1, y_2)
    BinaryFactorization factors;
    Rat discriminant;
    std::optional<LocalSquareVerdict> local;
};

/// Surface case: the tangent directions of S_P at P. Throws WorseThanNode
/// when g vanishes identically.
TangentConeReport tangent_cone_analysis(const TangentSection& section, const Place& v);

enum class CaseTag { OnRationalLine, IsolatedInSection, RationalTangentLines, Generic };
std::string_view to_string(CaseTag c);

struct Confidence {
    bool proved = true;
    long bound = 0;  ///< search height bound when not proved
    std::string to_string() const;
    bool operator==(const Confidence&) const = default;
};

/// A checkable fact backing a classification.
struct Certificate {
    std::string kind;  ///< "line", "tangent_cone", "local_solvability", "search", "hypothesis_line", "section"
    std::string summary;
    std::optional<ParamCurve> curve;
    std::map<std::string, std::string> data;
};

struct ClassificationResult {
    CaseTag tag = CaseTag::Generic;
    Rat predicted_alpha;  ///< 1, 3/2 or 2
    std::vector<Certificate> certificates;
    Confidence confidence;
    std::optional<ParamCurve> rational_line_on_x;  ///< hypothesis witness
};

struct ClassifyOptions {
    long search_bound = 100;
    std::optional<ParamCurve> line_on_x;  ///< supplied hypothesis witness
    long hypothesis_point_bound = 3;
};

/// Decision procedure for alpha(P, L) on a cubic hypersurface with a
/// rational line. Throws HypothesisFailure when no rational line on X is
/// supplied or found.
ClassificationResult classify(const CubicHypersurface& x, const ProjPoint& p, const Place& v, const ClassifyOptions& options);

/// Re-checks a line certificate: the line lies on X and passes through P.
bool verify_line_certificate(const HomForm& form, const ProjPoint& p, const ParamCurve& line);

}  // namespace cubapprox
