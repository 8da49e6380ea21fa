#pragma once

#include "cubapprox/classifier.hpp"
#include "cubapprox/curves.hpp"
#include "cubapprox/estimate.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace cubapprox {

/// A problem as written in a key=value file. Text fields are kept verbatim;
/// resolve() parses them.
struct ProblemSpec {
    std::string form_text;
    std::string point_text;
    std::string place_text = "real";
    long height_bound = 1000;
    std::uint64_t seed = 0;
    int attempts = 64;
    long search_bound = 100;
    std::vector<Rat> epsilons;           ///< empty: geometric schedule
    Rat window;                          ///< real estimate window radius; 0 enumerates the full box
    std::string filter_text;             ///< optional linear form restricting the estimate stream
    Rat gamma{2};                        ///< Liouville exponent
    std::vector<long> liouville_bounds{25, 50, 100};
    unsigned threads = 0;                ///< does not affect any output

    /// Every key with its resolved value, in file order.
    std::vector<std::pair<std::string, std::string>> entries() const;
};

/// Applies one key=value assignment. Throws ParseError naming the key.
void set_option(ProblemSpec& spec, const std::string& key, const std::string& value);

/// Parses a problem file. Blank lines and lines starting with '#' are
/// skipped. Errors carry "line L, column C".
ProblemSpec parse_problem(const std::string& text);

struct ResolvedProblem {
    CubicHypersurface x;
    ProjPoint point;
    Place place;
    std::optional<HomForm> filter;
};

/// Throws ParseError naming the offending key, and the classifier's
/// hypothesis errors (PointNotOnX, SingularAtP) unchanged.
ResolvedProblem resolve(const ProblemSpec& spec);

struct Construction {
    std::string kind;  ///< "line", "projection_curve", "residual_conic"
    std::optional<ParamCurve> curve;
    Alpha alpha;       ///< curve_alpha at (P, v); infinity when no curve
    bool certifies = false;  ///< curve through P on X with curve_alpha <= predicted
    std::string detail;
};

struct EstimateOutcome {
    std::optional<AlphaEstimate> estimate;
    std::string no_approximants;  ///< set instead of estimate
    PointStream stream;
};

enum class VerdictKind { Consistent, Tension };
std::string_view to_string(VerdictKind v);

struct Verdict {
    VerdictKind kind = VerdictKind::Consistent;
    std::vector<std::string> details;
};

struct RunReport {
    ProblemSpec spec;
    std::optional<ClassificationResult> classification;
    std::vector<Construction> constructions;
    std::optional<EstimateOutcome> estimate;
    std::optional<LiouvilleReport> liouville;
    std::optional<Verdict> verdict;
};

/// Classification only.
RunReport run_classify(const ProblemSpec& spec);
/// Classification plus the construction matching the case.
RunReport run_construct(const ProblemSpec& spec);
/// Enumeration to height_bound and the empirical exponent.
RunReport run_estimate(const ProblemSpec& spec);
RunReport run_liouville(const ProblemSpec& spec);
/// Everything above and the verdict.
RunReport run_report(const ProblemSpec& spec);

/// Consistent iff the extrapolated estimate is at least predicted - 0.25 and,
/// when some construction produced a curve, one of them certifies alpha <= predicted.
Verdict judge(const ClassificationResult& c, const std::vector<Construction>& constructions, const EstimateOutcome& e);

inline constexpr double kVerdictTolerance = 0.25;

nlohmann::ordered_json to_json(const RunReport& r);

/// coords,height,dist,delta for every point of the estimate stream but P.
std::string points_csv(const RunReport& r);
/// log(epsilon) and alpha_hat per row, tab separated.
std::string envelope_tsv(const RunReport& r);

}  // namespace cubapprox
