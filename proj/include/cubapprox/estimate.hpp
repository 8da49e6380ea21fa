#pragma once

#include "cubapprox/enumerate.hpp"
#include "cubapprox/place.hpp"
#include "cubapprox/point.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cubapprox {

/// delta(x) = log H(x) / (-log dist(P, x)), rounded down.
double approximation_exponent(const ProjPoint& x, const ProjPoint& target, const Place& v);

struct AlphaRow {
    DistValue epsilon;
    double alpha_hat = 0;    ///< min delta over points with 0 < dist <= epsilon
    ProjPoint witness;       ///< a point attaining alpha_hat
    std::size_t witnesses = 0;  ///< points with 0 < dist <= epsilon
};

struct AlphaEstimate {
    ProjPoint target;
    Place place;
    std::vector<AlphaRow> rows;  ///< one per epsilon that has a witness
    double extrapolated = 0;
    std::size_t extrapolation_row = 0;  ///< smallest epsilon with >= 3 witnesses, else the largest
    long height_bound_used = 0;
};

/// 2^-j at the real place and p^-j at p, for j = 1 .. j_max.
std::vector<DistValue> geometric_epsilons(const Place& v, int j_max);

/// Empty `epsilons` selects the geometric schedule down to the smallest
/// epsilon with a witness. Throws NoApproximants when no point lies within
/// the largest epsilon.
AlphaEstimate empirical_alpha(const PointStream& stream, const ProjPoint& p, const Place& v,
                              std::span<const DistValue> epsilons = {});

struct LiouvilleRow {
    long height_bound = 0;
    double min_product = 0;  ///< min of H * dist^gamma over points off the excluded locus
    std::optional<ProjPoint> witness;
    std::size_t points = 0;
};

struct LiouvilleReport {
    Rat gamma;
    std::string excluded_locus;
    std::vector<LiouvilleRow> rows;
    double min_product = 0;
    double trend = 0;  ///< least-squares slope of log min_product against log B
    bool beyond_certified = false;
    std::string flag;
    std::string enumeration;  ///< "window r=..." when a real window certified the minimum, else "full"
};

struct LiouvilleOptions {
    std::vector<long> height_bounds{25, 50, 100};
    /// Real place: enumerate within each radius in turn; a minimum not above
    /// radius^gamma is exact, otherwise the next radius or the full box is tried.
    std::vector<Rat> windows{Rat(1, 4), Rat(1, 2)};
    EnumerateOptions enumeration;
};

/// Products H(y) dist(P, y)^gamma over points y of X off S_P = X cap T_P.
LiouvilleReport liouville_check(const HomForm& form, const ProjPoint& p, const Place& v, const Rat& gamma,
                                const LiouvilleOptions& options = {});

}  // namespace cubapprox
