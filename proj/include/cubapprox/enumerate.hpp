#pragma once

#include "cubapprox/homform.hpp"
#include "cubapprox/point.hpp"
#include "cubapprox/sieve_kernel.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cubapprox {

/// Keeps only points at real distance <= radius from center. The enumerator
/// uses the bound to shrink coordinate ranges, so large height bounds stay
/// affordable when the radius is small.
struct RealWindow {
    ProjPoint center;
    Rat radius;
};

struct EnumerateOptions {
    long height_bound = 1000;
    std::vector<int> sieve_moduli{7, 9, 13};
    /// Linear form; only points where it vanishes are kept.
    std::optional<HomForm> hyperplane;
    std::optional<RealWindow> window;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;
    /// Row kernel; nullopt means detect_isa().
    std::optional<kernels::Isa> isa;
};

/// Canonical rational points of {F = 0} with height <= bound that pass the
/// filters, in lexicographic order of coordinates.
struct PointStream {
    HomForm form;
    long height_bound = 0;
    std::string filter;
    std::optional<RealWindow> window;  ///< points are complete only within this window
    std::vector<ProjPoint> points;
};

/// Iterates all coordinates but one and extracts the integer roots of the
/// remaining cubic exactly, after a modular sieve on each row. Throws
/// Error(Overflow) when the bound and coefficients exceed the 128-bit
/// evaluation budget.
PointStream enumerate(const HomForm& form, const EnumerateOptions& options);

}  // namespace cubapprox
