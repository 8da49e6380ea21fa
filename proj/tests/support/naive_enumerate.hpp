#pragma once

// Exhaustive reference enumerator used only as a test oracle: visits every
// integer vector in the box, keeps canonical primitive zeros of the form.

#include "cubapprox/homform.hpp"
#include "cubapprox/point.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace cubapprox::testing {

inline std::vector<ProjPoint> naive_enumerate(const HomForm& form, long bound) {
    // integer coefficients: scale by the common denominator
    Int den = 1;
    for (auto& [e, c] : form.terms()) den = lcm(den, c.get_den());
    std::vector<std::pair<std::int64_t, std::vector<int>>> terms;
    for (auto& [e, c] : form.terms()) terms.emplace_back(to_int64(Int(c.get_num() * (den / c.get_den()))), e);

    const int n = form.n_vars();
    std::vector<std::int64_t> x(static_cast<std::size_t>(n), -bound);
    std::vector<ProjPoint> out;
    for (;;) {
        auto first = std::find_if(x.begin(), x.end(), [](std::int64_t v) { return v != 0; });
        if (first != x.end() && *first > 0) {
            std::int64_t g = 0;
            for (auto v : x) g = std::gcd(g, v);
            if (g == 1) {
                __int128 value = 0;
                for (auto& [c, e] : terms) {
                    __int128 m = c;
                    for (int i = 0; i < n; ++i)
                        for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) m *= x[static_cast<std::size_t>(i)];
                    value += m;
                }
                if (value == 0) out.emplace_back(std::vector<Int>(x.begin(), x.end()));
            }
        }
        int i = n - 1;
        while (i >= 0 && x[static_cast<std::size_t>(i)] == bound) x[static_cast<std::size_t>(i--)] = -bound;
        if (i < 0) break;
        ++x[static_cast<std::size_t>(i)];
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cubapprox::testing
