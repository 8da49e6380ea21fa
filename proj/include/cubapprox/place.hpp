#pragma once

#include "cubapprox/rational.hpp"

#include <string>
#include <string_view>

namespace cubapprox {

/// A place of Q: the real absolute value or a p-adic one.
struct Place {
    enum class Kind { Real, Padic };

    Kind kind = Kind::Real;
    Int p = 0;  ///< prime when kind == Padic

    static Place real() { return {}; }
    static Place padic(const Int& prime);

    bool is_real() const { return kind == Kind::Real; }
    bool operator==(const Place& o) const { return kind == o.kind && (is_real() || p == o.p); }
};

/// "real" or "p=5".
Place parse_place(std::string_view text);
std::string to_string(const Place& place);

}  // namespace cubapprox
