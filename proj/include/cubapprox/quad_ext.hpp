#pragma once

#include "cubapprox/rational.hpp"

#include <string>

namespace cubapprox {

/// a + b*sqrt(delta), delta squarefree, delta != 0, 1.
class QuadExt {
public:
    QuadExt(Int delta, Rat a, Rat b);

    const Int& delta() const { return delta_; }
    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }
    bool is_rational() const { return b_ == 0; }

    QuadExt operator+(const QuadExt& o) const;
    QuadExt operator-(const QuadExt& o) const;
    QuadExt operator*(const QuadExt& o) const;
    QuadExt operator/(const QuadExt& o) const;
    bool operator==(const QuadExt& o) const = default;

    QuadExt conjugate() const { return QuadExt(delta_, a_, -b_); }
    Rat norm() const { return a_ * a_ - b_ * b_ * delta_; }
    Rat trace() const { return 2 * a_; }

    std::string to_string() const;

private:
    void check_compatible(const QuadExt& o) const;

    Int delta_;
    Rat a_;
    Rat b_;
};

/// Roots (-B +- sqrt(D)) / 2A of A x^2 + B x + C with D = B^2 - 4AC not a
/// rational square; `plus` selects the sign.
QuadExt quadratic_root(const Rat& A, const Rat& B, const Rat& C, bool plus);

}  // namespace cubapprox
