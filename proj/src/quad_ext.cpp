#include "cubapprox/quad_ext.hpp"

#include "cubapprox/error.hpp"

namespace cubapprox {

QuadExt::QuadExt(Int delta, Rat a, Rat b) : delta_(std::move(delta)), a_(std::move(a)), b_(std::move(b)) {
    if (delta_ == 0 || delta_ == 1 || squarefree_part(delta_) != delta_)
        throw Error(ErrorKind::InvalidArgument, "delta must be squarefree and not 0 or 1");
}

void QuadExt::check_compatible(const QuadExt& o) const {
    if (o.delta_ != delta_) throw Error(ErrorKind::DimensionMismatch, "elements of different quadratic fields");
}

QuadExt QuadExt::operator+(const QuadExt& o) const {
    check_compatible(o);
    return QuadExt(delta_, a_ + o.a_, b_ + o.b_);
}

QuadExt QuadExt::operator-(const QuadExt& o) const {
    check_compatible(o);
    return QuadExt(delta_, a_ - o.a_, b_ - o.b_);
}

QuadExt QuadExt::operator*(const QuadExt& o) const {
    check_compatible(o);
    return QuadExt(delta_, a_ * o.a_ + b_ * o.b_ * delta_, a_ * o.b_ + b_ * o.a_);
}

QuadExt QuadExt::operator/(const QuadExt& o) const {
    check_compatible(o);
    Rat n = o.norm();
    if (n == 0) throw Error(ErrorKind::ZeroInput, "division by zero in quadratic field");
    QuadExt num = *this * o.conjugate();
    return QuadExt(delta_, num.a_ / n, num.b_ / n);
}

std::string QuadExt::to_string() const {
    std::string out = cubapprox::to_string(a_);
    if (b_ != 0) {
        out += (b_ < 0 ? " - " : " + ") + cubapprox::to_string(Rat(abs(b_))) + "*sqrt(" + delta_.get_str() + ")";
    }
    return out;
}

QuadExt quadratic_root(const Rat& A, const Rat& B, const Rat& C, bool plus) {
    if (A == 0) throw Error(ErrorKind::InvalidArgument, "quadratic_root needs a nonzero leading coefficient");
    Rat D = B * B - 4 * A * C;
    if (D == 0 || is_perfect_square(D)) throw Error(ErrorKind::InvalidArgument, "roots are rational");
    // D = (num/den) = num*den / den^2; num*den = delta * c^2
    Int nd = D.get_num() * D.get_den();
    Int delta = squarefree_part(nd);
    Int c = isqrt(Int(nd / delta));
    Rat sqrt_coeff = make_rat(c, D.get_den());  // sqrt(D) = sqrt_coeff * sqrt(delta)
    Rat b = sqrt_coeff / (2 * A);
    return QuadExt(delta, -B / (2 * A), plus ? b : Rat(-b));
}

}  // namespace cubapprox
