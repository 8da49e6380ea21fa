#pragma once

#include "cubapprox/binary_form.hpp"
#include "cubapprox/homform.hpp"
#include "cubapprox/place.hpp"
#include "cubapprox/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace cubapprox {

struct LocalSquareVerdict {
    Place place;
    Rat value;
    bool is_square = false;
};

/// Whether a nonzero rational is a square in Q_v. Throws Error(ZeroInput).
LocalSquareVerdict is_square_local(const Rat& value, const Place& place);

/// Hilbert symbol (a, b)_v in {+1, -1} for nonzero rationals.
int hilbert_symbol(const Rat& a, const Rat& b, const Place& place);

/// Diagonal form sum a_i y_i^2 equivalent over Q to a quadratic form.
struct Diagonalization {
    std::vector<Rat> diagonal;  ///< one entry per variable, zeros for the radical
    RatMatrix change;           ///< x = change * y

    std::vector<Rat> nonzero() const;
    std::size_t rank() const { return nonzero().size(); }
};

Diagonalization diagonalize(const HomForm& quadric);

/// Whether sum a_i y_i^2 (all a_i nonzero) has a nontrivial zero over Q_v.
bool is_isotropic_local(std::span<const Rat> diagonal, const Place& place);

/// Whether the quadric has a nonsingular point over Q_v, i.e. its
/// nondegenerate part is isotropic there.
bool has_smooth_local_point(const HomForm& quadric, const Place& place);

/// Hasse-Minkowski: the nondegenerate part is isotropic over Q.
bool has_smooth_rational_point(const HomForm& quadric);

/// Integer polynomial in ascending coefficients.
using IntPoly = std::vector<Int>;

Int eval(const IntPoly& f, const Int& x);

/// A root of f in Z_p, reported modulo p^precision, for a polynomial whose
/// roots in Z_p are simple. The root found is the one whose residue path is
/// lexicographically smallest. nullopt when f has no root in Z_p.
std::optional<Int> padic_integral_root(const IntPoly& f, const Int& p, long precision);

/// Root of a binary form in P^1(Q_p) as [s:t] with coordinates reduced
/// modulo p^precision: either [x : 1] with x in Z_p, or [1 : y] with y in pZ_p.
std::optional<std::pair<Int, Int>> padic_projective_root(const BinaryForm& f, const Int& p, long precision);

bool has_padic_root(const BinaryForm& f, const Int& p);

/// Whether an irreducible binary form has a zero over Q_v.
bool has_local_root(const BinaryForm& f, const Place& place);

/// Smallest (a, b) with a = t*b mod m and |a|, |b| <= sqrt(m/2); b > 0.
std::pair<Int, Int> rational_reconstruction(const Int& t, const Int& m);

}  // namespace cubapprox
