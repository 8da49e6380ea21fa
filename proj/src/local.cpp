#include "cubapprox/local.hpp"

#include "cubapprox/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace cubapprox {

namespace {

// Integer in the square class of a nonzero rational: num * den.
Int square_class_rep(const Rat& v) { return v.get_num() * v.get_den(); }

Int strip(const Int& v, const Int& p, long& e) {
    Int rest;
    e = static_cast<long>(mpz_remove(rest.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()));
    return rest;
}

unsigned long mod_ui(const Int& v, unsigned long m) { return mpz_fdiv_ui(v.get_mpz_t(), m); }

int legendre(const Int& u, const Int& p) { return mpz_legendre(u.get_mpz_t(), p.get_mpz_t()); }

}  // namespace

LocalSquareVerdict is_square_local(const Rat& value, const Place& place) {
    if (value == 0) throw Error(ErrorKind::ZeroInput, "is_square_local(0)");
    LocalSquareVerdict out{place, value, false};
    if (place.is_real()) {
        out.is_square = value > 0;
        return out;
    }
    long e = 0;
    Int u = strip(square_class_rep(value), place.p, e);
    if (e % 2 != 0) return out;
    if (place.p == 2) {
        out.is_square = mod_ui(u, 8) == 1;
    } else {
        out.is_square = legendre(u, place.p) == 1;
    }
    return out;
}

int hilbert_symbol(const Rat& a, const Rat& b, const Place& place) {
    if (a == 0 || b == 0) throw Error(ErrorKind::ZeroInput, "Hilbert symbol of zero");
    if (place.is_real()) return (a < 0 && b < 0) ? -1 : 1;
    const Int& p = place.p;
    long alpha = 0, beta = 0;
    Int u = strip(square_class_rep(a), p, alpha);
    Int w = strip(square_class_rep(b), p, beta);
    if (p == 2) {
        auto eps = [](const Int& x) { return static_cast<long>(((mod_ui(x, 4) + 3) % 4) / 2); };  // (x-1)/2 mod 2
        auto omega = [](const Int& x) {
            unsigned long r = mod_ui(x, 8);
            return (r == 3 || r == 5) ? 1L : 0L;
        };
        long expo = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
        return expo % 2 == 0 ? 1 : -1;
    }
    long eps_p = mod_ui(p, 4) == 3 ? 1 : 0;
    long expo = (alpha * beta * eps_p) % 2;
    int sign = expo == 0 ? 1 : -1;
    if (beta % 2 != 0) sign *= legendre(u, p);
    if (alpha % 2 != 0) sign *= legendre(w, p);
    return sign;
}

std::vector<Rat> Diagonalization::nonzero() const {
    std::vector<Rat> out;
    for (auto& d : diagonal)
        if (d != 0) out.push_back(d);
    return out;
}

Diagonalization diagonalize(const HomForm& quadric) {
    if (quadric.degree() != 2 && !quadric.is_zero()) throw Error(ErrorKind::InvalidArgument, "diagonalize needs a quadric");
    const std::size_t n = static_cast<std::size_t>(quadric.n_vars());
    RatMatrix a(n, n);
    for (auto& [e, c] : quadric.terms()) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            for (int k = 0; k < e[i]; ++k) idx.push_back(i);
        if (idx[0] == idx[1]) {
            a(idx[0], idx[0]) += c;
        } else {
            a(idx[0], idx[1]) += c / 2;
            a(idx[1], idx[0]) += c / 2;
        }
    }
    RatMatrix change = RatMatrix::identity(n);
    auto apply = [&](const RatMatrix& t) {
        a = t.transpose() * a * t;
        change = change * t;
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (a(i, i) == 0) {
            std::size_t j = i + 1;
            while (j < n && a(j, j) == 0) ++j;
            if (j < n) {
                RatMatrix t = RatMatrix::identity(n);
                t(i, i) = 0;
                t(j, j) = 0;
                t(i, j) = 1;
                t(j, i) = 1;
                apply(t);
            } else {
                j = i + 1;
                while (j < n && a(i, j) == 0) ++j;
                if (j == n) continue;
                RatMatrix t = RatMatrix::identity(n);
                t(j, i) = 1;
                apply(t);
            }
        }
        RatMatrix t = RatMatrix::identity(n);
        bool any = false;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (a(i, j) == 0) continue;
            t(i, j) = -a(i, j) / a(i, i);
            any = true;
        }
        if (any) apply(t);
    }
    Diagonalization out;
    out.change = change;
    for (std::size_t i = 0; i < n; ++i) out.diagonal.push_back(a(i, i));
    return out;
}

bool is_isotropic_local(std::span<const Rat> diagonal, const Place& place) {
    for (auto& d : diagonal)
        if (d == 0) throw Error(ErrorKind::ZeroInput, "degenerate diagonal form");
    const std::size_t m = diagonal.size();
    if (m <= 1) return false;
    if (place.is_real()) {
        bool pos = false, neg = false;
        for (auto& d : diagonal) (d > 0 ? pos : neg) = true;
        return pos && neg;
    }
    if (m == 2) return is_square_local(-diagonal[0] * diagonal[1], place).is_square;
    if (m == 3) {
        return hilbert_symbol(-diagonal[0] * diagonal[2], -diagonal[1] * diagonal[2], place) == 1;
    }
    if (m == 4) {
        Rat d = diagonal[0] * diagonal[1] * diagonal[2] * diagonal[3];
        if (!is_square_local(d, place).is_square) return true;
        int eps = 1;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) eps *= hilbert_symbol(diagonal[i], diagonal[j], place);
        return eps == hilbert_symbol(-1, -1, place);
    }
    return true;
}

bool has_smooth_local_point(const HomForm& quadric, const Place& place) {
    auto nz = diagonalize(quadric).nonzero();
    return is_isotropic_local(nz, place);
}

bool has_smooth_rational_point(const HomForm& quadric) {
    auto nz = diagonalize(quadric).nonzero();
    if (!is_isotropic_local(nz, Place::real())) return false;
    std::set<Int> primes{Int(2)};
    for (auto& d : nz) {
        for (auto& [p, e] : factorize(d.get_num())) primes.insert(p);
        for (auto& [p, e] : factorize(d.get_den())) primes.insert(p);
    }
    for (auto& p : primes) {
        if (!is_isotropic_local(nz, Place::padic(p))) return false;
    }
    return true;
}

Int eval(const IntPoly& f, const Int& x) {
    Int acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
    return acc;
}

namespace {

IntPoly derivative(const IntPoly& f) {
    IntPoly d;
    for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
    return d;
}

long val_or(const Int& v, const Int& p, long infinity) { return v == 0 ? infinity : valuation(v, p); }

Int pow_int(const Int& p, long k) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
    return out;
}

Int mod_pos(const Int& v, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Newton iteration from r with v(f(r)) > 2 v(f'(r)).
Int newton_lift(const IntPoly& f, const IntPoly& df, Int r, const Int& p, long vd, long precision) {
    const long work = precision + 2 * vd + 2;
    const Int modulus = pow_int(p, work);
    const Int pvd = pow_int(p, vd);
    for (int iter = 0; iter < 200; ++iter) {
        Int fr = eval(f, r);
        if (fr == 0 || valuation(fr, p) - vd >= precision) return mod_pos(r, pow_int(p, precision));
        Int u = eval(df, r) / pvd;
        Int inv;
        mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), modulus.get_mpz_t());
        r = mod_pos(r - (fr / pvd) * inv, modulus);
    }
    throw Error(ErrorKind::InvalidArgument, "Newton iteration did not converge");
}

}  // namespace

std::optional<Int> padic_integral_root(const IntPoly& f_in, const Int& p, long precision) {
    IntPoly f = f_in;
    while (!f.empty() && f.back() == 0) f.pop_back();
    if (f.empty()) throw Error(ErrorKind::ZeroInput, "root of zero polynomial");
    if (f.size() == 1) return std::nullopt;
    if (p > 1'000'000) throw Error(ErrorKind::Overflow, "p-adic root search limited to p <= 10^6");
    // content does not affect roots
    Int content = 0;
    for (auto& c : f) content = gcd(content, c);
    for (auto& c : f) c /= content;
    IntPoly df = derivative(f);
    constexpr long kInf = 1L << 40;
    constexpr long kMaxDepth = 256;

    std::function<std::optional<Int>(const Int&, long, const Int&)> search =
        [&](const Int& r, long k, const Int& pk) -> std::optional<Int> {
        Int fr = eval(f, r);
        if (fr == 0) return mod_pos(r, pow_int(p, precision));
        long vf = val_or(fr, p, kInf);
        long vd = val_or(eval(df, r), p, kInf);
        if (vd < kInf && vf > 2 * vd) return newton_lift(f, df, r, p, vd, precision);
        if (k >= kMaxDepth) return std::nullopt;
        Int next_pk = pk * p;
        for (Int j = 0; j < p; ++j) {
            Int cand = r + j * pk;
            Int fc = eval(f, cand);
            if (fc != 0 && valuation(fc, p) < k + 1) continue;
            if (auto root = search(cand, k + 1, next_pk)) return root;
        }
        return std::nullopt;
    };

    for (Int r = 0; r < p; ++r) {
        Int fr = eval(f, r);
        if (fr != 0 && valuation(fr, p) < 1) continue;
        if (auto root = search(r, 1, p)) return root;
    }
    return std::nullopt;
}

namespace {

IntPoly integer_coeffs(const UniPoly& u) {
    IntPoly out;
    for (auto& c : u.primitive_integer()) out.push_back(c);
    return out;
}

}  // namespace

std::optional<std::pair<Int, Int>> padic_projective_root(const BinaryForm& f, const Int& p, long precision) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroInput, "root of zero form");
    if (f.coeff(0) == 0) return std::make_pair(Int(1), Int(0));
    if (auto x = padic_integral_root(integer_coeffs(f.dehomogenize()), p, precision)) {
        return std::make_pair(*x, Int(1));
    }
    // y = t/s in pZ_p: substitute y = p z
    UniPoly g = f.dehomogenize_s();
    std::vector<Rat> scaled;
    Rat pk = 1;
    for (int k = 0; k <= g.degree(); ++k) {
        scaled.push_back(g.coeff(k) * pk);
        pk *= p;
    }
    if (auto z = padic_integral_root(integer_coeffs(UniPoly(scaled)), p, precision)) {
        return std::make_pair(Int(1), mod_pos(*z * p, pow_int(p, precision)));
    }
    return std::nullopt;
}

bool has_padic_root(const BinaryForm& f, const Int& p) { return padic_projective_root(f, p, 1).has_value(); }

bool has_local_root(const BinaryForm& f, const Place& place) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroInput, "root of zero form");
    if (f.degree() == 0) return false;
    if (f.coeff(0) == 0) return true;
    if (place.is_real()) return count_real_roots(f.dehomogenize()) > 0;
    return has_padic_root(f, place.p);
}

std::pair<Int, Int> rational_reconstruction(const Int& t, const Int& m) {
    if (m <= 0) throw Error(ErrorKind::InvalidArgument, "modulus must be positive");
    Int bound = isqrt(Int(m / 2));
    Int r0 = m, r1 = mod_pos(t, m);
    Int s0 = 0, s1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (s1 < 0) return {-r1, -s1};
    return {r1, s1};
}

}  // namespace cubapprox
