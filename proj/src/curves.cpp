#include "cubapprox/curves.hpp"

#include "cubapprox/error.hpp"
#include "cubapprox/local.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace cubapprox {

namespace {

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int floor_rat(const Rat& x) { return floor_div(x.get_num(), x.get_den()); }

Int pow_int(const Int& p, long k) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

Int mod_pos(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::string pair_string(const std::pair<Rat, Rat>& q) { return "[" + to_string(q.first) + ":" + to_string(q.second) + "]"; }

// f restricted to the line s*a + t*b, as a binary form.
BinaryForm restrict_to_line(const HomForm& f, std::span<const Rat> a, std::span<const Rat> b) {
    std::vector<Poly> images;
    for (std::size_t i = 0; i < a.size(); ++i)
        images.push_back(Poly::variable(2, 0) * a[i] + Poly::variable(2, 1) * b[i]);
    return BinaryForm::from_homform(HomForm(f.poly().compose(images), f.degree()));
}

// Sturm chain of p.
std::vector<UniPoly> sturm_chain(const UniPoly& p) {
    std::vector<UniPoly> chain{p, p.derivative()};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        UniPoly r = chain[chain.size() - 2].divmod(chain.back()).second;
        if (r.is_zero()) break;
        chain.push_back(r * Rat(-1));
    }
    return chain;
}

int sign_variations(const std::vector<UniPoly>& chain, const Rat& x) {
    int count = 0, last = 0;
    for (auto& q : chain) {
        int s = sgn(q.evaluate(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

}  // namespace

std::string BranchDatum::to_string() const {
    std::string q = root ? pair_string(*root) : quadratic_root ? quadratic_root->to_string() : "root of " + factor.to_string();
    return "q=" + q + " kappa=" + std::to_string(kappa_degree) + " in_kv=" + (in_kv ? "true" : "false") +
           " m=" + std::to_string(m_q) + " r=" + std::to_string(r_q);
}

std::vector<BranchDatum> branch_data(const ParamCurve& c, const ProjPoint& p, const Place& v) {
    BinaryForm h = c.preimage_form(p);
    if (h.is_zero() || h.degree() <= 0) throw Error(ErrorKind::PointNotOnCurve, p.to_string() + " is not on " + c.to_string());
    std::vector<BranchDatum> out;
    for (auto& f : factor_binary_form(h).factors) {
        BranchDatum b;
        b.factor = f.factor;
        b.kappa_degree = f.factor.degree();
        // the local coordinates at P are the minors divided by units at q, so
        // the branch multiplicity is the multiplicity of q in their gcd
        b.m_q = f.multiplicity;
        if (b.kappa_degree == 1) {
            b.root = f.rational_root();
            b.in_kv = true;
        } else if (b.kappa_degree == 2) {
            auto& k = f.factor.coeffs();
            b.quadratic_root = quadratic_root(k[0], k[1], k[2], true);
            b.in_kv = is_square_local(f.factor.discriminant(), v).is_square;
        } else {
            b.in_kv = has_local_root(f.factor, v);
        }
        b.r_q = !b.in_kv ? 0 : b.kappa_degree == 1 ? 1 : 2;
        out.push_back(std::move(b));
    }
    return out;
}

Alpha curve_alpha(const ParamCurve& c, const std::vector<BranchDatum>& branches) {
    Alpha best = Alpha::infinity();
    for (auto& b : branches) {
        if (b.r_q == 0) continue;
        Alpha a = Alpha::of(Rat(c.degree()) / (b.r_q * b.m_q));
        if (a < best) best = a;
    }
    return best;
}

Alpha curve_alpha(const ParamCurve& c, const ProjPoint& p, const Place& v) { return curve_alpha(c, branch_data(c, p, v)); }

std::string to_string(ResidualConic::Kind kind) {
    switch (kind) {
    case ResidualConic::Kind::Conic:
        return "Conic";
    case ResidualConic::Kind::RationalLines:
        return "RationalLines";
    case ResidualConic::Kind::DegenerateSplit:
        return "DegenerateSplit";
    case ResidualConic::Kind::Contained:
        return "Contained";
    }
    return "?";
}

ResidualConic residual_conic(const HomForm& form, const ProjPoint& p, const ParamCurve& ell) {
    if (ell.degree() != 1) throw Error(ErrorKind::InvalidArgument, "residual conic needs a line");
    if (ell.ambient_size() != p.size() || static_cast<int>(p.size()) != form.n_vars())
        throw Error(ErrorKind::DimensionMismatch, "line, point and form dimensions differ");
    if (ell.passes_through(p)) throw Error(ErrorKind::PointOnLine, p.to_string() + " lies on " + ell.to_string());
    if (!ell.lies_on(form)) throw Error(ErrorKind::InvalidArgument, "the line does not lie on X");
    if (form.evaluate(p.as_rationals()) != 0) throw Error(ErrorKind::PointNotOnX, p.to_string());

    ResidualConic r;
    ProjPoint a = ell.point_at(1, 0), b = ell.point_at(0, 1);
    r.frame = {p, a, b};
    std::vector<Poly> images;
    for (std::size_t i = 0; i < p.size(); ++i)
        images.push_back(Poly::variable(3, 0) * Rat(p[i]) + Poly::variable(3, 1) * Rat(a[i]) + Poly::variable(3, 2) * Rat(b[i]));
    r.restricted = HomForm(form.poly().compose(images), form.degree());
    if (r.restricted.is_zero()) {
        r.kind = ResidualConic::Kind::Contained;
        return r;
    }
    // divide by u; split the quotient as u^2 c + u L(s,t) + Q2(s,t)
    Poly quotient(3);
    BinaryForm lin = BinaryForm::zero(1), quad = BinaryForm::zero(2);
    for (auto& [e, c] : r.restricted.terms()) {
        if (e[0] == 0) throw Error(ErrorKind::InvalidArgument, "the line does not lie on X");
        auto e2 = e;
        e2[0] -= 1;
        quotient.add_term(e2, c);
        std::vector<Rat> k;
        if (e2[0] == 1) {
            k = lin.coeffs();
            k[e2[2]] += c;
            lin = BinaryForm(k);
        } else if (e2[0] == 0) {
            k = quad.coeffs();
            k[e2[2]] += c;
            quad = BinaryForm(k);
        }
    }
    r.residual = HomForm(quotient, form.degree() - 1);

    auto direction = [&](const Rat& s, const Rat& t) {
        std::vector<Rat> x(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) x[i] = s * a[i] + t * b[i];
        return ProjPoint::from_rationals(x);
    };
    if (lin.is_zero()) {
        // P is a double point of the residual: a pair of lines through P
        r.split = quad.normalized();
        Rat disc = quad.discriminant();
        if (!is_perfect_square(disc)) {
            r.kind = ResidualConic::Kind::DegenerateSplit;
            return r;
        }
        r.kind = ResidualConic::Kind::RationalLines;
        for (auto& f : factor_binary_form(quad).factors) {
            auto q = *f.rational_root();
            r.lines.push_back(ParamCurve::line(p, direction(q.first, q.second)));
        }
        return r;
    }
    BinaryForm common = gcd(lin, quad);
    if (common.degree() == 1) {
        // residual = L (u + M): the component through P is L = 0
        auto q = *factor_binary_form(common).factors.front().rational_root();
        r.kind = ResidualConic::Kind::RationalLines;
        r.lines.push_back(ParamCurve::line(p, direction(q.first, q.second)));
        return r;
    }
    // lines through P in direction [s:t] meet the conic again at u = -Q2 / L
    std::vector<BinaryForm> comps;
    for (std::size_t i = 0; i < p.size(); ++i)
        comps.push_back(quad * Rat(-p[i]) + lin * BinaryForm::linear(a[i], b[i]));
    r.kind = ResidualConic::Kind::Conic;
    r.conic = ParamCurve(std::move(comps));
    return r;
}

std::vector<Rat> section_psi(const TangentSection& s, std::span<const Rat> direction) {
    if (static_cast<int>(direction.size()) != s.g.n_vars())
        throw Error(ErrorKind::DimensionMismatch, "direction has the wrong size");
    Rat gv = s.g.evaluate(direction);
    std::vector<Rat> out;
    for (auto& x : direction) out.push_back(x * gv);
    out.push_back(-s.f3.evaluate(direction));
    return out;
}

ProjPoint section_point(const TangentSection& s, std::span<const Rat> y) {
    if (y.size() + 1 != s.change.cols()) throw Error(ErrorKind::DimensionMismatch, "section coordinates have the wrong size");
    std::vector<Rat> full{Rat(0)};
    full.insert(full.end(), y.begin(), y.end());
    return ProjPoint::from_rationals(s.change.apply(full));
}

namespace {

// psi of the line T = s*a + t*b: y' = T g(T), y_n = -f3(T), then back to x.
ParamCurve psi_curve(const TangentSection& s, const std::vector<Rat>& a, const std::vector<Rat>& b, const BinaryForm& gt,
                     const BinaryForm& ft) {
    std::vector<BinaryForm> y;
    for (std::size_t i = 0; i < a.size(); ++i) y.push_back(BinaryForm::linear(a[i], b[i]) * gt);
    y.push_back(ft * Rat(-1));
    std::vector<BinaryForm> x;
    for (std::size_t r = 0; r < s.change.rows(); ++r) {
        BinaryForm acc = BinaryForm::zero(3);
        for (std::size_t c = 1; c < s.change.cols(); ++c)
            if (s.change(r, c) != 0) acc = acc + y[c - 1] * s.change(r, c);
        x.push_back(acc);
    }
    return ParamCurve(std::move(x));
}

}  // namespace

ParamCurve section_curve(const TangentSection& s) {
    if (s.ambient_dimension() != 3) throw Error(ErrorKind::InvalidArgument, "S_P is a curve only on surfaces");
    std::vector<Rat> a{Rat(1), Rat(0)}, b{Rat(0), Rat(1)};
    BinaryForm gt = restrict_to_line(s.g, a, b);
    if (gt.is_zero()) throw Error(ErrorKind::WorseThanNode, "S_P has a point of multiplicity 3 at P");
    BinaryForm ft = restrict_to_line(s.f3, a, b);
    if (ft.is_zero() || gcd(gt, ft).degree() > 0) throw Error(ErrorKind::InvalidArgument, "S_P contains a line through P");
    return psi_curve(s, a, b, gt, ft);
}

ProjectionCurve projection_curve(const TangentSection& s, const Place& v, int attempts, std::uint64_t seed) {
    if (attempts < 1) throw Error(ErrorKind::InvalidArgument, "attempts must be positive");
    if (s.g.is_zero()) throw Error(ErrorKind::InvalidArgument, "g vanishes identically");
    if (!has_smooth_local_point(s.g, v)) throw Error(ErrorKind::EmptyLocalQuadric, "g = 0 has no smooth point over " + to_string(v));
    const std::size_t m = static_cast<std::size_t>(s.g.n_vars());
    std::mt19937_64 rng(seed);
    long h = 1;
    for (int attempt = 1; attempt <= attempts; ++attempt, h = std::min(2 * h, 1L << 20)) {
        std::uniform_int_distribution<long> d(-h, h);
        std::vector<Rat> a(m), b(m);
        for (std::size_t i = 0; i < m; ++i) {
            a[i] = d(rng);
            b[i] = d(rng);
        }
        RatMatrix span(2, m);
        for (std::size_t i = 0; i < m; ++i) {
            span(0, i) = a[i];
            span(1, i) = b[i];
        }
        if (span.rank() < 2) continue;
        BinaryForm gt = restrict_to_line(s.g, a, b);
        if (gt.is_zero()) continue;
        Rat disc = gt.discriminant();
        if (disc == 0 || is_perfect_square(disc)) continue;
        if (!is_square_local(disc, v).is_square) continue;
        BinaryForm ft = restrict_to_line(s.f3, a, b);
        if (ft.is_zero() || gcd(gt, ft).degree() > 0) continue;

        ParamCurve curve = psi_curve(s, a, b, gt, ft);
        if (curve.degree() != 3) continue;
        return {std::move(curve), {a, b}, gt.normalized(), attempt};
    }
    throw Error(ErrorKind::NoQuadraticPointFound, "no suitable line after " + std::to_string(attempts) + " attempts");
}

std::vector<std::pair<Int, Int>> quadratic_convergents(const Int& p0, const Int& d, const Int& q0, int count) {
    if (q0 == 0 || is_perfect_square(d)) throw Error(ErrorKind::InvalidArgument, "not a quadratic irrational");
    Int p = p0, dd = d, q = q0;
    if ((dd - p * p) % q != 0) {
        Int aq = abs(q);
        p *= aq;
        dd *= q * q;
        q *= aq;
    }
    const Int root = isqrt(dd);
    std::vector<std::pair<Int, Int>> out;
    Int h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    while (static_cast<int>(out.size()) < count) {
        // floor((p + sqrt(dd)) / q) for irrational sqrt(dd)
        Int a = q > 0 ? floor_div(p + root, q) : -floor_div(p + root, -q) - 1;
        Int h = a * h1 + h2, k = a * k1 + k2;
        out.emplace_back(h, k);
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        p = a * q - p;
        q = (dd - p * p) / q;
    }
    return out;
}

std::vector<std::pair<Int, Int>> interval_convergents(const Rat& lo, const Rat& hi, int count) {
    std::vector<std::pair<Int, Int>> out;
    Rat l = lo, u = hi;
    Int h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    while (static_cast<int>(out.size()) < count && l < u) {
        Int a = floor_rat(l);
        if (floor_rat(u) != a) break;
        Int h = a * h1 + h2, k = a * k1 + k2;
        out.emplace_back(h, k);
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
        Rat fl = l - Rat(a), fu = u - Rat(a);
        if (fl == 0) break;
        // reciprocal reverses the order
        l = 1 / fu;
        u = 1 / fl;
    }
    return out;
}

std::vector<std::pair<Rat, Rat>> real_root_intervals(const UniPoly& p, long bits) {
    if (p.degree() < 1) return {};
    auto chain = sturm_chain(p);
    Rat bound = 0;
    for (int i = 0; i < p.degree(); ++i) bound = std::max(bound, Rat(abs(p.coeff(i) / p.leading())));
    bound += 1;
    std::vector<std::pair<Rat, Rat>> isolated;
    std::function<void(const Rat&, const Rat&, int, int)> split = [&](const Rat& lo, const Rat& hi, int vlo, int vhi) {
        int n = vlo - vhi;
        if (n == 0) return;
        if (n == 1) {
            isolated.emplace_back(lo, hi);
            return;
        }
        Rat mid = (lo + hi) / 2;
        if (p.evaluate(mid) == 0) throw Error(ErrorKind::InvalidArgument, "polynomial has a rational root");
        int vm = sign_variations(chain, mid);
        split(lo, mid, vlo, vm);
        split(mid, hi, vm, vhi);
    };
    split(-bound, bound, sign_variations(chain, -bound), sign_variations(chain, bound));
    Rat width = 1;
    mpq_div_2exp(width.get_mpq_t(), width.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
    for (auto& [lo, hi] : isolated) {
        int slo = sgn(p.evaluate(lo));
        while (hi - lo >= width) {
            Rat mid = (lo + hi) / 2;
            int sm = sgn(p.evaluate(mid));
            if (sm == 0) throw Error(ErrorKind::InvalidArgument, "polynomial has a rational root");
            (sm == slo ? lo : hi) = mid;
        }
    }
    return isolated;
}

std::vector<std::pair<Int, Int>> hensel_lifts(const BinaryForm& factor, const Int& p, int count) {
    auto root = padic_projective_root(factor, p, count);
    if (!root) throw Error(ErrorKind::BranchNotInKv, factor.to_string() + " has no root over Q_" + to_string(p));
    std::vector<std::pair<Int, Int>> out;
    for (int k = 1; k <= count; ++k) {
        Int pk = pow_int(p, k);
        if (root->second == 1)
            out.emplace_back(mod_pos(root->first, pk), 1);
        else
            out.emplace_back(1, mod_pos(root->second, pk));
    }
    return out;
}

ApproxSequence sequence_on_curve(const ParamCurve& c, const BranchDatum& b, const ProjPoint& p, const Place& v, int count,
                                 Schedule schedule) {
    if (count < 1) throw Error(ErrorKind::InvalidArgument, "count must be positive");
    if (!b.in_kv) throw Error(ErrorKind::BranchNotInKv, b.to_string() + " over " + to_string(v));
    if (c.preimage_form(p).degree() <= 0) throw Error(ErrorKind::PointNotOnCurve, p.to_string());

    std::string method;
    // first n parameter values [s:t] of the schedule
    std::function<std::vector<std::pair<Rat, Rat>>(int)> params;
    if (b.kappa_degree == 1) {
        auto [qs, qt] = *b.root;
        method = v.is_real() ? (schedule == Schedule::Dyadic ? "q + 2^-i" : "q + 1/i") : "q + p^i";
        params = [&, qs, qt](int n) {
            std::vector<std::pair<Rat, Rat>> out;
            for (int i = 1; i <= n; ++i) {
                Rat eps;
                if (!v.is_real())
                    eps = Rat(pow_int(v.p, i));
                else if (schedule == Schedule::Harmonic)
                    eps = Rat(1, i);
                else
                    eps = make_rat(1, pow_int(2, i));
                if (qt != 0)
                    out.emplace_back(qs / qt + eps, 1);
                else
                    out.emplace_back(1, eps);
            }
            return out;
        };
    } else if (!v.is_real()) {
        method = "rational reconstruction of Hensel lifts";
        params = [&](int n) {
            std::vector<std::pair<Rat, Rat>> out;
            for (auto& [s, t] : hensel_lifts(b.factor, v.p, n)) {
                bool affine = t == 1;
                Int pk = pow_int(v.p, static_cast<long>(out.size()) + 1);
                auto [num, den] = rational_reconstruction(affine ? s : t, pk);
                if (affine)
                    out.emplace_back(num, den);
                else
                    out.emplace_back(den, num);
            }
            return out;
        };
    } else if (b.kappa_degree == 2) {
        method = "continued fraction convergents";
        params = [&](int n) {
            auto k = b.factor.normalized().coeffs();
            Int a = k[0].get_num(), bb = k[1].get_num(), cc = k[2].get_num();
            std::vector<std::pair<Rat, Rat>> out;
            for (auto& [h, q] : quadratic_convergents(-bb, bb * bb - 4 * a * cc, 2 * a, n)) out.emplace_back(h, q);
            return out;
        };
    } else {
        method = "continued fraction convergents of an isolated real root";
        params = [&](int n) {
            UniPoly poly = b.factor.dehomogenize();
            std::vector<std::pair<Rat, Rat>> out;
            for (long bits = 128;; bits *= 2) {
                auto roots = real_root_intervals(poly, bits);
                if (roots.empty()) throw Error(ErrorKind::BranchNotInKv, b.to_string());
                auto conv = interval_convergents(roots.front().first, roots.front().second, n);
                if (static_cast<int>(conv.size()) == n || bits > 1 << 16) {
                    for (auto& [h, q] : conv) out.emplace_back(h, q);
                    return out;
                }
            }
        };
    }

    ApproxSequence seq{{}, p, v, "curve " + c.to_string() + "; branch " + b.to_string() + "; " + method};
    for (int n = 2 * count + 8; n <= 64 * count + 512; n *= 2) {
        seq.points.clear();
        std::optional<DistValue> last;
        for (auto& [s, t] : params(n)) {
            auto x = c.at(s, t);
            if (std::all_of(x.begin(), x.end(), [](const Rat& r) { return r == 0; })) continue;
            ProjPoint pt = ProjPoint::from_rationals(x);
            if (pt == p) continue;
            DistValue d = dist(pt, p, v);
            if (last && !(d < *last)) continue;
            last = d;
            seq.points.push_back(pt);
            if (static_cast<int>(seq.points.size()) == count) return seq;
        }
    }
    throw Error(ErrorKind::NoApproximants, "schedule produced fewer than " + std::to_string(count) + " decreasing points");
}

}  // namespace cubapprox
