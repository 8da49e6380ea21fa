#include "cubapprox/unipoly.hpp"

#include "cubapprox/error.hpp"

#include <algorithm>

namespace cubapprox {

UniPoly::UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::monomial(int degree, const Rat& c) {
    std::vector<Rat> v(degree + 1);
    v[degree] = c;
    return UniPoly(std::move(v));
}

UniPoly UniPoly::linear_root(const Rat& root) { return UniPoly({-root, Rat(1)}); }

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<Rat> v(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return UniPoly(std::move(v));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + o * Rat(-1); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rat> v(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return UniPoly(std::move(v));
}

UniPoly UniPoly::operator*(const Rat& c) const {
    std::vector<Rat> v = c_;
    for (auto& x : v) x *= c;
    return UniPoly(std::move(v));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
    if (d.is_zero()) throw Error(ErrorKind::ZeroInput, "polynomial division by zero");
    std::vector<Rat> rem = c_;
    if (degree() < d.degree()) return {UniPoly{}, *this};
    std::vector<Rat> quo(degree() - d.degree() + 1);
    Rat lead_inv = 1 / d.leading();
    for (int k = degree() - d.degree(); k >= 0; --k) {
        Rat f = rem[k + d.degree()] * lead_inv;
        quo[k] = f;
        if (f == 0) continue;
        for (int j = 0; j <= d.degree(); ++j) rem[k + j] -= f * d.c_[j];
    }
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
    return UniPoly(std::move(v));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return {};
    return *this * (1 / leading());
}

Rat UniPoly::evaluate(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<Int> UniPoly::primitive_integer() const {
    Int den = 1;
    for (auto& c : c_) den = lcm(den, c.get_den());
    Int g = 0;
    std::vector<Int> out;
    out.reserve(c_.size());
    for (auto& c : c_) {
        out.emplace_back(c * den);
        g = gcd(g, out.back());
    }
    if (g == 0) return out;
    if (out.back() < 0) g = -g;
    for (auto& v : out) v /= g;
    return out;
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        auto r = x.divmod(y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

std::vector<UniPoly> squarefree_decomposition(const UniPoly& p) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroInput, "squarefree decomposition of zero");
    std::vector<UniPoly> out;
    if (p.degree() == 0) return out;
    UniPoly a = gcd(p, p.derivative());
    UniPoly b = p.divmod(a).first;
    UniPoly c = p.derivative().divmod(a).first;
    UniPoly d = c - b.derivative();
    while (b.degree() > 0) {
        UniPoly ai = gcd(b, d);
        out.push_back(ai);
        b = b.divmod(ai).first;
        c = d.divmod(ai).first;
        d = c - b.derivative();
    }
    // drop trailing trivial factors
    while (!out.empty() && out.back().degree() == 0) out.pop_back();
    return out;
}

std::vector<Rat> rational_roots(const UniPoly& p) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroInput, "roots of zero polynomial");
    std::vector<Rat> roots;
    UniPoly q = p;
    if (q.coeff(0) == 0) {
        roots.emplace_back(0);
        int k = 0;
        while (q.coeff(k) == 0) ++k;
        std::vector<Rat> shifted(q.coeffs().begin() + k, q.coeffs().end());
        q = UniPoly(std::move(shifted));
    }
    if (q.degree() >= 1) {
        auto ints = q.primitive_integer();
        auto num_divs = divisors(ints.front());
        auto den_divs = divisors(ints.back());
        for (auto& dd : den_divs)
            for (auto& nd : num_divs)
                for (int sgn : {1, -1}) {
                    Rat cand = make_rat(nd * sgn, dd);
                    if (cand.get_den() != dd) continue;  // seen with a smaller denominator
                    if (q.evaluate(cand) == 0) roots.push_back(cand);
                }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

namespace {

int sign_changes(const std::vector<int>& signs) {
    int changes = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace

int count_real_roots(const UniPoly& p) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroInput, "real roots of zero polynomial");
    if (p.degree() == 0) return 0;
    // work with the squarefree part
    UniPoly sq = p.divmod(gcd(p, p.derivative())).first;
    std::vector<UniPoly> chain{sq, sq.derivative()};
    while (chain.back().degree() > 0) {
        auto r = chain[chain.size() - 2].divmod(chain.back()).second;
        if (r.is_zero()) break;
        chain.push_back(r * Rat(-1));
    }
    std::vector<int> at_pos, at_neg;
    for (auto& f : chain) {
        int lc = sgn(f.leading());
        at_pos.push_back(lc);
        at_neg.push_back(f.degree() % 2 == 0 ? lc : -lc);
    }
    return sign_changes(at_neg) - sign_changes(at_pos);
}

std::optional<std::pair<UniPoly, UniPoly>> split_quartic(const UniPoly& p) {
    if (p.degree() != 4) return std::nullopt;
    // Monic integer transform: y = lc * x gives y^4 + a y^3 + b y^2 + c y + d.
    auto ints = p.primitive_integer();
    Int lc = ints[4];
    Int a = ints[3], b = ints[2] * lc, c = ints[1] * lc * lc, d = ints[0] * lc * lc * lc;
    // Gauss: any rational factorisation of a monic integer polynomial is integral.
    auto back = [&](const Int& pp, const Int& qq) {
        // y^2 + pp y + qq with y = lc x  ->  lc^2 x^2 + pp lc x + qq, made monic in x
        return UniPoly({make_rat(qq, lc * lc), make_rat(pp, lc), Rat(1)});
    };
    auto check = [&](const Int& pp, const Int& qq, const Int& rr, const Int& ss) {
        return pp + rr == a && pp * rr + qq + ss == b && pp * ss + qq * rr == c && qq * ss == d;
    };
    if (d == 0) return std::nullopt;  // y is a factor, so a rational root exists
    for (auto& dv : divisors(d)) {
        for (int sg : {1, -1}) {
            Int q = dv * sg;
            Int s = d / q;
            if (s != q) {
                // p (s - q) = c - a q
                Int num = c - a * q;
                Int den = s - q;
                if (num % den != 0) continue;
                Int pp = num / den;
                Int rr = a - pp;
                if (check(pp, q, rr, s)) return std::make_pair(back(pp, q), back(rr, s));
            } else {
                // p + r = a, p r = b - 2q
                Int prod = b - 2 * q;
                Int disc = a * a - 4 * prod;
                if (disc < 0 || !is_perfect_square(disc)) continue;
                Int root = isqrt(disc);
                if ((a + root) % 2 != 0) continue;
                Int pp = (a + root) / 2;
                Int rr = a - pp;
                if (check(pp, q, rr, s)) return std::make_pair(back(pp, q), back(rr, s));
            }
        }
    }
    return std::nullopt;
}

}  // namespace cubapprox
