#include "cubapprox/binary_form.hpp"

#include "cubapprox/error.hpp"

#include <algorithm>

namespace cubapprox {

BinaryForm::BinaryForm(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw Error(ErrorKind::InvalidArgument, "binary form needs at least one coefficient");
}

BinaryForm BinaryForm::zero(int degree) { return BinaryForm(std::vector<Rat>(degree + 1)); }

BinaryForm BinaryForm::s_power(int k) {
    std::vector<Rat> v(k + 1);
    v[0] = 1;
    return BinaryForm(std::move(v));
}

BinaryForm BinaryForm::t_power(int k) {
    std::vector<Rat> v(k + 1);
    v[k] = 1;
    return BinaryForm(std::move(v));
}

BinaryForm BinaryForm::linear(const Rat& a, const Rat& b) { return BinaryForm({a, b}); }

BinaryForm BinaryForm::vanishing_at(const Rat& root_s, const Rat& root_t) {
    if (root_s == 0 && root_t == 0) throw Error(ErrorKind::ZeroInput, "[0:0] is not a point");
    return BinaryForm({root_t, -root_s}).normalized();
}

BinaryForm BinaryForm::homogenize(const UniPoly& p, int degree) {
    if (p.degree() > degree) throw Error(ErrorKind::InvalidArgument, "homogenize: degree too small");
    std::vector<Rat> v(degree + 1);
    for (int k = 0; k <= degree; ++k) v[k] = p.coeff(degree - k);
    return BinaryForm(std::move(v));
}

BinaryForm BinaryForm::from_homform(const HomForm& f) {
    if (f.n_vars() != 2) throw Error(ErrorKind::DimensionMismatch, "binary form needs two variables");
    const int d = f.degree();
    std::vector<Rat> v(d + 1);
    for (auto& [e, c] : f.terms()) v[e[1]] = c;
    return BinaryForm(std::move(v));
}

bool BinaryForm::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& c) { return c == 0; });
}

BinaryForm BinaryForm::operator+(const BinaryForm& o) const {
    if (o.degree() != degree()) {
        if (o.is_zero()) return *this;
        if (is_zero()) return o;
        throw Error(ErrorKind::DimensionMismatch, "sum of binary forms of different degree");
    }
    std::vector<Rat> v = c_;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += o.c_[k];
    return BinaryForm(std::move(v));
}

BinaryForm BinaryForm::operator-(const BinaryForm& o) const { return *this + o * Rat(-1); }

BinaryForm BinaryForm::operator*(const BinaryForm& o) const {
    std::vector<Rat> v(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    }
    return BinaryForm(std::move(v));
}

BinaryForm BinaryForm::operator*(const Rat& c) const {
    std::vector<Rat> v = c_;
    for (auto& x : v) x *= c;
    return BinaryForm(std::move(v));
}

Rat BinaryForm::evaluate(const Rat& s, const Rat& t) const {
    const int d = degree();
    Rat acc = 0;
    // Horner in s/t avoided so t = 0 needs no special case.
    std::vector<Rat> spow(d + 1), tpow(d + 1);
    spow[0] = tpow[0] = 1;
    for (int k = 1; k <= d; ++k) {
        spow[k] = spow[k - 1] * s;
        tpow[k] = tpow[k - 1] * t;
    }
    for (int k = 0; k <= d; ++k) acc += c_[k] * spow[d - k] * tpow[k];
    return acc;
}

BinaryForm BinaryForm::ds() const {
    const int d = degree();
    if (d == 0) return zero(0);
    std::vector<Rat> v(d);
    for (int k = 0; k < d; ++k) v[k] = c_[k] * (d - k);
    return BinaryForm(std::move(v));
}

BinaryForm BinaryForm::dt() const {
    const int d = degree();
    if (d == 0) return zero(0);
    std::vector<Rat> v(d);
    for (int k = 1; k <= d; ++k) v[k - 1] = c_[k] * k;
    return BinaryForm(std::move(v));
}

int BinaryForm::t_order() const {
    for (int k = 0; k <= degree(); ++k)
        if (c_[k] != 0) return k;
    return degree() + 1;
}

UniPoly BinaryForm::dehomogenize() const {
    const int d = degree();
    std::vector<Rat> v(d + 1);
    for (int k = 0; k <= d; ++k) v[d - k] = c_[k];
    return UniPoly(std::move(v));
}

UniPoly BinaryForm::dehomogenize_s() const { return UniPoly(c_); }

BinaryForm BinaryForm::divide_exact(const BinaryForm& dv) const {
    if (dv.is_zero()) throw Error(ErrorKind::ZeroInput, "division by zero form");
    if (is_zero()) return zero(std::max(0, degree() - dv.degree()));
    const int a = t_order(), b = dv.t_order();
    if (dv.degree() > degree() || b > a) throw Error(ErrorKind::InvalidArgument, "form does not divide");
    // strip the t-powers, then divide in x = s/t where both have full degree
    std::vector<Rat> num(c_.begin() + a, c_.end());
    std::vector<Rat> den(dv.c_.begin() + b, dv.c_.end());
    BinaryForm n(num), d(den);
    auto [q, r] = n.dehomogenize().divmod(d.dehomogenize());
    if (!r.is_zero()) throw Error(ErrorKind::InvalidArgument, "form does not divide");
    BinaryForm core = homogenize(q, n.degree() - d.degree());
    return core * t_power(a - b);
}

bool BinaryForm::divides(const BinaryForm& dv) const {
    try {
        (void)divide_exact(dv);
        return true;
    } catch (const Error&) {
        return false;
    }
}

int BinaryForm::multiplicity_of(const BinaryForm& factor) const {
    if (factor.degree() < 1) throw Error(ErrorKind::InvalidArgument, "multiplicity of a constant");
    if (is_zero()) throw Error(ErrorKind::ZeroInput, "multiplicity in zero form");
    int m = 0;
    BinaryForm cur = *this;
    while (cur.degree() >= factor.degree() && cur.divides(factor)) {
        cur = cur.divide_exact(factor);
        ++m;
    }
    return m;
}

BinaryForm BinaryForm::normalized() const {
    if (is_zero()) return *this;
    Int den = 1;
    for (auto& c : c_) den = lcm(den, c.get_den());
    Int g = 0;
    for (auto& c : c_) g = cubapprox::gcd(g, Int(c * den));
    Rat scale = make_rat(den, g);
    for (auto& c : c_) {
        if (c != 0) {
            if (c < 0) scale = -scale;
            break;
        }
    }
    return *this * scale;
}

Rat BinaryForm::discriminant() const {
    if (degree() != 2) throw Error(ErrorKind::InvalidArgument, "discriminant needs a quadratic");
    return c_[1] * c_[1] - 4 * c_[0] * c_[2];
}

HomForm BinaryForm::to_homform() const {
    const int d = degree();
    Poly p(2);
    for (int k = 0; k <= d; ++k) p.add_term({d - k, k}, c_[k]);
    return HomForm(std::move(p), d);
}

std::string BinaryForm::to_string() const {
    static const std::vector<std::string> names{"s", "t"};
    return to_homform().to_string(names);
}

BinaryForm gcd(const BinaryForm& a, const BinaryForm& b) {
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    const int ta = a.t_order(), tb = b.t_order();
    BinaryForm ca(std::vector<Rat>(a.coeffs().begin() + ta, a.coeffs().end()));
    BinaryForm cb(std::vector<Rat>(b.coeffs().begin() + tb, b.coeffs().end()));
    UniPoly g = gcd(ca.dehomogenize(), cb.dehomogenize());
    BinaryForm core = BinaryForm::homogenize(g, g.degree());
    return (core * BinaryForm::t_power(std::min(ta, tb))).normalized();
}

BinaryForm parse_binary_form(std::string_view text) {
    static const std::vector<std::string> names{"s", "t"};
    Poly p = parse_poly(text, names);
    if (p.is_zero()) return BinaryForm::zero(0);
    return BinaryForm::from_homform(HomForm::from_poly(std::move(p)));
}

std::optional<std::pair<Rat, Rat>> BinaryFactor::rational_root() const {
    if (factor.degree() != 1) return std::nullopt;
    const Rat& a = factor.coeff(0);
    const Rat& b = factor.coeff(1);
    if (a == 0) return std::make_pair(Rat(1), Rat(0));
    return std::make_pair(Rat(-b / a), Rat(1));
}

std::optional<Rat> BinaryFactor::quadratic_discriminant() const {
    if (factor.degree() != 2) return std::nullopt;
    return factor.discriminant();
}

BinaryForm BinaryFactorization::product() const {
    BinaryForm out({unit});
    for (auto& f : factors)
        for (int i = 0; i < f.multiplicity; ++i) out = out * f.factor;
    return out;
}

BinaryFactorization factor_binary_form(const BinaryForm& form) {
    if (form.is_zero()) throw Error(ErrorKind::ZeroInput, "cannot factor the zero form");
    BinaryFactorization out;
    const int a = form.t_order();
    if (a > 0) out.factors.push_back({BinaryForm::t_power(1), a});
    BinaryForm core(std::vector<Rat>(form.coeffs().begin() + a, form.coeffs().end()));
    if (core.degree() > 0) {
        auto parts = squarefree_decomposition(core.dehomogenize());
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const int mult = static_cast<int>(i) + 1;
            UniPoly rest = parts[i];
            if (rest.degree() <= 0) continue;
            for (auto& r : rational_roots(rest)) {
                out.factors.push_back({BinaryForm::vanishing_at(r, 1), mult});
                rest = rest.divmod(UniPoly::linear_root(r)).first;
            }
            if (rest.degree() <= 0) continue;
            if (rest.degree() == 4) {
                if (auto split = split_quartic(rest)) {
                    out.factors.push_back({BinaryForm::homogenize(split->first, 2).normalized(), mult});
                    out.factors.push_back({BinaryForm::homogenize(split->second, 2).normalized(), mult});
                    continue;
                }
            } else if (rest.degree() > 4) {
                throw Error(ErrorKind::InvalidArgument, "irreducibility of degree > 4 factors is not decided");
            }
            out.factors.push_back({BinaryForm::homogenize(rest, rest.degree()).normalized(), mult});
        }
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const BinaryFactor& x, const BinaryFactor& y) {
        if (x.factor.degree() != y.factor.degree()) return x.factor.degree() < y.factor.degree();
        return x.factor.to_string() < y.factor.to_string();
    });
    BinaryForm prod = BinaryFactorization{Rat(1), out.factors}.product();
    for (int k = 0; k <= form.degree(); ++k) {
        if (prod.coeff(k) != 0) {
            out.unit = form.coeff(k) / prod.coeff(k);
            break;
        }
    }
    return out;
}

}  // namespace cubapprox
