#include "cubapprox/param_curve.hpp"

#include "cubapprox/error.hpp"

#include <algorithm>

namespace cubapprox {

bool Alpha::operator<(const Alpha& o) const {
    if (is_infinite()) return false;
    if (o.is_infinite()) return true;
    return *value < *o.value;
}

std::string Alpha::to_string() const { return is_infinite() ? "inf" : cubapprox::to_string(*value); }

ParamCurve::ParamCurve(std::vector<BinaryForm> components) : components_(std::move(components)) {
    if (components_.size() < 2) throw Error(ErrorKind::DimensionMismatch, "a curve needs at least two coordinates");
    int d = -1;
    for (auto& c : components_) {
        if (c.is_zero()) continue;
        if (d >= 0 && c.degree() != d) throw Error(ErrorKind::DimensionMismatch, "components of different degree");
        d = c.degree();
    }
    if (d < 0) throw Error(ErrorKind::ZeroInput, "every component is zero");
    for (auto& c : components_)
        if (c.is_zero()) c = BinaryForm::zero(d);
    BinaryForm common = BinaryForm::zero(d);
    for (auto& c : components_) common = gcd(common, c);
    if (common.degree() > 0)
        for (auto& c : components_) c = c.is_zero() ? BinaryForm::zero(d - common.degree()) : c.divide_exact(common);
    if (components_.front().degree() == 0) throw Error(ErrorKind::InvalidArgument, "constant map is not a curve");
    // scale to primitive integer coefficients with the first nonzero positive
    Int den = 1;
    for (auto& c : components_)
        for (auto& x : c.coeffs()) den = lcm(den, x.get_den());
    Int num = 0;
    for (auto& c : components_)
        for (auto& x : c.coeffs()) num = gcd(num, Int(x.get_num() * (den / x.get_den())));
    Rat scale = make_rat(den, num);
    auto first = std::find_if(components_.begin(), components_.end(), [](const BinaryForm& c) { return !c.is_zero(); });
    auto lead = std::find_if(first->coeffs().begin(), first->coeffs().end(), [](const Rat& x) { return x != 0; });
    if (*lead < 0) scale = -scale;
    for (auto& c : components_) c = c * scale;
}

ParamCurve ParamCurve::line(const ProjPoint& a, const ProjPoint& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "line through points of different dimension");
    if (a == b) throw Error(ErrorKind::InvalidArgument, "line through a single point");
    std::vector<BinaryForm> comps;
    for (std::size_t i = 0; i < a.size(); ++i) comps.push_back(BinaryForm::linear(a[i], b[i]));
    return ParamCurve(std::move(comps));
}

std::vector<Rat> ParamCurve::at(const Rat& s, const Rat& t) const {
    std::vector<Rat> out;
    for (auto& c : components_) out.push_back(c.evaluate(s, t));
    return out;
}

ProjPoint ParamCurve::point_at(const Rat& s, const Rat& t) const {
    auto v = at(s, t);
    return ProjPoint::from_rationals(v);
}

BinaryForm ParamCurve::pull_back(const HomForm& form) const {
    if (form.n_vars() != static_cast<int>(components_.size()))
        throw Error(ErrorKind::DimensionMismatch, "form and curve live in different spaces");
    const int d = degree();
    std::vector<std::vector<BinaryForm>> powers(components_.size());
    auto power = [&](std::size_t i, int k) -> const BinaryForm& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(BinaryForm::s_power(0));
        while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * components_[i]);
        return cache[k];
    };
    BinaryForm out = BinaryForm::zero(form.degree() * d);
    for (auto& [e, c] : form.terms()) {
        BinaryForm term = BinaryForm::s_power(0) * c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) term = term * power(i, e[i]);
        out = out + term;
    }
    return out;
}

BinaryForm ParamCurve::preimage_form(const ProjPoint& p) const {
    if (p.size() != components_.size()) throw Error(ErrorKind::DimensionMismatch, "point and curve dimensions differ");
    std::size_t j = 0;
    for (std::size_t i = 1; i < p.size(); ++i)
        if (abs(p[i]) > abs(p[j])) j = i;
    BinaryForm h = BinaryForm::zero(degree());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i == j) continue;
        h = gcd(h, components_[i] * Rat(p[j]) - components_[j] * Rat(p[i]));
    }
    return h;
}

ParamCurve ParamCurve::transformed(const RatMatrix& m) const {
    if (m.cols() != components_.size()) throw Error(ErrorKind::DimensionMismatch, "matrix and curve sizes differ");
    std::vector<BinaryForm> out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        BinaryForm acc = BinaryForm::zero(degree());
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0) acc = acc + components_[c] * m(r, c);
        out.push_back(acc);
    }
    return ParamCurve(std::move(out));
}

std::string ParamCurve::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (i) out += "; ";
        out += components_[i].to_string();
    }
    return out;
}

ParamCurve parse_param_curve(std::string_view text) {
    std::vector<BinaryForm> comps;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = text.find(';', pos);
        std::string_view piece = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
        try {
            comps.push_back(parse_binary_form(piece));
        } catch (const Error& e) {
            throw Error(ErrorKind::ParseError, "component " + std::to_string(comps.size()) + ": " + e.what());
        }
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return ParamCurve(std::move(comps));
}

}  // namespace cubapprox
