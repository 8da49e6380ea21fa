#include "cubapprox/classifier.hpp"

#include "cubapprox/enumerate.hpp"
#include "cubapprox/error.hpp"
#include "cubapprox/unipoly.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace cubapprox {

std::string_view to_string(Smoothness s) {
    switch (s) {
    case Smoothness::Verified:
        return "Verified";
    case Smoothness::AssumedSmooth:
        return "AssumedSmooth";
    case Smoothness::SingularAlong:
        return "SingularAlong";
    }
    return "?";
}

std::string_view to_string(ConeShape s) {
    switch (s) {
    case ConeShape::SplitRational:
        return "SplitRational";
    case ConeShape::SplitQuadraticInKv:
        return "SplitQuadraticInKv";
    case ConeShape::NonSplitOverKv:
        return "NonSplitOverKv";
    case ConeShape::DoubleLine:
        return "DoubleLine";
    }
    return "?";
}

std::string_view to_string(CaseTag c) {
    switch (c) {
    case CaseTag::OnRationalLine:
        return "OnRationalLine";
    case CaseTag::IsolatedInSection:
        return "IsolatedInSection";
    case CaseTag::RationalTangentLines:
        return "RationalTangentLines";
    case CaseTag::Generic:
        return "Generic";
    }
    return "?";
}

std::string Confidence::to_string() const { return proved ? "Proved" : "HeuristicUpTo(" + std::to_string(bound) + ")"; }

namespace {

std::vector<ProjPoint> rational_roots_on_line(const ParamCurve& line, const BinaryForm& restriction) {
    std::vector<ProjPoint> out;
    if (restriction.is_zero() || restriction.degree() == 0) return out;
    for (auto& f : factor_binary_form(restriction).factors)
        if (auto r = f.rational_root()) out.push_back(line.point_at(r->first, r->second));
    return out;
}

// Exact divisibility of F by the linear form with coefficients a.
bool divides_form(const HomForm& form, const std::vector<Rat>& a) {
    const int n = form.n_vars();
    int k = -1;
    for (int i = 0; i < n; ++i)
        if (a[static_cast<std::size_t>(i)] != 0) k = i;
    if (k < 0) return false;
    std::vector<Poly> images;
    for (int i = 0; i < n; ++i) {
        if (i != k) {
            images.push_back(Poly::variable(n, i));
            continue;
        }
        Poly sub(n);
        for (int j = 0; j < n; ++j)
            if (j != k && a[static_cast<std::size_t>(j)] != 0)
                sub = sub + Poly::variable(n, j) * Rat(-a[static_cast<std::size_t>(j)] / a[static_cast<std::size_t>(k)]);
        images.push_back(sub);
    }
    return form.poly().compose(images).is_zero();
}

ProjPoint primitive_point(std::span<const Rat> v) { return ProjPoint::from_rationals(v); }

HomForm linear_form(std::span<const Rat> coeffs) {
    const int n = static_cast<int>(coeffs.size());
    Poly p(n);
    for (int i = 0; i < n; ++i) p = p + Poly::variable(n, i) * coeffs[static_cast<std::size_t>(i)];
    return HomForm(p, 1).primitive();
}

}  // namespace

bool has_linear_factor(const HomForm& cubic) {
    const int n = cubic.n_vars();
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> coord(-6, 6);
    auto random_point = [&] {
        for (;;) {
            std::vector<Int> c;
            for (int i = 0; i < n; ++i) c.emplace_back(coord(rng));
            if (std::any_of(c.begin(), c.end(), [](const Int& v) { return v != 0; })) return ProjPoint(c);
        }
    };
    std::vector<std::vector<ProjPoint>> root_sets;
    for (int attempt = 0; attempt < 60; ++attempt) {
        ProjPoint a = random_point(), b = random_point();
        if (a == b) continue;
        ParamCurve line = ParamCurve::line(a, b);
        BinaryForm r = line.pull_back(cubic);
        if (r.is_zero()) continue;
        auto roots = rational_roots_on_line(line, r);
        if (roots.empty()) return false;
        root_sets.push_back(std::move(roots));
    }
    // every restriction had a rational root: look for the hyperplane through
    // one root of each of n-1 restrictions
    const std::size_t need = static_cast<std::size_t>(n - 1);
    for (std::size_t base = 0; base + need <= root_sets.size(); base += need) {
        std::vector<std::size_t> pick(need, 0);
        for (;;) {
            RatMatrix m(need, static_cast<std::size_t>(n));
            for (std::size_t r = 0; r < need; ++r)
                for (int c = 0; c < n; ++c) m(r, static_cast<std::size_t>(c)) = root_sets[base + r][pick[r]][static_cast<std::size_t>(c)];
            auto ker = m.kernel();
            if (ker.size() == 1 && divides_form(cubic, ker.front())) return true;
            std::size_t r = 0;
            while (r < need && ++pick[r] == root_sets[base + r].size()) pick[r++] = 0;
            if (r == need) break;
        }
    }
    return false;
}

CubicHypersurface CubicHypersurface::make(HomForm form) {
    if (form.degree() != 3) throw Error(ErrorKind::InvalidArgument, "X must be a cubic form");
    if (form.n_vars() < 3) throw Error(ErrorKind::InvalidArgument, "X must live in P^n with n >= 2");
    if (form.is_zero()) throw Error(ErrorKind::ZeroInput, "zero form");
    if (has_linear_factor(form)) throw Error(ErrorKind::InvalidArgument, "cubic form is reducible over Q (has a linear factor)");
    CubicHypersurface x;
    x.form = form.primitive();
    return x;
}

std::vector<ProjPoint> singular_rational_points(const CubicHypersurface& x, long bound) {
    EnumerateOptions opt;
    opt.height_bound = bound;
    std::vector<ProjPoint> out;
    for (auto& p : enumerate(x.form, opt).points) {
        auto grad = x.form.gradient(p.coords());
        if (std::all_of(grad.begin(), grad.end(), [](const Rat& r) { return r == 0; })) out.push_back(p);
    }
    return out;
}

ProjPoint TangentSection::direction_point(std::span<const Rat> direction) const {
    const std::size_t n1 = static_cast<std::size_t>(form.n_vars());
    if (direction.size() + 2 != n1) throw Error(ErrorKind::DimensionMismatch, "direction size");
    std::vector<Rat> y(n1, 0);
    std::copy(direction.begin(), direction.end(), y.begin() + 1);
    return primitive_point(change.apply(y));
}

HomForm TangentSection::section_form() const {
    const int m = f3.n_vars();
    std::vector<Poly> embed;
    for (int i = 0; i < m; ++i) embed.push_back(Poly::variable(m + 1, i));
    Poly p = f3.poly().compose(embed) + Poly::variable(m + 1, m) * g.poly().compose(embed);
    return HomForm(p, 3);
}

TangentSection tangent_section(const HomForm& form, const ProjPoint& p) {
    const int n1 = form.n_vars();
    if (static_cast<int>(p.size()) != n1) throw Error(ErrorKind::DimensionMismatch, "point and form dimensions differ");
    if (form.evaluate(p.coords()) != 0) throw Error(ErrorKind::PointNotOnX, p.to_string() + " is not on X");
    auto grad = form.gradient(p.coords());
    auto nz = std::find_if(grad.begin(), grad.end(), [](const Rat& r) { return r != 0; });
    if (nz == grad.end()) throw Error(ErrorKind::SingularAtP, "gradient of F vanishes at " + p.to_string());
    const std::size_t j = static_cast<std::size_t>(nz - grad.begin());

    RatMatrix row(1, static_cast<std::size_t>(n1));
    for (int i = 0; i < n1; ++i) row(0, static_cast<std::size_t>(i)) = grad[static_cast<std::size_t>(i)];
    std::vector<std::vector<Rat>> cols;  // kernel vectors completing P
    std::vector<Rat> pr = p.as_rationals();
    auto rank_of = [&](const std::vector<std::vector<Rat>>& vecs) {
        RatMatrix m(vecs.size(), static_cast<std::size_t>(n1));
        for (std::size_t r = 0; r < vecs.size(); ++r)
            for (int c = 0; c < n1; ++c) m(r, static_cast<std::size_t>(c)) = vecs[r][static_cast<std::size_t>(c)];
        return m.rank();
    };
    std::vector<std::vector<Rat>> span{pr};
    for (auto& k : row.kernel()) {
        auto prim = primitive_point(k).as_rationals();
        span.push_back(prim);
        if (rank_of(span) == span.size())
            cols.push_back(prim);
        else
            span.pop_back();
    }
    if (cols.size() != static_cast<std::size_t>(n1 - 2)) throw Error(ErrorKind::SingularChange, "tangent frame");

    TangentSection s;
    s.form = form;
    s.point = p;
    s.change = RatMatrix(static_cast<std::size_t>(n1), static_cast<std::size_t>(n1));
    s.change(j, 0) = 1;
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (int r = 0; r < n1; ++r) s.change(static_cast<std::size_t>(r), c + 1) = cols[c][static_cast<std::size_t>(r)];
    for (int r = 0; r < n1; ++r) s.change(static_cast<std::size_t>(r), static_cast<std::size_t>(n1 - 1)) = pr[static_cast<std::size_t>(r)];
    s.inverse = *s.change.inverse();
    s.tangent = linear_form(grad);

    HomForm moved = substitute_linear(form, s.change);
    const int m = n1 - 2;
    Poly f3(m), g(m);
    for (auto& [e, c] : moved.terms()) {
        if (e[0] != 0) continue;
        const int tail = e[static_cast<std::size_t>(n1 - 1)];
        Exponent inner(e.begin() + 1, e.end() - 1);
        if (tail == 0)
            f3.add_term(inner, c);
        else if (tail == 1)
            g.add_term(inner, c);
        else
            throw Error(ErrorKind::SingularChange, "normalization failed: y_n^2 term on the tangent hyperplane");
    }
    s.f3 = HomForm(f3, 3);
    s.g = HomForm(g, 2);
    return s;
}

namespace {

// Coefficients in z of F(prefix, z) for integer prefix values.
std::vector<Int> univariate_in_last(const HomForm& f, std::span<const Int> prefix) {
    const std::size_t m = static_cast<std::size_t>(f.n_vars());
    std::vector<Int> coeffs(static_cast<std::size_t>(f.degree()) + 1, 0);
    for (auto& [e, c] : f.terms()) {
        Int v = c.get_num();
        for (std::size_t i = 0; i + 1 < m; ++i)
            for (int k = 0; k < e[i]; ++k) v *= prefix[i];
        coeffs[static_cast<std::size_t>(e[m - 1])] += v;
    }
    return coeffs;
}

UniPoly to_unipoly(const std::vector<Int>& c) {
    std::vector<Rat> r(c.begin(), c.end());
    return UniPoly(r);
}

HomForm integral(const HomForm& f) { return f.is_zero() ? f : f.primitive(); }

ParamCurve line_from_direction(const TangentSection& s, const ProjPoint& direction) {
    const ProjPoint& p = s.point;
    ProjPoint d = s.direction_point(direction.as_rationals());
    std::size_t k = 0;
    while (p[k] == 0) ++k;
    std::vector<Int> reduced;
    for (std::size_t i = 0; i < p.size(); ++i) reduced.push_back(p[k] * d[i] - d[k] * p[i]);
    return ParamCurve::line(p, ProjPoint(reduced));
}

}  // namespace

LineSearch lines_through_point(const TangentSection& s, long search_bound) {
    LineSearch out;
    const int m = s.f3.n_vars();
    std::set<ProjPoint> directions;
    if (s.f3.is_zero() && s.g.is_zero()) throw Error(ErrorKind::InvalidArgument, "X contains its tangent hyperplane at P");
    if (m == 2) {
        BinaryForm f = BinaryForm::from_homform(s.f3), g = BinaryForm::from_homform(s.g);
        BinaryForm h = gcd(f, g);
        if (h.degree() > 0)
            for (auto& fac : factor_binary_form(h).factors)
                if (auto r = fac.rational_root()) directions.insert(ProjPoint::from_rationals(std::vector<Rat>{r->first, r->second}));
        out.exhaustive = true;
        out.method = "common rational roots of the binary forms f3 and g";
    } else {
        const HomForm f3 = integral(s.f3), g = integral(s.g);
        auto test = [&](std::span<const Rat> d) {
            if (g.evaluate(d) == 0 && f3.evaluate(d) == 0) directions.insert(ProjPoint::from_rationals(d));
        };
        Diagonalization diag;
        if (!g.is_zero()) {
            diag = diagonalize(g);
            // radical directions are rational zeros of g
            for (std::size_t c = 0; c < static_cast<std::size_t>(m); ++c)
                if (diag.diagonal[c] == 0) {
                    std::vector<Rat> col;
                    for (std::size_t r = 0; r < static_cast<std::size_t>(m); ++r) col.push_back(diag.change(r, c));
                    test(col);
                }
        }
        if (!g.is_zero() && diag.rank() == static_cast<std::size_t>(m) && !has_smooth_rational_point(g)) {
            out.exhaustive = true;
            out.method = "g has no rational zero (local obstruction)";
        } else {
            // iterate all but the last coordinate; solve for the last exactly
            const double budget = 2.0e6;
            long b = search_bound;
            const double cap = std::floor((std::pow(budget, 1.0 / (m - 1)) - 1.0) / 2.0);
            if (static_cast<double>(b) > cap) b = static_cast<long>(cap);
            b = std::max(b, 1L);
            out.bound_used = b;
            out.method = "search over directions of height <= " + std::to_string(b);
            std::vector<Int> prefix(static_cast<std::size_t>(m - 1), -b);
            std::vector<Rat> unit(static_cast<std::size_t>(m), 0);
            unit.back() = 1;
            test(unit);
            for (;;) {
                auto first = std::find_if(prefix.begin(), prefix.end(), [](const Int& v) { return v != 0; });
                if (first != prefix.end() && *first > 0) {
                    UniPoly gu = to_unipoly(univariate_in_last(g.is_zero() ? HomForm(m, 2) : g, prefix));
                    UniPoly fu = to_unipoly(univariate_in_last(f3, prefix));
                    std::vector<Rat> zs;
                    if (gu.is_zero() && fu.is_zero())
                        zs.push_back(0);
                    else
                        zs = rational_roots(gu.is_zero() ? fu : fu.is_zero() ? gu : gcd(gu, fu));
                    for (auto& z : zs) {
                        std::vector<Rat> d(prefix.begin(), prefix.end());
                        d.push_back(z);
                        test(d);
                    }
                }
                std::size_t i = prefix.size();
                while (i > 0 && prefix[i - 1] == b) prefix[--i] = -b;
                if (i == 0) break;
                ++prefix[i - 1];
            }
        }
    }
    for (auto& d : directions) out.lines.push_back(line_from_direction(s, d));
    return out;
}

LineSearch lines_through_point(const HomForm& form, const ProjPoint& p, long search_bound) {
    return lines_through_point(tangent_section(form, p), search_bound);
}

std::optional<ParamCurve> find_rational_line(const HomForm& form, const ProjPoint& p, long point_bound, long search_bound) {
    auto own = lines_through_point(form, p, search_bound);
    if (!own.lines.empty()) return own.lines.front();
    EnumerateOptions opt;
    opt.height_bound = point_bound;
    auto pts = enumerate(form, opt).points;
    std::stable_sort(pts.begin(), pts.end(), [](const ProjPoint& a, const ProjPoint& b) { return height(a) < height(b); });
    const long inner = std::min(search_bound, 20L);
    for (auto& r : pts) {
        if (r == p) continue;
        try {
            auto found = lines_through_point(form, r, inner);
            if (!found.lines.empty()) return found.lines.front();
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SingularAtP) throw;
        }
    }
    return std::nullopt;
}

TangentConeReport tangent_cone_analysis(const TangentSection& s, const Place& v) {
    if (s.ambient_dimension() != 3) throw Error(ErrorKind::InvalidArgument, "tangent cone analysis is for surfaces");
    BinaryForm q = BinaryForm::from_homform(s.g);
    if (q.is_zero()) throw Error(ErrorKind::WorseThanNode, "S_P has a point of multiplicity 3 at P");
    TangentConeReport r{ConeShape::DoubleLine, q, factor_binary_form(q), q.discriminant(), std::nullopt};
    if (r.discriminant == 0) return r;
    r.local = is_square_local(r.discriminant, v);
    if (is_perfect_square(r.discriminant))
        r.shape = ConeShape::SplitRational;
    else
        r.shape = r.local->is_square ? ConeShape::SplitQuadraticInKv : ConeShape::NonSplitOverKv;
    return r;
}

bool verify_line_certificate(const HomForm& form, const ProjPoint& p, const ParamCurve& line) {
    return line.degree() == 1 && line.ambient_size() == static_cast<std::size_t>(form.n_vars()) && line.lies_on(form) &&
           line.passes_through(p);
}

namespace {

std::string join_rats(const std::vector<Rat>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
    return "[" + out + "]";
}

std::string factor_string(const BinaryFactorization& f) {
    std::string out = to_string(f.unit);
    for (auto& fac : f.factors) {
        out += " * (" + fac.factor.to_string() + ")";
        if (fac.multiplicity > 1) out += "^" + std::to_string(fac.multiplicity);
    }
    return out;
}

}  // namespace

ClassificationResult classify(const CubicHypersurface& x, const ProjPoint& p, const Place& v, const ClassifyOptions& options) {
    if (options.search_bound < 1) throw Error(ErrorKind::InvalidArgument, "search bound must be positive");
    TangentSection s = tangent_section(x.form, p);
    ClassificationResult result;
    const auto names = indexed_names(x.form.n_vars());

    // hypothesis: a rational line on X
    if (options.line_on_x) {
        if (options.line_on_x->degree() != 1 || !options.line_on_x->lies_on(x.form))
            throw Error(ErrorKind::HypothesisFailure, "supplied line " + options.line_on_x->to_string() + " does not lie on X");
        result.rational_line_on_x = options.line_on_x;
    } else {
        result.rational_line_on_x = find_rational_line(x.form, p, options.hypothesis_point_bound, options.search_bound);
        if (!result.rational_line_on_x)
            throw Error(ErrorKind::HypothesisFailure, "no rational line on X found through P or through points of height <= " +
                                                          std::to_string(options.hypothesis_point_bound) +
                                                          "; supply one with line=");
    }
    result.certificates.push_back({"hypothesis_line", "rational line on X", result.rational_line_on_x, {}});

    Certificate section{"section", "normalized tangent section f3 + y_n g", std::nullopt, {}};
    section.data["tangent_hyperplane"] = s.tangent.to_string(names);
    section.data["f3"] = s.f3.to_string();
    section.data["g"] = s.g.to_string();
    result.certificates.push_back(section);

    LineSearch ls = lines_through_point(s, options.search_bound);
    Certificate search{"search", ls.method, std::nullopt, {}};
    search.data["exhaustive"] = ls.exhaustive ? "true" : "false";
    search.data["bound"] = std::to_string(ls.bound_used);
    search.data["lines_found"] = std::to_string(ls.lines.size());
    result.certificates.push_back(search);

    if (!ls.lines.empty()) {
        result.tag = CaseTag::OnRationalLine;
        result.predicted_alpha = 1;
        for (auto& l : ls.lines) result.certificates.push_back({"line", "rational line through P on X", l, {}});
        result.confidence = {true, 0};
        return result;
    }

    if (s.ambient_dimension() == 3) {
        BinaryForm f = BinaryForm::from_homform(s.f3), g = BinaryForm::from_homform(s.g);
        result.confidence = {true, 0};
        if (g.is_zero()) {
            result.tag = CaseTag::IsolatedInSection;
            result.predicted_alpha = 2;
            Certificate c{"section", "S_P is a cone of three conjugate lines through P", std::nullopt, {}};
            c.data["f3_factors"] = factor_string(factor_binary_form(f));
            result.certificates.push_back(c);
            return result;
        }
        BinaryForm h = gcd(f, g);
        if (h.degree() == 2) {
            result.tag = CaseTag::IsolatedInSection;
            result.predicted_alpha = 2;
            Certificate c{"section", "S_P contains two conjugate lines through P meeting only at P", std::nullopt, {}};
            c.data["common_factor"] = h.to_string();
            result.certificates.push_back(c);
            return result;
        }
        TangentConeReport cone = tangent_cone_analysis(s, v);
        Certificate c{"tangent_cone", std::string(to_string(cone.shape)), std::nullopt, {}};
        c.data["quadric"] = cone.quadric.to_string();
        c.data["factors"] = factor_string(cone.factors);
        c.data["discriminant"] = to_string(cone.discriminant);
        c.data["place"] = to_string(v);
        if (cone.local) c.data["discriminant_is_local_square"] = cone.local->is_square ? "true" : "false";
        result.certificates.push_back(c);
        switch (cone.shape) {
        case ConeShape::SplitRational:
            result.tag = CaseTag::RationalTangentLines;
            result.predicted_alpha = 2;
            break;
        case ConeShape::NonSplitOverKv:
            result.tag = CaseTag::IsolatedInSection;
            result.predicted_alpha = 2;
            break;
        case ConeShape::SplitQuadraticInKv:
        case ConeShape::DoubleLine:
            result.tag = CaseTag::Generic;
            result.predicted_alpha = Rat(3, 2);
            break;
        }
        return result;
    }

    // n >= 4
    const Confidence search_confidence{ls.exhaustive, ls.exhaustive ? 0 : ls.bound_used};
    if (s.g.is_zero()) {
        result.tag = CaseTag::IsolatedInSection;
        result.predicted_alpha = 2;
        result.confidence = search_confidence;
        result.certificates.push_back({"section", "S_P is a cone over P; its rational points lie on rational lines through P",
                                       std::nullopt, {}});
        return result;
    }
    Diagonalization diag = diagonalize(s.g);
    const bool local = has_smooth_local_point(s.g, v);
    Certificate lc{"local_solvability", local ? "g = 0 has a nonsingular point over the completion"
                                              : "g = 0 has no nonsingular point over the completion",
                   std::nullopt, {}};
    lc.data["place"] = to_string(v);
    lc.data["diagonal"] = join_rats(diag.diagonal);
    lc.data["rank"] = std::to_string(diag.rank());
    result.certificates.push_back(lc);
    if (local) {
        result.tag = CaseTag::Generic;
        result.predicted_alpha = Rat(3, 2);
        result.confidence = search_confidence;
        return result;
    }
    // only the radical of g is left over k_v; a radical direction off f3 = 0
    // gives rational points of S_P accumulating at P
    const std::size_t m = static_cast<std::size_t>(s.g.n_vars());
    std::vector<std::vector<Rat>> radical;
    for (std::size_t c = 0; c < m; ++c)
        if (diag.diagonal[c] == 0) {
            std::vector<Rat> col;
            for (std::size_t r = 0; r < m; ++r) col.push_back(diag.change(r, c));
            radical.push_back(col);
        }
    std::optional<std::vector<Rat>> witness;
    if (!radical.empty()) {
        std::vector<int> coef(radical.size(), -2);
        for (;;) {
            std::vector<Rat> d(m, 0);
            for (std::size_t k = 0; k < radical.size(); ++k)
                for (std::size_t r = 0; r < m; ++r) d[r] += coef[k] * radical[k][r];
            if (std::any_of(d.begin(), d.end(), [](const Rat& q) { return q != 0; }) && s.f3.evaluate(d) != 0) {
                witness = d;
                break;
            }
            std::size_t k = 0;
            while (k < coef.size() && coef[k] == 2) coef[k++] = -2;
            if (k == coef.size()) break;
            ++coef[k];
        }
    }
    if (witness) {
        result.tag = CaseTag::Generic;
        result.predicted_alpha = Rat(3, 2);
        result.confidence = search_confidence;
        Certificate w{"section", "rational singular point of g = 0 off f3 = 0: P is not isolated in S_P", std::nullopt, {}};
        w.data["direction"] = join_rats(*witness);
        result.certificates.push_back(w);
        return result;
    }
    result.tag = CaseTag::IsolatedInSection;
    result.predicted_alpha = 2;
    result.confidence = {true, 0};
    return result;
}

}  // namespace cubapprox
