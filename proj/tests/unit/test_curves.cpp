#include "doctest.h"

#include "../support/catalog.hpp"
#include "cubapprox/curves.hpp"
#include "cubapprox/error.hpp"
#include "cubapprox/local.hpp"

#include <functional>
#include <random>

using namespace cubapprox;
using testing::designed_surface;
using testing::designed_threefold;

namespace {

const char* kLine = "s; -s; t; -t";
const char* kSqrt2Node = "s^2*t - 2*t^3; s^3 - 2*s*t^2; t^3";  // node at [0:0:1], tangents y = +-sqrt2 x
const char* kRationalNode = "s^2*t - t^3; s^3 - s*t^2; t^3";
const char* kCusp = "s^2*t; s^3; t^3";

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidArgument;
}

// Vanishing order at x = x0 of a univariate polynomial, by Taylor coefficients.
int taylor_order(UniPoly f, const Rat& x0) {
    if (f.is_zero()) return 1 << 20;
    int k = 0;
    while (f.evaluate(x0) == 0) {
        f = f.derivative();
        ++k;
    }
    return k;
}

// Branch multiplicity from the local affine expansion at a rational q = [x0:1]:
// minimum vanishing order of the affine coordinates C_i/C_j - P_i/P_j.
int local_multiplicity(const ParamCurve& c, const ProjPoint& p, const Rat& x0) {
    std::size_t j = 0;
    while (p[j] == 0) ++j;
    int best = 1 << 20;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i == j) continue;
        UniPoly num = (c[i] * Rat(p[j]) - c[j] * Rat(p[i])).dehomogenize();
        best = std::min(best, taylor_order(num, x0));
    }
    return best;
}

double delta_of(const ProjPoint& x, const ProjPoint& target, const Place& v) {
    return delta_lower(height(x), dist(x, target, v));
}

void check_sequence_invariants(const ApproxSequence& seq) {
    for (std::size_t i = 0; i < seq.points.size(); ++i) {
        CHECK_FALSE(seq.points[i] == seq.target);
        if (i > 0) CHECK(dist(seq.points[i], seq.target, seq.place) < dist(seq.points[i - 1], seq.target, seq.place));
    }
}

}  // namespace

TEST_CASE("branch data examples") {
    auto line = parse_param_curve(kLine);
    auto b = branch_data(line, parse_point("1:-1:1:-1"), Place::real());
    REQUIRE(b.size() == 1);
    REQUIRE(b[0].root);
    CHECK(b[0].root->first / b[0].root->second == 1);
    CHECK(b[0].kappa_degree == 1);
    CHECK(b[0].m_q == 1);
    CHECK(b[0].r_q == 1);
    CHECK(curve_alpha(line, parse_point("1:-1:1:-1"), Place::real()) == Alpha::of(1));

    auto node = parse_param_curve(kSqrt2Node);
    ProjPoint origin = parse_point("0:0:1");
    auto real = branch_data(node, origin, Place::real());
    REQUIRE(real.size() == 1);
    CHECK(real[0].factor == parse_binary_form("s^2 - 2*t^2"));
    CHECK(real[0].kappa_degree == 2);
    CHECK(real[0].in_kv);  // discriminant 8 > 0
    CHECK(real[0].r_q == 2);
    CHECK(real[0].m_q == 1);
    CHECK(curve_alpha(node, origin, Place::real()) == Alpha::of(Rat(3, 2)));

    auto five = branch_data(node, origin, Place::padic(5));
    CHECK_FALSE(five[0].in_kv);  // squares mod 5 are 1 and 4
    CHECK(five[0].r_q == 0);
    CHECK(curve_alpha(node, origin, Place::padic(5)).is_infinite());
    CHECK(curve_alpha(node, origin, Place::padic(7)) == Alpha::of(Rat(3, 2)));  // 3^2 = 2 mod 7

    CHECK(curve_alpha(parse_param_curve(kRationalNode), origin, Place::real()) == Alpha::of(3));
    auto cusp = branch_data(parse_param_curve(kCusp), origin, Place::real());
    REQUIRE(cusp.size() == 1);
    CHECK(cusp[0].m_q == 2);
    CHECK(curve_alpha(parse_param_curve(kCusp), origin, Place::real()) == Alpha::of(Rat(3, 2)));

    CHECK(kind_of([&] { branch_data(line, parse_point("1:0:0:0"), Place::real()); }) == ErrorKind::PointNotOnCurve);
}

TEST_CASE("branch multiplicities match the local expansion and the preimage degree") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> d(-4, 4);
    auto random_form = [&](int deg) {
        std::vector<Rat> c(static_cast<std::size_t>(deg) + 1);
        for (auto& x : c) x = d(rng);
        return BinaryForm(c);
    };
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        int deg = 1 + trial % 4;
        std::size_t n = 3 + static_cast<std::size_t>(trial % 2);
        Rat x0 = make_rat(d(rng), 1 + (trial % 3));
        // force a branch of multiplicity k at x = x0 in the first coordinates
        int k = 1 + trial % std::min(deg, 3);
        std::vector<BinaryForm> comps;
        BinaryForm lin = BinaryForm::vanishing_at(x0, 1);
        BinaryForm lin_k = BinaryForm::s_power(0);
        for (int i = 0; i < k; ++i) lin_k = lin_k * lin;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            BinaryForm rest = deg > k ? random_form(deg - k) : BinaryForm(std::vector<Rat>{Rat(d(rng))});
            comps.push_back(lin_k * rest);
        }
        comps.push_back(random_form(deg));
        std::optional<ParamCurve> c;
        try {
            c.emplace(comps);
        } catch (const Error&) {
            continue;
        }
        if (c->degree() != deg) continue;
        ProjPoint p = c->point_at(x0, 1);
        auto branches = branch_data(*c, p, Place::real());
        int total = 0, max_m = 0;
        for (auto& b : branches) {
            total += b.kappa_degree * b.m_q;
            max_m = std::max(max_m, b.m_q);
            if (b.kappa_degree == 1 && b.root->second != 0)
                CHECK(b.m_q == local_multiplicity(*c, p, b.root->first / b.root->second));
            CHECK(b.r_q == (!b.in_kv ? 0 : b.kappa_degree == 1 ? 1 : 2));
        }
        CHECK(total == c->preimage_form(p).degree());
        Alpha a = curve_alpha(*c, branches);
        REQUIRE_FALSE(a.is_infinite());  // the rational branch at x0 is always in k_v
        CHECK(*a.value <= c->degree());
        CHECK(*a.value >= Rat(c->degree(), 2 * max_m));
        ++checked;
    }
    CHECK(checked > 150);
}

TEST_CASE("residual conic on the Fermat surface") {
    HomForm f = parse_form(testing::kFermatSurface);
    ParamCurve ell = parse_param_curve(kLine);
    ProjPoint p = parse_point("3:4:5:-6");
    ResidualConic r = residual_conic(f, p, ell);
    REQUIRE(r.kind == ResidualConic::Kind::Conic);
    REQUIRE(r.conic);
    CHECK(r.conic->degree() == 2);
    CHECK(r.conic->lies_on(f));
    CHECK(r.conic->passes_through(p));
    CHECK(curve_alpha(*r.conic, p, Place::real()) == Alpha::of(2));
    // u * residual = restriction of X to the plane
    CHECK(HomForm(Poly::variable(3, 0), 1) * r.residual == r.restricted);

    CHECK(kind_of([&] { residual_conic(f, parse_point("1:-1:1:-1"), ell); }) == ErrorKind::PointOnLine);
}

TEST_CASE("residual conic splitting") {
    HomForm f = parse_form(testing::kFermatSurface);
    // P lies on the rational line x0 + x2 = x1 + x3 = 0, which meets ell
    ProjPoint p = parse_point("1:0:-1:0");
    ResidualConic r = residual_conic(f, p, parse_param_curve(kLine));
    REQUIRE(r.kind == ResidualConic::Kind::RationalLines);
    REQUIRE_FALSE(r.lines.empty());
    for (auto& l : r.lines) {
        CHECK(l.degree() == 1);
        CHECK(l.lies_on(f));
        CHECK(l.passes_through(p));
        CHECK(curve_alpha(l, p, Place::real()) == Alpha::of(1));
    }

    // S_P = (x1^2 + x2^2)(x2 + x3) on x0 = 0: the plane through P and the
    // rational component is the tangent plane, leaving two conjugate lines
    HomForm imag = parse_form(designed_surface("x1^2 + x2^2"));
    ResidualConic split = residual_conic(imag, parse_point("0:0:0:1"), parse_param_curve("0; s; t; -t"));
    CHECK(split.kind == ResidualConic::Kind::DegenerateSplit);
    CHECK(split.split.degree() == 2);
    CHECK(split.split.discriminant() < 0);
    CHECK(HomForm(Poly::variable(3, 0), 1) * split.residual == split.restricted);
}

TEST_CASE("psi inverts the projection from P") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-7, 7);
    for (auto [form, point] : {std::pair{designed_surface("x1^2 - 2*x2^2"), "0:0:0:1"},
                               std::pair{designed_threefold("x1^2 + x2^2 - 3*x3^2"), "0:0:0:0:1"},
                               std::pair{std::string(testing::kFermatSurface), "3:4:5:-6"}}) {
        HomForm f = parse_form(form);
        TangentSection s = tangent_section(f, parse_point(point));
        int checked = 0;
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<Rat> dir(static_cast<std::size_t>(s.g.n_vars()));
            for (auto& x : dir) x = d(rng);
            Rat gv = s.g.evaluate(dir);
            if (gv == 0) continue;
            // the point of S_P over the direction: y_n = -f3 / g
            std::vector<Rat> y = dir;
            y.push_back(-s.f3.evaluate(dir) / gv);
            ProjPoint x = section_point(s, y);
            CHECK(f.evaluate(x.as_rationals()) == 0);
            CHECK(section_point(s, section_psi(s, dir)) == x);
            ++checked;
        }
        CHECK(checked > 20);
    }
}

TEST_CASE("projection curve") {
    for (auto [form, point, place] :
         {std::tuple{designed_surface("x1^2 - 2*x2^2"), "0:0:0:1", Place::real()},
          std::tuple{designed_surface("x1^2 - 2*x2^2"), "0:0:0:1", Place::padic(7)},
          std::tuple{designed_surface("(x1 - x2)^2 + x1*x2"), "0:0:0:1", Place::padic(13)},
          std::tuple{designed_threefold("x1^2 + x2^2 - 3*x3^2"), "0:0:0:0:1", Place::real()}}) {
        CAPTURE(form);
        HomForm f = parse_form(form);
        ProjPoint p = parse_point(point);
        TangentSection s = tangent_section(f, p);
        ProjectionCurve pc = projection_curve(s, place);
        CHECK(pc.curve.degree() == 3);
        CHECK(pc.curve.lies_on(f));
        CHECK(pc.curve.preimage_form(p) == pc.g_on_t);
        auto branches = branch_data(pc.curve, p, place);
        REQUIRE(branches.size() == 1);
        CHECK(branches[0].kappa_degree == 2);
        CHECK(branches[0].in_kv);
        CHECK(branches[0].m_q == 1);
        CHECK(curve_alpha(pc.curve, branches) == Alpha::of(Rat(3, 2)));
        // the tangent-plane section contains the curve
        CHECK(pc.curve.lies_on(s.tangent));
        // reproducible from the seed
        CHECK(projection_curve(s, place).curve == pc.curve);
    }
    auto empty = [](const std::string& form, const char* point, const Place& v) {
        return kind_of([&] { projection_curve(tangent_section(parse_form(form), parse_point(point)), v); });
    };
    CHECK(empty(designed_surface("x1^2 + x1*x2 + x2^2"), "0:0:0:1", Place::real()) == ErrorKind::EmptyLocalQuadric);
    CHECK(empty(designed_threefold("x1^2 + x2^2 + x3^2"), "0:0:0:0:1", Place::real()) == ErrorKind::EmptyLocalQuadric);
    // split over Q: every line meets g = 0 in rational points
    CHECK(empty(designed_surface("x1*(x1 - x2)"), "0:0:0:1", Place::real()) == ErrorKind::NoQuadraticPointFound);
}

TEST_CASE("continued fractions") {
    auto c = quadratic_convergents(0, 2, 1, 12);
    CHECK(c[0] == std::pair<Int, Int>(1, 1));
    CHECK(c[1] == std::pair<Int, Int>(3, 2));
    CHECK(c[2] == std::pair<Int, Int>(7, 5));
    CHECK(c[3] == std::pair<Int, Int>(17, 12));
    // Pell recursion for sqrt2: h' = 2h + h_prev
    for (std::size_t i = 2; i < c.size(); ++i) {
        CHECK(c[i].first == 2 * c[i - 1].first + c[i - 2].first);
        CHECK(c[i].second == 2 * c[i - 1].second + c[i - 2].second);
        CHECK(abs(c[i].first * c[i].first - 2 * c[i].second * c[i].second) == 1);
    }

    // both roots of random irreducible quadratics, against exact root isolation
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> d(-30, 30);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 60; ++trial) {
        Int a = d(rng), b = d(rng), cc = d(rng);
        if (a == 0) continue;
        Int disc = b * b - 4 * a * cc;
        if (disc <= 0 || is_perfect_square(disc)) continue;
        auto roots = real_root_intervals(UniPoly({Rat(cc), Rat(b), Rat(a)}), 400);
        REQUIRE(roots.size() == 2);
        auto plus = quadratic_convergents(-b, disc, 2 * a, 25);
        auto minus = quadratic_convergents(b, disc, -2 * a, 25);
        // (-b + sqrt D) / 2a is the larger root iff a > 0
        auto& hi_root = a > 0 ? plus : minus;
        auto& lo_root = a > 0 ? minus : plus;
        auto hi_ref = interval_convergents(roots[1].first, roots[1].second, 25);
        auto lo_ref = interval_convergents(roots[0].first, roots[0].second, 25);
        REQUIRE(hi_ref.size() == 25);
        REQUIRE(lo_ref.size() == 25);
        CHECK(hi_root == hi_ref);
        CHECK(lo_root == lo_ref);
        ++checked;
    }
    CHECK(checked == 60);

    // cube root of 2 = [1; 3, 1, 5, 1, 1, 4, ...]
    auto cube = real_root_intervals(UniPoly({Rat(-2), Rat(0), Rat(0), Rat(1)}), 200);
    REQUIRE(cube.size() == 1);
    auto cc = interval_convergents(cube[0].first, cube[0].second, 4);
    CHECK(cc[0] == std::pair<Int, Int>(1, 1));
    CHECK(cc[1] == std::pair<Int, Int>(4, 3));
    CHECK(cc[2] == std::pair<Int, Int>(5, 4));
    CHECK(cc[3] == std::pair<Int, Int>(29, 23));
}

TEST_CASE("Hensel lifts of sqrt2 in Z_7") {
    auto lifts = hensel_lifts(parse_binary_form("s^2 - 2*t^2"), 7, 6);
    CHECK(lifts[0].first == 3);
    CHECK(lifts[1].first == 10);
    CHECK(lifts[2].first == 108);
    Int pk = 1;
    for (std::size_t k = 0; k < lifts.size(); ++k) {
        pk *= 7;
        CHECK(lifts[k].second == 1);
        CHECK((lifts[k].first * lifts[k].first - 2) % pk == 0);
        if (k > 0) CHECK((lifts[k].first - lifts[k - 1].first) % (pk / 7) == 0);
    }
}

TEST_CASE("sequences on curves") {
    auto line = parse_param_curve(kLine);
    ProjPoint p = parse_point("1:-1:1:-1");
    auto branches = branch_data(line, p, Place::real());
    auto harmonic = sequence_on_curve(line, branches[0], p, Place::real(), 30, Schedule::Harmonic);
    REQUIRE(harmonic.points.size() == 30);
    check_sequence_invariants(harmonic);
    for (std::size_t i = 0; i < harmonic.points.size(); ++i) {
        double n = static_cast<double>(i + 1);
        // parameter 1 + 1/i: height ~ i, dist ~ 1/i
        CHECK(height(harmonic.points[i]).get_d() <= 2 * n + 2);
        double dd = dist(harmonic.points[i], p, Place::real()).to_double();
        CHECK(dd * n <= 2.0);
        CHECK(dd * n >= 0.1);
    }

    auto node = parse_param_curve(kSqrt2Node);
    ProjPoint origin = parse_point("0:0:1");
    auto nb = branch_data(node, origin, Place::real());
    auto seq = sequence_on_curve(node, nb[0], origin, Place::real(), 12);
    check_sequence_invariants(seq);
    auto conv = quadratic_convergents(0, 8, 2, 40);
    for (auto& pt : seq.points) {
        bool found = std::any_of(conv.begin(), conv.end(), [&](auto& hk) { return node.point_at(hk.first, hk.second) == pt; });
        CHECK(found);
    }
    CHECK(kind_of([&] { sequence_on_curve(node, branch_data(node, origin, Place::padic(5))[0], origin, Place::padic(5), 5); }) ==
          ErrorKind::BranchNotInKv);
}

TEST_CASE("sequence exponents converge to curve_alpha") {
    struct Case {
        std::string curve;
        std::string point;
        Place place;
    };
    std::vector<Case> cases{
        {kLine, "1:-1:1:-1", Place::real()},       {kLine, "1:-1:1:-1", Place::padic(5)},
        {kSqrt2Node, "0:0:1", Place::real()},      {kSqrt2Node, "0:0:1", Place::padic(7)},
        {kRationalNode, "0:0:1", Place::real()},   {kRationalNode, "0:0:1", Place::padic(3)},
        {kCusp, "0:0:1", Place::real()},           {"s^3 - 3*s*t^2 + t^3; s*t^2; t^3", "1:0:0", Place::real()},
    };
    // a projection curve in the 3/2 regime
    TangentSection s = tangent_section(parse_form(designed_surface("x1^2 - 2*x2^2")), parse_point("0:0:0:1"));
    cases.push_back({projection_curve(s, Place::real()).curve.to_string(), "0:0:0:1", Place::real()});
    cases.push_back({projection_curve(s, Place::padic(7)).curve.to_string(), "0:0:0:1", Place::padic(7)});

    for (auto& c : cases) {
        CAPTURE(c.curve);
        CAPTURE(to_string(c.place));
        ParamCurve curve = parse_param_curve(c.curve);
        ProjPoint p = parse_point(c.point);
        auto branches = branch_data(curve, p, c.place);
        Alpha alpha = curve_alpha(curve, branches);
        REQUIRE_FALSE(alpha.is_infinite());
        for (auto& b : branches) {
            if (!b.in_kv) continue;
            Rat branch_alpha = Rat(curve.degree()) / (b.r_q * b.m_q);
            auto seq = sequence_on_curve(curve, b, p, c.place, 45);
            check_sequence_invariants(seq);
            const ProjPoint& last = seq.points.back();
            if (c.place.is_real())
                CHECK(height(last) >= Int(1000000));
            else
                CHECK(dist(last, p, c.place).exponent >= 30);
            CHECK(std::abs(delta_of(last, p, c.place) - branch_alpha.get_d()) < 0.1);
        }
    }
}
