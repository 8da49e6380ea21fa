#include "doctest.h"

#include "../support/catalog.hpp"
#include "../support/naive_enumerate.hpp"
#include "cubapprox/classifier.hpp"
#include "cubapprox/curves.hpp"
#include "cubapprox/error.hpp"
#include "cubapprox/estimate.hpp"

#include <cmath>
#include <functional>
#include <limits>

using namespace cubapprox;
using testing::designed_surface;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidArgument;
}

PointStream stream_of(const std::string& form, long bound, std::vector<ProjPoint> points) {
    PointStream s;
    s.form = parse_form(form);
    s.height_bound = bound;
    s.points = std::move(points);
    return s;
}

// [s : -s : t : -t] on the Fermat surface, canonical sign
ProjPoint on_line(long s, long t) {
    ProjPoint x(std::vector<Int>{Int(s), Int(-s), Int(t), Int(-t)});
    return x;
}

// Direct fold: min delta and witness count over points with 0 < dist <= eps.
std::pair<double, std::size_t> brute_row(const std::vector<ProjPoint>& pts, const ProjPoint& p, const Place& v, const Rat& eps) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t n = 0;
    for (auto& x : pts) {
        DistValue d = dist(x, p, v);
        if (d.is_zero() || d.value > eps) continue;
        ++n;
        best = std::min(best, delta_lower(height(x), d));
    }
    return {best, n};
}

// Exact min of H * dist^gamma (integer gamma) off the tangent hyperplane.
Rat brute_min_product(const std::vector<ProjPoint>& pts, const HomForm& tangent, const ProjPoint& p, const Place& v, int gamma,
                      long bound) {
    std::optional<Rat> best;
    for (auto& x : pts) {
        if (height(x) > bound || tangent.evaluate(x.coords()) == 0) continue;
        Rat prod(height(x));
        for (int k = 0; k < gamma; ++k) prod *= dist(x, p, v).value;
        if (!best || prod < *best) best = prod;
    }
    REQUIRE(best);
    return *best;
}

}  // namespace

TEST_CASE("geometric epsilon schedules") {
    auto real = geometric_epsilons(Place::real(), 4);
    REQUIRE(real.size() == 4);
    CHECK(real[0].value == Rat(1, 2));
    CHECK(real[3].value == Rat(1, 16));
    auto five = geometric_epsilons(Place::padic(5), 3);
    CHECK(five[2].value == Rat(1, 125));
    CHECK(five[2].exponent == 3);
    CHECK(five[0].place == Place::padic(5));
}

TEST_CASE("rows are exact minima over the epsilon balls") {
    std::string form = designed_surface("x1^2 - 2*x2^2");
    ProjPoint p = parse_point("0:0:0:1");
    EnumerateOptions eo;
    eo.height_bound = 40;
    PointStream s = enumerate(parse_form(form), eo);
    for (Place v : {Place::real(), Place::padic(7), Place::padic(2)}) {
        CAPTURE(to_string(v));
        AlphaEstimate e = empirical_alpha(s, p, v);
        REQUIRE_FALSE(e.rows.empty());
        CHECK(e.height_bound_used == 40);
        for (auto& row : e.rows) {
            auto [best, n] = brute_row(s.points, p, v, row.epsilon.value);
            CHECK(row.witnesses == n);
            CHECK(row.alpha_hat == best);
            CHECK(approximation_exponent(row.witness, p, v) == row.alpha_hat);
            CHECK(dist(row.witness, p, v).value <= row.epsilon.value);
        }
        for (std::size_t k = 1; k < e.rows.size(); ++k) CHECK(e.rows[k].epsilon.value < e.rows[k - 1].epsilon.value);
        // the default schedule stops at the last epsilon with a witness
        auto smaller = geometric_epsilons(v, static_cast<int>(e.rows.size()) + 1).back();
        CHECK(brute_row(s.points, p, v, smaller.value).second == 0);
        // extrapolation: smallest epsilon with at least three witnesses
        std::size_t k = e.extrapolation_row;
        CHECK(e.extrapolated == e.rows[k].alpha_hat);
        if (e.rows[k].witnesses >= 3)
            for (std::size_t j = k + 1; j < e.rows.size(); ++j) CHECK(e.rows[j].witnesses < 3);
    }

    // explicit epsilons
    std::vector<DistValue> eps{{Place::real(), Rat(1, 3), 0}, {Place::real(), Rat(1, 10), 0}, {Place::real(), Rat(1, 50), 0}};
    AlphaEstimate e = empirical_alpha(s, p, Place::real(), eps);
    std::size_t nonempty = 0;
    for (auto& d : eps) nonempty += brute_row(s.points, p, Place::real(), d.value).second > 0;
    CHECK(e.rows.size() == nonempty);  // epsilons without a witness are dropped after the first
    CHECK(e.rows[0].alpha_hat == brute_row(s.points, p, Place::real(), Rat(1, 3)).first);
    std::vector<DistValue> rising{{Place::real(), Rat(1, 10), 0}, {Place::real(), Rat(1, 3), 0}};
    CHECK(kind_of([&] { empirical_alpha(s, p, Place::real(), rising); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("points on a rational line through P give exponent 1") {
    // curve_alpha of the line is 1; the stream holds only points of the line
    ProjPoint p = parse_point("1:-1:1:-1");
    std::vector<ProjPoint> pts;
    for (long t = 1; t <= 2000; ++t)
        for (long k : {1L, 2L, 3L, 5L})
            if (std::gcd(t + k, t) == 1) pts.push_back(on_line(t + k, t));
    for (long t = 999000; t <= 1000000; t += 37) pts.push_back(on_line(t + 1, t));
    pts.push_back(p);  // the target itself is skipped
    PointStream s = stream_of(testing::kFermatSurface, 1000001, pts);
    AlphaEstimate e = empirical_alpha(s, p, Place::real());
    CHECK(curve_alpha(parse_param_curve("s; -s; t; -t"), p, Place::real()) == Alpha::of(1));
    CHECK(e.extrapolated == doctest::Approx(1.0).epsilon(0.05));
    CHECK(e.rows.back().epsilon.value <= Rat(1, 500000));
    for (auto& row : e.rows) CHECK(row.alpha_hat >= 0.99);
}

TEST_CASE("isolated real point: no approximants on the tangent section") {
    std::string form = designed_surface("x1^2 + x2^2");
    ProjPoint p = parse_point("0:0:0:1");
    HomForm f = parse_form(form);
    EnumerateOptions eo;
    eo.height_bound = 60;
    eo.hyperplane = tangent_section(f, p).tangent;
    PointStream s = enumerate(f, eo);
    REQUIRE(s.points.size() > 1);
    std::vector<DistValue> eps{{Place::real(), Rat(1, 4), 0}, {Place::real(), Rat(1, 8), 0}};
    CHECK(kind_of([&] { empirical_alpha(s, p, Place::real(), eps); }) == ErrorKind::NoApproximants);
    // the unfiltered stream does approach P
    eo.hyperplane.reset();
    CHECK_NOTHROW(empirical_alpha(enumerate(f, eo), p, Place::real(), eps));
}

TEST_CASE("estimates along generated sequences match curve_alpha") {
    struct Case {
        std::string curve;
        std::string point;
        Place place;
    };
    std::vector<Case> cases{
        {"s; -s; t; -t", "1:-1:1:-1", Place::real()},
        {"s^2*t - 2*t^3; s^3 - 2*s*t^2; t^3", "0:0:1", Place::real()},
        {"s^2*t - 2*t^3; s^3 - 2*s*t^2; t^3", "0:0:1", Place::padic(7)},
        {"s^2*t - t^3; s^3 - s*t^2; t^3", "0:0:1", Place::padic(5)},
        {"s^2*t; s^3; t^3", "0:0:1", Place::real()},
    };
    for (auto& c : cases) {
        CAPTURE(c.curve);
        CAPTURE(to_string(c.place));
        ParamCurve curve = parse_param_curve(c.curve);
        ProjPoint p = parse_point(c.point);
        auto branches = branch_data(curve, p, c.place);
        Alpha alpha = curve_alpha(curve, branches);
        REQUIRE_FALSE(alpha.is_infinite());
        // the branch attaining the minimum
        const BranchDatum* best = nullptr;
        for (auto& b : branches)
            if (b.in_kv && Rat(curve.degree()) / (b.r_q * b.m_q) == *alpha.value) best = &b;
        REQUIRE(best);
        ApproxSequence seq = sequence_on_curve(curve, *best, p, c.place, 45);
        PointStream s;
        s.points = seq.points;
        AlphaEstimate e = empirical_alpha(s, p, c.place);
        CHECK(std::abs(e.extrapolated - alpha.value->get_d()) < 0.1);
    }
}

TEST_CASE("windowed streams clip the schedule") {
    HomForm f = parse_form(testing::kFermatSurface);
    ProjPoint p = parse_point("3:4:5:-6");
    EnumerateOptions eo;
    eo.height_bound = 120;
    eo.window = RealWindow{p, Rat(1, 10)};
    PointStream s = enumerate(f, eo);
    REQUIRE(s.window);
    AlphaEstimate e = empirical_alpha(s, p, Place::real());
    for (auto& row : e.rows) CHECK(row.epsilon.value <= Rat(1, 10));

    // the window rows agree with the full box
    eo.window.reset();
    PointStream full = enumerate(f, eo);
    for (auto& row : e.rows) {
        auto [best, n] = brute_row(full.points, p, Place::real(), row.epsilon.value);
        CHECK(row.alpha_hat == best);
        CHECK(row.witnesses == n);
    }

    CHECK(kind_of([&] { empirical_alpha(s, parse_point("1:-1:0:0"), Place::real()); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { empirical_alpha(s, p, Place::padic(5)); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("Liouville products") {
    HomForm fermat = parse_form(testing::kFermatSurface);
    ProjPoint p = parse_point("3:4:5:-6");

    LiouvilleReport zero = liouville_check(fermat, p, Place::real(), 0);
    CHECK(zero.min_product == 1);
    for (auto& row : zero.rows) CHECK(row.min_product == 1);
    CHECK(zero.trend == 0);
    CHECK_FALSE(zero.beyond_certified);

    LiouvilleReport two = liouville_check(fermat, p, Place::real(), 2);
    REQUIRE(two.rows.size() == 3);
    CHECK(two.min_product > 0);
    CHECK(two.excluded_locus.find("S_P") != std::string::npos);
    HomForm tangent = tangent_section(fermat, p).tangent;
    for (std::size_t k = 0; k < two.rows.size(); ++k) {
        REQUIRE(two.rows[k].witness);
        CHECK(tangent.evaluate(two.rows[k].witness->coords()) != 0);
        CHECK(height(*two.rows[k].witness) <= two.rows[k].height_bound);
        if (k > 0) CHECK(two.rows[k].min_product <= two.rows[k - 1].min_product);
    }

    LiouvilleReport three = liouville_check(fermat, p, Place::real(), 3);
    CHECK(three.beyond_certified);
    CHECK(three.flag == "gamma beyond certified range");
}

TEST_CASE("Liouville minima agree with exhaustive enumeration") {
    struct Case {
        std::string form;
        std::string point;
        Place place;
    };
    std::vector<Case> cases{
        {testing::kFermatSurface, "3:4:5:-6", Place::real()},
        {designed_surface("x1^2 - 2*x2^2"), "0:0:0:1", Place::real()},
        {designed_surface("x1^2 - 2*x2^2"), "0:0:0:1", Place::padic(7)},
        {designed_surface("x1^2 + x2^2"), "0:0:0:1", Place::padic(5)},
    };
    for (auto& c : cases) {
        CAPTURE(c.form);
        CAPTURE(to_string(c.place));
        HomForm f = parse_form(c.form);
        ProjPoint p = parse_point(c.point);
        HomForm tangent = tangent_section(f, p).tangent;
        auto naive = testing::naive_enumerate(f, 20);
        LiouvilleOptions opts;
        opts.height_bounds = {10, 20};
        for (bool windows : {true, false}) {
            if (!windows) opts.windows.clear();
            LiouvilleReport rep = liouville_check(f, p, c.place, 2, opts);
            for (auto& row : rep.rows) {
                Rat oracle = brute_min_product(naive, tangent, p, c.place, 2, row.height_bound);
                CHECK(row.min_product == doctest::Approx(oracle.get_d()).epsilon(1e-12));
                CHECK(Rat(row.min_product) <= oracle);  // certified from below
            }
        }
    }
}

TEST_CASE("Liouville trend on designed surfaces") {
    for (auto [g, place] : {std::pair{"x1^2 - 2*x2^2", Place::real()}, std::pair{"x1^2 + x2^2", Place::real()},
                            std::pair{"x1^2 - 2*x2^2", Place::padic(5)}}) {
        CAPTURE(g);
        HomForm f = parse_form(designed_surface(g));
        LiouvilleReport rep = liouville_check(f, parse_point("0:0:0:1"), place, 2);
        CHECK(rep.min_product > 0);
        CHECK(rep.trend > -0.1);
    }
}

TEST_CASE("estimates are deterministic across thread counts") {
    HomForm f = parse_form(designed_surface("x1*x2 + x2^2 - x1^2"));
    ProjPoint p = parse_point("0:0:0:1");
    auto run = [&](unsigned threads) {
        EnumerateOptions eo;
        eo.height_bound = 50;
        eo.threads = threads;
        AlphaEstimate e = empirical_alpha(enumerate(f, eo), p, Place::real());
        std::string out;
        for (auto& r : e.rows) out += to_string(r.epsilon.value) + " " + std::to_string(r.alpha_hat) + " " + r.witness.to_string() + "\n";
        LiouvilleOptions lo;
        lo.enumeration.threads = threads;
        LiouvilleReport l = liouville_check(f, p, Place::real(), 2, lo);
        for (auto& r : l.rows) out += std::to_string(r.min_product) + " " + r.witness->to_string() + "\n";
        return out;
    };
    CHECK(run(1) == run(3));
}
