#include "doctest.h"

#include "../support/catalog.hpp"
#include "cubapprox/error.hpp"
#include "cubapprox/report.hpp"

#include <functional>
#include <sstream>

using namespace cubapprox;

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

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    FAIL("no error thrown");
    return {};
}

std::string render(const ProblemSpec& spec) {
    std::string out;
    for (auto& [k, v] : spec.entries()) out += k + " = " + v + "\n";
    return out;
}

ProblemSpec fermat(const char* point) {
    ProblemSpec spec;
    spec.form_text = testing::kFermatSurface;
    spec.point_text = point;
    return spec;
}

EstimateOutcome estimate_of(double extrapolated) {
    EstimateOutcome e;
    e.estimate.emplace();
    e.estimate->extrapolated = extrapolated;
    return e;
}

}  // namespace

TEST_CASE("problem files: defaults and round trip") {
    ProblemSpec d = parse_problem("# only a comment\n\nform = x0^3 + x1^3 + x2^3\npoint = 1:-1:0\n");
    CHECK(d.place_text == "real");
    CHECK(d.height_bound == 1000);
    CHECK(d.seed == 0);
    CHECK(d.attempts == 64);
    CHECK(d.search_bound == 100);
    CHECK(d.epsilons.empty());
    CHECK(d.window == 0);
    CHECK(d.filter_text.empty());
    CHECK(d.gamma == 2);
    CHECK(d.liouville_bounds == std::vector<long>{25, 50, 100});

    ProblemSpec s = fermat("3:4:5:-6");
    s.place_text = "p=7";
    s.height_bound = 321;
    s.seed = 12345678901234ULL;
    s.attempts = 7;
    s.search_bound = 9;
    s.epsilons = {make_rat(1, 7), make_rat(1, 49)};
    s.window = make_rat(3, 8);
    s.filter_text = "x0 + x1";
    s.gamma = make_rat(5, 2);
    s.liouville_bounds = {10, 20};
    ProblemSpec back = parse_problem(render(s));
    CHECK(back.entries() == s.entries());
    CHECK(parse_problem(render(d)).entries() == d.entries());

    // keys follow a fixed order and threads is not among them
    std::vector<std::string> keys;
    for (auto& [k, v] : s.entries()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"form", "point", "place", "height_bound", "seed", "attempts", "search_bound",
                                           "epsilons", "window", "filter", "gamma", "liouville_bounds"});
}

TEST_CASE("problem files: errors carry line and column") {
    auto msg = message_of([] { parse_problem("form = x0^3 + x1^3 + x2^3\n\npoint 1:2:3\n"); });
    CHECK(msg.find("line 3, column 1") != std::string::npos);
    CHECK(msg.find("expected key=value") != std::string::npos);

    msg = message_of([] { parse_problem("  colour = red\n"); });
    CHECK(msg.find("line 1, column 3") != std::string::npos);
    CHECK(msg.find("unknown key 'colour'") != std::string::npos);

    msg = message_of([] { parse_problem("height_bound = ten\n"); });
    CHECK(msg.find("line 1, column 16: height_bound:") != std::string::npos);
    CHECK(msg.find("height_bound: height_bound") == std::string::npos);

    CHECK(kind_of([] { parse_problem("height_bound = 0"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_problem("seed = -1"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_problem("epsilons = 1/4, 1/2"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_problem("epsilons = 0"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_problem("window = -1/2"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_problem("filter = x0*x1"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_problem("place = p=6"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_problem("liouville_bounds = "); }) == ErrorKind::ParseError);

    ProblemSpec s;
    set_option(s, "epsilons", "1/2, 1/4,1/8");
    CHECK(s.epsilons == std::vector<Rat>{make_rat(1, 2), make_rat(1, 4), make_rat(1, 8)});
    set_option(s, "epsilons", "geometric");
    CHECK(s.epsilons.empty());
    set_option(s, "filter", "none");
    CHECK(s.filter_text.empty());
    CHECK(kind_of([&] { set_option(s, "threads", "x"); }) == ErrorKind::ParseError);
}

TEST_CASE("resolving a problem") {
    ProblemSpec s;
    CHECK(message_of([&] { resolve(s); }).find("form: missing") != std::string::npos);
    s = fermat("1:2:3");
    CHECK(kind_of([&] { resolve(s); }) == ErrorKind::ParseError);
    s = fermat("1:2:3:4");
    CHECK(kind_of([&] { resolve(s); }) == ErrorKind::PointNotOnX);
    s = fermat("1:-1:0:0");
    s.filter_text = "x0 + x1 + x2 + x3 + x4";
    CHECK(kind_of([&] { resolve(s); }) == ErrorKind::ParseError);
    s.filter_text = "x0 + x1";
    ResolvedProblem r = resolve(s);
    CHECK(r.place.is_real());
    REQUIRE(r.filter);
    CHECK(r.filter->n_vars() == 4);
}

TEST_CASE("verdict rules") {
    ClassificationResult c;
    c.predicted_alpha = 2;
    Construction certifying{"residual_conic", std::nullopt, Alpha::of(2), true, ""};
    certifying.curve = parse_param_curve("s^2; s*t; t^2");
    Construction weak = certifying;
    weak.certifies = false;
    weak.alpha = Alpha::of(3);
    Construction none{"projection_curve", std::nullopt, Alpha::infinity(), false, "EmptyLocalQuadric"};

    CHECK(judge(c, {certifying}, estimate_of(2.0)).kind == VerdictKind::Consistent);
    CHECK(judge(c, {certifying}, estimate_of(2 - kVerdictTolerance)).kind == VerdictKind::Consistent);
    CHECK(judge(c, {certifying}, estimate_of(1.7)).kind == VerdictKind::Tension);
    // an estimate above the prediction is consistent: the bound is one-sided
    CHECK(judge(c, {certifying}, estimate_of(2.6)).kind == VerdictKind::Consistent);
    CHECK(judge(c, {weak}, estimate_of(2.0)).kind == VerdictKind::Tension);
    CHECK(judge(c, {weak, certifying}, estimate_of(2.0)).kind == VerdictKind::Consistent);
    // no curve at all: only the estimate decides
    CHECK(judge(c, {none}, estimate_of(1.9)).kind == VerdictKind::Consistent);
    CHECK(judge(c, {}, estimate_of(1.9)).kind == VerdictKind::Consistent);

    EstimateOutcome empty;
    empty.no_approximants = "no point within 1/4";
    Verdict v = judge(c, {certifying}, empty);
    CHECK(v.kind == VerdictKind::Tension);
    REQUIRE(v.details.size() == 1);
    CHECK(v.details[0].find("no point within 1/4") != std::string::npos);
}

TEST_CASE("constructions by case") {
    RunReport on_line = run_construct(fermat("1:-1:0:0"));
    REQUIRE(on_line.constructions.size() == 1);
    CHECK(on_line.constructions[0].kind == "line");
    CHECK(on_line.constructions[0].certifies);
    CHECK(on_line.constructions[0].alpha == Alpha::of(1));

    RunReport isolated = run_construct(fermat("3:4:5:-6"));
    bool conic = false;
    for (auto& k : isolated.constructions)
        if (k.kind == "residual_conic" && k.certifies) {
            conic = true;
            REQUIRE(k.curve);
            CHECK(k.curve->degree() == 2);
            CHECK(k.alpha == Alpha::of(2));
            CHECK(k.curve->lies_on(parse_form(testing::kFermatSurface)));
        }
    CHECK(conic);

    ProblemSpec generic;
    generic.form_text = testing::designed_surface("x1^2 - 2*x2^2");
    generic.point_text = "0:0:0:1";
    RunReport g = run_construct(generic);
    REQUIRE_FALSE(g.constructions.empty());
    CHECK(g.constructions[0].kind == "projection_curve");
    CHECK(g.constructions[0].certifies);
    CHECK(g.constructions[0].alpha == Alpha::of(make_rat(3, 2)));
    CHECK_FALSE(g.estimate);
    CHECK_FALSE(g.verdict);
}

TEST_CASE("estimate outputs") {
    ProblemSpec s = fermat("1:-1:1:-1");
    s.filter_text = "x0 + x1";
    s.height_bound = 30;
    RunReport r = run_estimate(s);
    REQUIRE(r.estimate);
    REQUIRE(r.estimate->estimate);
    const auto& rows = r.estimate->estimate->rows;

    std::istringstream csv(points_csv(r));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "coords,height,dist,delta");
    std::size_t n = 0;
    ProjPoint p = parse_point("1:-1:1:-1");
    while (std::getline(csv, line)) {
        ++n;
        std::string coords = line.substr(0, line.find(','));
        ProjPoint x = parse_point(coords);
        CHECK(x[0] + x[1] == 0);
        CHECK_FALSE(x == p);
        std::string rest = line.substr(line.find(',') + 1);
        CHECK(Int(rest.substr(0, rest.find(','))) == height(x));
    }
    CHECK(n + 1 == r.estimate->stream.points.size());

    std::istringstream tsv(envelope_tsv(r));
    std::getline(tsv, line);
    CHECK(line.rfind("#", 0) == 0);
    std::size_t k = 0;
    while (std::getline(tsv, line)) {
        REQUIRE(k < rows.size());
        double alpha = std::stod(line.substr(line.find('\t') + 1));
        CHECK(alpha == doctest::Approx(rows[k].alpha_hat).epsilon(1e-15));
        ++k;
    }
    CHECK(k == rows.size());

    // p-adic schedules must be powers of 1/p
    s.place_text = "p=5";
    s.epsilons = {make_rat(1, 5), make_rat(1, 10)};
    CHECK(kind_of([&] { run_estimate(s); }) == ErrorKind::ParseError);
    s.epsilons = {make_rat(1, 5), make_rat(1, 25)};
    CHECK_NOTHROW(run_estimate(s));
}

TEST_CASE("json sections follow the stages") {
    ProblemSpec s = fermat("1:-1:0:0");
    s.height_bound = 40;
    s.liouville_bounds = {10, 20};
    auto classify = to_json(run_classify(s));
    CHECK(classify.contains("spec"));
    CHECK(classify.contains("classification"));
    CHECK_FALSE(classify.contains("estimate"));
    auto full = to_json(run_report(s));
    for (const char* key : {"spec", "classification", "constructions", "estimate", "liouville", "verdict"})
        CHECK(full.contains(key));
    CHECK(full["verdict"]["kind"] == "Consistent");
    CHECK(full["spec"]["height_bound"] == "40");
    CHECK(full.dump() == to_json(run_report(s)).dump());
}
