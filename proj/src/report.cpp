#include "cubapprox/report.hpp"

#include "cubapprox/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace cubapprox {

namespace {

using json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

long parse_long(const std::string& key, const std::string& value, long lo) {
    std::size_t used = 0;
    long out = 0;
    try {
        out = std::stol(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != value.size()) throw Error(ErrorKind::ParseError, key + ": expected an integer, got '" + value + "'");
    if (out < lo) throw Error(ErrorKind::ParseError, key + ": must be at least " + std::to_string(lo));
    return out;
}

template <class T>
std::string join(const std::vector<T>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        if constexpr (std::is_same_v<T, Rat>)
            out += to_string(items[i]);
        else
            out += std::to_string(items[i]);
    }
    return out;
}

// Column (1-based) inside `value` reported by a nested parser, if any.
std::size_t inner_column(const std::string& message) {
    auto k = message.find("column ");
    if (k == std::string::npos) return 1;
    return static_cast<std::size_t>(std::strtoul(message.c_str() + k + 7, nullptr, 10));
}

std::string alpha_text(const Alpha& a) { return a.is_infinite() ? "inf" : to_string(*a.value); }

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

}  // namespace

std::string_view to_string(VerdictKind v) { return v == VerdictKind::Consistent ? "Consistent" : "Tension"; }

std::vector<std::pair<std::string, std::string>> ProblemSpec::entries() const {
    return {
        {"form", form_text},
        {"point", point_text},
        {"place", place_text},
        {"height_bound", std::to_string(height_bound)},
        {"seed", std::to_string(seed)},
        {"attempts", std::to_string(attempts)},
        {"search_bound", std::to_string(search_bound)},
        {"epsilons", epsilons.empty() ? "geometric" : join(epsilons, ",")},
        {"window", to_string(window)},
        {"filter", filter_text.empty() ? "none" : filter_text},
        {"gamma", to_string(gamma)},
        {"liouville_bounds", join(liouville_bounds, ",")},
    };
}

void set_option(ProblemSpec& spec, const std::string& key, const std::string& value) {
    if (key == "form") {
        parse_form(value);
        spec.form_text = value;
    } else if (key == "point") {
        parse_point(value);
        spec.point_text = value;
    } else if (key == "place") {
        parse_place(value);
        spec.place_text = value;
    } else if (key == "height_bound") {
        spec.height_bound = parse_long(key, value, 1);
    } else if (key == "seed") {
        std::size_t used = 0;
        try {
            spec.seed = std::stoull(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size() || value[0] == '-')
            throw Error(ErrorKind::ParseError, "seed: expected a nonnegative integer, got '" + value + "'");
    } else if (key == "attempts") {
        spec.attempts = static_cast<int>(parse_long(key, value, 1));
    } else if (key == "search_bound") {
        spec.search_bound = parse_long(key, value, 1);
    } else if (key == "epsilons") {
        spec.epsilons.clear();
        if (value == "geometric") return;
        for (auto& item : split_list(value)) {
            Rat e = parse_rat(item);
            if (e <= 0) throw Error(ErrorKind::ParseError, "epsilons: values must be positive");
            if (!spec.epsilons.empty() && e >= spec.epsilons.back()) throw Error(ErrorKind::ParseError, "epsilons: values must decrease");
            spec.epsilons.push_back(e);
        }
    } else if (key == "window") {
        Rat r = parse_rat(value);
        if (r < 0) throw Error(ErrorKind::ParseError, "window: radius must be nonnegative");
        spec.window = r;
    } else if (key == "filter") {
        if (value == "none" || value.empty()) {
            spec.filter_text.clear();
            return;
        }
        if (parse_form(value).degree() != 1) throw Error(ErrorKind::ParseError, "filter: expected a linear form");
        spec.filter_text = value;
    } else if (key == "gamma") {
        Rat g = parse_rat(value);
        if (g < 0) throw Error(ErrorKind::ParseError, "gamma: must be nonnegative");
        spec.gamma = g;
    } else if (key == "liouville_bounds") {
        spec.liouville_bounds.clear();
        for (auto& item : split_list(value)) spec.liouville_bounds.push_back(parse_long(key, item, 1));
        if (spec.liouville_bounds.empty()) throw Error(ErrorKind::ParseError, "liouville_bounds: empty list");
    } else if (key == "threads") {
        spec.threads = static_cast<unsigned>(parse_long(key, value, 0));
    } else {
        throw Error(ErrorKind::ParseError, "unknown key '" + key + "'");
    }
}

ProblemSpec parse_problem(const std::string& text) {
    ProblemSpec spec;
    std::istringstream in(text);
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        std::string body = trim(line);
        if (body.empty() || body[0] == '#') continue;
        auto where = [&](std::size_t col) { return "line " + std::to_string(lineno) + ", column " + std::to_string(col) + ": "; };
        auto eq = line.find('=');
        std::size_t lead = line.find_first_not_of(" \t");
        if (eq == std::string::npos) throw Error(ErrorKind::ParseError, where(lead + 1) + "expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string raw = line.substr(eq + 1);
        std::size_t value_col = eq + 2 + (raw.find_first_not_of(" \t") == std::string::npos ? 0 : raw.find_first_not_of(" \t"));
        static const std::set<std::string> known{"form",   "point",  "place",  "height_bound", "seed",
                                                 "attempts", "search_bound", "epsilons", "window", "filter",
                                                 "gamma", "liouville_bounds", "threads"};
        if (!known.count(key)) throw Error(ErrorKind::ParseError, where(lead + 1) + "unknown key '" + key + "'");
        try {
            set_option(spec, key, trim(raw));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ParseError) throw;
            std::string msg = std::string(e.what()).substr(std::string_view(e.what()).find(": ") + 2);
            if (msg.rfind(key + ": ", 0) == 0) msg = msg.substr(key.size() + 2);
            std::size_t col = value_col + inner_column(msg) - 1;
            if (msg.rfind("column ", 0) == 0) msg = msg.substr(msg.find(": ") + 2);
            throw Error(ErrorKind::ParseError, where(col) + key + ": " + msg);
        }
    }
    return spec;
}

ResolvedProblem resolve(const ProblemSpec& spec) {
    auto field = [](const char* key, auto&& f) {
        try {
            return f();
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ParseError) throw;
            std::string msg = e.what();
            throw Error(ErrorKind::ParseError, std::string(key) + ": " + msg.substr(msg.find(": ") + 2));
        }
    };
    if (spec.form_text.empty()) throw Error(ErrorKind::ParseError, "form: missing");
    if (spec.point_text.empty()) throw Error(ErrorKind::ParseError, "point: missing");
    HomForm f = field("form", [&] { return parse_form(spec.form_text); });
    ProjPoint p = field("point", [&] { return parse_point(spec.point_text); });
    Place v = field("place", [&] { return parse_place(spec.place_text); });
    if (p.size() != static_cast<std::size_t>(f.n_vars()))
        throw Error(ErrorKind::ParseError, "point: has " + std::to_string(p.size()) + " coordinates, form has " +
                                               std::to_string(f.n_vars()) + " variables");
    std::optional<HomForm> filter;
    if (!spec.filter_text.empty()) {
        filter = field("filter", [&] { return parse_form(spec.filter_text, f.n_vars()); });
        if (filter->degree() != 1) throw Error(ErrorKind::ParseError, "filter: expected a linear form");
    }
    CubicHypersurface x = CubicHypersurface::make(f);
    tangent_section(f, p);  // PointNotOnX, SingularAtP
    return {std::move(x), std::move(p), v, std::move(filter)};
}

RunReport run_classify(const ProblemSpec& spec) {
    ResolvedProblem r = resolve(spec);
    ClassifyOptions opts;
    opts.search_bound = spec.search_bound;
    RunReport rep;
    rep.spec = spec;
    rep.classification = classify(r.x, r.point, r.place, opts);
    return rep;
}

namespace {

Construction from_curve(const std::string& kind, const ParamCurve& c, const ResolvedProblem& r, const Rat& predicted,
                        std::string detail) {
    Construction out{kind, c, curve_alpha(c, r.point, r.place), false, std::move(detail)};
    out.certifies = c.lies_on(r.x.form) && c.passes_through(r.point) && !out.alpha.is_infinite() && *out.alpha.value <= predicted;
    return out;
}

// Rational lines on X: the known one first, then lines through small points.
std::vector<ParamCurve> candidate_lines(const HomForm& form, const ProjPoint& p, const std::optional<ParamCurve>& known,
                                        long search_bound) {
    std::vector<ParamCurve> out;
    if (known) out.push_back(*known);
    EnumerateOptions eo;
    eo.height_bound = 3;
    auto pts = enumerate(form, eo).points;
    std::stable_sort(pts.begin(), pts.end(), [](const ProjPoint& x, const ProjPoint& y) { return height(x) < height(y); });
    for (auto& r : pts) {
        if (r == p) continue;
        try {
            for (auto& l : lines_through_point(form, r, std::min(search_bound, 20L)).lines)
                if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SingularAtP) throw;
        }
        if (out.size() >= 32) break;
    }
    return out;
}

std::vector<Construction> construct(const ProblemSpec& spec, const ResolvedProblem& r, const ClassificationResult& c) {
    std::vector<Construction> out;
    const Rat& predicted = c.predicted_alpha;
    switch (c.tag) {
        case CaseTag::OnRationalLine:
            for (auto& cert : c.certificates)
                if (cert.kind == "line" && cert.curve) {
                    out.push_back(from_curve("line", *cert.curve, r, predicted, cert.summary));
                    break;
                }
            break;
        case CaseTag::Generic: {
            TangentSection s = tangent_section(r.x.form, r.point);
            try {
                ProjectionCurve pc = projection_curve(s, r.place, spec.attempts, spec.seed);
                out.push_back(from_curve("projection_curve", pc.curve, r, predicted,
                                         "g on T = " + pc.g_on_t.to_string() + " after " + std::to_string(pc.attempts_used) +
                                             " attempt(s)"));
                break;
            } catch (const Error& e) {
                if (s.ambient_dimension() != 3) {
                    out.push_back({"projection_curve", std::nullopt, Alpha::infinity(), false, e.what()});
                    break;
                }
            }
            // on a surface S_P is itself a cubic through P
            try {
                out.push_back(from_curve("tangent_section", section_curve(s), r, predicted, "S_P parametrized from P"));
            } catch (const Error& e) {
                out.push_back({"tangent_section", std::nullopt, Alpha::infinity(), false, e.what()});
            }
            break;
        }
        case CaseTag::RationalTangentLines:
        case CaseTag::IsolatedInSection: {
            auto lines = candidate_lines(r.x.form, r.point, c.rational_line_on_x, spec.search_bound);
            std::vector<std::string> tried;
            for (auto& ell : lines) {
                if (ell.passes_through(r.point)) continue;
                ResidualConic rc = residual_conic(r.x.form, r.point, ell);
                std::string detail = to_string(rc.kind) + " in the plane through P and the line " + ell.to_string();
                if (rc.conic) {
                    if (!tried.empty()) detail += " (" + std::to_string(tried.size()) + " line(s) gave no conic)";
                    out.push_back(from_curve("residual_conic", *rc.conic, r, predicted, detail));
                    break;
                }
                tried.push_back(detail);
            }
            if (out.empty())
                out.push_back({"residual_conic", std::nullopt, Alpha::infinity(), false,
                               tried.empty() ? "no rational line on X off P is known" : tried.front()});
            break;
        }
    }
    return out;
}

}  // namespace

RunReport run_construct(const ProblemSpec& spec) {
    RunReport rep = run_classify(spec);
    rep.constructions = construct(spec, resolve(spec), *rep.classification);
    return rep;
}

RunReport run_estimate(const ProblemSpec& spec) {
    ResolvedProblem r = resolve(spec);
    EnumerateOptions eo;
    eo.height_bound = spec.height_bound;
    eo.threads = spec.threads;
    eo.hyperplane = r.filter;
    if (r.place.is_real() && spec.window > 0) eo.window = RealWindow{r.point, spec.window};

    std::vector<DistValue> eps;
    for (auto& e : spec.epsilons) {
        if (r.place.is_real()) {
            eps.push_back({r.place, e, 0});
            continue;
        }
        // p-adic distances are powers of 1/p
        long k = 0;
        Rat pk = 1;
        while (pk > e) {
            pk /= Rat(r.place.p);
            ++k;
        }
        if (pk != e) throw Error(ErrorKind::ParseError, "epsilons: p-adic values must be powers of 1/" + to_string(r.place.p));
        eps.push_back({r.place, e, k});
    }

    RunReport rep;
    rep.spec = spec;
    EstimateOutcome out;
    out.stream = enumerate(r.x.form, eo);
    try {
        out.estimate = empirical_alpha(out.stream, r.point, r.place, eps);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoApproximants) throw;
        out.no_approximants = e.what();
    }
    rep.estimate = std::move(out);
    return rep;
}

RunReport run_liouville(const ProblemSpec& spec) {
    ResolvedProblem r = resolve(spec);
    LiouvilleOptions opts;
    opts.height_bounds = spec.liouville_bounds;
    opts.enumeration.threads = spec.threads;
    RunReport rep;
    rep.spec = spec;
    rep.liouville = liouville_check(r.x.form, r.point, r.place, spec.gamma, opts);
    return rep;
}

Verdict judge(const ClassificationResult& c, const std::vector<Construction>& constructions, const EstimateOutcome& e) {
    Verdict v;
    const double predicted = c.predicted_alpha.get_d();
    if (!e.estimate) {
        v.details.push_back("no approximants: " + e.no_approximants);
    } else if (e.estimate->extrapolated < predicted - kVerdictTolerance) {
        v.details.push_back("extrapolated " + fmt("%.4f", e.estimate->extrapolated) + " is below predicted " +
                            to_string(c.predicted_alpha) + " - " + fmt("%.2f", kVerdictTolerance));
    }
    bool any_curve = false, certified = false;
    for (auto& k : constructions) {
        any_curve = any_curve || k.curve.has_value();
        certified = certified || k.certifies;
    }
    if (any_curve && !certified)
        v.details.push_back("no constructed curve certifies alpha <= " + to_string(c.predicted_alpha));
    v.kind = v.details.empty() ? VerdictKind::Consistent : VerdictKind::Tension;
    return v;
}

RunReport run_report(const ProblemSpec& spec) {
    RunReport rep = run_construct(spec);
    RunReport est = run_estimate(spec);
    RunReport lio = run_liouville(spec);
    rep.estimate = std::move(est.estimate);
    rep.liouville = std::move(lio.liouville);
    rep.verdict = judge(*rep.classification, rep.constructions, *rep.estimate);
    return rep;
}

json to_json(const RunReport& r) {
    json out;
    json spec = json::object();
    for (auto& [k, v] : r.spec.entries()) spec[k] = v;
    out["spec"] = spec;

    if (r.classification) {
        const auto& c = *r.classification;
        json certs = json::array();
        for (auto& cert : c.certificates) {
            json data = json::object();
            for (auto& [k, v] : cert.data) data[k] = v;
            certs.push_back({{"kind", cert.kind},
                             {"summary", cert.summary},
                             {"curve", cert.curve ? json(cert.curve->to_string()) : json(nullptr)},
                             {"data", data}});
        }
        out["classification"] = {
            {"case", std::string(to_string(c.tag))},
            {"alpha", to_string(c.predicted_alpha)},
            {"confidence", {{"proved", c.confidence.proved}, {"bound", c.confidence.bound}, {"text", c.confidence.to_string()}}},
            {"certificates", certs},
            {"rational_line_on_x", c.rational_line_on_x ? json(c.rational_line_on_x->to_string()) : json(nullptr)},
        };
    }
    if (r.classification || !r.constructions.empty()) {
        json cons = json::array();
        for (auto& k : r.constructions)
            cons.push_back({{"kind", k.kind},
                            {"curve", k.curve ? json(k.curve->to_string()) : json(nullptr)},
                            {"degree", k.curve ? json(k.curve->degree()) : json(nullptr)},
                            {"alpha", alpha_text(k.alpha)},
                            {"certifies", k.certifies},
                            {"detail", k.detail}});
        if (!r.constructions.empty() || r.verdict) out["constructions"] = cons;
    }
    if (r.estimate) {
        const auto& e = *r.estimate;
        json est = {
            {"status", e.estimate ? "ok" : "NoApproximants"},
            {"target", r.spec.point_text},
            {"place", r.spec.place_text},
            {"height_bound", r.spec.height_bound},
            {"seed", r.spec.seed},
            {"window", e.stream.window ? json(to_string(e.stream.window->radius)) : json(nullptr)},
            {"filter", r.spec.filter_text.empty() ? json(nullptr) : json(r.spec.filter_text)},
            {"points", e.stream.points.size()},
        };
        json rows = json::array();
        if (e.estimate) {
            for (auto& row : e.estimate->rows)
                rows.push_back({{"epsilon", to_string(row.epsilon.value)},
                                {"log_epsilon", std::log(row.epsilon.value.get_d())},
                                {"alpha_hat", row.alpha_hat},
                                {"witness", row.witness.to_string()},
                                {"witnesses", row.witnesses}});
            est["rows"] = rows;
            est["extrapolated"] = e.estimate->extrapolated;
            est["extrapolation_row"] = e.estimate->extrapolation_row;
            est["detail"] = nullptr;
        } else {
            est["rows"] = rows;
            est["extrapolated"] = nullptr;
            est["extrapolation_row"] = nullptr;
            est["detail"] = e.no_approximants;
        }
        out["estimate"] = est;
    }
    if (r.liouville) {
        const auto& l = *r.liouville;
        json rows = json::array();
        for (auto& row : l.rows)
            rows.push_back({{"height_bound", row.height_bound},
                            {"min_product", number_or_null(row.min_product)},
                            {"witness", row.witness ? json(row.witness->to_string()) : json(nullptr)},
                            {"points", row.points}});
        out["liouville"] = {
            {"gamma", to_string(l.gamma)},
            {"excluded_locus", l.excluded_locus},
            {"height_bounds", r.spec.liouville_bounds},
            {"seed", r.spec.seed},
            {"rows", rows},
            {"min_product", number_or_null(l.min_product)},
            {"trend", l.trend},
            {"beyond_certified", l.beyond_certified},
            {"flag", l.flag.empty() ? json(nullptr) : json(l.flag)},
            {"enumeration", l.enumeration},
        };
    }
    if (r.verdict) out["verdict"] = {{"kind", std::string(to_string(r.verdict->kind))}, {"details", r.verdict->details}};
    return out;
}

std::string points_csv(const RunReport& r) {
    std::string out = "coords,height,dist,delta\n";
    if (!r.estimate) return out;
    ProjPoint p = parse_point(r.spec.point_text);
    Place v = parse_place(r.spec.place_text);
    for (auto& x : r.estimate->stream.points) {
        if (x == p) continue;
        DistValue d = dist(x, p, v);
        out += x.to_string() + "," + to_string(height(x)) + "," + fmt("%.17g", d.to_double()) + "," +
               fmt("%.17g", delta_lower(height(x), d)) + "\n";
    }
    return out;
}

std::string envelope_tsv(const RunReport& r) {
    std::string out = "# log_epsilon\talpha_hat\n";
    if (!r.estimate || !r.estimate->estimate) return out;
    for (auto& row : r.estimate->estimate->rows)
        out += fmt("%.17g", std::log(row.epsilon.value.get_d())) + "\t" + fmt("%.17g", row.alpha_hat) + "\n";
    return out;
}

}  // namespace cubapprox
