#include "cubapprox/estimate.hpp"

#include "cubapprox/classifier.hpp"
#include "cubapprox/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cubapprox {

double approximation_exponent(const ProjPoint& x, const ProjPoint& target, const Place& v) {
    return delta_lower(height(x), dist(x, target, v));
}

std::vector<DistValue> geometric_epsilons(const Place& v, int j_max) {
    std::vector<DistValue> out;
    Int base = v.is_real() ? Int(2) : v.p;
    Int power = 1;
    for (int j = 1; j <= j_max; ++j) {
        power *= base;
        out.push_back(DistValue{v, make_rat(1, power), v.is_real() ? 0 : j});
    }
    return out;
}

AlphaEstimate empirical_alpha(const PointStream& stream, const ProjPoint& p, const Place& v, std::span<const DistValue> epsilons) {
    struct Sample {
        DistValue d;
        double delta;
        const ProjPoint* point;
    };
    std::vector<Sample> samples;
    for (auto& x : stream.points) {
        if (x == p) continue;
        DistValue d = dist(x, p, v);
        samples.push_back({d, delta_lower(height(x), d), &x});
    }
    // closest first; ties broken by delta then by the point order
    std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
        if (a.d.value != b.d.value) return a.d.value < b.d.value;
        if (a.delta != b.delta) return a.delta < b.delta;
        return *a.point < *b.point;
    });

    // a windowed stream is complete only up to the window radius
    std::optional<Rat> cap;
    if (stream.window) {
        if (!v.is_real() || !(stream.window->center == p))
            throw Error(ErrorKind::InvalidArgument, "the stream window is not a real window around the target");
        cap = stream.window->radius;
    }
    std::vector<DistValue> schedule;
    for (auto& e : epsilons)
        if (!cap || e.value <= *cap) schedule.push_back(e);
    if (epsilons.empty()) {
        int j_max = 1;
        if (!samples.empty() && samples.front().d.value > 0) {
            // smallest epsilon that still has a witness
            Rat dmin = samples.front().d.value;
            Int base = v.is_real() ? Int(2) : v.p;
            Rat eps = make_rat(1, base);
            while (j_max < 4096 && eps / base >= dmin) {
                eps /= base;
                ++j_max;
            }
        }
        for (auto& e : geometric_epsilons(v, j_max))
            if (!cap || e.value <= *cap) schedule.push_back(e);
    }
    if (schedule.empty()) throw Error(ErrorKind::InvalidArgument, "no epsilon inside the enumerated window");
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        if (schedule[k].value <= 0) throw Error(ErrorKind::InvalidArgument, "epsilons must be positive");
        if (k > 0 && schedule[k].value >= schedule[k - 1].value) throw Error(ErrorKind::InvalidArgument, "epsilons must decrease");
    }

    AlphaEstimate est{p, v, {}, 0, 0, stream.height_bound};
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        const Rat& eps = schedule[k].value;
        AlphaRow row{schedule[k], std::numeric_limits<double>::infinity(), p, 0};
        for (auto& s : samples) {
            if (s.d.value > eps) break;
            ++row.witnesses;
            if (s.delta < row.alpha_hat || (s.delta == row.alpha_hat && *s.point < row.witness)) {
                row.alpha_hat = s.delta;
                row.witness = *s.point;
            }
        }
        if (row.witnesses == 0) {
            if (k == 0)
                throw Error(ErrorKind::NoApproximants, "no point of height <= " + std::to_string(stream.height_bound) +
                                                           " within " + to_string(eps) + " of " + p.to_string());
            continue;
        }
        est.rows.push_back(std::move(row));
    }
    est.extrapolation_row = 0;
    for (std::size_t k = 0; k < est.rows.size(); ++k)
        if (est.rows[k].witnesses >= 3) est.extrapolation_row = k;
    est.extrapolated = est.rows[est.extrapolation_row].alpha_hat;
    return est;
}

namespace {

double slope(const std::vector<std::pair<double, double>>& xy) {
    if (xy.size() < 2) return 0;
    double mx = 0, my = 0;
    for (auto& [x, y] : xy) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(xy.size());
    my /= static_cast<double>(xy.size());
    double num = 0, den = 0;
    for (auto& [x, y] : xy) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    return den == 0 ? 0 : num / den;
}

std::vector<LiouvilleRow> product_rows(const PointStream& stream, const HomForm& tangent, const ProjPoint& p, const Place& v,
                                       const Rat& gamma, const std::vector<long>& bounds) {
    std::vector<LiouvilleRow> rows;
    for (long b : bounds) rows.push_back({b, std::numeric_limits<double>::infinity(), std::nullopt, 0});
    for (auto& x : stream.points) {
        if (tangent.evaluate(x.coords()) == 0) continue;  // on S_P, including P
        Int h = height(x);
        double prod = height_dist_product_lower(h, dist(x, p, v), gamma);
        for (auto& r : rows) {
            if (h > r.height_bound) continue;
            ++r.points;
            if (prod < r.min_product || (prod == r.min_product && r.witness && x < *r.witness)) {
                r.min_product = prod;
                r.witness = x;
            }
        }
    }
    return rows;
}

}  // namespace

LiouvilleReport liouville_check(const HomForm& form, const ProjPoint& p, const Place& v, const Rat& gamma,
                                const LiouvilleOptions& options) {
    if (gamma < 0) throw Error(ErrorKind::InvalidArgument, "gamma must be nonnegative");
    if (options.height_bounds.empty()) throw Error(ErrorKind::InvalidArgument, "no height bounds");
    std::vector<long> bounds = options.height_bounds;
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
    if (bounds.front() < 1) throw Error(ErrorKind::InvalidArgument, "height bounds must be positive");

    TangentSection s = tangent_section(form, p);
    LiouvilleReport rep;
    rep.gamma = gamma;
    rep.excluded_locus = "S_P: " + form.to_string() + " = 0, " + s.tangent.to_string() + " = 0";
    rep.beyond_certified = gamma > 2;
    if (rep.beyond_certified) rep.flag = "gamma beyond certified range";

    EnumerateOptions eo = options.enumeration;
    eo.height_bound = bounds.back();
    bool done = false;
    for (const Rat& r : options.windows) {
        if (!v.is_real() || done || r <= 0 || r >= 2) continue;
        eo.window = RealWindow{p, r};
        rep.rows = product_rows(enumerate(form, eo), s.tangent, p, v, gamma, bounds);
        // a point outside the window has H dist^gamma > r^gamma
        double floor = std::pow(r.get_d(), gamma.get_d()) * (1 - 1e-9);
        done = std::all_of(rep.rows.begin(), rep.rows.end(), [&](const LiouvilleRow& row) { return row.min_product <= floor; });
        if (done) rep.enumeration = "window r=" + to_string(r);
    }
    if (!done) {
        eo.window.reset();
        rep.rows = product_rows(enumerate(form, eo), s.tangent, p, v, gamma, bounds);
        rep.enumeration = "full";
    }
    std::vector<std::pair<double, double>> xy;
    rep.min_product = std::numeric_limits<double>::infinity();
    for (auto& r : rep.rows) {
        rep.min_product = std::min(rep.min_product, r.min_product);
        if (std::isfinite(r.min_product) && r.min_product > 0)
            xy.emplace_back(std::log(static_cast<double>(r.height_bound)), std::log(r.min_product));
    }
    rep.trend = slope(xy);
    return rep;
}

}  // namespace cubapprox
