#include "cubapprox/point.hpp"

#include "cubapprox/error.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <limits>

namespace cubapprox {

ProjPoint::ProjPoint(std::vector<Int> coords) : c_(std::move(coords)) {
    Int g = 0;
    for (auto& v : c_) g = gcd(g, v);
    if (g == 0) throw Error(ErrorKind::ZeroInput, "projective point with all coordinates zero");
    auto first = std::find_if(c_.begin(), c_.end(), [](const Int& v) { return v != 0; });
    if (*first < 0) g = -g;
    if (g != 1)
        for (auto& v : c_) v /= g;
}

ProjPoint ProjPoint::from_rationals(std::span<const Rat> coords) {
    Int den = 1;
    for (auto& c : coords) den = lcm(den, c.get_den());
    std::vector<Int> out;
    out.reserve(coords.size());
    for (auto& c : coords) out.push_back(c.get_num() * (den / c.get_den()));
    return ProjPoint(std::move(out));
}

bool ProjPoint::operator<(const ProjPoint& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (std::size_t i = 0; i < c_.size(); ++i) {
        int s = cmp(c_[i], o.c_[i]);
        if (s != 0) return s < 0;
    }
    return false;
}

std::string ProjPoint::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) out += ':';
        out += c_[i].get_str();
    }
    return out;
}

ProjPoint parse_point(std::string_view text) {
    std::vector<Int> coords;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = text.find(':', pos);
        std::string_view piece = text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
        std::string cleaned;
        for (char c : piece)
            if (!std::isspace(static_cast<unsigned char>(c))) cleaned += c;
        std::size_t digits_from = (!cleaned.empty() && (cleaned[0] == '-' || cleaned[0] == '+')) ? 1 : 0;
        if (cleaned.size() == digits_from ||
            !std::all_of(cleaned.begin() + static_cast<long>(digits_from), cleaned.end(),
                         [](unsigned char c) { return std::isdigit(c); }))
            throw Error(ErrorKind::ParseError, "column " + std::to_string(pos + 1) + ": expected integer coordinate");
        if (cleaned[0] == '+') cleaned.erase(0, 1);
        coords.emplace_back(cleaned);
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    if (coords.size() < 2) throw Error(ErrorKind::ParseError, "a projective point needs at least two coordinates");
    return ProjPoint(std::move(coords));
}

Int height(const ProjPoint& x) {
    Int h = 0;
    for (auto& c : x.coords()) h = std::max(h, Int(abs(c)));
    return h;
}

DistValue dist(const ProjPoint& x, const ProjPoint& y, const Place& v) {
    if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "points of different dimension");
    const std::size_t n = x.size();
    DistValue out{v, 0, 0};
    Int minor;
    if (v.is_real()) {
        Int best = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                minor = x[i] * y[j] - x[j] * y[i];
                if (abs(minor) > best) best = abs(minor);
            }
        out.value = make_rat(best, height(x) * height(y));
        return out;
    }
    long best = std::numeric_limits<long>::max();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            minor = x[i] * y[j] - x[j] * y[i];
            if (minor != 0) best = std::min(best, valuation(minor, v.p));
        }
    if (best == std::numeric_limits<long>::max()) return out;
    // primitive integer vectors have p-adic sup norm 1
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), v.p.get_mpz_t(), static_cast<unsigned long>(best));
    out.value = make_rat(1, pk);
    out.exponent = best;
    return out;
}

namespace {

struct Mpfr {
    mpfr_t x;
    explicit Mpfr(int precision) { mpfr_init2(x, precision); }
    ~Mpfr() { mpfr_clear(x); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
};

void log_int(mpfr_t out, const Int& v, mpfr_rnd_t rnd, int precision) {
    Mpfr tmp(precision);
    mpfr_set_z(tmp.x, v.get_mpz_t(), rnd);
    mpfr_log(out, tmp.x, rnd);
}

// -log(d) rounded toward `rnd`.
void neg_log_dist(mpfr_t out, const DistValue& d, mpfr_rnd_t rnd, int precision) {
    if (d.place.is_real()) {
        mpfr_rnd_t opposite = rnd == MPFR_RNDU ? MPFR_RNDD : MPFR_RNDU;
        Mpfr a(precision), b(precision);
        log_int(a.x, d.value.get_den(), rnd, precision);
        log_int(b.x, d.value.get_num(), opposite, precision);
        mpfr_sub(out, a.x, b.x, rnd);
    } else {
        log_int(out, d.place.p, rnd, precision);
        mpfr_mul_si(out, out, d.exponent, rnd);
    }
}

}  // namespace

double log_down(const Int& value, int precision) {
    Mpfr r(precision);
    log_int(r.x, value, MPFR_RNDD, precision);
    return mpfr_get_d(r.x, MPFR_RNDD);
}

double neg_log_dist_up(const DistValue& d, int precision) {
    if (d.is_zero()) return std::numeric_limits<double>::infinity();
    Mpfr r(precision);
    neg_log_dist(r.x, d, MPFR_RNDU, precision);
    return mpfr_get_d(r.x, MPFR_RNDU);
}

double delta_lower(const Int& height, const DistValue& d, int precision) {
    if (d.is_zero()) throw Error(ErrorKind::InvalidArgument, "delta undefined at distance zero");
    Mpfr num(precision), den(precision);
    log_int(num.x, height, MPFR_RNDD, precision);
    neg_log_dist(den.x, d, MPFR_RNDU, precision);
    if (mpfr_sgn(den.x) <= 0) {
        return height > 1 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    mpfr_div(num.x, num.x, den.x, MPFR_RNDD);
    return mpfr_get_d(num.x, MPFR_RNDD);
}

double height_dist_product_lower(const Int& height, const DistValue& d, const Rat& gamma, int precision) {
    if (gamma < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
    Mpfr lh(precision), nl(precision), g(precision);
    if (gamma == 0) {
        mpfr_set_z(lh.x, height.get_mpz_t(), MPFR_RNDD);
        return mpfr_get_d(lh.x, MPFR_RNDD);
    }
    if (d.is_zero()) return 0.0;
    log_int(lh.x, height, MPFR_RNDD, precision);
    neg_log_dist(nl.x, d, MPFR_RNDU, precision);
    mpfr_set_q(g.x, gamma.get_mpq_t(), MPFR_RNDU);
    mpfr_mul(nl.x, nl.x, g.x, MPFR_RNDU);
    mpfr_sub(lh.x, lh.x, nl.x, MPFR_RNDD);
    mpfr_exp(lh.x, lh.x, MPFR_RNDD);
    return mpfr_get_d(lh.x, MPFR_RNDD);
}

}  // namespace cubapprox
