#include "cubapprox/rational.hpp"

#include "cubapprox/error.hpp"

#include <algorithm>
#include <cctype>

namespace cubapprox {

std::string to_string(const Int& v) { return v.get_str(); }

std::string to_string(const Rat& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

namespace {

Int parse_int_digits(std::string_view digits, std::string_view whole) {
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw Error(ErrorKind::ParseError, "bad rational '" + std::string(whole) + "'");
    }
    return Int(std::string(digits));
}

}  // namespace

Rat parse_rat(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto slash = s.find('/');
    Int num = parse_int_digits(s.substr(0, slash), text);
    Int den = 1;
    if (slash != std::string_view::npos) {
        den = parse_int_digits(s.substr(slash + 1), text);
        if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    }
    if (negative) num = -num;
    return make_rat(num, den);
}

Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int isqrt(const Int& v) {
    if (v < 0) throw Error(ErrorKind::InvalidArgument, "isqrt of negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

bool is_perfect_square(const Int& v) { return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0; }

bool is_perfect_square(const Rat& v) {
    return is_perfect_square(v.get_num()) && is_perfect_square(v.get_den());
}

long valuation(const Int& v, const Int& p) {
    if (v == 0) throw Error(ErrorKind::ZeroInput, "valuation of zero");
    Int rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rat& v, const Int& p) { return valuation(v.get_num(), p) - valuation(v.get_den(), p); }

bool is_prime(const Int& p) { return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 40) != 0; }

std::vector<std::pair<Int, unsigned>> factorize(const Int& v) {
    if (v == 0) throw Error(ErrorKind::ZeroInput, "factorize(0)");
    Int n = abs(v);
    std::vector<std::pair<Int, unsigned>> out;
    auto strip = [&](const Int& p) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    // 6k +- 1 wheel up to the trial-division budget
    constexpr unsigned long kBudget = 2'000'000;
    for (unsigned long k = 5; k <= kBudget; k += 6) {
        if (n == 1) break;
        Int kk(k);
        if (kk * kk > n) break;
        strip(kk);
        strip(Int(k + 2));
    }
    if (n > 1) {
        Int limit(kBudget);
        if (n > limit * limit && !is_prime(n)) {
            throw Error(ErrorKind::Overflow, "cannot factor " + v.get_str() + " by trial division");
        }
        out.emplace_back(n, 1);
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return out;
}

std::vector<Int> divisors(const Int& v) {
    std::vector<Int> divs{1};
    for (auto& [p, e] : factorize(v)) {
        std::size_t base = divs.size();
        Int pk = 1;
        for (unsigned i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

Int squarefree_part(const Int& v) {
    if (v == 0) throw Error(ErrorKind::ZeroInput, "squarefree_part(0)");
    Int out = v < 0 ? Int(-1) : Int(1);
    for (auto& [p, e] : factorize(v)) {
        if (e % 2 == 1) out *= p;
    }
    return out;
}

bool fits_int64(const Int& v) {
    static const Int lo("-9223372036854775808");
    static const Int hi("9223372036854775807");
    return v >= lo && v <= hi;
}

std::int64_t to_int64(const Int& v) {
    if (!fits_int64(v)) throw Error(ErrorKind::Overflow, v.get_str() + " does not fit in 64 bits");
    static_assert(sizeof(long) == sizeof(std::int64_t));
    return static_cast<std::int64_t>(mpz_get_si(v.get_mpz_t()));
}

}  // namespace cubapprox
