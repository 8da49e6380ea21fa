#include "cubapprox/place.hpp"

#include "cubapprox/error.hpp"

#include <algorithm>
#include <cctype>

namespace cubapprox {

Place Place::padic(const Int& prime) {
    if (!is_prime(prime)) throw Error(ErrorKind::InvalidArgument, prime.get_str() + " is not prime");
    return Place{Kind::Padic, prime};
}

Place parse_place(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s == "real" || s == "inf" || s == "infinity") return Place::real();
    if (s.rfind("p=", 0) == 0) {
        std::string digits = s.substr(2);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw Error(ErrorKind::ParseError, "bad place '" + std::string(text) + "'");
        Int p(digits);
        if (!is_prime(p)) throw Error(ErrorKind::ParseError, "place p=" + digits + " is not prime");
        return Place{Place::Kind::Padic, p};
    }
    throw Error(ErrorKind::ParseError, "bad place '" + std::string(text) + "' (expected 'real' or 'p=<prime>')");
}

std::string to_string(const Place& place) { return place.is_real() ? "real" : "p=" + place.p.get_str(); }

}  // namespace cubapprox
