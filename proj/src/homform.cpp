#include "cubapprox/homform.hpp"

#include "cubapprox/error.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace cubapprox {

bool GrlexGreater::operator()(const Exponent& a, const Exponent& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Poly Poly::constant(int n_vars, const Rat& c) {
    Poly p(n_vars);
    p.add_term(Exponent(n_vars, 0), c);
    return p;
}

Poly Poly::variable(int n_vars, int index) {
    if (index < 0 || index >= n_vars) throw Error(ErrorKind::DimensionMismatch, "variable index out of range");
    Poly p(n_vars);
    Exponent e(n_vars, 0);
    e[index] = 1;
    p.add_term(e, 1);
    return p;
}

int Poly::total_degree() const {
    int d = -1;
    for (auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

bool Poly::is_homogeneous() const {
    int d = -1;
    for (auto& [e, c] : terms_) {
        int de = std::accumulate(e.begin(), e.end(), 0);
        if (d >= 0 && de != d) return false;
        d = de;
    }
    return true;
}

Rat Poly::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Exponent& e, const Rat& c) {
    if (static_cast<int>(e.size()) != n_vars_) throw Error(ErrorKind::DimensionMismatch, "exponent length");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    if (o.n_vars_ != n_vars_) throw Error(ErrorKind::DimensionMismatch, "polynomial sum");
    Poly out = *this;
    for (auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

Poly Poly::operator-() const {
    Poly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (o.n_vars_ != n_vars_) throw Error(ErrorKind::DimensionMismatch, "polynomial product");
    Poly out(n_vars_);
    Exponent e(n_vars_);
    for (auto& [ea, ca] : terms_)
        for (auto& [eb, cb] : o.terms_) {
            for (int i = 0; i < n_vars_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

Poly Poly::operator*(const Rat& c) const {
    if (c == 0) return Poly(n_vars_);
    Poly out = *this;
    for (auto& [e, v] : out.terms_) v *= c;
    return out;
}

Poly Poly::pow(unsigned k) const {
    Poly result = constant(n_vars_, 1);
    Poly base = *this;
    while (k > 0) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k > 0) base = base * base;
    }
    return result;
}

Poly Poly::derivative(int var) const {
    Poly out(n_vars_);
    for (auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponent d = e;
        d[var] -= 1;
        out.add_term(d, c * e[var]);
    }
    return out;
}

namespace {

template <class T>
Rat evaluate_impl(const Poly::Terms& terms, int n_vars, std::span<const T> point) {
    if (static_cast<int>(point.size()) != n_vars) throw Error(ErrorKind::DimensionMismatch, "evaluation point");
    Rat sum = 0;
    for (auto& [e, c] : terms) {
        Rat term = c;
        for (int i = 0; i < n_vars; ++i) {
            for (int k = 0; k < e[i]; ++k) term *= point[i];
        }
        sum += term;
    }
    return sum;
}

}  // namespace

Rat Poly::evaluate(std::span<const Rat> point) const { return evaluate_impl(terms_, n_vars_, point); }
Rat Poly::evaluate(std::span<const Int> point) const { return evaluate_impl(terms_, n_vars_, point); }

Poly Poly::compose(std::span<const Poly> images) const {
    if (static_cast<int>(images.size()) != n_vars_) throw Error(ErrorKind::DimensionMismatch, "composition");
    if (images.empty()) return *this;
    const int m = images.front().n_vars();
    // powers[i][k] = images[i]^k, built lazily
    std::vector<std::vector<Poly>> powers(n_vars_);
    auto power = [&](int i, int k) -> const Poly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(constant(m, 1));
        while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * images[i]);
        return cache[k];
    };
    Poly out(m);
    for (auto& [e, c] : terms_) {
        Poly term = constant(m, c);
        for (int i = 0; i < n_vars_; ++i) {
            if (e[i] > 0) term = term * power(i, e[i]);
        }
        out = out + term;
    }
    return out;
}

std::string Poly::to_string(std::span<const std::string> names) const {
    if (static_cast<int>(names.size()) != n_vars_) throw Error(ErrorKind::DimensionMismatch, "variable names");
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [e, c] : terms_) {
        std::string mono;
        for (int i = 0; i < n_vars_; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        Rat mag = abs(c);
        std::string body;
        if (mono.empty()) {
            body = cubapprox::to_string(mag);
        } else if (mag == 1) {
            body = mono;
        } else {
            body = cubapprox::to_string(mag) + "*" + mono;
        }
        if (first) {
            out = (c < 0 ? "-" : "") + body;
            first = false;
        } else {
            out += (c < 0 ? " - " : " + ") + body;
        }
    }
    return out;
}

std::vector<std::string> indexed_names(int n_vars) {
    std::vector<std::string> names;
    names.reserve(n_vars);
    for (int i = 0; i < n_vars; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

namespace {

// Recursive-descent parser. The AST is evaluated on the fly into Poly with a
// provisional variable count that grows as indexed variables are met.
class Parser {
public:
    Parser(std::string_view text, std::span<const std::string> names, int min_vars)
        : text_(text), names_(names.begin(), names.end()), n_vars_(names.empty() ? min_vars : static_cast<int>(names.size())) {
        if (names_.empty()) scan_indexed();
    }

    Poly parse() {
        Poly p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    // Pre-scan for x<k> so every intermediate Poly has the final arity.
    void scan_indexed() {
        for (std::size_t i = 0; i < text_.size(); ++i) {
            if (text_[i] != 'x') continue;
            std::size_t j = i + 1;
            int idx = 0;
            bool digits = false;
            while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) {
                idx = idx * 10 + (text_[j] - '0');
                digits = true;
                ++j;
                if (idx > 1000) break;
            }
            if (digits) n_vars_ = std::max(n_vars_, idx + 1);
        }
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::ParseError, "column " + std::to_string(pos_ + 1) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr() {
        Poly acc = term();
        while (true) {
            if (accept('+')) {
                acc = acc + term();
            } else if (accept('-')) {
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    Poly term() {
        Poly acc = unary();
        while (accept('*')) acc = acc * unary();
        return acc;
    }

    Poly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Poly power() {
        Poly base = atom();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            if (pos_ - start > 3) fail("exponent too large");
            unsigned k = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
            return base.pow(k);
        }
        return base;
    }

    Poly atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Poly inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Poly number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        Int num(std::string(text_.substr(start, pos_ - start)));
        Int den = 1;
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            std::size_t ds = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (ds == pos_) fail("expected denominator");
            den = Int(std::string(text_.substr(ds, pos_ - ds)));
            if (den == 0) fail("zero denominator");
        }
        return Poly::constant(n_vars_, make_rat(num, den));
    }

    Poly identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string id(text_.substr(start, pos_ - start));
        if (!names_.empty()) {
            auto it = std::find(names_.begin(), names_.end(), id);
            if (it == names_.end()) {
                pos_ = start;
                fail("unknown variable '" + id + "'");
            }
            return Poly::variable(n_vars_, static_cast<int>(it - names_.begin()));
        }
        if (id.size() < 2 || id[0] != 'x' ||
            !std::all_of(id.begin() + 1, id.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            pos_ = start;
            fail("unknown variable '" + id + "'");
        }
        return Poly::variable(n_vars_, std::stoi(id.substr(1)));
    }

    std::string_view text_;
    std::vector<std::string> names_;
    int n_vars_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, std::span<const std::string> names, int min_vars) {
    return Parser(text, names, min_vars).parse();
}

HomForm::HomForm(Poly p, int degree) : poly_(std::move(p)), degree_(degree) {
    for (auto& [e, c] : poly_.terms()) {
        if (std::accumulate(e.begin(), e.end(), 0) != degree_)
            throw Error(ErrorKind::InvalidArgument, "polynomial is not homogeneous of degree " + std::to_string(degree_));
    }
}

HomForm HomForm::from_poly(Poly p) {
    if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero polynomial has no degree");
    if (!p.is_homogeneous()) throw Error(ErrorKind::InvalidArgument, "polynomial is not homogeneous");
    int d = p.total_degree();
    return HomForm(std::move(p), d);
}

HomForm HomForm::operator+(const HomForm& o) const {
    if (o.degree_ != degree_ && !o.is_zero() && !is_zero())
        throw Error(ErrorKind::DimensionMismatch, "sum of forms of different degree");
    return HomForm(poly_ + o.poly_, is_zero() ? o.degree_ : degree_);
}

HomForm HomForm::operator-(const HomForm& o) const { return *this + o * Rat(-1); }

HomForm HomForm::operator*(const HomForm& o) const { return HomForm(poly_ * o.poly_, degree_ + o.degree_); }

HomForm HomForm::operator*(const Rat& c) const { return HomForm(poly_ * c, degree_); }

HomForm HomForm::derivative(int var) const {
    return HomForm(poly_.derivative(var), std::max(degree_ - 1, 0));
}

std::vector<Rat> HomForm::gradient(std::span<const Int> point) const {
    std::vector<Rat> g;
    g.reserve(n_vars());
    for (int i = 0; i < n_vars(); ++i) g.push_back(poly_.derivative(i).evaluate(point));
    return g;
}

HomForm HomForm::primitive() const {
    if (is_zero()) return *this;
    Int den_lcm = 1;
    for (auto& [e, c] : terms()) den_lcm = lcm(den_lcm, c.get_den());
    Int num_gcd = 0;
    for (auto& [e, c] : terms()) num_gcd = gcd(num_gcd, Int(c * den_lcm));
    Rat scale = make_rat(den_lcm, num_gcd);
    if (terms().begin()->second < 0) scale = -scale;
    return *this * scale;
}

std::string HomForm::to_string() const { return poly_.to_string(indexed_names(n_vars())); }

std::string HomForm::to_string(std::span<const std::string> names) const { return poly_.to_string(names); }

HomForm parse_form(std::string_view text, int n_vars) {
    Poly p = parse_poly(text, {}, n_vars);
    if (n_vars > 0 && p.n_vars() != n_vars)
        throw Error(ErrorKind::ParseError, "form uses " + std::to_string(p.n_vars()) + " variables, expected " + std::to_string(n_vars));
    return HomForm::from_poly(std::move(p));
}

HomForm substitute_linear(const HomForm& form, const RatMatrix& m) {
    const int n = form.n_vars();
    if (!m.square() || static_cast<int>(m.rows()) != n)
        throw Error(ErrorKind::DimensionMismatch, "change of coordinates has wrong size");
    if (m.determinant() == 0) throw Error(ErrorKind::SingularChange, "matrix is not invertible");
    std::vector<Poly> images;
    images.reserve(n);
    for (int i = 0; i < n; ++i) {
        Poly row(n);
        for (int j = 0; j < n; ++j) {
            if (m(i, j) == 0) continue;
            row = row + Poly::variable(n, j) * m(i, j);
        }
        images.push_back(std::move(row));
    }
    return HomForm(form.poly().compose(images), form.degree());
}

}  // namespace cubapprox
