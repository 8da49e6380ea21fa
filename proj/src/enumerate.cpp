#include "cubapprox/enumerate.hpp"

#include "cubapprox/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace cubapprox {

namespace {

using i128 = __int128;

i128 to_i128(const Int& v) {
    if (!fits_int64(v)) throw Error(ErrorKind::Overflow, "coefficient exceeds 64 bits");
    return static_cast<i128>(to_int64(v));
}

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

std::int64_t mod_pos(i128 a, std::int64_t m) {
    i128 r = a % m;
    if (r < 0) r += m;
    return static_cast<std::int64_t>(r);
}

i128 abs128(i128 a) { return a < 0 ? -a : a; }

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

struct Term {
    i128 coef;
    std::vector<int> e;
};

struct Plan {
    int n_vars = 0;
    int solved = 0;
    std::vector<int> prefix;  // outer to inner; back() is the row variable
    std::vector<Term> terms;
    i128 bound = 0;
    i128 cube = 0;  // coefficient of x_solved^3

    std::vector<int> moduli;
    std::vector<std::vector<std::int32_t>> root_tables;  // per modulus, m^3 entries

    bool windowed = false;
    int pivot = -1;  // -1 with a window: center is the solved coordinate axis
    std::vector<i128> center;
    i128 radius_minor = 0;  // |x_i c_j - x_j c_i| <= radius_minor
    std::optional<RealWindow> window;

    std::optional<std::vector<i128>> hyperplane;
    kernels::SieveRowFn sieve = nullptr;
};

// Integer coefficients proportional to the form.
std::vector<Term> integer_terms(const HomForm& form) {
    Int den = 1;
    for (auto& [e, c] : form.terms()) den = lcm(den, c.get_den());
    Int content = 0;
    for (auto& [e, c] : form.terms()) content = gcd(content, Int(c.get_num() * (den / c.get_den())));
    std::vector<Term> out;
    for (auto& [e, c] : form.terms()) out.push_back({to_i128(Int(c.get_num() * (den / c.get_den()) / content)), e});
    return out;
}

i128 eval_cubic(const i128 c[4], i128 x) { return ((c[3] * x + c[2]) * x + c[1]) * x + c[0]; }

int sgn128(i128 v) { return (v > 0) - (v < 0); }

// Integer roots in [a, b] of a polynomial monotone on that interval.
void monotone_roots(const i128 c[4], i128 a, i128 b, std::vector<i128>& out) {
    if (a > b) return;
    i128 qa = eval_cubic(c, a);
    if (qa == 0) {
        out.push_back(a);
        return;
    }
    i128 qb = eval_cubic(c, b);
    if (qb == 0) {
        out.push_back(b);
        return;
    }
    const int sa = sgn128(qa);
    if (sa == sgn128(qb)) return;
    i128 lo = a, hi = b;
    while (hi - lo > 1) {
        i128 mid = lo + (hi - lo) / 2;
        i128 qm = eval_cubic(c, mid);
        if (qm == 0) {
            out.push_back(mid);
            return;
        }
        if (sgn128(qm) == sa)
            lo = mid;
        else
            hi = mid;
    }
}

// All integer roots of c3 x^3 + c2 x^2 + c1 x + c0 in [lo, hi].
void integer_roots(const i128 c[4], i128 lo, i128 hi, std::vector<i128>& out) {
    if (lo > hi) return;
    int deg = 3;
    while (deg >= 0 && c[deg] == 0) --deg;
    if (deg < 0) {
        for (i128 x = lo; x <= hi; ++x) out.push_back(x);
        return;
    }
    if (deg == 0) return;
    if (deg == 1) {
        if (c[0] % c[1] == 0) {
            i128 x = -c[0] / c[1];
            if (x >= lo && x <= hi) out.push_back(x);
        }
        return;
    }
    long double crit[2];
    int n_crit = 0;
    if (deg == 2) {
        crit[n_crit++] = -static_cast<long double>(c[1]) / (2.0L * static_cast<long double>(c[2]));
    } else {
        const long double a = 3.0L * static_cast<long double>(c[3]);
        const long double b = 2.0L * static_cast<long double>(c[2]);
        const long double cc = static_cast<long double>(c[1]);
        const long double disc = b * b - 4.0L * a * cc;
        if (disc > 0) {
            const long double sq = std::sqrt(disc);
            // numerically stable pair
            const long double qv = -0.5L * (b + (b >= 0 ? sq : -sq));
            long double r1 = qv / a;
            long double r2 = qv != 0 ? cc / qv : r1;
            if (r1 > r2) std::swap(r1, r2);
            crit[n_crit++] = r1;
            crit[n_crit++] = r2;
        }
    }
    i128 start = lo;
    const long double lo_d = static_cast<long double>(lo) - 8.0L;
    const long double hi_d = static_cast<long double>(hi) + 8.0L;
    for (int k = 0; k < n_crit; ++k) {
        long double cp = std::clamp(crit[k], lo_d, hi_d);
        i128 f = static_cast<i128>(std::floor(cp));
        i128 a = f - 2, b = f + 3;
        monotone_roots(c, start, std::min(a, hi), out);
        for (i128 x = std::max(a + 1, start); x <= std::min(b - 1, hi); ++x)
            if (eval_cubic(c, x) == 0) out.push_back(x);
        start = std::max(start, b);
    }
    monotone_roots(c, start, hi, out);
}

struct Worker {
    const Plan& plan;
    std::vector<std::int64_t> x;
    std::vector<std::vector<std::int64_t>> found;
    std::vector<std::uint8_t> mask;
    std::vector<std::vector<std::int32_t>> row_tables;
    std::vector<kernels::ResidueTable> residue_tables;
    std::vector<i128> roots;
    // per-term product over outer variables, cached per row
    explicit Worker(const Plan& p) : plan(p), x(static_cast<std::size_t>(p.n_vars), 0) {
        row_tables.resize(plan.moduli.size());
        for (std::size_t k = 0; k < plan.moduli.size(); ++k) row_tables[k].resize(static_cast<std::size_t>(plan.moduli[k]));
        residue_tables.resize(plan.moduli.size());
    }

    // Range of prefix variable `var` given the outer coordinates already set.
    // Number of values prefix variable `var` takes for a typical outer tuple.
    static i128 static_span(const Plan& plan, int var) {
        if (!plan.windowed) return 2 * plan.bound + 1;
        const i128 cv = plan.center[static_cast<std::size_t>(plan.solved)];
        if (var == plan.pivot) return 2 * pivot_bound(plan) + 1;
        const i128 c = plan.pivot < 0 ? cv : plan.center[static_cast<std::size_t>(plan.pivot)];
        return std::min(2 * plan.bound + 1, 2 * (plan.radius_minor / abs128(c)) + 1);
    }

    // |x_pivot c_v - x_v c_pivot| <= R with |x_v| <= B bounds the pivot when c_v != 0.
    static i128 pivot_bound(const Plan& plan) {
        const i128 cv = abs128(plan.center[static_cast<std::size_t>(plan.solved)]);
        if (cv == 0) return plan.bound;
        const i128 cp = abs128(plan.center[static_cast<std::size_t>(plan.pivot)]);
        return std::min(plan.bound, (plan.radius_minor + plan.bound * cp) / cv);
    }

    std::pair<i128, i128> range(int var, bool all_zero) const {
        i128 lo = -plan.bound, hi = plan.bound;
        if (plan.windowed && var == plan.pivot) {
            lo = -pivot_bound(plan);
            hi = -lo;
        }
        if (plan.windowed && var != plan.pivot) {
            if (plan.pivot < 0) {
                i128 r = plan.radius_minor / abs128(plan.center[static_cast<std::size_t>(plan.solved)]);
                lo = std::max(lo, -r);
                hi = std::min(hi, r);
            } else {
                const i128 cj = plan.center[static_cast<std::size_t>(plan.pivot)];
                const i128 ci = plan.center[static_cast<std::size_t>(var)];
                const i128 xj = x[static_cast<std::size_t>(plan.pivot)];
                i128 l = xj * ci - plan.radius_minor, h = xj * ci + plan.radius_minor;
                if (cj > 0) {
                    lo = std::max(lo, ceil_div(l, cj));
                    hi = std::min(hi, floor_div(h, cj));
                } else {
                    lo = std::max(lo, ceil_div(h, cj));
                    hi = std::min(hi, floor_div(l, cj));
                }
            }
        }
        if (all_zero) lo = std::max<i128>(lo, 0);
        return {lo, hi};
    }

    void recurse(std::size_t depth, bool all_zero, std::int64_t g) {
        const int var = plan.prefix[depth];
        auto [lo, hi] = range(var, all_zero);
        if (depth + 1 == plan.prefix.size()) {
            if (lo <= hi) row(lo, hi, all_zero, g);
            return;
        }
        for (i128 v = lo; v <= hi; ++v) {
            x[static_cast<std::size_t>(var)] = static_cast<std::int64_t>(v);
            recurse(depth + 1, all_zero && v == 0, gcd64(g, static_cast<std::int64_t>(v)));
        }
        x[static_cast<std::size_t>(var)] = 0;
    }

    void row(i128 lo, i128 hi, bool all_zero, std::int64_t g) {
        const int u = plan.prefix.back();
        const int v = plan.solved;
        // coef[k][d]: coefficient of x_v^k u^d
        i128 coef[4][4] = {};
        for (const Term& t : plan.terms) {
            i128 prod = t.coef;
            for (int i = 0; i < plan.n_vars; ++i) {
                if (i == u || i == v) continue;
                for (int p = 0; p < t.e[static_cast<std::size_t>(i)]; ++p) prod *= x[static_cast<std::size_t>(i)];
            }
            coef[t.e[static_cast<std::size_t>(v)]][t.e[static_cast<std::size_t>(u)]] += prod;
        }
        const std::size_t length = static_cast<std::size_t>(hi - lo + 1);
        for (std::size_t k = 0; k < plan.moduli.size(); ++k) {
            const std::int64_t m = plan.moduli[k];
            std::int64_t cm[4][4];
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) cm[a][b] = mod_pos(coef[a][b], m);
            auto& table = row_tables[k];
            const auto& roots_mod = plan.root_tables[k];
            for (std::int64_t r = 0; r < m; ++r) {
                std::int64_t c[3];
                for (int a = 0; a < 3; ++a) c[a] = ((cm[a][3] * r % m + cm[a][2]) * r % m * r % m + cm[a][1] * r % m + cm[a][0]) % m;
                table[static_cast<std::size_t>(r)] = roots_mod[static_cast<std::size_t>((c[2] * m + c[1]) * m + c[0])];
            }
            residue_tables[k] = {table.data(), static_cast<std::int32_t>(m), static_cast<std::int32_t>(mod_pos(lo, m))};
        }
        mask.resize(length);
        if (plan.moduli.empty())
            std::fill(mask.begin(), mask.end(), 1);
        else
            plan.sieve(residue_tables, length, mask.data());

        auto [xlo, xhi] = solved_range();
        for (std::size_t i = 0; i < length; ++i) {
            if (!mask[i]) continue;
            const i128 uv = lo + static_cast<i128>(i);
            i128 c[4];
            for (int a = 0; a < 4; ++a) c[a] = ((coef[a][3] * uv + coef[a][2]) * uv + coef[a][1]) * uv + coef[a][0];
            roots.clear();
            integer_roots(c, xlo, xhi, roots);
            if (roots.empty()) continue;
            const bool prefix_zero = all_zero && uv == 0;
            const std::int64_t gu = gcd64(g, static_cast<std::int64_t>(uv));
            for (i128 r : roots) {
                if (prefix_zero && r != 1) continue;
                if (gcd64(gu, static_cast<std::int64_t>(r)) != 1) continue;
                std::vector<std::int64_t> pt = x;
                pt[static_cast<std::size_t>(u)] = static_cast<std::int64_t>(uv);
                pt[static_cast<std::size_t>(v)] = static_cast<std::int64_t>(r);
                if (plan.hyperplane) {
                    i128 acc = 0;
                    for (std::size_t j = 0; j < pt.size(); ++j) acc += (*plan.hyperplane)[j] * pt[j];
                    if (acc != 0) continue;
                }
                found.push_back(std::move(pt));
            }
        }
    }

    std::pair<i128, i128> solved_range() const {
        i128 lo = -plan.bound, hi = plan.bound;
        if (plan.windowed && plan.pivot >= 0) {
            const i128 cj = plan.center[static_cast<std::size_t>(plan.pivot)];
            const i128 cv = plan.center[static_cast<std::size_t>(plan.solved)];
            const i128 xj = x[static_cast<std::size_t>(plan.pivot)];
            i128 l = xj * cv - plan.radius_minor, h = xj * cv + plan.radius_minor;
            if (cj > 0) {
                lo = std::max(lo, ceil_div(l, cj));
                hi = std::min(hi, floor_div(h, cj));
            } else {
                lo = std::max(lo, ceil_div(h, cj));
                hi = std::min(hi, floor_div(l, cj));
            }
        }
        return {lo, hi};
    }
};

std::vector<std::int32_t> root_table(std::int64_t m, i128 cube) {
    const std::int64_t c3 = mod_pos(cube, m);
    std::vector<std::int32_t> table(static_cast<std::size_t>(m * m * m), 0);
    for (std::int64_t x = 0; x < m; ++x) {
        const std::int64_t x2 = x * x % m, x3 = x2 * x % m;
        for (std::int64_t c2 = 0; c2 < m; ++c2)
            for (std::int64_t c1 = 0; c1 < m; ++c1) {
                const std::int64_t partial = (c3 * x3 + c2 * x2 + c1 * x) % m;
                const std::int64_t c0 = (m - partial) % m;
                table[static_cast<std::size_t>((c2 * m + c1) * m + c0)] = 1;
            }
    }
    return table;
}

std::string describe(const EnumerateOptions& o) {
    std::string out;
    if (o.hyperplane) out += "hyperplane " + o.hyperplane->to_string() + " = 0";
    if (o.window) {
        if (!out.empty()) out += "; ";
        out += "real distance <= " + to_string(o.window->radius) + " from " + o.window->center.to_string();
    }
    return out.empty() ? "none" : out;
}

// Points on {h = 0}: enumerate the form restricted to the hyperplane in the
// remaining variables, then lift. With x_v eliminated, a primitive point x
// restricts to g*y, y primitive and g dividing c_v.
PointStream enumerate_on_hyperplane(const HomForm& form, const EnumerateOptions& options) {
    const int n = form.n_vars();
    std::vector<Int> c(static_cast<std::size_t>(n), 0);
    for (auto& t : integer_terms(*options.hyperplane))
        for (int i = 0; i < n; ++i)
            if (t.e[static_cast<std::size_t>(i)] == 1) c[static_cast<std::size_t>(i)] = Int(static_cast<long>(t.coef));
    int v = -1;
    for (int i = 0; i < n; ++i)
        if (c[static_cast<std::size_t>(i)] != 0 && (v < 0 || abs(c[static_cast<std::size_t>(i)]) < abs(c[static_cast<std::size_t>(v)]))) v = i;
    const Int cv = c[static_cast<std::size_t>(v)];

    std::vector<Poly> images;
    Poly xv(n - 1);
    for (int i = 0, k = 0; i < n; ++i) {
        if (i == v) {
            images.emplace_back(n - 1);
            continue;
        }
        images.push_back(Poly::variable(n - 1, k));
        xv = xv + Poly::variable(n - 1, k) * make_rat(-c[static_cast<std::size_t>(i)], cv);
        ++k;
    }
    images[static_cast<std::size_t>(v)] = xv;
    HomForm restricted(form.poly().compose(images), form.degree());

    PointStream stream;
    stream.form = form;
    stream.height_bound = options.height_bound;
    stream.filter = describe(options);
    stream.window = options.window;
    if (restricted.is_zero()) throw Error(ErrorKind::InvalidArgument, "the hyperplane lies in the hypersurface");

    EnumerateOptions inner = options;
    inner.hyperplane.reset();
    inner.window.reset();
    const Int bound = options.height_bound;
    std::vector<Int> divisors;
    for (Int g = 1; g * g <= abs(cv); ++g)
        if (cv % g == 0) {
            divisors.push_back(g);
            if (g * g != abs(cv)) divisors.push_back(abs(cv) / g);
        }
    std::sort(divisors.begin(), divisors.end());
    for (auto& y : enumerate(restricted, inner).points) {
        Int hy = height(y);
        Int dot = 0;
        for (int i = 0, k = 0; i < n; ++i)
            if (i != v) dot += c[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(k++)];
        for (auto& g : divisors) {
            if (g * hy > bound) break;
            Int num = -g * dot;
            if (num % cv != 0) continue;
            Int x_v = num / cv;
            if (abs(x_v) > bound || gcd(g, x_v) != 1) continue;
            std::vector<Int> x;
            for (int i = 0, k = 0; i < n; ++i) x.push_back(i == v ? x_v : g * y[static_cast<std::size_t>(k++)]);
            ProjPoint pt(std::move(x));
            if (options.window && dist(pt, options.window->center, Place::real()).value > options.window->radius) continue;
            stream.points.push_back(std::move(pt));
        }
    }
    std::sort(stream.points.begin(), stream.points.end());
    stream.points.erase(std::unique(stream.points.begin(), stream.points.end()), stream.points.end());
    return stream;
}

}  // namespace

PointStream enumerate(const HomForm& form, const EnumerateOptions& options) {
    if (options.height_bound < 1) throw Error(ErrorKind::InvalidArgument, "height bound must be at least 1");
    if (form.is_zero()) throw Error(ErrorKind::ZeroInput, "cannot enumerate the zero form");
    if (form.n_vars() < 2) throw Error(ErrorKind::DimensionMismatch, "need at least two variables");
    if (form.degree() > 3) throw Error(ErrorKind::InvalidArgument, "enumeration supports forms of degree <= 3");
    if (options.hyperplane) {
        const HomForm& h = *options.hyperplane;
        if (h.degree() != 1 || h.n_vars() != form.n_vars() || h.is_zero()) throw Error(ErrorKind::DimensionMismatch, "hyperplane filter");
        if (form.n_vars() >= 3) return enumerate_on_hyperplane(form, options);
    }

    Plan plan;
    plan.n_vars = form.n_vars();
    plan.terms = integer_terms(form);
    plan.bound = options.height_bound;

    long double coef_sum = 0;
    for (auto& t : plan.terms) coef_sum += static_cast<long double>(abs128(t.coef));
    const long double b = static_cast<long double>(options.height_bound);
    if (options.height_bound > (1L << 31) || coef_sum * 8.0L * b * b * b > 1e36L)
        throw Error(ErrorKind::Overflow, "height bound too large for exact 128-bit evaluation");

    // solve for a variable carrying a cube term, else the one of highest degree
    std::vector<int> var_degree(static_cast<std::size_t>(plan.n_vars), 0);
    int solved = -1;
    for (auto& t : plan.terms)
        for (int i = 0; i < plan.n_vars; ++i) {
            var_degree[static_cast<std::size_t>(i)] = std::max(var_degree[static_cast<std::size_t>(i)], t.e[static_cast<std::size_t>(i)]);
            if (t.e[static_cast<std::size_t>(i)] == 3 && solved < 0) solved = i;
        }
    if (solved < 0) solved = static_cast<int>(std::max_element(var_degree.begin(), var_degree.end()) - var_degree.begin());
    plan.solved = solved;
    for (auto& t : plan.terms)
        if (t.e[static_cast<std::size_t>(solved)] == 3) plan.cube = t.coef;

    if (options.window) {
        const ProjPoint& c = options.window->center;
        if (static_cast<int>(c.size()) != plan.n_vars) throw Error(ErrorKind::DimensionMismatch, "window center");
        if (options.window->radius < 0) throw Error(ErrorKind::InvalidArgument, "negative window radius");
        plan.windowed = true;
        plan.window = options.window;
        for (auto& v : c.coords()) plan.center.push_back(to_i128(v));
        Rat r = options.window->radius * Rat(options.height_bound) * Rat(height(c));
        Int fl;
        mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
        plan.radius_minor = to_i128(fl);
        // the window is a thin cone around P: solve for the variable whose
        // prefix box is smallest
        auto pivot_for = [&](int v) {
            int pv = -1;
            for (int i = 0; i < plan.n_vars; ++i) {
                if (i == v || plan.center[static_cast<std::size_t>(i)] == 0) continue;
                if (pv < 0 || abs128(plan.center[static_cast<std::size_t>(i)]) > abs128(plan.center[static_cast<std::size_t>(pv)])) pv = i;
            }
            return pv;
        };
        auto box = [&](int v) {
            plan.solved = v;
            plan.pivot = pivot_for(v);
            long double cells = 1;
            for (int i = 0; i < plan.n_vars; ++i) {
                if (i == v) continue;
                cells *= static_cast<long double>(Worker::static_span(plan, i));
            }
            return cells;
        };
        long double best = box(solved);
        int best_v = solved;
        for (int v = 0; v < plan.n_vars; ++v) {
            if (var_degree[static_cast<std::size_t>(v)] == 0) continue;
            long double cells = box(v);
            if (cells < best) {
                best = cells;
                best_v = v;
            }
        }
        solved = best_v;
        plan.solved = solved;
        plan.pivot = pivot_for(solved);
        plan.cube = 0;
        for (auto& t : plan.terms)
            if (t.e[static_cast<std::size_t>(solved)] == 3) plan.cube = t.coef;
    }
    if (plan.pivot >= 0) plan.prefix.push_back(plan.pivot);
    for (int i = 0; i < plan.n_vars; ++i)
        if (i != solved && i != plan.pivot) plan.prefix.push_back(i);

    if (options.hyperplane) {
        const HomForm& h = *options.hyperplane;
        if (h.degree() != 1 || h.n_vars() != plan.n_vars) throw Error(ErrorKind::DimensionMismatch, "hyperplane filter");
        std::vector<i128> coeffs(static_cast<std::size_t>(plan.n_vars), 0);
        for (auto& t : integer_terms(h))
            for (int i = 0; i < plan.n_vars; ++i)
                if (t.e[static_cast<std::size_t>(i)] == 1) coeffs[static_cast<std::size_t>(i)] = t.coef;
        plan.hyperplane = std::move(coeffs);
    }

    for (int m : options.sieve_moduli) {
        if (m < 2 || m > 64) throw Error(ErrorKind::InvalidArgument, "sieve moduli must lie in [2, 64]");
        plan.moduli.push_back(m);
        plan.root_tables.push_back(root_table(m, plan.cube));
    }
    plan.sieve = kernels::sieve_row_for(options.isa.value_or(kernels::detect_isa()));

    PointStream stream;
    stream.form = form;
    stream.height_bound = options.height_bound;
    stream.filter = describe(options);
    stream.window = options.window;

    if (plan.prefix.size() == 1) {
        // binary form: the row is the whole prefix
        Worker w(plan);
        w.recurse(0, true, 0);
        for (auto& p : w.found) stream.points.emplace_back(std::vector<Int>(p.begin(), p.end()));
    } else {
        const int outer = plan.prefix.front();
        Worker probe(plan);
        auto [lo, hi] = probe.range(outer, true);
        unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
        const i128 span = hi >= lo ? hi - lo + 1 : 0;
        threads = static_cast<unsigned>(std::min<i128>(threads, std::max<i128>(span, 1)));
        std::vector<Worker> workers;
        workers.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) workers.emplace_back(plan);
        auto run = [&](unsigned t) {
            Worker& w = workers[t];
            for (i128 v = lo + t; v <= hi; v += threads) {
                w.x[static_cast<std::size_t>(outer)] = static_cast<std::int64_t>(v);
                w.recurse(1, v == 0, static_cast<std::int64_t>(abs128(v)));
            }
        };
        if (threads == 1) {
            run(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run, t);
            for (auto& th : pool) th.join();
        }
        for (auto& w : workers)
            for (auto& p : w.found) stream.points.emplace_back(std::vector<Int>(p.begin(), p.end()));
    }

    if (plan.window) {
        const RealWindow& win = *plan.window;
        std::erase_if(stream.points, [&](const ProjPoint& p) { return dist(p, win.center, Place::real()).value > win.radius; });
    }
    std::sort(stream.points.begin(), stream.points.end());
    stream.points.erase(std::unique(stream.points.begin(), stream.points.end()), stream.points.end());
    return stream;
}

}  // namespace cubapprox
