#include "linsolve/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "linsolve/errors.hpp"

namespace linsolve {

std::uint64_t Poly::check_p(std::uint64_t p) {
    if (!gfp::is_prime(p)) throw not_prime("Poly: characteristic " + std::to_string(p) + " is not prime");
    return p;
}

Poly::Poly(std::uint64_t p, std::vector<gfp::Scalar> coeffs) : p_(check_p(p)), c_(std::move(coeffs)) {
    for (auto& c : c_) c %= p_;
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(std::uint64_t p, gfp::Scalar c) {
    Poly r(p);
    if (c % p != 0) r.c_ = {c % p};
    return r;
}

Poly Poly::monomial(std::uint64_t p, std::size_t deg, gfp::Scalar c) {
    Poly r(p);
    if (c % p != 0) {
        r.c_.assign(deg + 1, 0);
        r.c_[deg] = c % p;
    }
    return r;
}

Poly Poly::one_minus_xk(std::uint64_t p, std::uint64_t k) {
    Poly r(p);
    if (k == 0) return r;  // 1 - 1
    r.c_.assign(k + 1, 0);
    r.c_[0] = 1;
    r.c_[k] = p - 1;
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    if (p_ != o.p_) throw field_mismatch("Poly: mixed characteristics");
    Poly r(p_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = gfp::add(coeff(i), o.coeff(i), p_);
    r.trim();
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    if (p_ != o.p_) throw field_mismatch("Poly: mixed characteristics");
    Poly r(p_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = gfp::sub(coeff(i), o.coeff(i), p_);
    r.trim();
    return r;
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& c : r.c_) c = gfp::neg(c, p_);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (p_ != o.p_) throw field_mismatch("Poly: mixed characteristics");
    Poly r(p_);
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            r.c_[i + j] = gfp::add(r.c_[i + j], gfp::mul(c_[i], o.c_[j], p_), p_);
        }
    }
    r.trim();
    return r;
}

Poly Poly::scaled(gfp::Scalar c) const {
    Poly r(*this);
    c %= p_;
    for (auto& x : r.c_) x = gfp::mul(x, c, p_);
    r.trim();
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(gfp::inv(leading(), p_));
}

Poly Poly::derivative() const {
    Poly r(p_);
    if (c_.size() < 2) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = gfp::mul(c_[i], i % p_, p_);
    r.trim();
    return r;
}

gfp::Scalar Poly::eval(gfp::Scalar x) const {
    gfp::Scalar r = 0;
    x %= p_;
    for (std::size_t i = c_.size(); i-- > 0;) r = gfp::add(gfp::mul(r, x, p_), c_[i], p_);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (a.p() != b.p()) throw field_mismatch("divmod: mixed characteristics");
    if (b.is_zero()) throw division_by_zero("divmod: division by the zero polynomial");
    const std::uint64_t p = a.p();
    if (a.degree() < b.degree()) return {Poly::zero(p), a};
    std::vector<gfp::Scalar> rem = a.coeffs();
    std::vector<gfp::Scalar> quo(a.coeffs().size() - b.coeffs().size() + 1, 0);
    const gfp::Scalar lead_inv = gfp::inv(b.leading(), p);
    const std::size_t db = b.coeffs().size() - 1;
    for (std::size_t i = rem.size(); i-- > db;) {
        if (rem[i] == 0) continue;
        const gfp::Scalar q = gfp::mul(rem[i], lead_inv, p);
        quo[i - db] = q;
        for (std::size_t j = 0; j <= db; ++j) {
            rem[i - db + j] = gfp::sub(rem[i - db + j], gfp::mul(q, b.coeff(j), p), p);
        }
    }
    return {Poly(p, std::move(quo)), Poly(p, std::move(rem))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw not_divisible("exact_div: remainder is nonzero");
    return q;
}

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw both_zero("gcd: both inputs are zero");
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

XgcdResult xgcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) throw both_zero("xgcd: both inputs are zero");
    const std::uint64_t p = a.p();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(p), s1 = Poly::zero(p);
    Poly t0 = Poly::zero(p), t1 = Poly::one(p);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // normalize so that g is monic
    const gfp::Scalar lead_inv = gfp::inv(r0.leading(), p);
    Poly g = r0.scaled(lead_inv);
    Poly s = s0.scaled(lead_inv);
    Poly t = t0.scaled(lead_inv);
    // reduce to the canonical minimal pair: deg s < deg(b/g), deg t < deg(a/g)
    if (!b.is_zero()) {
        Poly bq = exact_div(b, g);
        if (bq.degree() > 0) {
            s = s % bq;
        } else {
            s = Poly::zero(p);
        }
        t = exact_div(g - s * a, b);
    }
    return {std::move(g), std::move(s), std::move(t)};
}

Poly mod_pow(const Poly& base, unsigned __int128 e, const Poly& m) {
    Poly r = Poly::one(base.p()) % m;
    Poly b = base % m;
    while (e) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return r;
}

namespace {

// r with r^p = a; requires a to be a polynomial in x^p.
Poly pth_root(const Poly& a) {
    const std::uint64_t p = a.p();
    std::vector<gfp::Scalar> out;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (i % p == 0) {
            out.push_back(a.coeff(i));
        } else if (a.coeff(i) != 0) {
            throw internal_invariant_violation("pth_root: input is not a p-th power");
        }
    }
    return Poly(p, std::move(out));
}

void squarefree_rec(const Poly& f, unsigned mult, std::vector<std::pair<Poly, unsigned>>& out) {
    const std::uint64_t p = f.p();
    if (f.is_one()) return;
    Poly fd = f.derivative();
    if (fd.is_zero()) {
        squarefree_rec(pth_root(f), mult * static_cast<unsigned>(p), out);
        return;
    }
    Poly c = gcd(f, fd);
    Poly w = exact_div(f, c);
    unsigned i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly z = exact_div(w, y);
        if (z.degree() > 0) out.emplace_back(z, mult * i);
        w = std::move(y);
        c = exact_div(c, w);
        ++i;
    }
    if (!c.is_one()) squarefree_rec(pth_root(c), mult * static_cast<unsigned>(p), out);
}

}  // namespace

std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& a) {
    if (a.is_zero()) throw zero_polynomial("squarefree_decomposition: zero polynomial");
    std::vector<std::pair<Poly, unsigned>> out;
    if (a.degree() == 0) return out;
    squarefree_rec(a.monic(), 1, out);
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
        if (l.second != r.second) return l.second < r.second;
        return l.first.coeffs() < r.first.coeffs();
    });
    return out;
}

std::vector<unsigned> distinct_degree_degrees(const Poly& a) {
    if (a.is_zero() || !a.is_monic()) throw error("distinct_degree_degrees: input must be monic");
    if (a.coeff(0) == 0) throw zero_constant_term("distinct_degree_degrees: constant term is zero");
    if (!gcd(a, a.derivative()).is_one()) throw error("distinct_degree_degrees: input is not squarefree");
    const std::uint64_t p = a.p();
    std::vector<unsigned> degs;
    Poly rest = a;
    Poly h = Poly::x(p) % rest;
    unsigned m = 0;
    while (rest.degree() > 0) {
        ++m;
        if (2ll * m > rest.degree()) {
            degs.push_back(static_cast<unsigned>(rest.degree()));
            break;
        }
        h = mod_pow(h, p, rest);
        Poly g = gcd(rest, h - Poly::x(p));
        if (g.degree() > 0) {
            degs.push_back(m);
            rest = exact_div(rest, g);
            if (rest.degree() == 0) break;
            h = h % rest;
        }
    }
    std::sort(degs.begin(), degs.end());
    degs.erase(std::unique(degs.begin(), degs.end()), degs.end());
    return degs;
}

namespace {

// prime factors of n (each listed once)
std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

std::uint64_t polynomial_order(const Poly& l, std::uint64_t factor_bound) {
    if (l.is_zero()) throw zero_polynomial("polynomial_order: zero polynomial");
    if (l.coeff(0) == 0) {
        throw zero_constant_term("polynomial_order: constant term is zero (no k with l | x^k - 1 exists)");
    }
    if (l.degree() <= 0) return 1;
    const std::uint64_t p = l.p();

    auto parts = squarefree_decomposition(l);
    unsigned max_mult = 1;
    Poly sf = Poly::one(p);
    for (const auto& [f, m] : parts) {
        max_mult = std::max(max_mult, m);
        sf = sf * f;
    }

    // The order of x modulo the squarefree part divides
    // lambda = lcm over factor degrees m of p^m - 1.
    using Wide = unsigned __int128;
    std::vector<std::uint64_t> primes;
    Wide lambda = 1;
    for (unsigned m : distinct_degree_degrees(sf)) {
        Wide pm = 1;
        for (unsigned i = 0; i < m; ++i) {
            pm *= p;
            if (pm > static_cast<Wide>(factor_bound) + 1) {
                throw order_too_large("polynomial_order: p^" + std::to_string(m) +
                                      " - 1 exceeds the factoring bound; supply k explicitly");
            }
        }
        const std::uint64_t val = static_cast<std::uint64_t>(pm - 1);
        if (val > factor_bound) {
            throw order_too_large("polynomial_order: p^" + std::to_string(m) +
                                  " - 1 exceeds the factoring bound; supply k explicitly");
        }
        for (std::uint64_t q : prime_factors(val)) primes.push_back(q);
        lambda = lambda / static_cast<Wide>(std::gcd(static_cast<std::uint64_t>(lambda % val), val)) * val;
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    // shrink lambda to the exact multiplicative order of x mod sf
    Wide e = lambda;
    for (std::uint64_t q : primes) {
        while (e % q == 0 && mod_pow(Poly::x(p), e / q, sf).is_one()) e /= q;
    }

    // lift to the non-squarefree case: smallest p-power >= max multiplicity
    std::uint64_t lift = 1;
    while (lift < max_mult) lift *= p;
    Wide k = e * lift;
    if (k > ~0ull) {
        throw order_too_large("polynomial_order: order exceeds 64 bits; supply k explicitly");
    }
    return static_cast<std::uint64_t>(k);
}

bool is_irreducible(const Poly& a) {
    if (a.degree() < 1) return false;
    if (a.degree() == 1) return true;
    const std::uint64_t p = a.p();
    const long long n = a.degree();
    // no irreducible factor of degree m for any m <= n/2, and x^{p^n} = x mod a
    Poly h = Poly::x(p) % a;
    for (long long m = 1; 2 * m <= n; ++m) {
        h = mod_pow(h, p, a);
        if (!gcd(a, h - Poly::x(p)).is_one()) return false;
    }
    for (long long m = n / 2; m < n; ++m) h = mod_pow(h, p, a);
    return (h - Poly::x(p) % a).is_zero();
}

namespace {
std::map<std::pair<std::uint64_t, unsigned>, Poly> g_irreducible_cache;
std::mutex g_irreducible_mutex;
}  // namespace

Poly irreducible_search(std::uint64_t p, unsigned degree) {
    if (!gfp::is_prime(p)) throw not_prime("irreducible_search: p is not prime");
    if (degree == 0) throw degree_mismatch("irreducible_search: degree must be positive");
    {
        std::lock_guard<std::mutex> lock(g_irreducible_mutex);
        auto it = g_irreducible_cache.find({p, degree});
        if (it != g_irreducible_cache.end()) return it->second;
    }
    std::vector<gfp::Scalar> c(degree + 1, 0);
    c[degree] = 1;
    for (;;) {
        Poly cand(p, c);
        if (is_irreducible(cand)) {
            std::lock_guard<std::mutex> lock(g_irreducible_mutex);
            g_irreducible_cache.insert({{p, degree}, cand});
            return cand;
        }
        // advance the lower coefficients as a little-endian base-p counter
        std::size_t i = 0;
        while (i < degree && ++c[i] == p) {
            c[i] = 0;
            ++i;
        }
        if (i == degree) {
            throw internal_invariant_violation("irreducible_search: no irreducible found");
        }
    }
}

// ---- text encodings ----

std::string Poly::to_digits() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ',';
        os << c_[i];
    }
    return os.str();
}

std::string Poly::to_pretty() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!first) os << '+';
        first = false;
        if (i == 0) {
            os << c_[i];
        } else {
            if (c_[i] != 1) os << c_[i];
            os << 'x';
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

namespace {

std::uint64_t parse_number(const std::string& s) {
    if (s.empty()) throw parse_error("Poly: empty number");
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) throw parse_error("Poly: bad number '" + s + "'");
    }
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw parse_error("Poly: number '" + s + "' is out of range");
    }
}

}  // namespace

Poly Poly::from_digits(std::uint64_t p, const std::string& s) {
    std::vector<gfp::Scalar> c;
    std::string cur;
    auto flush = [&] {
        std::uint64_t v = parse_number(cur);
        if (v >= p) throw parse_error("Poly: digit " + cur + " is not below p");
        c.push_back(v);
        cur.clear();
    };
    for (char ch : s) {
        if (ch == ',') {
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    flush();
    return Poly(p, std::move(c));
}

Poly Poly::from_pretty(std::uint64_t p, const std::string& s) {
    // terms are "c", "x", "x^e", "cx^e" joined by '+'
    Poly r(p);
    std::string t;
    std::vector<std::string> terms;
    for (char ch : s) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*') continue;
        if (ch == '+') {
            terms.push_back(t);
            t.clear();
        } else {
            t += std::tolower(static_cast<unsigned char>(ch));
        }
    }
    terms.push_back(t);
    for (const std::string& term : terms) {
        if (term.empty()) throw parse_error("Poly: empty term in '" + s + "'");
        std::uint64_t coef = 1;
        std::size_t deg = 0;
        std::size_t pos = 0;
        while (pos < term.size() && std::isdigit(static_cast<unsigned char>(term[pos]))) ++pos;
        if (pos > 0) coef = parse_number(term.substr(0, pos));
        if (pos < term.size()) {
            if (term[pos] != 'x') throw parse_error("Poly: bad term '" + term + "'");
            ++pos;
            deg = 1;
            if (pos < term.size()) {
                if (term[pos] != '^') throw parse_error("Poly: bad term '" + term + "'");
                deg = parse_number(term.substr(pos + 1));
                pos = term.size();
            }
        }
        r = r + Poly::monomial(p, deg, coef % p);
    }
    return r;
}

Poly Poly::parse(std::uint64_t p, const std::string& s) {
    if (s.find('x') != std::string::npos || s.find('X') != std::string::npos) return from_pretty(p, s);
    return from_digits(p, s);
}

}  // namespace linsolve
