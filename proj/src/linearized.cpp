#include "linsolve/linearized.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "linsolve/errors.hpp"

namespace linsolve {

Linearized::Linearized(std::uint64_t p, std::vector<gfp::Scalar> alphas) : p_(p), a_(std::move(alphas)) {
    if (!gfp::is_prime(p_)) throw not_prime("Linearized: characteristic is not prime");
    for (auto& c : a_) c %= p_;
    while (!a_.empty() && a_.back() == 0) a_.pop_back();
}

Linearized Linearized::operator+(const Linearized& o) const {
    if (p_ != o.p_) throw field_mismatch("Linearized: mixed characteristics");
    std::vector<gfp::Scalar> c(std::max(a_.size(), o.a_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = gfp::add(alpha(i), o.alpha(i), p_);
    return Linearized(p_, std::move(c));
}

Linearized Linearized::operator-(const Linearized& o) const {
    if (p_ != o.p_) throw field_mismatch("Linearized: mixed characteristics");
    std::vector<gfp::Scalar> c(std::max(a_.size(), o.a_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = gfp::sub(alpha(i), o.alpha(i), p_);
    return Linearized(p_, std::move(c));
}

Linearized Linearized::scaled(gfp::Scalar c) const {
    std::vector<gfp::Scalar> out(a_);
    c %= p_;
    for (auto& x : out) x = gfp::mul(x, c, p_);
    return Linearized(p_, std::move(out));
}

Poly to_conventional(const Linearized& l) { return Poly(l.p(), l.alphas()); }

Linearized from_conventional(const Poly& f) { return Linearized(f.p(), f.coeffs()); }

FieldElement evaluate(const Linearized& l, const FieldElement& x) {
    if (l.p() != x.field().p()) throw field_mismatch("evaluate: characteristic mismatch");
    const unsigned M = x.field().degree();
    const Linearized& eff = l.alphas().size() > M ? fold_exponents(l, M) : l;
    FieldElement acc = x.field().zero();
    FieldElement cur = x;
    const auto& a = eff.alphas();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) cur = frobenius(cur, 1);
        if (a[i] == 0) continue;
        acc = acc + (a[i] == 1 ? cur : cur.scaled(a[i]));
    }
    return acc;
}

Linearized compose(const Linearized& a, const Linearized& b) {
    return from_conventional(to_conventional(a) * to_conventional(b));
}

bool symbolic_divides(const Linearized& b, const Linearized& a) {
    if (b.is_zero()) throw zero_divisor("symbolic_divides: zero divisor");
    return (to_conventional(a) % to_conventional(b)).is_zero();
}

Linearized fold_exponents(const Linearized& l, unsigned M) {
    if (M == 0) throw degree_mismatch("fold_exponents: M must be positive");
    std::vector<gfp::Scalar> out(std::min<std::size_t>(l.alphas().size(), M), 0);
    for (std::size_t i = 0; i < l.alphas().size(); ++i) {
        out[i % M] = gfp::add(out[i % M], l.alphas()[i], l.p());
    }
    return Linearized(l.p(), std::move(out));
}

GfpMatrix to_matrix(const Linearized& l, const Field& f) {
    if (l.p() != f.p()) throw field_mismatch("to_matrix: characteristic mismatch");
    const unsigned M = f.degree();
    const std::uint64_t p = f.p();
    const Linearized eff = fold_exponents(l, M);
    const auto& a = eff.alphas();
    GfpMatrix acc(p, M, M);
    auto add_scaled = [&](const GfpMatrix& m, gfp::Scalar c) {
        for (unsigned i = 0; i < M; ++i) {
            for (unsigned j = 0; j < M; ++j) {
                acc.at(i, j) = gfp::add(acc.at(i, j), gfp::mul(c, m.at(i, j), p), p);
            }
        }
    };
    if (f.has_frobenius_table()) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i]) add_scaled(f.frobenius_power_matrix(static_cast<unsigned>(i)), a[i]);
        }
        return acc;
    }
    GfpMatrix pow = GfpMatrix::identity(p, M);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) pow = f.frobenius_step_matrix() * pow;
        if (a[i]) add_scaled(pow, a[i]);
    }
    return acc;
}

Linearized trace_poly(std::uint64_t p, unsigned step, unsigned span) {
    if (step == 0 || span % step != 0 || span == 0) {
        throw not_a_divisor("trace_poly: step must divide a positive span");
    }
    std::vector<gfp::Scalar> a(span - step + 1, 0);
    for (unsigned i = 0; i * step <= span - step; ++i) a[i * step] = 1;
    return Linearized(p, std::move(a));
}

Linearized alternating_poly(std::uint64_t p, unsigned step, unsigned span) {
    if (step == 0 || span % step != 0 || span == 0) {
        throw not_a_divisor("alternating_poly: step must divide a positive span");
    }
    std::vector<gfp::Scalar> a(span - step + 1, 0);
    for (unsigned i = 0; i * step <= span - step; ++i) a[i * step] = (i % 2 == 0) ? 1 : p - 1;
    return Linearized(p, std::move(a));
}

// ---- text encodings ----

std::string Linearized::to_digits() const {
    if (a_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (i) os << ',';
        os << a_[i];
    }
    return os.str();
}

std::string Linearized::to_pretty() const {
    if (a_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (a_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (a_[i] != 1) os << a_[i];
        // X^{p^i}, with the exponent written out; beyond 2^63 fall back to digits
        unsigned __int128 e = 1;
        bool fits = true;
        for (std::size_t j = 0; j < i; ++j) {
            e *= p_;
            if (e > (static_cast<unsigned __int128>(1) << 63)) {
                fits = false;
                break;
            }
        }
        if (!fits) return to_digits();
        os << 'X';
        if (e > 1) os << '^' << static_cast<std::uint64_t>(e);
    }
    return os.str();
}

Linearized Linearized::from_digits(std::uint64_t p, const std::string& s) {
    return Linearized(p, Poly::from_digits(p, s).coeffs());
}

Linearized Linearized::from_pretty(std::uint64_t p, const std::string& s) {
    // every exponent must be a power of p; X^{p^i} contributes at index i
    Poly conv = Poly::from_pretty(p, s);
    std::vector<gfp::Scalar> a;
    for (std::size_t e = 0; e < conv.coeffs().size(); ++e) {
        if (conv.coeff(e) == 0) continue;
        std::size_t idx = 0;
        std::size_t v = e;
        while (v > 1 && v % p == 0) {
            v /= p;
            ++idx;
        }
        if (v != 1) throw parse_error("Linearized: exponent " + std::to_string(e) + " is not a power of p");
        if (a.size() <= idx) a.resize(idx + 1, 0);
        a[idx] = gfp::add(a[idx], conv.coeff(e), p);
    }
    return Linearized(p, std::move(a));
}

Linearized Linearized::parse(std::uint64_t p, const std::string& s) {
    if (s.find('x') != std::string::npos || s.find('X') != std::string::npos) return from_pretty(p, s);
    return from_digits(p, s);
}

// ---- family identities ----

bool FamilyIdentityReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.pass; });
}

namespace {

// deterministic sample of a subfield, at most cap elements in counting order
std::vector<FieldElement> sample_elements(const SubfieldBasis& basis, std::size_t cap) {
    std::vector<FieldElement> out;
    const std::uint64_t p = basis.vectors[0].field().p();
    std::vector<gfp::Scalar> digits(basis.vectors.size(), 0);
    while (out.size() < cap) {
        out.push_back(from_basis_coords(basis, digits));
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == p) {
            digits[i] = 0;
            ++i;
        }
        if (i == digits.size()) break;
    }
    return out;
}

bool pointwise_equal(const Linearized& a, const Linearized& b, const std::vector<FieldElement>& xs) {
    for (const FieldElement& x : xs) {
        if (evaluate(a, x) != evaluate(b, x)) return false;
    }
    return true;
}

bool pointwise_compose_equal(const Linearized& outer, const Linearized& inner, const Linearized& whole,
                             const std::vector<FieldElement>& xs) {
    for (const FieldElement& x : xs) {
        if (evaluate(outer, evaluate(inner, x)) != evaluate(whole, x)) return false;
    }
    return true;
}

}  // namespace

FamilyIdentityReport family_identity_suite(std::uint64_t p, unsigned inner, unsigned mid, unsigned outer,
                                           unsigned n) {
    if (inner == 0 || mid % inner != 0 || outer % mid != 0) {
        throw not_a_divisor("family_identity_suite: need inner | mid | outer");
    }
    if (n == 0) throw invalid_tower("family_identity_suite: n must be positive");
    FamilyIdentityReport rep;
    Field f = Field::build(p, n);
    std::vector<FieldElement> xs = sample_elements(subfield_basis(f, n), 128);

    auto add = [&rep](std::string name, bool pass) { rep.checks.push_back({std::move(name), pass}); };
    auto both = [&](const std::string& name, const Linearized& lhs_outer, const Linearized& lhs_inner,
                    const Linearized& rhs) {
        add(name, compose(lhs_outer, lhs_inner) == rhs);
        add(name + " (pointwise)", pointwise_compose_equal(lhs_outer, lhs_inner, rhs, xs));
    };

    const Linearized t_mid_outer = trace_poly(p, mid, outer);
    const Linearized t_inner_mid = trace_poly(p, inner, mid);
    const Linearized t_inner_outer = trace_poly(p, inner, outer);
    both("trace through trace collapses", t_mid_outer, t_inner_mid, t_inner_outer);

    if ((mid / inner) % 2 == 0) {
        both("trace through alternating collapses (even quotient)", t_mid_outer,
             alternating_poly(p, inner, mid), alternating_poly(p, inner, outer));
    } else {
        both("alternating through alternating collapses (odd quotient)", alternating_poly(p, mid, outer),
             alternating_poly(p, inner, mid), alternating_poly(p, inner, outer));
    }

    if ((outer / mid) % 2 == 0) {
        both("alternating absorbs the doubled trace (even quotient)", alternating_poly(p, mid, outer),
             trace_poly(p, mid, 2 * mid), alternating_poly(p, outer, 2 * outer));
    } else {
        both("alternating absorbs the doubled trace (odd quotient)", alternating_poly(p, mid, outer),
             trace_poly(p, mid, 2 * mid), trace_poly(p, outer, 2 * outer));
    }

    both("trace absorbs the doubled alternating", t_mid_outer, alternating_poly(p, mid, 2 * mid),
         alternating_poly(p, outer, 2 * outer));

    // restriction to GF(p^n): the outer-span trace acts as the relative trace
    const unsigned d = std::gcd(n, outer);
    const unsigned lcm = n / d * outer;
    add("trace restricted to the subfield",
        pointwise_equal(trace_poly(p, outer, lcm), trace_poly(p, d, n), xs));
    if ((lcm / outer) % 2 == 0) {
        add("alternating restricted to the subfield (even quotient)",
            pointwise_equal(alternating_poly(p, outer, lcm), alternating_poly(p, d, n), xs));
    }
    return rep;
}

}  // namespace linsolve
