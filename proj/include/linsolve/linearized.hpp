#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linsolve/field.hpp"
#include "linsolve/poly.hpp"

namespace linsolve {

// A p-linearized polynomial sum_i a_i X^{p^i} over GF(p), stored as the
// little-endian coefficient vector (a_0, a_1, ...).  As a map on any
// extension of GF(p) it is GF(p)-linear.  Composition of two such maps
// corresponds to ordinary multiplication of their conventional forms,
// which share the same coefficient vector.
class Linearized {
public:
    explicit Linearized(std::uint64_t p) : p_(p) {}
    Linearized(std::uint64_t p, std::vector<gfp::Scalar> alphas);

    static Linearized identity(std::uint64_t p) { return Linearized(p, {1}); }

    std::uint64_t p() const { return p_; }
    const std::vector<gfp::Scalar>& alphas() const { return a_; }
    bool is_zero() const { return a_.empty(); }
    // Largest i with a_i != 0, or -1 for the zero map.
    long long top_index() const { return static_cast<long long>(a_.size()) - 1; }
    gfp::Scalar alpha(std::size_t i) const { return i < a_.size() ? a_[i] : 0; }

    Linearized operator+(const Linearized& o) const;
    Linearized operator-(const Linearized& o) const;
    Linearized scaled(gfp::Scalar c) const;
    bool operator==(const Linearized& o) const { return p_ == o.p_ && a_ == o.a_; }
    bool operator!=(const Linearized& o) const { return !(*this == o); }

    std::string to_digits() const;
    // Human form with expanded exponents, e.g. "X + X^2 + X^8".
    std::string to_pretty() const;
    static Linearized from_digits(std::uint64_t p, const std::string& s);
    static Linearized from_pretty(std::uint64_t p, const std::string& s);
    static Linearized parse(std::uint64_t p, const std::string& s);

private:
    std::uint64_t p_;
    std::vector<gfp::Scalar> a_;
};

// The two directions of the coefficient-sharing bijection with ordinary
// polynomials (sum a_i X^{p^i}  <->  sum a_i x^i).
Poly to_conventional(const Linearized& l);
Linearized from_conventional(const Poly& f);

// Apply the map to a field element: sum a_i * x^{p^i}, computed with one
// running frobenius ladder.  Indices at or above the field degree M are
// folded mod M first, which leaves the map unchanged on GF(p^M).
FieldElement evaluate(const Linearized& l, const FieldElement& x);

// Functional composition a(b(X)); commutative for these maps.
Linearized compose(const Linearized& a, const Linearized& b);

// Is there C with a = compose(b, C)?  Equivalent to divisibility of the
// conventional forms.  Throws zero_divisor when b is the zero map.
bool symbolic_divides(const Linearized& b, const Linearized& a);

// Fold every index into [0, M) by summing coefficients with equal index
// mod M.  Equal to the original as a map on GF(p^M).
Linearized fold_exponents(const Linearized& l, unsigned M);

// The M x M matrix of the map over the power basis of the field, so that
// to_matrix(l, f).apply(x.coeffs()) == evaluate(l, x).coeffs().  Exponents
// are folded internally.
GfpMatrix to_matrix(const Linearized& l, const Field& f);

// T(step, span) = sum_{i < span/step} X^{p^{step*i}}; requires step | span.
Linearized trace_poly(std::uint64_t p, unsigned step, unsigned span);
// S(step, span) = sum_{i < span/step} (-1)^i X^{p^{step*i}}; for p = 2 this
// coincides with trace_poly.  S(k, 2k) = X - X^{p^k}, whose kernel in any
// extension is exactly GF(p^k).
Linearized alternating_poly(std::uint64_t p, unsigned step, unsigned span);

struct IdentityCheck {
    std::string name;
    bool pass = false;
};

struct FamilyIdentityReport {
    std::vector<IdentityCheck> checks;
    bool all_pass() const;
};

// Verifies the composition laws of the trace/alternating families for the
// chain inner | mid | outer, both as exact identities of conventional
// forms and pointwise on sampled elements, plus the restriction laws on
// GF(p^n) (relative trace and, when lcm(n,outer)/outer is even, the
// alternating analogue).
FamilyIdentityReport family_identity_suite(std::uint64_t p, unsigned inner, unsigned mid, unsigned outer,
                                           unsigned n);

}  // namespace linsolve
