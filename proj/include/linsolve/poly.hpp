#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "linsolve/gfp.hpp"

namespace linsolve {

// Dense univariate polynomial over GF(p).  Coefficients are stored
// little-endian (index = degree) with no trailing zeros; the zero
// polynomial has an empty coefficient vector and degree() == -1.
class Poly {
public:
    explicit Poly(std::uint64_t p) : p_(check_p(p)) {}
    Poly(std::uint64_t p, std::vector<gfp::Scalar> coeffs);

    static Poly zero(std::uint64_t p) { return Poly(p); }
    static Poly one(std::uint64_t p) { return constant(p, 1); }
    static Poly x(std::uint64_t p) { return monomial(p, 1, 1); }
    static Poly constant(std::uint64_t p, gfp::Scalar c);
    static Poly monomial(std::uint64_t p, std::size_t deg, gfp::Scalar c = 1);
    // 1 - x^k, the conventional form of x - x^{p^k}.
    static Poly one_minus_xk(std::uint64_t p, std::uint64_t k);

    std::uint64_t p() const { return p_; }
    const std::vector<gfp::Scalar>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is reported as -1.
    long long degree() const { return static_cast<long long>(c_.size()) - 1; }
    gfp::Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    gfp::Scalar leading() const { return c_.empty() ? 0 : c_.back(); }
    bool is_monic() const { return leading() == 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(gfp::Scalar c) const;
    Poly monic() const;
    Poly derivative() const;
    gfp::Scalar eval(gfp::Scalar x) const;

    bool operator==(const Poly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Comma-separated little-endian digits, e.g. "1,1,0,1"; zero is "0".
    std::string to_digits() const;
    // Human form, e.g. "x^3+x+1"; zero is "0".
    std::string to_pretty() const;
    static Poly from_digits(std::uint64_t p, const std::string& s);
    static Poly from_pretty(std::uint64_t p, const std::string& s);
    // Accepts either encoding; pretty form is detected by the letter x.
    static Poly parse(std::uint64_t p, const std::string& s);

private:
    static std::uint64_t check_p(std::uint64_t p);
    void trim();

    std::uint64_t p_;
    std::vector<gfp::Scalar> c_;
};

// quotient, remainder with deg r < deg b.  Throws division_by_zero if b = 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
// Division that must be exact; throws not_divisible otherwise.
Poly exact_div(const Poly& a, const Poly& b);

// Monic gcd; gcd(a, 0) = monic(a).  Throws both_zero if both are zero.
Poly gcd(const Poly& a, const Poly& b);

struct XgcdResult {
    Poly g, s, t;  // g = s*a + t*b
};
// Monic g with the canonical minimal pair: deg s < deg(b/g), deg t < deg(a/g).
XgcdResult xgcd(const Poly& a, const Poly& b);

// base^e mod m.
Poly mod_pow(const Poly& base, unsigned __int128 e, const Poly& m);

// Distinct monic irreducible factors with multiplicities, sorted by
// multiplicity and then by coefficients.  Input is normalized to monic.
std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& a);

// Degrees d such that a has an irreducible factor of degree d.
// Requires a monic, squarefree, with nonzero constant term.
std::vector<unsigned> distinct_degree_degrees(const Poly& a);

// Smallest k >= 1 with l | x^k - 1.  Requires l(0) != 0.  Throws
// order_too_large when an intermediate p^m - 1 exceeds factor_bound or the
// result would overflow 64 bits.
std::uint64_t polynomial_order(const Poly& l, std::uint64_t factor_bound = (1ull << 40));

bool is_irreducible(const Poly& a);

// The monic irreducible of the given degree whose coefficient vector,
// read as a little-endian base-p integer, is smallest.
Poly irreducible_search(std::uint64_t p, unsigned degree);

}  // namespace linsolve
