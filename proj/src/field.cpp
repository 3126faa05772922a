#include "linsolve/field.hpp"

#include <algorithm>
#include <sstream>

#include "linsolve/errors.hpp"

namespace linsolve {

struct Field::Data {
    std::uint64_t p;
    unsigned M;
    Poly modulus;
    GfpMatrix frob;                     // matrix of x -> x^p over the power basis
    std::vector<GfpMatrix> frob_pows;   // frob^t for t < M, built when M is small
};

namespace {

constexpr unsigned kFrobTableMaxDegree = 64;

GfpMatrix frobenius_matrix(std::uint64_t p, unsigned M, const Poly& modulus) {
    GfpMatrix m(p, M, M);
    // column j holds g^{j*p} mod modulus, since (sum c_j g^j)^p = sum c_j g^{jp}
    Poly xp = mod_pow(Poly::x(p), p, modulus);
    Poly cur = Poly::one(p);
    for (unsigned j = 0; j < M; ++j) {
        for (unsigned i = 0; i < M; ++i) m.at(i, j) = cur.coeff(i);
        if (j + 1 < M) cur = (cur * xp) % modulus;
    }
    return m;
}

}  // namespace

Field Field::build(std::uint64_t p, unsigned M) {
    return build(p, M, irreducible_search(p, M));
}

Field Field::build(std::uint64_t p, unsigned M, const Poly& modulus) {
    if (!gfp::is_prime(p)) throw not_prime("Field: characteristic " + std::to_string(p) + " is not prime");
    if (M == 0) throw degree_mismatch("Field: degree must be positive");
    if (modulus.p() != p) throw field_mismatch("Field: modulus has a different characteristic");
    if (modulus.degree() != static_cast<long long>(M)) {
        throw degree_mismatch("Field: modulus degree does not match the field degree");
    }
    if (!modulus.is_monic()) throw not_irreducible("Field: modulus is not monic");
    if (!is_irreducible(modulus)) throw not_irreducible("Field: modulus is not irreducible");

    GfpMatrix frob = frobenius_matrix(p, M, modulus);
    std::vector<GfpMatrix> pows;
    if (M <= kFrobTableMaxDegree) {
        pows.reserve(M);
        pows.push_back(GfpMatrix::identity(p, M));
        for (unsigned t = 1; t < M; ++t) pows.push_back(frob * pows.back());
    }
    auto data = std::make_shared<Data>(Data{p, M, modulus, std::move(frob), std::move(pows)});
    return Field(std::move(data));
}

std::uint64_t Field::p() const { return d_->p; }
unsigned Field::degree() const { return d_->M; }
const Poly& Field::modulus() const { return d_->modulus; }

FieldElement Field::zero() const { return FieldElement(*this, std::vector<gfp::Scalar>(d_->M, 0)); }

FieldElement Field::one() const {
    std::vector<gfp::Scalar> c(d_->M, 0);
    c[0] = 1;
    return FieldElement(*this, std::move(c));
}

FieldElement Field::gen() const {
    std::vector<gfp::Scalar> c(d_->M, 0);
    if (d_->M == 1) {
        // the residue of x in GF(p)[x]/(x + c0) is the scalar -c0
        c[0] = gfp::neg(d_->modulus.coeff(0), d_->p);
    } else {
        c[1] = 1;
    }
    return FieldElement(*this, std::move(c));
}

FieldElement Field::from_coeffs(std::vector<gfp::Scalar> coeffs) const {
    if (coeffs.size() > d_->M) throw degree_mismatch("Field: too many coordinates");
    coeffs.resize(d_->M, 0);
    for (auto& c : coeffs) c %= d_->p;
    return FieldElement(*this, std::move(coeffs));
}

FieldElement Field::parse(const std::string& digits) const {
    Poly p = Poly::from_digits(d_->p, digits);
    std::vector<gfp::Scalar> c = p.coeffs();
    if (c.size() > d_->M) throw parse_error("Field: element has more than " + std::to_string(d_->M) + " digits");
    return from_coeffs(std::move(c));
}

bool Field::operator==(const Field& o) const {
    if (d_ == o.d_) return true;
    return d_->p == o.d_->p && d_->M == o.d_->M && d_->modulus == o.d_->modulus;
}

bool Field::has_frobenius_table() const { return !d_->frob_pows.empty(); }

const GfpMatrix& Field::frobenius_step_matrix() const { return d_->frob; }

const GfpMatrix& Field::frobenius_power_matrix(unsigned t) const {
    if (d_->frob_pows.empty()) {
        throw internal_invariant_violation("Field: no frobenius power table at this degree");
    }
    return d_->frob_pows[t % d_->M];
}

// ---- element arithmetic ----

namespace {

void check_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.field() != b.field()) throw field_mismatch("FieldElement: operands live in different fields");
}

}  // namespace

bool FieldElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](gfp::Scalar c) { return c == 0; });
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same_field(*this, o);
    const std::uint64_t p = f_.p();
    std::vector<gfp::Scalar> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = gfp::add(c_[i], o.c_[i], p);
    return FieldElement(f_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same_field(*this, o);
    const std::uint64_t p = f_.p();
    std::vector<gfp::Scalar> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = gfp::sub(c_[i], o.c_[i], p);
    return FieldElement(f_, std::move(c));
}

FieldElement FieldElement::operator-() const {
    const std::uint64_t p = f_.p();
    std::vector<gfp::Scalar> c(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = gfp::neg(c_[i], p);
    return FieldElement(f_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same_field(*this, o);
    const std::uint64_t p = f_.p();
    const unsigned M = f_.degree();
    std::vector<gfp::Scalar> prod(2 * M - 1, 0);
    for (unsigned i = 0; i < M; ++i) {
        if (c_[i] == 0) continue;
        for (unsigned j = 0; j < M; ++j) {
            if (o.c_[j] == 0) continue;
            prod[i + j] = gfp::add(prod[i + j], gfp::mul(c_[i], o.c_[j], p), p);
        }
    }
    // reduce by the monic modulus
    const Poly& mod = f_.modulus();
    for (std::size_t i = prod.size(); i-- > M;) {
        const gfp::Scalar v = prod[i];
        if (v == 0) continue;
        prod[i] = 0;
        for (unsigned j = 0; j < M; ++j) {
            prod[i - M + j] = gfp::sub(prod[i - M + j], gfp::mul(v, mod.coeff(j), p), p);
        }
    }
    prod.resize(M);
    return FieldElement(f_, std::move(prod));
}

FieldElement FieldElement::inv() const {
    if (is_zero()) throw division_by_zero("FieldElement: zero has no inverse");
    Poly a(f_.p(), c_);
    XgcdResult r = xgcd(a, f_.modulus());
    if (r.g.degree() != 0) throw internal_invariant_violation("FieldElement: gcd with the modulus is not constant");
    // g is monic, hence 1, and s*a = 1 mod modulus
    return f_.from_coeffs(r.s.coeffs());
}

FieldElement FieldElement::pow(std::uint64_t e) const {
    FieldElement r = f_.one();
    FieldElement b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

FieldElement FieldElement::scaled(gfp::Scalar c) const {
    const std::uint64_t p = f_.p();
    c %= p;
    std::vector<gfp::Scalar> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = gfp::mul(c_[i], c, p);
    return FieldElement(f_, std::move(out));
}

bool FieldElement::operator==(const FieldElement& o) const {
    return f_ == o.f_ && c_ == o.c_;
}

std::string FieldElement::to_digits() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ',';
        os << c_[i];
    }
    return os.str();
}

FieldElement frobenius(const FieldElement& x, std::uint64_t t) {
    const Field::Data& d = *x.f_.d_;
    const std::uint64_t r = t % d.M;
    if (r == 0) return x;
    if (!d.frob_pows.empty()) {
        return FieldElement(x.f_, d.frob_pows[static_cast<std::size_t>(r)].apply(x.c_));
    }
    std::vector<gfp::Scalar> c = x.c_;
    for (std::uint64_t i = 0; i < r; ++i) c = d.frob.apply(c);
    return FieldElement(x.f_, std::move(c));
}

// ---- subfields ----

SubfieldBasis subfield_basis(const Field& f, unsigned s) {
    const unsigned M = f.degree();
    if (s == 0 || M % s != 0) {
        throw not_a_divisor("subfield_basis: " + std::to_string(s) + " does not divide the field degree");
    }
    const std::uint64_t p = f.p();
    // fixed space of frobenius^s: nullspace of (frob^s - id)
    GfpMatrix m(p, M, M);
    for (unsigned j = 0; j < M; ++j) {
        std::vector<gfp::Scalar> e(M, 0);
        e[j] = 1;
        FieldElement img = frobenius(f.from_coeffs(e), s);
        for (unsigned i = 0; i < M; ++i) m.at(i, j) = img.coeffs()[i];
        m.at(j, j) = gfp::sub(m.at(j, j), 1, p);
    }
    std::vector<std::vector<gfp::Scalar>> rows = echelon_span(p, nullspace(std::move(m)));
    if (rows.size() != s) throw internal_invariant_violation("subfield_basis: fixed space has wrong dimension");
    SubfieldBasis b;
    b.s = s;
    for (auto& row : rows) {
        std::size_t pivot = 0;
        while (pivot < row.size() && row[pivot] == 0) ++pivot;
        b.pivots.push_back(pivot);
        b.vectors.push_back(f.from_coeffs(std::move(row)));
    }
    return b;
}

bool is_in_subfield(const FieldElement& x, unsigned s) {
    const unsigned M = x.field().degree();
    if (s == 0 || M % s != 0) {
        throw not_a_divisor("is_in_subfield: " + std::to_string(s) + " does not divide the field degree");
    }
    return frobenius(x, s) == x;
}

std::optional<std::vector<gfp::Scalar>> basis_coords(const SubfieldBasis& b, const FieldElement& x) {
    // over an echelon basis, candidate coordinates can be read off at the pivots
    std::vector<gfp::Scalar> coords(b.vectors.size());
    for (std::size_t i = 0; i < b.vectors.size(); ++i) coords[i] = x.coeffs()[b.pivots[i]];
    if (from_basis_coords(b, coords) != x) return std::nullopt;
    return coords;
}

FieldElement from_basis_coords(const SubfieldBasis& b, const std::vector<gfp::Scalar>& coords) {
    if (b.vectors.empty()) throw invalid_tower("from_basis_coords: empty basis");
    if (coords.size() != b.vectors.size()) throw degree_mismatch("from_basis_coords: wrong coordinate count");
    FieldElement acc = b.vectors[0].field().zero();
    for (std::size_t i = 0; i < coords.size(); ++i) acc = acc + b.vectors[i].scaled(coords[i]);
    return acc;
}

std::vector<FieldElement> subfield_elements(const SubfieldBasis& b, std::uint64_t cap) {
    if (b.vectors.empty()) throw invalid_tower("subfield_elements: empty basis");
    const std::uint64_t p = b.vectors[0].field().p();
    unsigned __int128 total = 1;
    for (std::size_t i = 0; i < b.vectors.size(); ++i) {
        total *= p;
        if (total > cap) throw too_many("subfield_elements: subfield larger than the cap");
    }
    std::vector<FieldElement> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<gfp::Scalar> digits(b.vectors.size(), 0);
    for (;;) {
        out.push_back(from_basis_coords(b, digits));
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == p) {
            digits[i] = 0;
            ++i;
        }
        if (i == digits.size()) break;
    }
    return out;
}

// ---- distinguished elements ----

FieldElement solve_trace_one(const Field& f, unsigned d, unsigned n) {
    if (d == 0 || n % d != 0 || f.degree() % n != 0) {
        throw invalid_tower("solve_trace_one: need d | n | field degree");
    }
    if (d == n) return f.one();
    auto rel_trace = [&](const FieldElement& x) {
        FieldElement acc = x.field().zero();
        for (unsigned i = 0; i * d < n; ++i) acc = acc + frobenius(x, static_cast<std::uint64_t>(i) * d);
        return acc;
    };
    for (const FieldElement& b : subfield_basis(f, n).vectors) {
        FieldElement tr = rel_trace(b);
        if (tr.is_zero()) continue;
        if (!is_in_subfield(tr, d)) {
            throw internal_invariant_violation("solve_trace_one: trace left the base subfield");
        }
        FieldElement delta = b * tr.inv();
        if (rel_trace(delta) != f.one()) {
            throw internal_invariant_violation("solve_trace_one: normalization failed");
        }
        return delta;
    }
    throw internal_invariant_violation("solve_trace_one: the relative trace vanished on a whole basis");
}

FieldElement solve_artin_schreier(const Field& f, unsigned d) {
    const std::uint64_t p = f.p();
    if (d == 0 || f.degree() % (p * d) != 0) {
        throw invalid_tower("solve_artin_schreier: need p*d to divide the field degree");
    }
    const unsigned M = f.degree();
    const unsigned s = static_cast<unsigned>(p * d);
    SubfieldBasis basis = subfield_basis(f, s);
    GfpMatrix m(p, M, s);
    for (unsigned j = 0; j < s; ++j) {
        FieldElement img = basis.vectors[j] - frobenius(basis.vectors[j], d);
        for (unsigned i = 0; i < M; ++i) m.at(i, j) = img.coeffs()[i];
    }
    GfpSolveResult res = solve(m, f.one().coeffs());
    if (!res.consistent) {
        throw internal_invariant_violation("solve_artin_schreier: no solution in GF(p^{p*d})");
    }
    FieldElement delta = from_basis_coords(basis, res.particular);
    if (delta - frobenius(delta, d) != f.one()) {
        throw internal_invariant_violation("solve_artin_schreier: verification failed");
    }
    return delta;
}

}  // namespace linsolve
