#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "linsolve/linalg.hpp"
#include "linsolve/poly.hpp"

namespace linsolve {

class FieldElement;

// GF(p^M) presented as GF(p)[x] / (modulus).  Immutable once built and
// freely shareable across threads.
class Field {
public:
    // When no modulus is given, the canonical one is used: the monic
    // irreducible of degree M whose coefficient vector, read as a
    // little-endian base-p integer, is smallest.
    static Field build(std::uint64_t p, unsigned M);
    static Field build(std::uint64_t p, unsigned M, const Poly& modulus);

    std::uint64_t p() const;
    unsigned degree() const;
    const Poly& modulus() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement gen() const;  // the residue class of x
    FieldElement from_coeffs(std::vector<gfp::Scalar> coeffs) const;
    // "1,0,1" = 1 + g^2; fewer than M digits are padded with zeros.
    FieldElement parse(const std::string& digits) const;

    bool operator==(const Field& o) const;
    bool operator!=(const Field& o) const { return !(*this == o); }

    // Precomputed matrices of frobenius powers exist only for small degrees;
    // callers that want the t-th power matrix for arbitrary degree should
    // fall back to chaining frobenius_step_matrix.
    bool has_frobenius_table() const;
    const GfpMatrix& frobenius_step_matrix() const;       // x -> x^p
    const GfpMatrix& frobenius_power_matrix(unsigned t) const;  // x -> x^{p^t}, needs the table

private:
    friend class FieldElement;
    friend FieldElement frobenius(const FieldElement& x, std::uint64_t t);
    struct Data;
    explicit Field(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

// An element of GF(p^M), stored as M little-endian coordinates over the
// power basis 1, g, ..., g^{M-1}.
class FieldElement {
public:
    const Field& field() const { return f_; }
    const std::vector<gfp::Scalar>& coeffs() const { return c_; }
    bool is_zero() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement inv() const;
    FieldElement pow(std::uint64_t e) const;
    FieldElement scaled(gfp::Scalar c) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    std::string to_digits() const;

private:
    friend class Field;
    friend FieldElement frobenius(const FieldElement& x, std::uint64_t t);
    FieldElement(Field f, std::vector<gfp::Scalar> c) : f_(std::move(f)), c_(std::move(c)) {}
    Field f_;
    std::vector<gfp::Scalar> c_;
};

// x^{p^t}; the exponent acts modulo the field degree.
FieldElement frobenius(const FieldElement& x, std::uint64_t t);

// Canonical basis of GF(p^s) inside the ambient field: the fixed space of
// frobenius^s, row-reduced to echelon form over the power basis.  The
// first vector is always 1.
struct SubfieldBasis {
    unsigned s = 0;
    std::vector<FieldElement> vectors;
    std::vector<std::size_t> pivots;  // pivot coordinate of each vector
};

SubfieldBasis subfield_basis(const Field& f, unsigned s);

// x == frobenius(x, s); s must divide the field degree.
bool is_in_subfield(const FieldElement& x, unsigned s);

// Coordinates of x over the basis, or nullopt when x is outside the span.
std::optional<std::vector<gfp::Scalar>> basis_coords(const SubfieldBasis& b, const FieldElement& x);
FieldElement from_basis_coords(const SubfieldBasis& b, const std::vector<gfp::Scalar>& coords);

// All p^s elements of the subfield in counting order of their coordinate
// vectors (first coordinate fastest).  Guarded by cap.
std::vector<FieldElement> subfield_elements(const SubfieldBasis& b, std::uint64_t cap = (1ull << 20));

// delta in GF(p^n) whose relative trace to GF(p^d) is 1:
// sum of frobenius(delta, d*i) for i < n/d equals 1.  Deterministic.
FieldElement solve_trace_one(const Field& f, unsigned d, unsigned n);

// delta in GF(p^{p*d}) with delta - frobenius(delta, d) = 1.  Such an
// element exists in GF(p^{p*d}) for every p (for odd p none exists in
// GF(p^{2d}), which is why the p*d tower is used).  Deterministic.
FieldElement solve_artin_schreier(const Field& f, unsigned d);

}  // namespace linsolve
