#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linsolve/field.hpp"
#include "linsolve/linearized.hpp"
#include "linsolve/poly.hpp"

namespace linsolve {

// How to produce a particular solution.
//  - General: the trace-sum construction; always applicable.
//  - Direct:  the one-line scaled formula; needs p to not divide k/d.
//  - Matrix:  plain Gaussian elimination over GF(p); doubles as the
//             independent cross-checking oracle.
enum class Method { Auto, General, Direct, Matrix };

std::string method_name(Method m);
Method method_from_name(const std::string& s);

struct ProblemSpec {
    std::uint64_t p = 2;
    std::vector<gfp::Scalar> alphas;     // the map sum alphas[i] X^{p^i}
    unsigned n = 1;                      // solutions are sought in GF(p^n)
    std::optional<std::uint64_t> k;      // any k with l | x^k - 1; computed when absent
    Method method = Method::Auto;
};

struct PreprocessResult {
    unsigned shift = 0;   // leading zero coefficients stripped
    Linearized reduced;   // nonzero constant term; original = frobenius^shift after reduced
};

PreprocessResult preprocess(std::uint64_t p, const std::vector<gfp::Scalar>& alphas);

// Hard limits keeping dense polynomial work and the ambient field at desk
// scale.  Larger inputs fail fast with order_too_large / invalid_tower.
constexpr std::uint64_t kMaxSupportedK = 1ull << 22;
constexpr unsigned kMaxAmbientDegree = 256;

// Everything derived from a ProblemSpec that does not depend on the
// right-hand side.  Built once by build_context, then immutable.
struct SolverContext {
    ProblemSpec spec;
    unsigned shift;               // preprocessing frobenius shift
    std::uint64_t k;              // l | x^k - 1 for the reduced map
    unsigned d;                   // gcd(n, k)
    std::uint64_t lcm_nk;
    unsigned ambient_degree;      // p * n
    bool direct_applicable;       // p does not divide k/d

    Field field;                  // GF(p^{p*n})
    Linearized original;          // the map as given
    Linearized reduced;           // after stripping the frobenius shift
    Linearized cofactor;          // C with reduced o C = C o reduced = X - X^{p^k}
    Linearized overlap;           // W = gcd of the cofactor and trace conventional forms
    Linearized kernel_map;        // K: the kernel inside GF(p^n) is K(GF(p^d))
    Linearized trace_quot;        // Q with trace(d,k) = Q o W
    Linearized kernel_bez;        // F
    Linearized trace_bez;         // G, where K o F + Q o G = X

    FieldElement trace_one;       // relative trace from GF(p^n) to GF(p^d) sends it to 1
    FieldElement schreier_one;    // x - x^{p^d} = 1, lives in GF(p^{p*d})
    FieldElement schreier_top;    // x - x^{p^n} = 1, lives in GF(p^{p*n})
    SubfieldBasis basis_n;
    SubfieldBasis basis_d;

    unsigned kernel_dim;              // deg gcd(l, x^n - 1)
    std::vector<FieldElement> kernel; // canonical echelon basis of ker within GF(p^n)

    // Precomputed matrices over the ambient power basis (hot path).
    GfpMatrix m_original, m_reduced, m_cofactor, m_overlap, m_kernel_map, m_trace_bez;
    GfpMatrix m_criterion;        // kernel_map o trace(d, n)
    GfpMatrix m_direct_criterion; // cofactor o trace(d, n)
    GfpMatrix m_direct_trace;     // trace(k, lcm(n, k))
    GfpMatrix oracle_matrix;      // n x n matrix of the original map over basis_n coordinates
};

// Throws invalid_k when a supplied k fails l | x^k - 1, order_too_large
// when the (computed or supplied) k is beyond the dense-arithmetic bound
// or the order search exceeds its factoring bound.
SolverContext build_context(const ProblemSpec& spec);

// Membership test for the right-hand side; throws not_in_subfield when a
// lies outside GF(p^n).
bool is_solvable(const SolverContext& ctx, const FieldElement& a);
// The equivalent test evaluated through the cofactor map; agrees with
// is_solvable whenever p does not divide k/d.
bool is_solvable_via_cofactor(const SolverContext& ctx, const FieldElement& a);

const std::vector<FieldElement>& kernel_basis(const SolverContext& ctx);

struct GeneralTrace {
    FieldElement y;         // the double trace sum
    FieldElement residual;  // a - reduced(overlap(y)); always lands in GF(p^d)
    FieldElement z;         // correction pulled back through the Bezout pair
};

// Trace-sum construction; throws not_solvable when the criterion fails.
// The solution is verified by direct evaluation before returning.
std::pair<FieldElement, GeneralTrace> particular_solution_general(const SolverContext& ctx,
                                                                  const FieldElement& a);

// Scaled one-shot formula; throws not_applicable when p divides k/d and
// not_solvable when the criterion fails.  Verified before returning.
FieldElement particular_solution_direct(const SolverContext& ctx, const FieldElement& a);

struct SolutionSet {
    bool solvable = false;
    std::optional<FieldElement> particular;
    std::vector<FieldElement> kernel;  // canonical echelon basis
    std::uint64_t count = 0;           // p^{kernel dimension}, or 0 when unsolvable
};

// Full solve with method dispatch.  Auto prefers Direct when applicable,
// falling back to General.  Every particular solution is re-verified.
SolutionSet solve(const SolverContext& ctx, const FieldElement& a, Method method = Method::Auto);

// Independent route: Gaussian elimination on the matrix of the original
// map over the canonical basis of GF(p^n).  Shares no formula machinery
// with the constructive path.
SolutionSet matrix_oracle_solve(const SolverContext& ctx, const FieldElement& a);

// All solutions (particular plus every kernel combination) in counting
// order of the kernel coordinates.
std::vector<FieldElement> enumerate_solutions(const SolutionSet& sol, std::uint64_t cap = (1ull << 16));

// ---- closed forms for the two classical families ----

enum class Family { Trace, Alternating };

struct ClosedFormReport {
    Family family = Family::Trace;
    std::uint64_t p = 2;
    unsigned step = 1, span = 1, n = 1;
    std::string branch;              // which table row applied
    Poly overlap_generic = Poly(2), overlap_table = Poly(2);
    Poly kernel_map_generic = Poly(2), kernel_map_table = Poly(2);
    bool overlap_match = false;      // after monic normalization
    bool kernel_map_match = false;   // after monic normalization
    bool raw_match = false;          // without normalization
    bool pass() const { return overlap_match && kernel_map_match; }
};

// Runs the generic machinery on the trace/alternating family map with the
// given (step, span) and compares the computed overlap and kernel maps
// against their closed-form case tables.
ClosedFormReport closed_form_check(Family family, std::uint64_t p, unsigned step, unsigned span, unsigned n);

}  // namespace linsolve
