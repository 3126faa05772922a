#include "linsolve/solver.hpp"

#include <algorithm>
#include <numeric>

#include "linsolve/errors.hpp"

namespace linsolve {

std::string method_name(Method m) {
    switch (m) {
        case Method::Auto: return "auto";
        case Method::General: return "general";
        case Method::Direct: return "direct";
        case Method::Matrix: return "matrix";
    }
    throw internal_invariant_violation("method_name: unknown method");
}

Method method_from_name(const std::string& s) {
    if (s == "auto") return Method::Auto;
    if (s == "general") return Method::General;
    if (s == "direct") return Method::Direct;
    if (s == "matrix") return Method::Matrix;
    throw parse_error("unknown method '" + s + "' (expected auto, general, direct or matrix)");
}

PreprocessResult preprocess(std::uint64_t p, const std::vector<gfp::Scalar>& alphas) {
    Linearized l(p, alphas);
    if (l.is_zero()) throw zero_polynomial("preprocess: the zero map is not allowed");
    const auto& a = l.alphas();
    unsigned s = 0;
    while (a[s] == 0) ++s;
    std::vector<gfp::Scalar> reduced(a.begin() + s, a.end());
    return PreprocessResult{s, Linearized(p, std::move(reduced))};
}

namespace {

FieldElement apply_map(const GfpMatrix& m, const FieldElement& x) {
    return x.field().from_coeffs(m.apply(x.coeffs()));
}

void require(bool ok, const char* what) {
    if (!ok) throw internal_invariant_violation(std::string("solver: ") + what);
}

// The right-hand side must live in the context's ambient field and in the
// GF(p^n) subfield the problem is posed over.
void require_rhs(const SolverContext& ctx, const FieldElement& a) {
    if (a.field() != ctx.field) throw field_mismatch("solver: right-hand side uses a different ambient field");
    if (!is_in_subfield(a, ctx.spec.n)) {
        throw not_in_subfield("solver: right-hand side is not in GF(p^" + std::to_string(ctx.spec.n) + ")");
    }
}

// Undo the preprocessing shift: original = frobenius^shift after reduced,
// so the reduced problem's right-hand side is frobenius^{-shift}(a).
FieldElement shifted_rhs(const SolverContext& ctx, const FieldElement& a) {
    if (ctx.shift == 0) return a;
    const unsigned n = ctx.spec.n;
    return frobenius(a, (n - ctx.shift % n) % n);
}

std::uint64_t power_checked(std::uint64_t p, std::size_t e) {
    unsigned __int128 c = 1;
    for (std::size_t i = 0; i < e; ++i) {
        c *= p;
        if (c > ~0ull) throw too_many("solver: solution count overflows 64 bits");
    }
    return static_cast<std::uint64_t>(c);
}

std::vector<FieldElement> canonical_elements(const Field& f, std::vector<std::vector<gfp::Scalar>> rows) {
    rows = echelon_span(f.p(), std::move(rows));
    std::vector<FieldElement> out;
    out.reserve(rows.size());
    for (auto& r : rows) out.push_back(f.from_coeffs(std::move(r)));
    return out;
}

Poly one_plus_xk(std::uint64_t p, std::uint64_t k) {
    std::vector<gfp::Scalar> c(static_cast<std::size_t>(k) + 1, 0);
    c[0] = 1;
    c[static_cast<std::size_t>(k)] = gfp::add(c[static_cast<std::size_t>(k)], 1, p);
    return Poly(p, std::move(c));
}

}  // namespace

SolverContext build_context(const ProblemSpec& spec) {
    const std::uint64_t p = spec.p;
    const unsigned n = spec.n;
    if (n == 0) throw invalid_tower("build_context: n must be positive");

    PreprocessResult pre = preprocess(p, spec.alphas);
    const Linearized original(p, spec.alphas);
    const Linearized& reduced = pre.reduced;
    const Poly l = to_conventional(reduced);

    if (static_cast<unsigned __int128>(p) * n > kMaxAmbientDegree) {
        throw invalid_tower("build_context: ambient degree p*n exceeds the supported bound " +
                            std::to_string(kMaxAmbientDegree));
    }
    const unsigned M = static_cast<unsigned>(p) * n;

    std::uint64_t k = 0;
    if (spec.k) {
        k = *spec.k;
        if (k == 0) throw invalid_k("build_context: k must be positive");
        if (k > kMaxSupportedK) {
            throw order_too_large("build_context: supplied k exceeds the dense-arithmetic bound 2^22");
        }
        if (l.degree() > 0 && !mod_pow(Poly::x(p), k, l).is_one()) {
            throw invalid_k("build_context: the map's conventional form does not divide x^" +
                            std::to_string(k) + " - 1");
        }
    } else {
        k = polynomial_order(l);
        if (k > kMaxSupportedK) {
            throw order_too_large("build_context: the minimal k = " + std::to_string(k) +
                                  " exceeds the dense-arithmetic bound 2^22; no smaller k exists");
        }
    }

    const unsigned d = static_cast<unsigned>(std::gcd(static_cast<std::uint64_t>(n), k));
    const std::uint64_t lcm_nk = n / d * k;
    const bool direct_ok = ((k / d) % p) != 0;

    Field field = Field::build(p, M);

    // Conventional-form machinery.  The cofactor has degree about k; all
    // quotients below it are small (at most d + deg l), so every product
    // here costs O(k * small).
    const Poly whole = Poly::one_minus_xk(p, k);
    const Poly lp = exact_div(whole, l);
    const Poly t_dk = to_conventional(trace_poly(p, d, static_cast<unsigned>(k)));
    const Poly w = gcd(lp, t_dk);
    const Poly u = exact_div(lp, w);
    const Poly v = exact_div(t_dk, w);
    const XgcdResult bez = xgcd(u, v);
    require(bez.g.is_one(), "build_context: kernel and trace quotients are not coprime");
    const Poly& f = bez.s;
    const Poly& g = bez.t;

    require(l * lp == whole, "build_context: cofactor identity failed");
    require(u * w == lp, "build_context: kernel-map factorization failed");
    require(v * w == t_dk, "build_context: trace factorization failed");
    require(u * f + v * g == Poly::one(p), "build_context: bezout identity failed");
    require(u * t_dk == lp * v, "build_context: cross identity failed");
    require(u * l == Poly::one_minus_xk(p, d) * v, "build_context: kernel-trace exchange failed");

    const Linearized cofactor = from_conventional(lp);
    const Linearized overlap = from_conventional(w);
    const Linearized kernel_map = from_conventional(u);
    const Linearized trace_quot = from_conventional(v);
    const Linearized kernel_bez = from_conventional(f);
    const Linearized trace_bez = from_conventional(g);

    const FieldElement trace_one = solve_trace_one(field, d, n);
    const FieldElement schreier_one = solve_artin_schreier(field, d);
    const FieldElement schreier_top = solve_artin_schreier(field, n);
    SubfieldBasis basis_n = subfield_basis(field, n);
    SubfieldBasis basis_d = subfield_basis(field, d);

    const unsigned kernel_dim = static_cast<unsigned>(gcd(l, Poly::one_minus_xk(p, n)).degree());

    // Hot-path matrices over the ambient power basis.
    const GfpMatrix m_original = to_matrix(original, field);
    const GfpMatrix m_reduced = to_matrix(reduced, field);
    const GfpMatrix m_cofactor = to_matrix(cofactor, field);
    const GfpMatrix m_overlap = to_matrix(overlap, field);
    const GfpMatrix m_kernel_map = to_matrix(kernel_map, field);
    const GfpMatrix m_trace_bez = to_matrix(trace_bez, field);
    const Linearized tr_dn = trace_poly(p, d, n);
    const GfpMatrix m_criterion = to_matrix(compose(kernel_map, tr_dn), field);
    const GfpMatrix m_direct_criterion = to_matrix(compose(fold_exponents(cofactor, M), tr_dn), field);

    // trace(k, lcm(n,k)) folded directly: n/d terms at indices k*i mod M.
    std::vector<gfp::Scalar> dt(M, 0);
    {
        const std::uint64_t step = k % M;
        std::uint64_t pos = 0;
        for (std::uint64_t i = 0; i < lcm_nk / k; ++i) {
            dt[static_cast<std::size_t>(pos)] = gfp::add(dt[static_cast<std::size_t>(pos)], 1, p);
            pos = (pos + step) % M;
        }
    }
    const GfpMatrix m_direct_trace = to_matrix(Linearized(p, std::move(dt)), field);

    // Independent-oracle matrix of the original map over GF(p^n).
    GfpMatrix oracle(p, n, n);
    for (unsigned j = 0; j < n; ++j) {
        FieldElement img = evaluate(original, basis_n.vectors[j]);
        auto coords = basis_coords(basis_n, img);
        require(coords.has_value(), "build_context: the map does not stabilize GF(p^n)");
        for (unsigned i = 0; i < n; ++i) oracle.at(i, j) = (*coords)[i];
    }

    // Kernel inside GF(p^n): images of the degree-d subfield under the
    // kernel map, canonicalized to an echelon basis.
    std::vector<std::vector<gfp::Scalar>> images;
    images.reserve(basis_d.vectors.size());
    for (const FieldElement& b : basis_d.vectors) {
        images.push_back(apply_map(m_kernel_map, b).coeffs());
    }
    std::vector<FieldElement> kernel = canonical_elements(field, std::move(images));
    require(kernel.size() == kernel_dim, "build_context: kernel dimension mismatch");
    for (const FieldElement& kv : kernel) {
        require(is_in_subfield(kv, n), "build_context: kernel vector left GF(p^n)");
        require(evaluate(original, kv).is_zero(), "build_context: kernel vector not annihilated");
    }

    return SolverContext{
        .spec = spec,
        .shift = pre.shift,
        .k = k,
        .d = d,
        .lcm_nk = lcm_nk,
        .ambient_degree = M,
        .direct_applicable = direct_ok,
        .field = field,
        .original = original,
        .reduced = reduced,
        .cofactor = cofactor,
        .overlap = overlap,
        .kernel_map = kernel_map,
        .trace_quot = trace_quot,
        .kernel_bez = kernel_bez,
        .trace_bez = trace_bez,
        .trace_one = trace_one,
        .schreier_one = schreier_one,
        .schreier_top = schreier_top,
        .basis_n = std::move(basis_n),
        .basis_d = std::move(basis_d),
        .kernel_dim = kernel_dim,
        .kernel = std::move(kernel),
        .m_original = m_original,
        .m_reduced = m_reduced,
        .m_cofactor = m_cofactor,
        .m_overlap = m_overlap,
        .m_kernel_map = m_kernel_map,
        .m_trace_bez = m_trace_bez,
        .m_criterion = m_criterion,
        .m_direct_criterion = m_direct_criterion,
        .m_direct_trace = m_direct_trace,
        .oracle_matrix = oracle,
    };
}

bool is_solvable(const SolverContext& ctx, const FieldElement& a) {
    require_rhs(ctx, a);
    return apply_map(ctx.m_criterion, shifted_rhs(ctx, a)).is_zero();
}

bool is_solvable_via_cofactor(const SolverContext& ctx, const FieldElement& a) {
    require_rhs(ctx, a);
    return apply_map(ctx.m_direct_criterion, shifted_rhs(ctx, a)).is_zero();
}

const std::vector<FieldElement>& kernel_basis(const SolverContext& ctx) { return ctx.kernel; }

std::pair<FieldElement, GeneralTrace> particular_solution_general(const SolverContext& ctx,
                                                                  const FieldElement& a) {
    require_rhs(ctx, a);
    const FieldElement a1 = shifted_rhs(ctx, a);
    if (!apply_map(ctx.m_criterion, a1).is_zero()) {
        throw not_solvable("no solution in GF(p^n): the trace criterion is nonzero");
    }

    const unsigned n = ctx.spec.n;
    const unsigned m = n / ctx.d;
    FieldElement y = ctx.field.zero();
    if (m > 1) {
        // y = sum over 0 <= i < j < m of sigma^j(trace_one) * sigma^i(b)
        // where b is the kernel-map image of the right-hand side and sigma
        // raises to the p^k-th power; computed with running prefix sums.
        const FieldElement b = apply_map(ctx.m_kernel_map, a1);
        const std::uint64_t kk = ctx.k % n;
        FieldElement prefix = ctx.field.zero();
        FieldElement bcur = b;
        FieldElement dcur = ctx.trace_one;
        for (unsigned j = 1; j < m; ++j) {
            prefix = prefix + bcur;
            bcur = frobenius(bcur, kk);
            dcur = frobenius(dcur, kk);
            y = y + dcur * prefix;
        }
    }

    const FieldElement wy = apply_map(ctx.m_overlap, y);
    const FieldElement c = a1 - apply_map(ctx.m_reduced, wy);
    require(is_in_subfield(c, ctx.d), "general: residual left GF(p^d)");
    require(apply_map(ctx.m_kernel_map, c).is_zero(), "general: residual not killed by the kernel map");

    const FieldElement z = apply_map(ctx.m_kernel_map, apply_map(ctx.m_trace_bez, ctx.schreier_one * c));
    require(is_in_subfield(z, ctx.d), "general: correction left GF(p^d)");

    const FieldElement x0 = wy + z;
    require(is_in_subfield(x0, n), "general: solution left GF(p^n)");
    require(evaluate(ctx.original, x0) == a, "general: solution does not evaluate back");
    return {x0, GeneralTrace{y, c, z}};
}

FieldElement particular_solution_direct(const SolverContext& ctx, const FieldElement& a) {
    require_rhs(ctx, a);
    if (!ctx.direct_applicable) {
        throw not_applicable("direct method unavailable: p divides k/d = " + std::to_string(ctx.k / ctx.d));
    }
    const FieldElement a1 = shifted_rhs(ctx, a);
    if (!apply_map(ctx.m_direct_criterion, a1).is_zero()) {
        throw not_solvable("no solution in GF(p^n): the cofactor criterion is nonzero");
    }
    const gfp::Scalar scale = gfp::inv((ctx.k / ctx.d) % ctx.spec.p, ctx.spec.p);
    const FieldElement x0 =
        apply_map(ctx.m_cofactor, apply_map(ctx.m_direct_trace, ctx.schreier_top * a1)).scaled(scale);
    require(is_in_subfield(x0, ctx.spec.n), "direct: solution left GF(p^n)");
    require(evaluate(ctx.original, x0) == a, "direct: solution does not evaluate back");
    return x0;
}

SolutionSet solve(const SolverContext& ctx, const FieldElement& a, Method method) {
    require_rhs(ctx, a);
    if (method == Method::Auto) method = ctx.direct_applicable ? Method::Direct : Method::General;
    if (method == Method::Matrix) return matrix_oracle_solve(ctx, a);

    const bool ok = is_solvable(ctx, a);
    const bool ok_cof = is_solvable_via_cofactor(ctx, a);
    // The cofactor criterion is necessary in general and equivalent when
    // p does not divide k/d.
    require(!ok || ok_cof, "solve: trace criterion passed but cofactor criterion failed");
    if (ctx.direct_applicable) require(ok == ok_cof, "solve: the two criteria disagree");

    if (!ok) return SolutionSet{false, std::nullopt, ctx.kernel, 0};

    const FieldElement x0 = method == Method::Direct ? particular_solution_direct(ctx, a)
                                                     : particular_solution_general(ctx, a).first;
    require(apply_map(ctx.m_original, x0) == a, "solve: verification failed");
    return SolutionSet{true, x0, ctx.kernel, power_checked(ctx.spec.p, ctx.kernel.size())};
}

SolutionSet matrix_oracle_solve(const SolverContext& ctx, const FieldElement& a) {
    require_rhs(ctx, a);
    auto coords = basis_coords(ctx.basis_n, a);
    require(coords.has_value(), "oracle: right-hand side has no subfield coordinates");

    GfpSolveResult res = solve(ctx.oracle_matrix, *coords);

    std::vector<std::vector<gfp::Scalar>> rows;
    rows.reserve(res.kernel.size());
    for (const auto& kv : res.kernel) rows.push_back(from_basis_coords(ctx.basis_n, kv).coeffs());
    SolutionSet out;
    out.kernel = canonical_elements(ctx.field, std::move(rows));
    out.solvable = res.consistent;
    if (res.consistent) {
        FieldElement x0 = from_basis_coords(ctx.basis_n, res.particular);
        require(evaluate(ctx.original, x0) == a, "oracle: solution does not evaluate back");
        out.particular = std::move(x0);
        out.count = power_checked(ctx.spec.p, out.kernel.size());
    }
    return out;
}

std::vector<FieldElement> enumerate_solutions(const SolutionSet& sol, std::uint64_t cap) {
    if (!sol.solvable || !sol.particular) return {};
    const std::uint64_t p = sol.particular->field().p();
    unsigned __int128 total = 1;
    for (std::size_t i = 0; i < sol.kernel.size(); ++i) {
        total *= p;
        if (total > cap) throw too_many("enumerate_solutions: more solutions than the cap");
    }
    std::vector<FieldElement> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<gfp::Scalar> digits(sol.kernel.size(), 0);
    for (;;) {
        FieldElement x = *sol.particular;
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (digits[i]) x = x + sol.kernel[i].scaled(digits[i]);
        }
        out.push_back(std::move(x));
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == p) {
            digits[i] = 0;
            ++i;
        }
        if (i == digits.size()) break;
    }
    return out;
}

ClosedFormReport closed_form_check(Family family, std::uint64_t p, unsigned step, unsigned span, unsigned n) {
    if (step == 0 || span % step != 0 || span == 0) {
        throw not_a_divisor("closed_form_check: step must divide a positive span");
    }
    if (n == 0) throw invalid_tower("closed_form_check: n must be positive");
    // Over GF(2) the alternating family coincides with the trace family,
    // so its table is the trace table.
    const Family table_family = (p == 2) ? Family::Trace : family;

    const Linearized map =
        family == Family::Trace ? trace_poly(p, step, span) : alternating_poly(p, step, span);
    const bool odd_quotient = (span / step) % 2 == 1;
    const std::uint64_t big_k =
        (table_family == Family::Alternating && odd_quotient) ? 2ull * span : span;

    ProblemSpec ps;
    ps.p = p;
    ps.alphas = map.alphas();
    ps.n = n;
    ps.k = big_k;
    SolverContext ctx = build_context(ps);

    const unsigned d = std::gcd(n, span);
    const unsigned e = std::gcd(n, step);
    const unsigned lcm_dl = d / std::gcd(d, step) * step;
    const bool p_divides = (span / lcm_dl) % p == 0;

    ClosedFormReport rep;
    rep.family = family;
    rep.p = p;
    rep.step = step;
    rep.span = span;
    rep.n = n;
    rep.overlap_generic = to_conventional(ctx.overlap);
    rep.kernel_map_generic = to_conventional(ctx.kernel_map);

    if (table_family == Family::Trace) {
        if (p_divides) {
            rep.branch = "trace family, p divides span/lcm(d,step)";
            rep.overlap_table = Poly::one_minus_xk(p, step);
            rep.kernel_map_table = Poly::one(p);
        } else {
            rep.branch = "trace family, p does not divide span/lcm(d,step)";
            rep.overlap_table = exact_div(Poly::one_minus_xk(p, step), Poly::one_minus_xk(p, e));
            rep.kernel_map_table = Poly::one_minus_xk(p, e);
        }
    } else if (!odd_quotient) {
        const bool collapse = ((d / e) % 2 == 1) || p_divides;
        if (collapse) {
            rep.branch = "alternating family, even quotient, collapsing branch";
            rep.overlap_table = one_plus_xk(p, step);
            rep.kernel_map_table = Poly::one(p);
        } else {
            rep.branch = "alternating family, even quotient, split branch";
            rep.overlap_table = exact_div(one_plus_xk(p, step), one_plus_xk(p, e));
            rep.kernel_map_table = one_plus_xk(p, e);
        }
    } else {
        const Poly num = one_plus_xk(p, step) * Poly::one_minus_xk(p, span);
        const bool collapse = ((n / d) % 2 == 1) || p_divides;
        if (collapse) {
            rep.branch = "alternating family, odd quotient, collapsing branch";
            rep.overlap_table = exact_div(num, Poly::one_minus_xk(p, d));
            rep.kernel_map_table = Poly::one_minus_xk(p, d);
        } else {
            rep.branch = "alternating family, odd quotient, split branch";
            rep.overlap_table = exact_div(num, one_plus_xk(p, e) * Poly::one_minus_xk(p, d));
            rep.kernel_map_table = one_plus_xk(p, e) * Poly::one_minus_xk(p, d);
        }
    }

    rep.overlap_match = rep.overlap_generic.monic() == rep.overlap_table.monic();
    rep.kernel_map_match = rep.kernel_map_generic.monic() == rep.kernel_map_table.monic();
    rep.raw_match =
        rep.overlap_generic == rep.overlap_table && rep.kernel_map_generic == rep.kernel_map_table;
    return rep;
}

}  // namespace linsolve
