#include "linsolve/diagnostics.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <random>

#include "linsolve/errors.hpp"

namespace linsolve {

namespace {

std::vector<gfp::Scalar> random_alphas(std::mt19937_64& rng, std::uint64_t p, unsigned deg,
                                       bool nonzero_head) {
    std::vector<gfp::Scalar> a(deg + 1);
    for (auto& c : a) c = static_cast<gfp::Scalar>(rng() % p);
    if (nonzero_head && a[0] == 0) a[0] = 1;
    if (a[deg] == 0) a[deg] = 1;
    return a;
}

FieldElement random_subfield_element(std::mt19937_64& rng, const SubfieldBasis& basis,
                                     const Field& f) {
    FieldElement x = f.zero();
    for (const FieldElement& b : basis.vectors) {
        const gfp::Scalar c = static_cast<gfp::Scalar>(rng() % f.p());
        if (c) x = x + b.scaled(c);
    }
    return x;
}

bool same_elements(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] == b[i])) return false;
    }
    return true;
}

bool check_identity_suites() {
    struct Tuple {
        std::uint64_t p;
        unsigned inner, mid, outer, n;
    };
    const Tuple tuples[] = {
        {2, 1, 2, 4, 6}, {2, 1, 3, 6, 4}, {2, 2, 4, 8, 6},
        {3, 1, 2, 4, 6}, {3, 1, 3, 9, 4}, {5, 1, 2, 4, 4},
    };
    for (const auto& t : tuples) {
        if (!family_identity_suite(t.p, t.inner, t.mid, t.outer, t.n).all_pass()) return false;
    }
    return true;
}

// ker(gcd) = intersection of kernels, scanned exhaustively in a small field.
bool check_kernel_intersection() {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    struct Case {
        std::uint64_t p;
        unsigned m;
    };
    const Case cases[] = {{2, 6}, {2, 8}, {3, 4}, {5, 3}};
    for (const auto& cs : cases) {
        Field f = Field::build(cs.p, cs.m);
        for (int rep = 0; rep < 4; ++rep) {
            const Linearized l1(cs.p, random_alphas(rng, cs.p, 2 + rep % 2, false));
            const Linearized l2(cs.p, random_alphas(rng, cs.p, 1 + rep % 3, false));
            const Poly g = gcd(to_conventional(l1), to_conventional(l2));
            const Linearized l0 = from_conventional(g);
            std::uint64_t size = 1;
            for (unsigned i = 0; i < cs.m; ++i) size *= cs.p;
            for (std::uint64_t idx = 0; idx < size; ++idx) {
                std::vector<gfp::Scalar> dig(cs.m, 0);
                std::uint64_t v = idx;
                for (unsigned i = 0; i < cs.m; ++i) {
                    dig[i] = static_cast<gfp::Scalar>(v % cs.p);
                    v /= cs.p;
                }
                const FieldElement x = f.from_coeffs(dig);
                const bool in0 = evaluate(l0, x).is_zero();
                const bool in12 = evaluate(l1, x).is_zero() && evaluate(l2, x).is_zero();
                if (in0 != in12) return false;
            }
        }
    }
    return true;
}

// The kernel-trace exchange evaluated functionally on sampled elements.
bool check_kernel_trace_exchange() {
    std::mt19937_64 rng(0x2545f4914f6cdd1dull);
    const std::uint64_t ps[] = {2, 3, 5};
    for (std::uint64_t p : ps) {
        for (unsigned n = 2; n <= 4; ++n) {
            for (int rep = 0; rep < 3; ++rep) {
                ProblemSpec spec;
                spec.p = p;
                spec.alphas = random_alphas(rng, p, 2 + rep, true);
                spec.n = n;
                SolverContext ctx = build_context(spec);
                const Linearized lhs = compose(ctx.kernel_map, ctx.reduced);
                const Linearized rhs =
                    compose(alternating_poly(p, ctx.d, 2 * ctx.d), ctx.trace_quot);
                for (int s = 0; s < 16; ++s) {
                    const FieldElement x = random_subfield_element(rng, ctx.basis_n, ctx.field);
                    if (!(evaluate(lhs, x) == evaluate(rhs, x))) return false;
                }
            }
        }
    }
    return true;
}

// Exhaustive mini-grid: solvable count times kernel size = field size, the
// two constructive methods and the Gaussian oracle agree everywhere.
bool check_mini_grid() {
    std::mt19937_64 rng(0xda942042e4dd58b5ull);
    struct Case {
        std::uint64_t p;
        unsigned n;
    };
    const Case cases[] = {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {3, 3}};
    for (const auto& cs : cases) {
        for (int rep = 0; rep < 5; ++rep) {
            ProblemSpec spec;
            spec.p = cs.p;
            spec.alphas = random_alphas(rng, cs.p, 1 + rep % 3, rep < 4);
            spec.n = cs.n;
            SolverContext ctx = build_context(spec);
            std::uint64_t field_size = 1;
            for (unsigned i = 0; i < cs.n; ++i) field_size *= cs.p;
            std::uint64_t solvable = 0;
            FieldElement a = ctx.field.zero();
            for (std::uint64_t idx = 0; idx < field_size; ++idx) {
                SolutionSet oracle = matrix_oracle_solve(ctx, a);
                SolutionSet formula = solve(ctx, a, Method::General);
                if (oracle.solvable != formula.solvable) return false;
                if (!same_elements(oracle.kernel, formula.kernel)) return false;
                if (formula.solvable) {
                    ++solvable;
                    if (ctx.direct_applicable) {
                        const FieldElement x1 = particular_solution_direct(ctx, a);
                        if (!(evaluate(ctx.original, x1) == a)) return false;
                    }
                }
                if (idx + 1 < field_size) {
                    a = from_basis_coords(ctx.basis_n, [&] {
                        std::vector<gfp::Scalar> dig(cs.n, 0);
                        std::uint64_t v = idx + 1;
                        for (unsigned i = 0; i < cs.n; ++i) {
                            dig[i] = static_cast<gfp::Scalar>(v % cs.p);
                            v /= cs.p;
                        }
                        return dig;
                    }());
                }
            }
            std::uint64_t kernel_size = 1;
            for (unsigned i = 0; i < ctx.kernel_dim; ++i) kernel_size *= cs.p;
            if (solvable * kernel_size != field_size) return false;
        }
    }
    return true;
}

bool check_closed_forms() {
    struct Tuple {
        Family fam;
        std::uint64_t p;
        unsigned step, span, n;
    };
    const Tuple tuples[] = {
        {Family::Trace, 2, 1, 4, 4},       {Family::Trace, 3, 2, 6, 4},
        {Family::Trace, 2, 2, 6, 9},       {Family::Alternating, 3, 1, 2, 3},
        {Family::Alternating, 3, 1, 3, 4}, {Family::Alternating, 5, 2, 4, 6},
    };
    for (const auto& t : tuples) {
        if (!closed_form_check(t.fam, t.p, t.step, t.span, t.n).pass()) return false;
    }
    return true;
}

// The worked GF(2) example: X + X^2 + X^8 over GF(8) has a unique solution
// for every right-hand side.
bool check_unique_solution_example() {
    ProblemSpec spec;
    spec.p = 2;
    spec.alphas = {1, 1, 0, 1};
    spec.n = 3;
    SolverContext ctx = build_context(spec);
    if (ctx.k != 7 || ctx.kernel_dim != 0) return false;
    FieldElement a = ctx.field.zero();
    for (std::uint64_t idx = 0; idx < 8; ++idx) {
        SolutionSet s = solve(ctx, a);
        if (!s.solvable || s.count != 1) return false;
        std::vector<gfp::Scalar> dig(3, 0);
        std::uint64_t v = idx + 1;
        for (unsigned i = 0; i < 3; ++i) {
            dig[i] = static_cast<gfp::Scalar>(v % 2);
            v /= 2;
        }
        if (idx + 1 < 8) a = from_basis_coords(ctx.basis_n, dig);
    }
    return true;
}

}  // namespace

bool run_selfcheck(std::ostream& out) {
    struct Group {
        const char* name;
        bool (*fn)();
    };
    const Group groups[] = {
        {"composition identities of the trace/alternating families", check_identity_suites},
        {"kernel of a gcd equals the intersection of kernels", check_kernel_intersection},
        {"kernel-trace exchange identity on sampled points", check_kernel_trace_exchange},
        {"exhaustive mini-grid against the Gaussian oracle", check_mini_grid},
        {"closed-form case tables for the classical families", check_closed_forms},
        {"unique-solution worked example over GF(8)", check_unique_solution_example},
    };
    bool all = true;
    for (const auto& g : groups) {
        bool ok = false;
        try {
            ok = g.fn();
        } catch (const error&) {
            ok = false;
        }
        out << (ok ? "[ok]   " : "[FAIL] ") << g.name << "\n";
        all = all && ok;
    }
    out << (all ? "selfcheck passed" : "selfcheck FAILED") << "\n";
    return all;
}

std::vector<BenchRow> run_bench(std::uint64_t p, const std::vector<unsigned>& ns, unsigned deg,
                                unsigned trials, std::uint64_t seed) {
    std::vector<BenchRow> rows;
    if (trials == 0) return rows;
    for (unsigned n : ns) {
        std::mt19937_64 rng(seed ^ (0x100000001b3ull * n) ^ deg);
        // Resample until the direct method applies so every method gets a row.
        ProblemSpec spec;
        spec.p = p;
        spec.n = n;
        std::optional<SolverContext> ctx;
        for (int attempt = 0; attempt < 64 && !ctx; ++attempt) {
            spec.alphas = random_alphas(rng, p, deg, true);
            try {
                SolverContext c = build_context(spec);
                if (c.direct_applicable || attempt == 63) ctx.emplace(std::move(c));
            } catch (const order_too_large&) {
            }
        }
        if (!ctx) throw internal_invariant_violation("run_bench: could not build a context");

        std::vector<FieldElement> rhs;
        rhs.reserve(trials);
        for (unsigned t = 0; t < trials; ++t) {
            const FieldElement x = random_subfield_element(rng, ctx->basis_n, ctx->field);
            rhs.push_back(evaluate(ctx->original, x));
        }

        const Method methods[] = {Method::General, Method::Direct, Method::Matrix};
        for (Method m : methods) {
            if (m == Method::Direct && !ctx->direct_applicable) continue;
            std::vector<std::uint64_t> samples;
            samples.reserve(trials);
            for (const FieldElement& a : rhs) {
                const auto t0 = std::chrono::steady_clock::now();
                SolutionSet s = solve(*ctx, a, m);
                const auto t1 = std::chrono::steady_clock::now();
                if (!s.solvable) throw internal_invariant_violation("run_bench: constructed rhs unsolvable");
                samples.push_back(static_cast<std::uint64_t>(
                    std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
            }
            std::sort(samples.begin(), samples.end());
            rows.push_back(BenchRow{method_name(m), p, n, deg, samples[samples.size() / 2]});
        }
    }
    return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "method,p,n,deg,median_ns\n";
    for (const auto& r : rows) {
        out << r.method << ',' << r.p << ',' << r.n << ',' << r.deg << ',' << r.median_ns << "\n";
    }
}

}  // namespace linsolve
