#include "linsolve/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"
#include "linsolve/diagnostics.hpp"
#include "linsolve/errors.hpp"
#include "linsolve/solver.hpp"

namespace linsolve {

namespace {

using nlohmann::ordered_json;

struct Options {
    std::uint64_t p = 2;
    std::vector<std::uint64_t> coeffs;
    unsigned n = 1;
    std::optional<std::uint64_t> k;
    std::string method = "auto";
    std::string format = "json";
    bool show_ambient = false;
    std::vector<std::uint64_t> a;
    bool random_a = false;
    std::optional<std::uint64_t> seed;
    unsigned trials = 16;
    std::vector<unsigned> bench_ns = {8, 16, 24};
    unsigned bench_deg = 4;
};

std::uint64_t effective_seed(const Options& opt) {
    if (opt.seed) return *opt.seed;
    if (const char* env = std::getenv("LINSOLVE_SEED")) {
        const std::string s(env);
        std::size_t used = 0;
        std::uint64_t v = 0;
        try {
            v = std::stoull(s, &used);
        } catch (const std::exception&) {
            throw parse_error("LINSOLVE_SEED is not a number: '" + s + "'");
        }
        if (used != s.size()) throw parse_error("LINSOLVE_SEED is not a number: '" + s + "'");
        return v;
    }
    return 0;
}

std::vector<gfp::Scalar> checked_digits(const std::vector<std::uint64_t>& in, std::uint64_t p,
                                        unsigned n, const char* what) {
    if (in.size() != n) {
        throw parse_error(std::string(what) + ": expected " + std::to_string(n) + " digits, got " +
                          std::to_string(in.size()));
    }
    std::vector<gfp::Scalar> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (in[i] >= p) throw parse_error(std::string(what) + ": digit " + std::to_string(in[i]) + " is not below p");
        out[i] = in[i];
    }
    return out;
}

std::vector<gfp::Scalar> checked_alphas(const Options& opt) {
    if (opt.coeffs.empty()) throw parse_error("--coeffs: at least one coefficient is required");
    std::vector<gfp::Scalar> out(opt.coeffs.size());
    for (std::size_t i = 0; i < opt.coeffs.size(); ++i) {
        if (opt.coeffs[i] >= opt.p) {
            throw parse_error("--coeffs: digit " + std::to_string(opt.coeffs[i]) + " is not below p");
        }
        out[i] = static_cast<gfp::Scalar>(opt.coeffs[i]);
    }
    return out;
}

std::string join_digits(const std::vector<gfp::Scalar>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

// Elements cross the CLI boundary as coordinates over the canonical
// echelon basis of GF(p^n) inside the ambient field.
std::vector<std::uint64_t> subfield_digits(const SolverContext& ctx, const FieldElement& x) {
    auto coords = basis_coords(ctx.basis_n, x);
    if (!coords) throw internal_invariant_violation("cli: element has no subfield coordinates");
    return std::vector<std::uint64_t>(coords->begin(), coords->end());
}

ordered_json element_json(const SolverContext& ctx, const FieldElement& x, bool show_ambient) {
    if (!show_ambient) return ordered_json(subfield_digits(ctx, x));
    ordered_json j;
    j["coords"] = subfield_digits(ctx, x);
    j["ambient"] = std::vector<std::uint64_t>(x.coeffs().begin(), x.coeffs().end());
    return j;
}

ordered_json ambient_json(const SolverContext& ctx) {
    ordered_json j;
    j["degree"] = ctx.ambient_degree;
    j["modulus"] = ctx.field.modulus().to_digits();
    return j;
}

ordered_json map_json(const Linearized& l) {
    ordered_json j;
    j["alphas"] = l.to_digits();
    j["pretty"] = l.to_pretty();
    return j;
}

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

FieldElement parse_rhs(const SolverContext& ctx, const Options& opt) {
    if (opt.random_a == !opt.a.empty()) {
        throw parse_error("supply the right-hand side with exactly one of --a or --random");
    }
    std::vector<gfp::Scalar> digits;
    if (opt.random_a) {
        std::mt19937_64 rng(effective_seed(opt));
        digits.resize(opt.n);
        for (auto& d : digits) d = static_cast<gfp::Scalar>(rng() % opt.p);
    } else {
        digits = checked_digits(opt.a, opt.p, opt.n, "--a");
    }
    return from_basis_coords(ctx.basis_n, digits);
}

SolverContext context_from(const Options& opt) {
    ProblemSpec spec;
    spec.p = opt.p;
    spec.alphas = checked_alphas(opt);
    spec.n = opt.n;
    spec.k = opt.k;
    spec.method = method_from_name(opt.method);
    return build_context(spec);
}

int solve_cmd(const Options& opt, std::ostream& out) {
    SolverContext ctx = context_from(opt);
    const FieldElement a = parse_rhs(ctx, opt);
    const Method req = method_from_name(opt.method);
    const Method used =
        req == Method::Auto ? (ctx.direct_applicable ? Method::Direct : Method::General) : req;
    const SolutionSet sol = solve(ctx, a, req);

    if (opt.format == "json") {
        ordered_json j;
        j["command"] = "solve";
        j["p"] = opt.p;
        j["n"] = opt.n;
        j["k"] = ctx.k;
        j["d"] = ctx.d;
        j["method_used"] = method_name(used);
        j["solvable"] = sol.solvable;
        j["a"] = element_json(ctx, a, opt.show_ambient);
        j["particular_solution"] =
            sol.particular ? element_json(ctx, *sol.particular, opt.show_ambient) : ordered_json(nullptr);
        ordered_json kb = ordered_json::array();
        for (const FieldElement& kv : sol.kernel) kb.push_back(element_json(ctx, kv, opt.show_ambient));
        j["kernel_basis"] = kb;
        j["count"] = sol.count;
        j["verified"] = true;
        j["ambient"] = ambient_json(ctx);
        emit(out, j);
    } else {
        out << "solvable: " << (sol.solvable ? "true" : "false") << "\n";
        out << "method: " << method_name(used) << "\n";
        out << "k: " << ctx.k << "\nd: " << ctx.d << "\n";
        auto coords = basis_coords(ctx.basis_n, a);
        out << "a: " << join_digits(*coords) << "\n";
        if (sol.particular) {
            out << "particular_solution: " << join_digits(*basis_coords(ctx.basis_n, *sol.particular))
                << "\n";
        } else {
            out << "particular_solution: none\n";
        }
        for (std::size_t i = 0; i < sol.kernel.size(); ++i) {
            out << "kernel[" << i << "]: " << join_digits(*basis_coords(ctx.basis_n, sol.kernel[i]))
                << "\n";
        }
        out << "count: " << sol.count << "\n";
        out << "verified: true\n";
        out << "ambient_degree: " << ctx.ambient_degree << "\n";
        out << "ambient_modulus: " << ctx.field.modulus().to_digits() << "\n";
        if (opt.show_ambient && sol.particular) {
            out << "particular_solution_ambient: " << sol.particular->to_digits() << "\n";
        }
    }
    return sol.solvable ? 0 : 3;
}

int kernel_cmd(const Options& opt, std::ostream& out) {
    SolverContext ctx = context_from(opt);
    std::uint64_t count = 1;
    for (unsigned i = 0; i < ctx.kernel_dim; ++i) count *= opt.p;
    if (opt.format == "json") {
        ordered_json j;
        j["command"] = "kernel";
        j["p"] = opt.p;
        j["n"] = opt.n;
        j["k"] = ctx.k;
        j["d"] = ctx.d;
        j["dimension"] = ctx.kernel_dim;
        ordered_json kb = ordered_json::array();
        for (const FieldElement& kv : ctx.kernel) kb.push_back(element_json(ctx, kv, opt.show_ambient));
        j["kernel_basis"] = kb;
        j["count"] = count;
        j["ambient"] = ambient_json(ctx);
        emit(out, j);
    } else {
        out << "k: " << ctx.k << "\nd: " << ctx.d << "\n";
        out << "dimension: " << ctx.kernel_dim << "\n";
        for (std::size_t i = 0; i < ctx.kernel.size(); ++i) {
            out << "kernel[" << i << "]: " << join_digits(*basis_coords(ctx.basis_n, ctx.kernel[i]))
                << "\n";
        }
        out << "count: " << count << "\n";
        out << "ambient_degree: " << ctx.ambient_degree << "\n";
        out << "ambient_modulus: " << ctx.field.modulus().to_digits() << "\n";
    }
    return 0;
}

int order_cmd(const Options& opt, std::ostream& out) {
    PreprocessResult pre = preprocess(opt.p, checked_alphas(opt));
    const Poly l = to_conventional(pre.reduced);
    const std::uint64_t order = polynomial_order(l);

    bool divides = true;
    bool minimal = true;
    if (l.degree() > 0) {
        divides = mod_pow(Poly::x(opt.p), order, l).is_one();
        std::uint64_t rest = order;
        for (std::uint64_t q = 2; q * q <= rest; ++q) {
            if (rest % q) continue;
            while (rest % q == 0) rest /= q;
            if (mod_pow(Poly::x(opt.p), order / q, l).is_one()) minimal = false;
        }
        if (rest > 1 && mod_pow(Poly::x(opt.p), order / rest, l).is_one()) minimal = false;
    }

    if (opt.format == "json") {
        ordered_json j;
        j["command"] = "order";
        j["p"] = opt.p;
        j["coeffs"] = Linearized(opt.p, checked_alphas(opt)).to_digits();
        j["shift"] = pre.shift;
        j["order"] = order;
        j["certificate"]["divides"] = divides;
        j["certificate"]["minimal"] = minimal;
        emit(out, j);
    } else {
        out << "order: " << order << "\n";
        out << "shift: " << pre.shift << "\n";
        out << "certificate: divides " << (divides ? "true" : "false") << ", minimal "
            << (minimal ? "true" : "false") << "\n";
    }
    if (!divides || !minimal) throw internal_invariant_violation("order: certificate failed");
    return 0;
}

int decompose_cmd(const Options& opt, std::ostream& out) {
    SolverContext ctx = context_from(opt);
    const Poly l = to_conventional(ctx.reduced);
    const Poly lp = to_conventional(ctx.cofactor);
    const Poly w = to_conventional(ctx.overlap);
    const Poly u = to_conventional(ctx.kernel_map);
    const Poly v = to_conventional(ctx.trace_quot);
    const Poly f = to_conventional(ctx.kernel_bez);
    const Poly g = to_conventional(ctx.trace_bez);
    const Poly t_dk = to_conventional(trace_poly(opt.p, ctx.d, static_cast<unsigned>(ctx.k)));

    const bool id_cofactor = l * lp == Poly::one_minus_xk(opt.p, ctx.k);
    const bool id_overlap = u * w == lp && v * w == t_dk;
    const bool id_bezout = u * f + v * g == Poly::one(opt.p);
    const bool id_exchange = u * l == Poly::one_minus_xk(opt.p, ctx.d) * v;

    if (opt.format == "json") {
        ordered_json j;
        j["command"] = "decompose";
        j["p"] = opt.p;
        j["n"] = opt.n;
        j["k"] = ctx.k;
        j["d"] = ctx.d;
        j["shift"] = ctx.shift;
        j["maps"]["cofactor"] = map_json(ctx.cofactor);
        j["maps"]["overlap"] = map_json(ctx.overlap);
        j["maps"]["kernel_map"] = map_json(ctx.kernel_map);
        j["maps"]["trace_quot"] = map_json(ctx.trace_quot);
        j["maps"]["kernel_bez"] = map_json(ctx.kernel_bez);
        j["maps"]["trace_bez"] = map_json(ctx.trace_bez);
        j["identities"]["cofactor_product"] = id_cofactor;
        j["identities"]["overlap_factorization"] = id_overlap;
        j["identities"]["bezout"] = id_bezout;
        j["identities"]["kernel_trace_exchange"] = id_exchange;
        j["ambient"] = ambient_json(ctx);
        emit(out, j);
    } else {
        out << "k: " << ctx.k << "\nd: " << ctx.d << "\nshift: " << ctx.shift << "\n";
        out << "cofactor:    " << ctx.cofactor.to_pretty() << "\n";
        out << "overlap:     " << ctx.overlap.to_pretty() << "\n";
        out << "kernel_map:  " << ctx.kernel_map.to_pretty() << "\n";
        out << "trace_quot:  " << ctx.trace_quot.to_pretty() << "\n";
        out << "kernel_bez:  " << ctx.kernel_bez.to_pretty() << "\n";
        out << "trace_bez:   " << ctx.trace_bez.to_pretty() << "\n";
        out << "identities: cofactor_product " << (id_cofactor ? "true" : "false")
            << ", overlap_factorization " << (id_overlap ? "true" : "false") << ", bezout "
            << (id_bezout ? "true" : "false") << ", kernel_trace_exchange "
            << (id_exchange ? "true" : "false") << "\n";
    }
    if (!(id_cofactor && id_overlap && id_bezout && id_exchange)) {
        throw internal_invariant_violation("decompose: identity check failed");
    }
    return 0;
}

int bench_cmd(const Options& opt, std::ostream& out) {
    const auto rows = run_bench(opt.p, opt.bench_ns, opt.bench_deg, opt.trials, effective_seed(opt));
    write_bench_csv(out, rows);
    return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"solver for p-linearized polynomial equations L(X) = a over GF(p^n)"};
    app.require_subcommand(1);
    Options opt;

    auto add_map_options = [&](CLI::App* sc, bool with_n) {
        sc->add_option("--p", opt.p, "prime characteristic")->required();
        sc->add_option("--coeffs", opt.coeffs,
                       "coefficients alpha_0,alpha_1,... of the map sum alpha_i X^(p^i)")
            ->required()
            ->delimiter(',');
        if (with_n) {
            sc->add_option("--n", opt.n, "solve inside GF(p^n)")->required();
            sc->add_option("--k", opt.k, "any k with l | x^k - 1 (computed when omitted)");
        }
        sc->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "text"}));
        sc->add_flag("--show-ambient", opt.show_ambient, "also print ambient-field coordinates");
    };

    CLI::App* sc_solve = app.add_subcommand("solve", "solve L(X) = a and report the solution set");
    add_map_options(sc_solve, true);
    sc_solve->add_option("--a", opt.a, "right-hand side digits over the GF(p^n) basis")->delimiter(',');
    sc_solve->add_flag("--random", opt.random_a, "draw the right-hand side from --seed");
    sc_solve->add_option("--seed", opt.seed, "seed for --random (fallback: LINSOLVE_SEED)");
    sc_solve->add_option("--method", opt.method, "solution method")
        ->check(CLI::IsMember({"auto", "general", "direct", "matrix"}));

    CLI::App* sc_kernel = app.add_subcommand("kernel", "kernel of L inside GF(p^n)");
    add_map_options(sc_kernel, true);

    CLI::App* sc_order = app.add_subcommand("order", "minimal k with l | x^k - 1");
    add_map_options(sc_order, false);

    CLI::App* sc_decompose = app.add_subcommand("decompose", "cofactor/overlap/Bezout decomposition");
    add_map_options(sc_decompose, true);

    CLI::App* sc_selfcheck = app.add_subcommand("selfcheck", "run the built-in health checks");

    CLI::App* sc_bench = app.add_subcommand("bench", "time the solution methods (CSV)");
    sc_bench->add_option("--p", opt.p, "prime characteristic");
    sc_bench->add_option("--n", opt.bench_ns, "field degrees to time")->delimiter(',');
    sc_bench->add_option("--deg", opt.bench_deg, "map degree (number of alphas minus one)");
    sc_bench->add_option("--trials", opt.trials, "solves per method; 0 prints only the header");
    sc_bench->add_option("--seed", opt.seed, "seed for map and right-hand-side sampling");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*sc_solve) return solve_cmd(opt, out);
        if (*sc_kernel) return kernel_cmd(opt, out);
        if (*sc_order) return order_cmd(opt, out);
        if (*sc_decompose) return decompose_cmd(opt, out);
        if (*sc_selfcheck) return run_selfcheck(out) ? 0 : 4;
        if (*sc_bench) return bench_cmd(opt, out);
        err << "error: no subcommand selected\n";
        return 1;
    } catch (const internal_invariant_violation& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const order_too_large& e) {
        err << "error: " << e.what() << " (hint: supply --k)\n";
        return 2;
    } catch (const invalid_k& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const not_applicable& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const not_solvable& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace linsolve
