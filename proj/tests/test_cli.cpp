#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "linsolve/cli.hpp"
#include "linsolve/diagnostics.hpp"
#include "linsolve/field.hpp"
#include "linsolve/linearized.hpp"

using namespace linsolve;
using nlohmann::json;

namespace {

struct CliResult {
    int code = -1;
    std::string out, err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(std::move(args), out, err);
    return CliResult{code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("solve: unique solution on the worked example") {
    const auto r = run({"solve", "--p", "2", "--coeffs", "1,1,0,1", "--n", "3", "--a", "1,0,0"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["command"] == "solve");
    CHECK(j["solvable"] == true);
    CHECK(j["count"] == 1);
    CHECK(j["k"] == 7);
    CHECK(j["d"] == 1);
    CHECK(j["verified"] == true);
    CHECK(j["method_used"] == "direct");
    CHECK(j["kernel_basis"].empty());
    REQUIRE(j["particular_solution"].is_array());
    CHECK(j["particular_solution"].size() == 3);

    // round trip: rebuild the ambient field from the printed modulus and
    // verify the printed solution actually solves L(x) = a
    const unsigned degree = j["ambient"]["degree"].get<unsigned>();
    const Field f = Field::build(2, degree, Poly::from_digits(2, j["ambient"]["modulus"].get<std::string>()));
    const SubfieldBasis basis = subfield_basis(f, 3);
    const auto digits = [&](const json& arr) {
        std::vector<gfp::Scalar> d;
        for (const auto& v : arr) d.push_back(v.get<gfp::Scalar>());
        return d;
    };
    const FieldElement x0 = from_basis_coords(basis, digits(j["particular_solution"]));
    const FieldElement a = from_basis_coords(basis, digits(j["a"]));
    CHECK(evaluate(Linearized(2, {1, 1, 0, 1}), x0) == a);
}

TEST_CASE("solve: kernel of dimension three and exit code 3 when unsolvable") {
    const auto zero = run({"solve", "--p", "2", "--coeffs", "1,1,0,1", "--n", "7", "--a",
                           "0,0,0,0,0,0,0"});
    REQUIRE(zero.code == 0);
    const json j = json::parse(zero.out);
    CHECK(j["count"] == 8);
    CHECK(j["kernel_basis"].size() == 3);
    for (const auto& digit : j["particular_solution"]) CHECK(digit == 0);

    // scan for an unsolvable right-hand side and check the exit code
    bool saw_unsolvable = false;
    for (int i = 1; i < 16 && !saw_unsolvable; ++i) {
        std::string a;
        for (int bit = 0; bit < 7; ++bit) {
            if (bit) a += ',';
            a += ((i >> bit) & 1) ? '1' : '0';
        }
        const auto r = run({"solve", "--p", "2", "--coeffs", "1,1,0,1", "--n", "7", "--a", a});
        REQUIRE((r.code == 0 || r.code == 3));
        if (r.code == 3) {
            saw_unsolvable = true;
            const json ju = json::parse(r.out);
            CHECK(ju["solvable"] == false);
            CHECK(ju["count"] == 0);
            CHECK(ju["particular_solution"].is_null());
            CHECK(ju["kernel_basis"].size() == 3);
        }
    }
    CHECK(saw_unsolvable);
}

TEST_CASE("solve: identity map echoes the right-hand side") {
    const auto r = run({"solve", "--p", "2", "--coeffs", "1", "--n", "4", "--a", "0,1,1,0"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["particular_solution"] == j["a"]);
    CHECK(j["count"] == 1);
}

TEST_CASE("solve: parse and validation failures exit 1") {
    CHECK(run({"solve", "--p", "2", "--coeffs", "1,1,0,1", "--n", "3", "--a", "2,0,0"}).code == 1);
    CHECK(run({"solve", "--p", "2", "--coeffs", "1,1,0,1", "--n", "3", "--a", "1,0"}).code == 1);
    CHECK(run({"solve", "--p", "2", "--coeffs", "1,1,0,1", "--n", "3"}).code == 1);
    CHECK(run({"solve", "--p", "4", "--coeffs", "1", "--n", "2", "--a", "0,0"}).code == 1);
    CHECK(run({"solve", "--p", "2", "--coeffs", "0,0", "--n", "2", "--a", "0,0"}).code == 1);
    CHECK(run({"solve", "--p", "2", "--coeffs", "1,2,0,1", "--n", "3", "--a", "1,0,0"}).code == 1);
    CHECK(run({"order", "--p", "3", "--coeffs", "1,3"}).code == 1);
    CHECK(run({"solve", "--p", "2", "--coeffs", "1", "--n", "2", "--a", "0,0", "--bogus"}).code == 1);
    CHECK(run({"nonsense"}).code == 1);
    CHECK(run({}).code == 1);
}

TEST_CASE("solve: solver-level failures exit 2") {
    CHECK(run({"solve", "--p", "2", "--coeffs", "1,1,0,1", "--n", "3", "--k", "5", "--a", "1,0,0"})
              .code == 2);
    CHECK(run({"solve", "--p", "2", "--coeffs", "1,1,0,1", "--n", "3", "--k", "9999999", "--a",
               "1,0,0"})
              .code == 2);
    CHECK(run({"solve", "--p", "2", "--coeffs", "1,1", "--n", "4", "--k", "8", "--method", "direct",
               "--a", "0,0,0,0"})
              .code == 2);
}

TEST_CASE("solve: --random with --seed is deterministic, LINSOLVE_SEED is the fallback") {
    const auto r1 = run({"solve", "--p", "3", "--coeffs", "1,2,1", "--n", "3", "--random", "--seed", "42"});
    const auto r2 = run({"solve", "--p", "3", "--coeffs", "1,2,1", "--n", "3", "--random", "--seed", "42"});
    CHECK(r1.out == r2.out);
    CHECK(r1.code == r2.code);

    setenv("LINSOLVE_SEED", "42", 1);
    const auto r3 = run({"solve", "--p", "3", "--coeffs", "1,2,1", "--n", "3", "--random"});
    unsetenv("LINSOLVE_SEED");
    CHECK(r3.out == r1.out);

    setenv("LINSOLVE_SEED", "not-a-number", 1);
    const auto r4 = run({"solve", "--p", "3", "--coeffs", "1,2,1", "--n", "3", "--random"});
    unsetenv("LINSOLVE_SEED");
    CHECK(r4.code == 1);

    CHECK(run({"solve", "--p", "3", "--coeffs", "1,2,1", "--n", "3", "--random", "--a", "0,0,0"})
              .code == 1);
}

TEST_CASE("solve: text format and --show-ambient") {
    const auto r = run({"solve", "--p", "2", "--coeffs", "1,1,0,1", "--n", "3", "--a", "1,0,0",
                        "--format", "text", "--show-ambient"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("solvable: true") != std::string::npos);
    CHECK(r.out.find("ambient_modulus:") != std::string::npos);
    CHECK(r.out.find("particular_solution_ambient:") != std::string::npos);

    const auto rj = run({"solve", "--p", "2", "--coeffs", "1,1,0,1", "--n", "3", "--a", "1,0,0",
                         "--show-ambient"});
    const json j = json::parse(rj.out);
    CHECK(j["particular_solution"].contains("ambient"));
    CHECK(j["particular_solution"]["ambient"].size() == 6);
}

TEST_CASE("kernel subcommand") {
    const auto r = run({"kernel", "--p", "2", "--coeffs", "1,1,0,1", "--n", "7"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["dimension"] == 3);
    CHECK(j["kernel_basis"].size() == 3);
    CHECK(j["count"] == 8);

    const auto r2 = run({"kernel", "--p", "2", "--coeffs", "1,1,0,1", "--n", "3"});
    const json j2 = json::parse(r2.out);
    CHECK(j2["dimension"] == 0);
    CHECK(j2["kernel_basis"].empty());
    CHECK(j2["count"] == 1);
}

TEST_CASE("order subcommand with certificate") {
    const auto r = run({"order", "--p", "2", "--coeffs", "1,1,0,1"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["order"] == 7);
    CHECK(j["certificate"]["divides"] == true);
    CHECK(j["certificate"]["minimal"] == true);

    CHECK(json::parse(run({"order", "--p", "2", "--coeffs", "1,1"}).out)["order"] == 1);
    CHECK(json::parse(run({"order", "--p", "2", "--coeffs", "1,0,1"}).out)["order"] == 2);
    // a shifted map reports the order of its reduced part
    const json js = json::parse(run({"order", "--p", "2", "--coeffs", "0,1,1,0,1"}).out);
    CHECK(js["shift"] == 1);
    CHECK(js["order"] == 7);
}

TEST_CASE("decompose subcommand verifies its identities") {
    const auto r = run({"decompose", "--p", "2", "--coeffs", "1,1,0,1", "--n", "3"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["maps"]["cofactor"]["pretty"] == "X + X^2 + X^4 + X^16");
    CHECK(j["maps"]["overlap"]["alphas"] == "1,0,1,1");
    CHECK(j["maps"]["kernel_map"]["alphas"] == "1,1");
    for (const auto& [name, ok] : j["identities"].items()) {
        (void)name;
        CHECK(ok == true);
    }

    const auto r7 = run({"decompose", "--p", "2", "--coeffs", "1,1,0,1", "--n", "7"});
    const json j7 = json::parse(r7.out);
    CHECK(j7["maps"]["overlap"]["alphas"] == "1");
    CHECK(j7["maps"]["kernel_map"]["alphas"] == j7["maps"]["cofactor"]["alphas"]);

    const auto rid = run({"decompose", "--p", "3", "--coeffs", "1", "--n", "2"});
    CHECK(rid.code == 0);
}

TEST_CASE("bench subcommand emits CSV") {
    const auto header_only = run({"bench", "--trials", "0", "--n", "8"});
    REQUIRE(header_only.code == 0);
    CHECK(header_only.out == "method,p,n,deg,median_ns\n");

    const auto r = run({"bench", "--trials", "3", "--n", "8", "--seed", "7"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "method,p,n,deg,median_ns");
    int rows = 0;
    bool saw_general = false, saw_matrix = false;
    while (std::getline(lines, line)) {
        ++rows;
        if (line.rfind("general,2,8,4,", 0) == 0) saw_general = true;
        if (line.rfind("matrix,2,8,4,", 0) == 0) saw_matrix = true;
    }
    CHECK(rows >= 2);
    CHECK(saw_general);
    CHECK(saw_matrix);
}

TEST_CASE("selfcheck passes") {
    std::ostringstream out;
    CHECK(run_selfcheck(out));
    CHECK(out.str().find("[FAIL]") == std::string::npos);
}

TEST_CASE("identical invocations are byte-identical") {
    const std::vector<std::string> args = {"solve", "--p", "2", "--coeffs", "1,1,0,1",
                                           "--n",   "7", "--a", "1,1,0,1,0,0,1"};
    const auto r1 = run(args);
    const auto r2 = run(args);
    CHECK(r1.out == r2.out);
    CHECK(r1.code == r2.code);
}
