#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "linsolve/solver.hpp"

namespace linsolve {

// End-to-end health check: identity suites, kernel laws, closed-form
// tables, agreement with the Gaussian oracle on a small grid.  Writes one
// line per group to `out`; returns true when every group holds.
bool run_selfcheck(std::ostream& out);

struct BenchRow {
    std::string method;
    std::uint64_t p = 2;
    unsigned n = 0;
    unsigned deg = 0;
    std::uint64_t median_ns = 0;
};

// Times repeated solves of a = L(random x) — always solvable — for each
// applicable method on a fixed random map of the given degree.
// trials == 0 produces no rows (callers still emit the CSV header).
std::vector<BenchRow> run_bench(std::uint64_t p, const std::vector<unsigned>& ns, unsigned deg,
                                unsigned trials, std::uint64_t seed);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace linsolve
