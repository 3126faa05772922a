#pragma once

#include <cstdint>
#include <vector>

#include "linsolve/gfp.hpp"

namespace linsolve {

// Dense row-major matrix over GF(p).
class GfpMatrix {
public:
    GfpMatrix(std::uint64_t p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static GfpMatrix identity(std::uint64_t p, std::size_t n);

    std::uint64_t p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    gfp::Scalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    gfp::Scalar at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    GfpMatrix operator*(const GfpMatrix& o) const;
    std::vector<gfp::Scalar> apply(const std::vector<gfp::Scalar>& v) const;

    bool operator==(const GfpMatrix& o) const {
        return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    // In-place reduced row echelon form; returns the pivot columns in order.
    std::vector<std::size_t> rref();

private:
    std::uint64_t p_;
    std::size_t rows_, cols_;
    std::vector<gfp::Scalar> a_;
};

// Canonical basis of { x : A x = 0 }: the rows form a reduced-echelon
// matrix, ordered by pivot position.
std::vector<std::vector<gfp::Scalar>> nullspace(GfpMatrix a);

struct GfpSolveResult {
    bool consistent = false;
    std::vector<gfp::Scalar> particular;               // free variables set to zero
    std::vector<std::vector<gfp::Scalar>> kernel;      // canonical nullspace basis (filled
                                                       // even when the system is inconsistent)
};

// Solve A x = b over GF(p).
GfpSolveResult solve(const GfpMatrix& a, const std::vector<gfp::Scalar>& b);

// Row-reduce a list of vectors to the canonical echelon basis of their span.
std::vector<std::vector<gfp::Scalar>> echelon_span(std::uint64_t p, std::vector<std::vector<gfp::Scalar>> rows);

}  // namespace linsolve
