#include "linsolve/linalg.hpp"

#include <algorithm>

#include "linsolve/errors.hpp"

namespace linsolve {

GfpMatrix GfpMatrix::identity(std::uint64_t p, std::size_t n) {
    GfpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

GfpMatrix GfpMatrix::operator*(const GfpMatrix& o) const {
    if (p_ != o.p_ || cols_ != o.rows_) throw field_mismatch("GfpMatrix: shape or characteristic mismatch");
    GfpMatrix r(p_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const gfp::Scalar v = at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                r.at(i, j) = gfp::add(r.at(i, j), gfp::mul(v, o.at(k, j), p_), p_);
            }
        }
    }
    return r;
}

std::vector<gfp::Scalar> GfpMatrix::apply(const std::vector<gfp::Scalar>& v) const {
    if (v.size() != cols_) throw field_mismatch("GfpMatrix: vector length mismatch");
    std::vector<gfp::Scalar> r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        gfp::Wide acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) acc += static_cast<gfp::Wide>(at(i, j)) * v[j];
        r[i] = static_cast<gfp::Scalar>(acc % p_);
    }
    return r;
}

std::vector<std::size_t> GfpMatrix::rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t sel = row;
        while (sel < rows_ && at(sel, col) == 0) ++sel;
        if (sel == rows_) continue;
        if (sel != row) {
            for (std::size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(row, j));
        }
        const gfp::Scalar inv = gfp::inv(at(row, col), p_);
        for (std::size_t j = col; j < cols_; ++j) at(row, j) = gfp::mul(at(row, j), inv, p_);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row || at(i, col) == 0) continue;
            const gfp::Scalar f = at(i, col);
            for (std::size_t j = col; j < cols_; ++j) {
                at(i, j) = gfp::sub(at(i, j), gfp::mul(f, at(row, j), p_), p_);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::vector<std::vector<gfp::Scalar>> nullspace(GfpMatrix a) {
    const std::uint64_t p = a.p();
    const std::size_t n = a.cols();
    const std::vector<std::size_t> pivots = a.rref();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<gfp::Scalar>> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<gfp::Scalar> v(n, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            v[pivots[i]] = gfp::neg(a.at(i, f), p);
        }
        basis.push_back(std::move(v));
    }
    // one vector per free column, ordered by free column; callers wanting a
    // reduced-echelon basis should pass the result through echelon_span
    return basis;
}

GfpSolveResult solve(const GfpMatrix& a, const std::vector<gfp::Scalar>& b) {
    if (b.size() != a.rows()) throw field_mismatch("solve: right-hand side length mismatch");
    const std::uint64_t p = a.p();
    const std::size_t n = a.cols();
    GfpMatrix aug(p, a.rows(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n) = b[i] % p;
    }
    std::vector<std::size_t> pivots = aug.rref();
    GfpSolveResult res;
    GfpMatrix plain(p, a.rows(), n);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) plain.at(i, j) = a.at(i, j);
    }
    res.kernel = nullspace(std::move(plain));
    if (!pivots.empty() && pivots.back() == n) return res;  // row (0 ... 0 | 1)
    res.consistent = true;
    res.particular.assign(n, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) res.particular[pivots[i]] = aug.at(i, n);
    return res;
}

std::vector<std::vector<gfp::Scalar>> echelon_span(std::uint64_t p, std::vector<std::vector<gfp::Scalar>> rows) {
    if (rows.empty()) return rows;
    const std::size_t n = rows[0].size();
    GfpMatrix m(p, rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n) throw field_mismatch("echelon_span: ragged rows");
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j] % p;
    }
    const std::size_t rank = m.rref().size();
    std::vector<std::vector<gfp::Scalar>> out;
    out.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        std::vector<gfp::Scalar> v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = m.at(i, j);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace linsolve
