#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "kkcalc/int_matrix.hpp"

namespace kkcalc {

/// Smith normal form u*a*v = d with u, v unimodular and d diagonal,
/// nonnegative, d_1 | d_2 | ... | d_r. u_inv is tracked alongside u so callers
/// can move between presentation coordinates and normal-form coordinates.
struct SnfDecomposition {
    IntMatrix u, d, v, u_inv;

    std::size_t rank() const {
        std::size_t r = 0;
        const std::size_t n = std::min(d.rows(), d.cols());
        while (r < n && d(r, r) != 0) ++r;
        return r;
    }

    std::vector<Int> diagonal() const {
        const std::size_t n = std::min(d.rows(), d.cols());
        std::vector<Int> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = d(i, i);
        return out;
    }
};

namespace detail {

inline std::optional<std::pair<std::size_t, std::size_t>> min_abs_nonzero(const IntMatrix& a,
                                                                          std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int best_abs = 0;
    for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            Int v = abs_int(a(i, j));
            if (!best || v < best_abs) {
                best = {i, j};
                best_abs = std::move(v);
            }
        }
    return best;
}

}  // namespace detail

/// Pivot strategy: the least-absolute-value nonzero entry of the trailing
/// submatrix, which keeps coefficient growth in check.
inline SnfDecomposition snf(IntMatrix a) {
    const std::size_t m = a.rows(), n = a.cols();
    SnfDecomposition s{IntMatrix::identity(m), IntMatrix(), IntMatrix::identity(n),
                       IntMatrix::identity(m)};

    auto row_swap = [&](std::size_t x, std::size_t y) {
        a.swap_rows(x, y);
        s.u.swap_rows(x, y);
        s.u_inv.swap_cols(x, y);
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        a.swap_cols(x, y);
        s.v.swap_cols(x, y);
    };
    auto row_add = [&](std::size_t dst, std::size_t src, const Int& c) {
        a.add_row_multiple(dst, src, c);
        s.u.add_row_multiple(dst, src, c);
        s.u_inv.add_col_multiple(src, dst, -c);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const Int& c) {
        a.add_col_multiple(dst, src, c);
        s.v.add_col_multiple(dst, src, c);
    };
    auto row_negate = [&](std::size_t i) {
        a.negate_row(i);
        s.u.negate_row(i);
        s.u_inv.negate_col(i);
    };

    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
        auto pivot = detail::min_abs_nonzero(a, t);
        if (!pivot) break;
        row_swap(t, pivot->first);
        col_swap(t, pivot->second);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a(i, t) == 0) continue;
                Int q = round_div(a(i, t), a(t, t));
                if (q != 0) row_add(i, t, -q);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a(t, j) == 0) continue;
                Int q = round_div(a(t, j), a(t, t));
                if (q != 0) col_add(j, t, -q);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) {
                auto p = detail::min_abs_nonzero(a, t);
                row_swap(t, p->first);
                col_swap(t, p->second);
                continue;
            }
            // pivot row and column are clear; enforce pivot | trailing block
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n && !fixed; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        row_add(t, i, 1);
                        fixed = true;
                    }
            if (!fixed) break;
        }
    }
    for (std::size_t i = 0; i < steps; ++i)
        if (a(i, i) < 0) row_negate(i);
    s.d = std::move(a);
    return s;
}

/// Basis of the integer kernel {x : a*x = 0}, one column per basis vector.
/// The columns form a basis of the full (saturated) kernel lattice.
inline IntMatrix kernel_basis(const IntMatrix& a) {
    SnfDecomposition s = snf(a);
    const std::size_t r = s.rank();
    return s.v.col_slice(r, a.cols());
}

struct LinearSolution {
    Elem particular;
    IntMatrix kernel;  // columns span the homogeneous solutions
};

/// Solve a*x = b over the integers. The particular solution is the canonical
/// one determined by the normal form (free coordinates set to zero).
inline std::optional<LinearSolution> solve_linear(const IntMatrix& a, const Elem& b) {
    if (b.size() != a.rows()) throw ValidationError("solve_linear: rhs length mismatch");
    SnfDecomposition s = snf(a);
    const std::size_t r = s.rank();
    Elem y = s.u * b;
    Elem t(a.cols());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < r) {
            if (y[i] % s.d(i, i) != 0) return std::nullopt;
            t[i] = y[i] / s.d(i, i);
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return LinearSolution{s.v * t, s.v.col_slice(r, a.cols())};
}

/// Exact determinant by fraction-free (Bareiss) elimination; square input.
inline Int determinant(IntMatrix m) {
    if (m.rows() != m.cols()) throw ValidationError("determinant: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Int denom = 1;
    int sgn = 1;
    for (std::size_t k = 0; k < n - 1; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / denom;
        denom = m(k, k);
    }
    return sgn * m(n - 1, n - 1);
}

}  // namespace kkcalc
