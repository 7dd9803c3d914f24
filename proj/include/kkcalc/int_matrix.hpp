#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "kkcalc/errors.hpp"
#include "kkcalc/integer.hpp"

namespace kkcalc {

/// Column vector of group-element coordinates.
using Elem = std::vector<Int>;

/// Dense matrix of arbitrary-precision integers, row-major. Zero-dimensional
/// matrices are first-class citizens; every operation is total on them.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw ValidationError("IntMatrix: entry count does not match dimensions");
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    /// Convenience for literals in tests and tools.
    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.begin()->size() : 0;
        IntMatrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw ValidationError("IntMatrix: ragged row list");
            std::size_t j = 0;
            for (long long v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const IntMatrix&) const = default;

    bool is_zero() const {
        for (const Int& x : data_)
            if (x != 0) return false;
        return true;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
    }

    void negate_col(std::size_t j) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
    }

    /// row[dst] += c * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& c) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += c * (*this)(src, j);
    }

    /// col[dst] += c * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += c * (*this)(i, src);
    }

    IntMatrix operator*(const IntMatrix& rhs) const {
        if (cols_ != rhs.rows_) throw ValidationError("IntMatrix: dimension mismatch in product");
        IntMatrix out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
            }
        return out;
    }

    Elem operator*(const Elem& x) const {
        if (cols_ != x.size()) throw ValidationError("IntMatrix: dimension mismatch in apply");
        Elem out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * x[j];
        return out;
    }

    IntMatrix transposed() const {
        IntMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    Elem column(std::size_t j) const {
        Elem out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    void set_column(std::size_t j, const Elem& x) {
        if (x.size() != rows_) throw ValidationError("IntMatrix: bad column length");
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = x[i];
    }

    /// [a | b] side by side.
    static IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
        if (a.rows() != b.rows()) throw ValidationError("IntMatrix: hcat row mismatch");
        IntMatrix out(a.rows(), a.cols() + b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
        }
        return out;
    }

    static IntMatrix from_columns(std::size_t rows, const std::vector<Elem>& cols) {
        IntMatrix out(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) out.set_column(j, cols[j]);
        return out;
    }

    /// Rows [from, to) as a new matrix.
    IntMatrix row_slice(std::size_t from, std::size_t to) const {
        IntMatrix out(to - from, cols_);
        for (std::size_t i = from; i < to; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i - from, j) = (*this)(i, j);
        return out;
    }

    /// Columns [from, to) as a new matrix.
    IntMatrix col_slice(std::size_t from, std::size_t to) const {
        IntMatrix out(rows_, to - from);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = from; j < to; ++j) out(i, j - from) = (*this)(i, j);
        return out;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? "; " : "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) s += ", ";
                s += (*this)(i, j).str();
            }
        }
        return s + "]";
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

inline IntMatrix scaled(IntMatrix m, const Int& c) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= c;
    return m;
}

inline Elem scaled(Elem x, const Int& c) {
    for (Int& v : x) v *= c;
    return x;
}

inline Elem add(Elem a, const Elem& b) {
    if (a.size() != b.size()) throw ValidationError("element size mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline bool is_zero(const Elem& x) {
    for (const Int& v : x)
        if (v != 0) return false;
    return true;
}

inline Elem unit_elem(std::size_t n, std::size_t k) {
    Elem e(n);
    e[k] = 1;
    return e;
}

}  // namespace kkcalc
