#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace sorsvd {

/// Dense real matrix, row-major, 64-bit floats. The single carrier type for
/// data matrices, sketches, orthonormal bases and low-rank factors.
///
/// Constructors reject non-finite entries and zero dimensions; all library
/// routines preserve finiteness. Values are cheap to move, and safe to share
/// across threads as long as no one mutates them.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
        check_dims(rows, cols);
    }

    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        check_dims(rows, cols);
        if (data_.size() != rows * cols)
            throw shape_error("data length does not equal rows*cols");
        for (double x : data_)
            if (!std::isfinite(x)) throw parameter_error("matrix entries must be finite");
    }

    /// Row-wise literal, for tests and small fixtures.
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        if (rows.size() == 0) throw shape_error("empty row list");
        const std::size_t nc = rows.begin()->size();
        std::vector<double> d;
        d.reserve(rows.size() * nc);
        for (const auto& r : rows) {
            if (r.size() != nc) throw shape_error("ragged row list");
            d.insert(d.end(), r.begin(), r.end());
        }
        return Matrix(rows.size(), nc, std::move(d));
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    double& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    /// Copy of the nr x nc block with top-left corner (r0, c0).
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw shape_error("block exceeds matrix bounds");
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Matrix& operator*=(double c) {
        for (double& x : data_) x *= c;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, double c) { return a *= c; }
    friend Matrix operator*(double c, Matrix a) { return a *= c; }

    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

private:
    static void check_dims(std::size_t rows, std::size_t cols) {
        if (rows == 0 || cols == 0) throw shape_error("matrix dimensions must be positive");
    }
    void require_same_shape(const Matrix& o) const {
        if (!same_shape(o)) throw shape_error("elementwise operation on mismatched shapes");
    }

    std::size_t rows_, cols_;
    std::vector<double> data_;
};

/// Thin QR output: q has orthonormal columns, r is square upper triangular
/// with nonnegative diagonal (the sign convention that makes the
/// factorization of a full-rank input unique).
struct QrFactors {
    Matrix q;
    Matrix r;
};

/// SVD output. sigma is nonincreasing and nonnegative; u and v have
/// orthonormal columns. Left singular vectors are canonicalized so that the
/// largest-magnitude entry of each column of u is positive.
struct SvdFactors {
    Matrix u;
    std::vector<double> sigma;
    Matrix v;
};

}  // namespace sorsvd
