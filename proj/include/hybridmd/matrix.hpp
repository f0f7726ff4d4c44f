// This code is part of hybridmd.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy
// of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "hybridmd/errors.hpp"

namespace hybridmd {

using cplx = std::complex<double>;

/// Dense row-major real matrix. Everything in the pipeline stays small
/// (block distance matrices cap at 64x64), so no sparsity or blocking.
struct RealMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    RealMatrix() = default;
    RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    bool square() const { return rows == cols; }

    static RealMatrix identity(std::size_t n) {
        RealMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline RealMatrix transpose(const RealMatrix& m) {
    RealMatrix t(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
    return t;
}

inline double trace(const RealMatrix& m) {
    if (!m.square()) throw InvalidOperationError("trace: matrix is not square");
    double t = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) t += m(i, i);
    return t;
}

inline bool is_symmetric(const RealMatrix& m, double tol = 1e-10) {
    if (!m.square()) return false;
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = i + 1; j < m.cols; ++j)
            if (std::abs(m(i, j) - m(j, i)) > tol) return false;
    return true;
}

inline RealMatrix kron(const RealMatrix& a, const RealMatrix& b) {
    RealMatrix k(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            for (std::size_t p = 0; p < b.rows; ++p)
                for (std::size_t q = 0; q < b.cols; ++q)
                    k(i * b.rows + p, j * b.cols + q) = a(i, j) * b(p, q);
    return k;
}

/// Solves a*x = b by Gaussian elimination with partial pivoting.
/// Throws NumericError when the system is singular.
inline std::vector<double> solve_linear(RealMatrix a, std::vector<double> b) {
    if (!a.square() || a.rows != b.size())
        throw InvalidOperationError("solve_linear: shape mismatch");
    const std::size_t n = a.rows;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (std::abs(a(pivot, col)) < 1e-14)
            throw NumericError("solve_linear: singular matrix");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
            std::swap(b[pivot], b[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

/// Dense square complex matrix, row-major.
struct ComplexMatrix {
    std::size_t dim = 0;
    std::vector<cplx> data;

    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t d) : dim(d), data(d * d, cplx{0.0, 0.0}) {}

    cplx& operator()(std::size_t i, std::size_t j) { return data[i * dim + j]; }
    cplx operator()(std::size_t i, std::size_t j) const { return data[i * dim + j]; }
};

inline bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10) {
    for (std::size_t i = 0; i < m.dim; ++i)
        for (std::size_t j = i; j < m.dim; ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    return true;
}

} // namespace hybridmd
