// SPDX-License-Identifier: Apache-2.0

#include "iacount/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace iacount {

namespace {

void require_finite(const ComplexMatrix::Storage& m) {
    if (!m.allFinite()) throw std::invalid_argument("matrix contains NaN or infinite entries");
}

}  // namespace

ComplexMatrix::ComplexMatrix(Index rows, Index cols) : values_(Storage::Zero(rows, cols)) {}

ComplexMatrix::ComplexMatrix(Storage values) : values_(std::move(values)) { require_finite(values_); }

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    const Index r = static_cast<Index>(rows.size());
    const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
    values_.resize(r, c);
    Index i = 0;
    for (const auto& row : rows) {
        if (static_cast<Index>(row.size()) != c) throw std::invalid_argument("ragged initializer rows");
        Index j = 0;
        for (const Complex& v : row) values_(i, j++) = v;
        ++i;
    }
    require_finite(values_);
}

ComplexMatrix ComplexMatrix::identity(Index n) {
    ComplexMatrix out(n, n);
    out.values_.setIdentity();
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const { return ComplexMatrix(Storage(values_.adjoint())); }

ComplexMatrix ComplexMatrix::transpose() const { return ComplexMatrix(Storage(values_.transpose())); }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: inner dimensions differ");
    ComplexMatrix out;
    out.values_ = a.values_ * b.values_;
    return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shapes differ");
    ComplexMatrix out;
    out.values_ = a.values_ + b.values_;
    return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference: shapes differ");
    ComplexMatrix out;
    out.values_ = a.values_ - b.values_;
    return out;
}

bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.values_ == b.values_;
}

ComplexMatrix vec(const ComplexMatrix& m) {
    ComplexMatrix out(m.rows() * m.cols(), 1);
    for (ComplexMatrix::Index c = 0; c < m.cols(); ++c)
        for (ComplexMatrix::Index r = 0; r < m.rows(); ++r) out(r + c * m.rows(), 0) = m(r, c);
    return out;
}

ComplexMatrix unvec(const ComplexMatrix& v, ComplexMatrix::Index rows, ComplexMatrix::Index cols) {
    if (v.cols() != 1 || v.rows() != rows * cols) throw std::invalid_argument("unvec: size mismatch");
    ComplexMatrix out(rows, cols);
    for (ComplexMatrix::Index c = 0; c < cols; ++c)
        for (ComplexMatrix::Index r = 0; r < rows; ++r) out(r, c) = v(r + c * rows, 0);
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (ComplexMatrix::Index i = 0; i < a.rows(); ++i)
        for (ComplexMatrix::Index j = 0; j < a.cols(); ++j)
            out.values().block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b.values();
    return out;
}

ComplexMatrix commutation_matrix(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("commutation_matrix: dimensions must be positive");
    // X(i,j) sits at i + j*m in vec(X) and at j + i*n in vec(X^T).
    ComplexMatrix out(static_cast<ComplexMatrix::Index>(m) * n, static_cast<ComplexMatrix::Index>(m) * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) out(j + i * n, i + j * m) = 1.0;
    return out;
}

bool LogDet::singular() const noexcept { return std::isinf(log_abs_det_sq) && log_abs_det_sq < 0; }

LogDet log_abs_det_sq(const ComplexMatrix& m, double relative_pivot_tol) {
    if (m.rows() != m.cols()) throw std::invalid_argument("log_abs_det_sq: matrix is not square");
    if (m.rows() == 0) return {0.0};

    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m.values());
    const auto& packed = lu.matrixLU();
    const Eigen::Index n = packed.rows();

    double largest = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) largest = std::max(largest, std::abs(packed(i, i)));
    const double floor = std::max(std::numeric_limits<double>::min(), relative_pivot_tol * largest);

    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double pivot = std::abs(packed(i, i));
        if (!(pivot > floor)) return {-std::numeric_limits<double>::infinity()};
        sum += std::log(pivot);
    }
    return {2.0 * sum};
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return {};
    const Eigen::BDCSVD<Eigen::MatrixXcd> svd(m.values());
    const auto& s = svd.singularValues();
    std::vector<double> out(s.data(), s.data() + s.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

}  // namespace iacount
