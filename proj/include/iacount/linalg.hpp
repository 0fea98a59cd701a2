// SPDX-License-Identifier: Apache-2.0
//
// Dense complex linear algebra kernels. All vectorizations stack columns:
// vec(X) = [X(:,0); X(:,1); ...].

#ifndef IACOUNT_LINALG_HPP
#define IACOUNT_LINALG_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace iacount {

using Complex = std::complex<double>;

/// Row-major dense complex matrix whose entries are finite on construction.
class ComplexMatrix {
public:
    using Storage = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    using Index = Eigen::Index;

    ComplexMatrix() = default;
    ComplexMatrix(Index rows, Index cols);  // zero-filled
    explicit ComplexMatrix(Storage values);  // throws std::invalid_argument on NaN/Inf
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(Index n);

    Index rows() const noexcept { return values_.rows(); }
    Index cols() const noexcept { return values_.cols(); }

    Complex operator()(Index r, Index c) const { return values_(r, c); }
    Complex& operator()(Index r, Index c) { return values_(r, c); }

    const Storage& values() const noexcept { return values_; }
    Storage& values() noexcept { return values_; }

    /// Frobenius norm.
    double norm() const { return values_.norm(); }
    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    Storage values_;
};

/// Column-stacking vectorization: an (rows*cols) x 1 matrix.
ComplexMatrix vec(const ComplexMatrix& m);

/// Inverse of `vec` for an m x n target shape.
ComplexMatrix unvec(const ComplexMatrix& v, ComplexMatrix::Index rows, ComplexMatrix::Index cols);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// The mn x mn permutation with K * vec(X) = vec(X^T) for every m x n X.
ComplexMatrix commutation_matrix(int m, int n);

/// log |det M|^2, with -infinity standing for an exactly singular matrix.
struct LogDet {
    double log_abs_det_sq = 0.0;

    bool singular() const noexcept;
};

/**
 * log |det M|^2 from a partial-pivot LU factorization: 2 * sum log|u_ii|.
 *
 * A pivot whose magnitude is zero or below the smallest normal double
 * makes the result -infinity. When `relative_pivot_tol` is positive, pivots
 * with |u_ii| <= relative_pivot_tol * max_j |u_jj| are treated as zero too.
 * Throws std::invalid_argument for non-square input.
 */
LogDet log_abs_det_sq(const ComplexMatrix& m, double relative_pivot_tol = 0.0);

/// Singular values in descending order.
std::vector<double> singular_values(const ComplexMatrix& m);

}  // namespace iacount

#endif  // IACOUNT_LINALG_HPP
