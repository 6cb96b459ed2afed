#include "geodlab/linalg.hpp"

#include <cmath>
#include <utility>

#include "geodlab/common.hpp"

namespace geodlab {

Matrix Matrix::transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    Matrix m(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const double x = (*this)(i, k);
            if (x == 0.0) continue;
            for (std::size_t j = 0; j < o.c_; ++j) m(i, j) += x * o(k, j);
        }
    return m;
}

std::vector<double> Matrix::apply(const std::vector<double>& x) const {
    std::vector<double> y(r_, 0.0);
    for (std::size_t i = 0; i < r_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < c_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

std::vector<double> Matrix::apply_left(const std::vector<double>& x) const {
    std::vector<double> y(c_, 0.0);
    for (std::size_t i = 0; i < r_; ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        for (std::size_t j = 0; j < c_; ++j) y[j] += xi * (*this)(i, j);
    }
    return y;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

std::vector<double> solve(Matrix A, std::vector<double> b) {
    const std::size_t n = A.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::fabs(A(i, col)) > std::fabs(A(piv, col))) piv = i;
        if (std::fabs(A(piv, col)) < 1e-300) throw Error("singular", "linalg", "solve");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(col, j), A(piv, j));
            std::swap(b[col], b[piv]);
        }
        for (std::size_t i = col + 1; i < n; ++i) {
            const double f = A(i, col) / A(col, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) A(i, j) -= f * A(col, j);
            b[i] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
        x[i] = s / A(i, i);
    }
    return x;
}

} // namespace geodlab
