#pragma once

// Minimal dense row-major matrix for the desk-scale spectral work. Summation
// order is fixed (ascending index) so results are reproducible bit for bit.

#include <cstddef>
#include <vector>

namespace geodlab {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : r_(rows), c_(cols), a_(rows * cols, fill) {}

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    // y = M x and y = x^T M.
    std::vector<double> apply(const std::vector<double>& x) const;
    std::vector<double> apply_left(const std::vector<double>& x) const;

    static Matrix identity(std::size_t n);

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<double> a_;
};

// Solves A x = b by Gaussian elimination with partial pivoting; throws
// "singular" on a vanishing pivot.
std::vector<double> solve(Matrix A, std::vector<double> b);

} // namespace geodlab
