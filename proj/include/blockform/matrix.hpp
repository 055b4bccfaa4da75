#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "blockform/errors.hpp"

namespace blockform {

using Complex = std::complex<double>;

/**
 * Dense complex matrix stored row-major.
 *
 * Every constructor that accepts external data rejects NaN and Inf entries,
 * so downstream code can assume finiteness. Element access through
 * operator() is unchecked; use at() when indices come from user input.
 */
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix filled(std::size_t rows, std::size_t cols, Complex value);
    static ComplexMatrix diagonal(std::span<const Complex> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
    const Complex& at(std::size_t i, std::size_t j) const;

    std::span<const Complex> entries() const noexcept { return data_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    /// Largest entry modulus (0 for an empty matrix).
    double max_abs() const noexcept;

    /// (i0, j0)-anchored submatrix of the given shape.
    ComplexMatrix block(std::size_t i0, std::size_t j0, std::size_t rows, std::size_t cols) const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(ComplexMatrix lhs, Complex scalar);
ComplexMatrix operator*(Complex scalar, ComplexMatrix rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

/// max |a_ij - b_ij|; throws DimensionError on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

void require_square(const ComplexMatrix& a, const char* what);

}  // namespace blockform
