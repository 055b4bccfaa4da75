#include "blockform/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace blockform {

namespace {

void require_finite(std::span<const Complex> entries) {
    for (std::size_t idx = 0; idx < entries.size(); ++idx) {
        if (!std::isfinite(entries[idx].real()) || !std::isfinite(entries[idx].imag())) {
            throw std::invalid_argument("non-finite matrix entry at flat index " + std::to_string(idx));
        }
    }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("entry count " + std::to_string(data_.size()) + " does not match " +
                             std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw DimensionError("ragged initializer list");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
}

ComplexMatrix ComplexMatrix::filled(std::size_t rows, std::size_t cols, Complex value) {
    return ComplexMatrix(rows, cols, std::vector<Complex>(rows * cols, value));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix out(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) out(i, i) = diag[i];
    require_finite(diag);
    return out;
}

const Complex& ComplexMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw DimensionError("index out of range");
    return (*this)(i, j);
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

Complex ComplexMatrix::trace() const {
    require_square(*this, "trace");
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) sum += (*this)(i, i);
    return sum;
}

double ComplexMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

ComplexMatrix ComplexMatrix::block(std::size_t i0, std::size_t j0, std::size_t rows, std::size_t cols) const {
    if (i0 + rows > rows_ || j0 + cols > cols_) throw DimensionError("block exceeds matrix bounds");
    ComplexMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((i0 + i) * cols_ + j0), cols,
                    out.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t idx = 0; idx < data_.size(); ++idx) data_[idx] += other.data_[idx];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t idx = 0; idx < data_.size(); ++idx) data_[idx] -= other.data_[idx];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
    for (auto& z : data_) z *= scalar;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(ComplexMatrix lhs, Complex scalar) { return lhs *= scalar; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix rhs) { return rhs *= scalar; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.cols() != rhs.rows()) {
        throw DimensionError("matrix product: inner dimensions " + std::to_string(lhs.cols()) + " and " +
                             std::to_string(rhs.rows()) + " differ");
    }
    ComplexMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t p = 0; p < lhs.cols(); ++p) {
            const Complex a = lhs(i, p);
            if (a == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(p, j);
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t idx = 0; idx < ea.size(); ++idx) m = std::max(m, std::abs(ea[idx] - eb[idx]));
    return m;
}

void require_square(const ComplexMatrix& a, const char* what) {
    if (!a.is_square()) {
        throw DimensionError(std::string(what) + ": expected a square matrix, got " + std::to_string(a.rows()) +
                             "x" + std::to_string(a.cols()));
    }
}

}  // namespace blockform
