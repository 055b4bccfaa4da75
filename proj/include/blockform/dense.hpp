#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>

#include "blockform/block_matrix.hpp"
#include "blockform/matrix.hpp"
#include "blockform/report.hpp"

namespace blockform {

/// Pivots with modulus below this are treated as exact zeros.
inline constexpr double kPivotUnderflow = 1e-300;
inline constexpr double kDefaultPsdTol = 1e-9;
/// Equilibrated pivot ratio at or below which a PSD matrix counts as singular.
inline constexpr double kSingularRelTol = 1e-12;

/// det(A) = phase * exp(log_modulus), or singular with log_modulus = -inf.
struct LogDet {
    double log_modulus = 0.0;
    Complex phase{1.0, 0.0};
    bool singular = false;

    static LogDet zero() { return {-std::numeric_limits<double>::infinity(), Complex{1.0, 0.0}, true}; }

    /// Reassemble det(A); underflows/overflows exactly where exp() does.
    Complex value() const;
};

/// View exponent * log det(A) as a positive real quantity (phase checked, not raised).
LogSide as_log_side(const LogDet& d, double exponent = 1.0);

struct PsdVerdict {
    bool is_hermitian = false;
    /// Most negative pivot met during the pivoted Cholesky sweep, 0 if none.
    double min_eigen_proxy = 0.0;
    bool is_psd = false;
    double tolerance_used = 0.0;
};

/// LU with partial pivoting; exact 0 when a pivot underflows kPivotUnderflow.
Complex determinant(const ComplexMatrix& a);

LogDet log_det(const ComplexMatrix& a);

/**
 * log_det of D^{-1/2} A D^{-1/2} plus the log of the diagonal, D = diag(A).
 *
 * For matrices with a positive diagonal (every nonsingular PSD matrix) this
 * makes the pivots insensitive to wildly different diagonal scales, which
 * appear after high Hadamard powers. Falls back to log_det otherwise.
 */
LogDet log_det_equilibrated(const ComplexMatrix& a);

/**
 * Hermitian check, then pivoted Cholesky on (A + A*)/2.
 *
 * The Hermitian test accepts max|A - A*| <= tol * (1 + max|A|). Pivots are
 * accepted down to -tol * scale where scale defaults to trace(A)/n; callers
 * testing a difference of matrices should pass the scale of the operands.
 */
PsdVerdict is_psd(const ComplexMatrix& a, double tol = kDefaultPsdTol, std::optional<double> scale = std::nullopt);

/// (A + A*) / 2
ComplexMatrix hermitize(const ComplexMatrix& a);

/// Hermitized copy; throws PreconditionError when A is not Hermitian within tol.
ComplexMatrix hermitize_checked(const ComplexMatrix& a, double tol = kDefaultPsdTol);

/// Rank test for a PSD matrix: a zero diagonal entry, or a pivot of the
/// diagonally equilibrated matrix at or below rel_tol.
bool is_numerically_singular(const ComplexMatrix& a, double rel_tol = kSingularRelTol);

/// Upper triangular U with A = U* U. Throws FactorizationError on a non-positive pivot.
ComplexMatrix cholesky_upper(const ComplexMatrix& a);

/// Block upper triangular T with H = T* T: the scalar Cholesky factor regrouped into blocks.
BlockMatrix block_cholesky(const BlockMatrix& h);

ComplexMatrix hadamard_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Entrywise r-th power by repeated multiplication; r = 0 yields the all-ones matrix.
ComplexMatrix hadamard_power(const ComplexMatrix& a, int r);

/// Rows and columns idx of A; idx must be strictly increasing and in range.
ComplexMatrix principal_submatrix(const ComplexMatrix& a, std::span<const std::size_t> idx);

/// det(A o B) >= det(A) * prod_i B_ii for PSD A, B of equal size.
InequalityReport check_oppenheim(const ComplexMatrix& a, const ComplexMatrix& b, double tol = 1e-8);

}  // namespace blockform
