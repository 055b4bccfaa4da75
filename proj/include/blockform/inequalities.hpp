#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "blockform/block_matrix.hpp"
#include "blockform/report.hpp"

namespace blockform {

inline constexpr double kDefaultMarginTol = 1e-8;

/// Exponent (r/k) * C(k+r-1, r) attached to det H in the symmetric-power bounds.
/// It always equals C(k+r-1, r-1), so it is an integer for every k and r.
std::size_t sym_det_exponent(std::size_t k, int r);

/// Exponent r * k^(r-1) attached to det H in the tensor-power bounds.
std::size_t tensor_det_exponent(std::size_t k, int r);

/**
 * Evaluate one catalog inequality on a PSD block matrix, in log domain.
 *
 * Ids that do not depend on r report r = 1. The block matrix is Hermitized
 * first; it must pass is_psd at `tol`. A numerically singular H makes the
 * report degenerate (and holding). Throws PreconditionError for non-PSD H,
 * CapacityError when a tensor construction is too large, and
 * std::invalid_argument for fischer_power_2x2 with n != 2, for r < 1 or for
 * the oppenheim id (use check_oppenheim).
 */
InequalityReport evaluate(InequalityId id, const BlockMatrix& h, int r, double tol = kDefaultMarginTol);

struct SkippedEvaluation {
    InequalityId id;
    int r;
    std::string reason;
};

/// Every applicable id x r. Capacity-limited combinations are listed in `skipped` instead of failing.
std::vector<InequalityReport> evaluate_all(const BlockMatrix& h, std::span<const int> r_values,
                                           double tol = kDefaultMarginTol,
                                           std::vector<SkippedEvaluation>* skipped = nullptr);

/// Evaluate a chosen subset; same skipping rule as evaluate_all.
std::vector<InequalityReport> evaluate_selected(const BlockMatrix& h, std::span<const InequalityId> ids,
                                                std::span<const int> r_values, double tol = kDefaultMarginTol,
                                                std::vector<SkippedEvaluation>* skipped = nullptr);

}  // namespace blockform
