#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace blockform {

/// Catalog of the block-matrix inequalities, plus Oppenheim's inequality which
/// is checked on pairs of plain matrices and never appears in the block catalog.
enum class InequalityId {
    fischer,
    thompson,
    fiedler_markham,
    lin,
    tensor_det_bound,
    sym_det_bound,
    ext_fm_tensor,
    ext_fm_sym,
    thompson_tensor_exp,
    thompson_sym_exp,
    thompson_power,
    fischer_power_2x2,
    oppenheim,
};

/// The twelve block-matrix ids in catalog order.
inline constexpr std::array<InequalityId, 12> kCatalog = {
    InequalityId::fischer,          InequalityId::thompson,           InequalityId::fiedler_markham,
    InequalityId::lin,              InequalityId::tensor_det_bound,   InequalityId::sym_det_bound,
    InequalityId::ext_fm_tensor,    InequalityId::ext_fm_sym,         InequalityId::thompson_tensor_exp,
    InequalityId::thompson_sym_exp, InequalityId::thompson_power,     InequalityId::fischer_power_2x2,
};

std::string_view to_string(InequalityId id) noexcept;
std::optional<InequalityId> parse_inequality_id(std::string_view name) noexcept;

/// True for ids whose recipe depends on the power r.
bool uses_power(InequalityId id) noexcept;

/// One inequality evaluation in log domain: margin = lhs_log - rhs_log.
struct InequalityReport {
    InequalityId id = InequalityId::fischer;
    int r = 1;
    double lhs_log = 0.0;
    double rhs_log = 0.0;
    double margin = 0.0;
    bool holds = true;
    bool degenerate = false;
    /// Largest relative imaginary part discarded from a determinant that must be real.
    double imag_residual = 0.0;
    double tol = 0.0;
};

/// A quantity that must be real and positive, already in log domain.
struct LogSide {
    double log_value = 0.0;
    /// Exactly or numerically zero.
    bool singular = false;
    /// Real part came out negative or zero while not flagged singular.
    bool nonpositive = false;
    double imag_residual = 0.0;
};

/// Relative imaginary part above which a determinant that must be real is rejected.
inline constexpr double kImagRejectRel = 1e-6;

/**
 * Apply the degeneracy and complex-residue policy to one evaluation.
 *
 * A singular right-hand side (det H = 0) always holds and is flagged
 * degenerate; the right-hand log is reported as -inf. A singular or
 * non-positive left-hand side against a nonsingular right-hand side is a
 * violation. Throws NumericalError when a nondegenerate side carries an
 * imaginary part above kImagRejectRel.
 */
InequalityReport make_report(InequalityId id, int r, const LogSide& lhs, const LogSide& rhs, double tol);

}  // namespace blockform
