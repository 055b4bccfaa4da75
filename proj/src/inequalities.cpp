#include "blockform/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "blockform/dense.hpp"
#include "blockform/multilinear.hpp"

namespace blockform {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct IdName {
    InequalityId id;
    std::string_view name;
};

constexpr IdName kNames[] = {
    {InequalityId::fischer, "fischer"},
    {InequalityId::thompson, "thompson"},
    {InequalityId::fiedler_markham, "fiedler_markham"},
    {InequalityId::lin, "lin"},
    {InequalityId::tensor_det_bound, "tensor_det_bound"},
    {InequalityId::sym_det_bound, "sym_det_bound"},
    {InequalityId::ext_fm_tensor, "ext_fm_tensor"},
    {InequalityId::ext_fm_sym, "ext_fm_sym"},
    {InequalityId::thompson_tensor_exp, "thompson_tensor_exp"},
    {InequalityId::thompson_sym_exp, "thompson_sym_exp"},
    {InequalityId::thompson_power, "thompson_power"},
    {InequalityId::fischer_power_2x2, "fischer_power_2x2"},
    {InequalityId::oppenheim, "oppenheim"},
};

/// H after the precondition check, shared by every id evaluated on it.
struct Prepared {
    BlockMatrix h;
    LogSide log_det_h;
};

Prepared prepare(const BlockMatrix& h, double tol) {
    const PsdVerdict verdict = is_psd(h.body(), tol);
    if (!verdict.is_psd) {
        throw PreconditionError(std::string("block matrix is not positive semidefinite") +
                                (verdict.is_hermitian ? "" : " (not Hermitian)") +
                                ", min pivot proxy " + std::to_string(verdict.min_eigen_proxy));
    }
    BlockMatrix herm(h.n(), h.k(), hermitize(h.body()));
    LogSide side = as_log_side(log_det_equilibrated(herm.body()));
    if (is_numerically_singular(herm.body())) {
        side.singular = true;
        side.log_value = -kInf;
    }
    return {std::move(herm), side};
}

/// log det of a matrix that is PSD in exact arithmetic.
LogSide psd_log_side(const ComplexMatrix& m) {
    return as_log_side(log_det_equilibrated(hermitize(m)));
}

LogSide scaled(LogSide side, double factor, double offset = 0.0) {
    if (!side.singular) side.log_value = factor * (side.log_value + offset);
    return side;
}

LogSide fischer_lhs(const BlockMatrix& h) {
    LogSide sum;
    for (std::size_t i = 0; i < h.n(); ++i) {
        const LogSide s = psd_log_side(h.block(i, i));
        sum.singular = sum.singular || s.singular;
        sum.nonpositive = sum.nonpositive || s.nonpositive;
        sum.imag_residual = std::max(sum.imag_residual, s.imag_residual);
        sum.log_value += s.log_value;
    }
    if (sum.singular) sum.log_value = -kInf;
    return sum;
}

/// log[(det H11 det H22)^r - (det H21 det H12)^r]
LogSide fischer_power_lhs(const BlockMatrix& h, int r) {
    const Complex d11 = determinant(h.block(0, 0));
    const Complex d22 = determinant(h.block(1, 1));
    const Complex d12 = determinant(h.block(0, 1));
    const Complex d21 = determinant(h.block(1, 0));
    const Complex q = d11 * d22;
    const Complex p = d21 * d12;

    LogSide side;
    if (std::abs(q) == 0.0) {
        side.singular = true;
        side.log_value = -kInf;
        return side;
    }
    // q^r (1 - (p/q)^r) keeps the powers in range.
    const Complex t = p / q;
    Complex t_pow{1.0, 0.0};
    for (int step = 0; step < r; ++step) t_pow *= t;
    const Complex rest = Complex{1.0, 0.0} - t_pow;
    const double q_imag = std::abs(q.imag()) / std::abs(q);
    const double rest_imag = std::abs(rest) > 0.0 ? std::abs(rest.imag()) / std::abs(rest) : 0.0;
    side.imag_residual = std::max(q_imag, rest_imag);
    if (rest.real() == 0.0) {
        side.singular = true;
        side.log_value = -kInf;
        return side;
    }
    side.nonpositive = q.real() <= 0.0 || rest.real() < 0.0;
    side.log_value = static_cast<double>(r) * std::log(std::abs(q)) + std::log(std::abs(rest.real()));
    return side;
}

InequalityReport evaluate_prepared(InequalityId id, const Prepared& prep, int r, double tol) {
    if (r < 1) throw std::invalid_argument("evaluate: r must be at least 1");
    const BlockMatrix& h = prep.h;
    const auto n = static_cast<double>(h.n());
    const auto k = static_cast<double>(h.k());
    const double log_k = std::log(k);
    const LogSide& det_h = prep.log_det_h;
    const int report_r = uses_power(id) ? r : 1;

    LogSide lhs;
    LogSide rhs = det_h;
    switch (id) {
        case InequalityId::fischer:
            lhs = fischer_lhs(h);
            break;
        case InequalityId::thompson:
            lhs = psd_log_side(compress_det(h));
            break;
        case InequalityId::fiedler_markham:
            lhs = scaled(psd_log_side(compress_trace(h)), k, -log_k);
            break;
        case InequalityId::lin:
            lhs = scaled(psd_log_side(compress_trace(h)), k, -n * log_k);
            break;
        case InequalityId::tensor_det_bound:
            lhs = psd_log_side(block_map_tensor(h, r).body());
            rhs = scaled(det_h, static_cast<double>(tensor_det_exponent(h.k(), r)));
            break;
        case InequalityId::sym_det_bound:
            lhs = psd_log_side(block_map_sym(h, r).body());
            rhs = scaled(det_h, static_cast<double>(sym_det_exponent(h.k(), r)));
            break;
        case InequalityId::ext_fm_tensor:
            lhs = scaled(psd_log_side(compress_trace_power(h, r)), k, -static_cast<double>(r) * n * log_k);
            rhs = scaled(det_h, static_cast<double>(r));
            break;
        case InequalityId::ext_fm_sym: {
            const double log_dim = std::log(static_cast<double>(sym_dim(h.k(), r)));
            lhs = scaled(psd_log_side(compress_sym_poly(h, r)), k, -n * log_dim);
            rhs = scaled(det_h, static_cast<double>(r));
            break;
        }
        case InequalityId::thompson_tensor_exp: {
            const std::size_t e = tensor_det_exponent(h.k(), r);
            lhs = psd_log_side(hadamard_power(compress_det(h), static_cast<int>(e)));
            rhs = scaled(det_h, static_cast<double>(e));
            break;
        }
        case InequalityId::thompson_sym_exp: {
            const std::size_t e = sym_det_exponent(h.k(), r);
            lhs = psd_log_side(hadamard_power(compress_det(h), static_cast<int>(e)));
            rhs = scaled(det_h, static_cast<double>(e));
            break;
        }
        case InequalityId::thompson_power:
            lhs = psd_log_side(hadamard_power(compress_det(h), r));
            rhs = scaled(det_h, static_cast<double>(r));
            break;
        case InequalityId::fischer_power_2x2:
            if (h.n() != 2) throw std::invalid_argument("fischer_power_2x2 requires n = 2");
            lhs = fischer_power_lhs(h, r);
            rhs = scaled(det_h, static_cast<double>(r));
            break;
        case InequalityId::oppenheim:
            throw std::invalid_argument("oppenheim is not a block-matrix inequality; use check_oppenheim");
    }
    return make_report(id, report_r, lhs, rhs, tol);
}

bool capacity_limited(InequalityId id) noexcept {
    return id == InequalityId::tensor_det_bound || id == InequalityId::sym_det_bound;
}

}  // namespace

std::string_view to_string(InequalityId id) noexcept {
    for (const auto& entry : kNames)
        if (entry.id == id) return entry.name;
    return "unknown";
}

std::optional<InequalityId> parse_inequality_id(std::string_view name) noexcept {
    for (const auto& entry : kNames)
        if (entry.name == name) return entry.id;
    return std::nullopt;
}

bool uses_power(InequalityId id) noexcept {
    switch (id) {
        case InequalityId::fischer:
        case InequalityId::thompson:
        case InequalityId::fiedler_markham:
        case InequalityId::lin:
        case InequalityId::oppenheim:
            return false;
        default:
            return true;
    }
}

InequalityReport make_report(InequalityId id, int r, const LogSide& lhs, const LogSide& rhs, double tol) {
    InequalityReport rep;
    rep.id = id;
    rep.r = r;
    rep.tol = tol;
    rep.lhs_log = lhs.singular ? -kInf : lhs.log_value;
    rep.rhs_log = rhs.singular ? -kInf : rhs.log_value;
    rep.margin = rep.lhs_log - rep.rhs_log;
    rep.degenerate = lhs.singular || rhs.singular;
    rep.imag_residual = std::max(lhs.singular ? 0.0 : lhs.imag_residual, rhs.singular ? 0.0 : rhs.imag_residual);

    if (rhs.singular) {
        rep.holds = true;
        return rep;
    }
    if (rhs.nonpositive) throw NumericalError(std::string(to_string(id)) + ": right-hand determinant is not positive");
    if (rhs.imag_residual > kImagRejectRel) {
        throw NumericalError(std::string(to_string(id)) + ": right-hand determinant has imaginary residue " +
                             std::to_string(rhs.imag_residual));
    }
    if (!lhs.singular && lhs.imag_residual > kImagRejectRel) {
        throw NumericalError(std::string(to_string(id)) + ": left-hand determinant has imaginary residue " +
                             std::to_string(lhs.imag_residual));
    }
    rep.holds = !lhs.singular && !lhs.nonpositive && rep.margin >= -tol;
    return rep;
}

std::size_t sym_det_exponent(std::size_t k, int r) {
    if (r < 1) throw std::invalid_argument("sym_det_exponent: r must be at least 1");
    return binomial(k + static_cast<std::size_t>(r) - 1, static_cast<std::size_t>(r) - 1);
}

std::size_t tensor_det_exponent(std::size_t k, int r) {
    if (r < 1) throw std::invalid_argument("tensor_det_exponent: r must be at least 1");
    return static_cast<std::size_t>(r) * checked_pow(k, r - 1, std::numeric_limits<int>::max());
}

InequalityReport evaluate(InequalityId id, const BlockMatrix& h, int r, double tol) {
    if (id == InequalityId::oppenheim)
        throw std::invalid_argument("oppenheim is not a block-matrix inequality; use check_oppenheim");
    if (id == InequalityId::fischer_power_2x2 && h.n() != 2)
        throw std::invalid_argument("fischer_power_2x2 requires n = 2");
    if (r < 1) throw std::invalid_argument("evaluate: r must be at least 1");
    return evaluate_prepared(id, prepare(h, tol), r, tol);
}

std::vector<InequalityReport> evaluate_selected(const BlockMatrix& h, std::span<const InequalityId> ids,
                                                std::span<const int> r_values, double tol,
                                                std::vector<SkippedEvaluation>* skipped) {
    for (int r : r_values)
        if (r < 1) throw std::invalid_argument("evaluate_all: every r must be at least 1");
    const Prepared prep = prepare(h, tol);
    std::vector<InequalityReport> out;
    for (InequalityId id : ids) {
        if (id == InequalityId::oppenheim) continue;
        if (id == InequalityId::fischer_power_2x2 && h.n() != 2) continue;
        if (!uses_power(id)) {
            out.push_back(evaluate_prepared(id, prep, 1, tol));
            continue;
        }
        for (int r : r_values) {
            if (capacity_limited(id)) {
                try {
                    out.push_back(evaluate_prepared(id, prep, r, tol));
                } catch (const CapacityError& e) {
                    if (skipped) skipped->push_back({id, r, e.what()});
                }
                continue;
            }
            out.push_back(evaluate_prepared(id, prep, r, tol));
        }
    }
    return out;
}

std::vector<InequalityReport> evaluate_all(const BlockMatrix& h, std::span<const int> r_values, double tol,
                                           std::vector<SkippedEvaluation>* skipped) {
    return evaluate_selected(h, kCatalog, r_values, tol, skipped);
}

}  // namespace blockform
