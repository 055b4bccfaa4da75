#include "blockform/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace blockform {

namespace {

constexpr double kStrictPivotRel = 1e-14;

/// Partial-pivot LU sweep on a scratch copy, accumulating log|det| and phase.
LogDet lu_log_det(ComplexMatrix m) {
    const std::size_t n = m.rows();
    LogDet out;
    out.log_modulus = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t p = j;
        double best = std::abs(m(j, j));
        for (std::size_t i = j + 1; i < n; ++i) {
            const double v = std::abs(m(i, j));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best < kPivotUnderflow) return LogDet::zero();
        if (p != j) {
            for (std::size_t l = 0; l < n; ++l) std::swap(m(j, l), m(p, l));
            out.phase = -out.phase;
        }
        const Complex pivot = m(j, j);
        out.log_modulus += std::log(best);
        out.phase *= pivot / best;
        out.phase /= std::abs(out.phase);
        for (std::size_t i = j + 1; i < n; ++i) {
            const Complex factor = m(i, j) / pivot;
            if (factor == Complex{0.0, 0.0}) continue;
            for (std::size_t l = j + 1; l < n; ++l) m(i, l) -= factor * m(j, l);
        }
    }
    return out;
}

double psd_scale(const ComplexMatrix& m) {
    const double n = static_cast<double>(m.rows());
    double scale = n > 0 ? m.trace().real() / n : 0.0;
    if (!(scale > 0.0)) scale = m.max_abs();
    if (!(scale > 0.0)) scale = 1.0;
    return scale;
}

/// Eliminate pivot p from the active set of a Hermitian work matrix.
void eliminate(ComplexMatrix& m, const std::vector<std::size_t>& active, std::size_t p) {
    const double d = m(p, p).real();
    for (std::size_t i : active) {
        if (i == p) continue;
        const Complex f = m(i, p) / d;
        if (f == Complex{0.0, 0.0}) continue;
        for (std::size_t l : active) {
            if (l == p) continue;
            m(i, l) -= f * std::conj(m(l, p));
        }
    }
}

std::size_t argmax_diag(const ComplexMatrix& m, const std::vector<std::size_t>& active) {
    return *std::max_element(active.begin(), active.end(),
                             [&](std::size_t a, std::size_t b) { return m(a, a).real() < m(b, b).real(); });
}

}  // namespace

Complex LogDet::value() const {
    if (singular) return {0.0, 0.0};
    return phase * std::exp(log_modulus);
}

LogSide as_log_side(const LogDet& d, double exponent) {
    LogSide side;
    side.singular = d.singular;
    side.log_value = d.singular ? -std::numeric_limits<double>::infinity() : exponent * d.log_modulus;
    side.imag_residual = d.singular ? 0.0 : std::abs(d.phase.imag());
    side.nonpositive = !d.singular && d.phase.real() <= 0.0;
    return side;
}

Complex determinant(const ComplexMatrix& a) {
    require_square(a, "determinant");
    return lu_log_det(a).value();
}

LogDet log_det(const ComplexMatrix& a) {
    require_square(a, "log_det");
    return lu_log_det(a);
}

LogDet log_det_equilibrated(const ComplexMatrix& a) {
    require_square(a, "log_det_equilibrated");
    const std::size_t n = a.rows();
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = a(i, i).real();
        if (!(diag[i] > 0.0)) return lu_log_det(a);
    }
    ComplexMatrix scaled(n, n);
    std::vector<double> inv_sqrt(n);
    for (std::size_t i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(diag[i]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scaled(i, j) = a(i, j) * (inv_sqrt[i] * inv_sqrt[j]);
    LogDet out = lu_log_det(std::move(scaled));
    if (out.singular) return out;
    for (double d : diag) out.log_modulus += std::log(d);
    return out;
}

ComplexMatrix hermitize(const ComplexMatrix& a) {
    require_square(a, "hermitize");
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        out(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    }
    return out;
}

ComplexMatrix hermitize_checked(const ComplexMatrix& a, double tol) {
    require_square(a, "hermitize_checked");
    const double asym = max_abs_diff(a, a.adjoint());
    if (asym > tol * (1.0 + a.max_abs())) {
        throw PreconditionError("matrix is not Hermitian: max|A - A*| = " + std::to_string(asym));
    }
    return hermitize(a);
}

PsdVerdict is_psd(const ComplexMatrix& a, double tol, std::optional<double> scale) {
    require_square(a, "is_psd");
    if (tol < 0.0) throw std::invalid_argument("is_psd: tolerance must be non-negative");
    PsdVerdict verdict;
    verdict.tolerance_used = tol;
    verdict.is_hermitian = max_abs_diff(a, a.adjoint()) <= tol * (1.0 + a.max_abs());
    if (!verdict.is_hermitian) return verdict;

    ComplexMatrix m = hermitize(a);
    const double floor = tol * (scale ? *scale : psd_scale(m));
    std::vector<std::size_t> active(m.rows());
    std::iota(active.begin(), active.end(), std::size_t{0});

    double proxy = 0.0;
    bool ok = true;
    while (!active.empty()) {
        const std::size_t p = argmax_diag(m, active);
        const double d = m(p, p).real();
        if (d > floor) {
            eliminate(m, active, p);
            active.erase(std::find(active.begin(), active.end(), p));
            continue;
        }
        // Every remaining diagonal is at or below the floor.
        for (std::size_t i : active) proxy = std::min(proxy, m(i, i).real());
        for (std::size_t x = 0; x < active.size(); ++x) {
            for (std::size_t y = x + 1; y < active.size(); ++y) {
                const std::size_t i = active[x];
                const std::size_t l = active[y];
                const double b = std::abs(m(i, l));
                if (b <= floor) continue;
                const double aa = m(i, i).real();
                const double cc = m(l, l).real();
                const double lam = 0.5 * (aa + cc) - std::hypot(0.5 * (aa - cc), b);
                proxy = std::min(proxy, lam);
            }
        }
        break;
    }
    if (proxy < -floor) ok = false;
    verdict.min_eigen_proxy = proxy;
    verdict.is_psd = ok;
    return verdict;
}

bool is_numerically_singular(const ComplexMatrix& a, double rel_tol) {
    require_square(a, "is_numerically_singular");
    const std::size_t n = a.rows();
    ComplexMatrix m = hermitize(a);
    std::vector<double> inv_sqrt(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = m(i, i).real();
        if (!(d > 0.0)) return true;
        inv_sqrt[i] = 1.0 / std::sqrt(d);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) *= inv_sqrt[i] * inv_sqrt[j];

    std::vector<std::size_t> active(n);
    std::iota(active.begin(), active.end(), std::size_t{0});
    while (!active.empty()) {
        const std::size_t p = argmax_diag(m, active);
        if (m(p, p).real() <= rel_tol) return true;
        eliminate(m, active, p);
        active.erase(std::find(active.begin(), active.end(), p));
    }
    return false;
}

ComplexMatrix cholesky_upper(const ComplexMatrix& a) {
    require_square(a, "cholesky_upper");
    const std::size_t n = a.rows();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a(i, i)));
    const double floor = kStrictPivotRel * static_cast<double>(n) * max_diag;

    ComplexMatrix u(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j).real();
        for (std::size_t p = 0; p < j; ++p) d -= std::norm(u(p, j));
        if (!(d > floor)) throw FactorizationError("Cholesky: matrix is singular or indefinite", j);
        const double ujj = std::sqrt(d);
        u(j, j) = ujj;
        for (std::size_t l = j + 1; l < n; ++l) {
            Complex s = a(j, l);
            for (std::size_t p = 0; p < j; ++p) s -= std::conj(u(p, j)) * u(p, l);
            u(j, l) = s / ujj;
        }
    }
    return u;
}

BlockMatrix block_cholesky(const BlockMatrix& h) {
    return BlockMatrix(h.n(), h.k(), cholesky_upper(hermitize_checked(h.body())));
}

ComplexMatrix hadamard_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("hadamard_product: shape mismatch");
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) * b(i, j);
    return out;
}

ComplexMatrix hadamard_power(const ComplexMatrix& a, int r) {
    if (r < 0) throw std::invalid_argument("hadamard_power: negative exponent");
    if (r == 0) return ComplexMatrix::filled(a.rows(), a.cols(), Complex{1.0, 0.0});
    ComplexMatrix out = a;
    for (int step = 1; step < r; ++step)
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= a(i, j);
    return out;
}

ComplexMatrix principal_submatrix(const ComplexMatrix& a, std::span<const std::size_t> idx) {
    require_square(a, "principal_submatrix");
    for (std::size_t t = 0; t < idx.size(); ++t) {
        if (idx[t] >= a.rows())
            throw DimensionError("principal_submatrix: index " + std::to_string(idx[t]) + " out of range");
        if (t > 0 && idx[t] <= idx[t - 1])
            throw DimensionError("principal_submatrix: indices must be strictly increasing");
    }
    ComplexMatrix out(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = a(idx[i], idx[j]);
    return out;
}

InequalityReport check_oppenheim(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    require_square(a, "check_oppenheim");
    require_square(b, "check_oppenheim");
    if (a.rows() != b.rows()) throw DimensionError("check_oppenheim: operands differ in size");
    for (const auto* m : {&a, &b}) {
        const PsdVerdict v = is_psd(*m);
        if (!v.is_psd) {
            throw PreconditionError("check_oppenheim: operand is not PSD (min pivot " +
                                    std::to_string(v.min_eigen_proxy) + ")");
        }
    }
    const ComplexMatrix ah = hermitize(a);
    const ComplexMatrix bh = hermitize(b);

    const LogSide lhs = as_log_side(log_det_equilibrated(hadamard_product(ah, bh)));
    LogSide rhs = as_log_side(log_det_equilibrated(ah));
    rhs.singular = rhs.singular || is_numerically_singular(ah);
    for (std::size_t i = 0; i < bh.rows() && !rhs.singular; ++i) {
        const double bii = bh(i, i).real();
        if (!(bii > 0.0)) {
            rhs.singular = true;
        } else {
            rhs.log_value += std::log(bii);
        }
    }
    return make_report(InequalityId::oppenheim, 1, lhs, rhs, tol);
}

}  // namespace blockform
