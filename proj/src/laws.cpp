#include "blockform/laws.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "blockform/block_matrix.hpp"
#include "blockform/dense.hpp"
#include "blockform/generators.hpp"

namespace blockform {

namespace {

struct Shape {
    std::size_t n;
    std::size_t k;
    int r;
};

Shape shape_for(const LawConfig& cfg, std::size_t i) {
    const std::size_t kr = cfg.max_k * static_cast<std::size_t>(cfg.max_r);
    return {1 + (i / kr) % cfg.max_n, 1 + i % cfg.max_k, 1 + static_cast<int>((i / cfg.max_k) % cfg.max_r)};
}

/// Accumulates err / allowance over instances.
class Tracker {
public:
    explicit Tracker(std::string name) { result_.name = std::move(name); }

    void record(double err, double allowance, const Shape& s, std::size_t instance) {
        const double ratio = allowance > 0.0 ? err / allowance : (err > 0.0 ? INFINITY : 0.0);
        if (!(ratio <= 1.0) && result_.passed) {
            result_.passed = false;
            std::ostringstream os;
            os << "instance " << instance << " (n=" << s.n << ", k=" << s.k << ", r=" << s.r << "): error " << err
               << " > allowance " << allowance;
            result_.detail = os.str();
        }
        if (std::isnan(ratio) || ratio > result_.worst_ratio) result_.worst_ratio = ratio;
    }

    /// Order relation: pivot proxy must not drop below -tol * scale.
    void record_psd(const ComplexMatrix& m, double tol, double scale, const Shape& s, std::size_t instance) {
        const PsdVerdict v = is_psd(m, tol, scale);
        if (!v.is_hermitian) {
            record(INFINITY, 1.0, s, instance);
            return;
        }
        record(std::max(0.0, -v.min_eigen_proxy), tol * scale, s, instance);
    }

    void count() { ++result_.checked; }
    LawResult take() { return std::move(result_); }

private:
    LawResult result_;
};

class BasisCache {
public:
    explicit BasisCache(bool flip) : flip_(flip) {}

    const SymmetricBasis& get(std::size_t k, int r) {
        auto key = std::make_pair(k, r);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            SymmetricBasis b = symmetric_basis(k, r);
            if (flip_) b = with_sign_flip(std::move(b));
            it = cache_.emplace(key, std::move(b)).first;
        }
        return it->second;
    }

private:
    bool flip_;
    std::map<std::pair<std::size_t, int>, SymmetricBasis> cache_;
};

ComplexMatrix gaussian(SeededStream& stream, std::size_t k) {
    ComplexMatrix g(k, k);
    const double s = 1.0 / std::sqrt(static_cast<double>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) g(i, j) = s * stream.next_complex_gaussian();
    return g;
}

/// I + G/2: random but comfortably conditioned, for determinant comparisons.
ComplexMatrix shifted_gaussian(SeededStream& stream, std::size_t k) {
    ComplexMatrix g = gaussian(stream, k);
    g *= 0.5;
    return g + ComplexMatrix::identity(k);
}

ComplexMatrix wishart(SeededStream& stream, std::size_t n, std::size_t k) {
    return generate({InstanceKind::wishart, n, k, stream.next_u64(), std::nullopt, std::nullopt}).body();
}

double trace_scale(const ComplexMatrix& m) {
    return std::max(std::abs(m.trace()) / static_cast<double>(m.rows()), 1e-300);
}

ComplexMatrix sym_of(const ComplexMatrix& a, const SymmetricBasis& basis) { return sym_power(a, basis); }

ComplexMatrix block_sym(const BlockMatrix& h, const SymmetricBasis& basis) {
    return block_map_sym(h, basis).body();
}

double magnitude_bound(const ComplexMatrix& a, int r) {
    return std::pow(static_cast<double>(a.rows()) * a.max_abs(), r);
}

double phase_gap(Complex p, Complex q) { return std::abs(std::arg(p / q)); }

Complex phase_power(Complex p, std::size_t e) {
    Complex out{1.0, 0.0};
    for (std::size_t i = 0; i < e; ++i) out *= p;
    return out / std::abs(out);
}

}  // namespace

LawConfig law_config_for_tol(double tol) {
    LawConfig cfg;
    cfg.order_tol = std::min(cfg.order_tol, tol);
    cfg.equality_tol = std::min(cfg.equality_tol, tol);
    cfg.embedding_tol = std::min(cfg.embedding_tol, tol);
    cfg.isometry_tol = std::min(cfg.isometry_tol, tol);
    return cfg;
}

SymmetricBasis with_sign_flip(SymmetricBasis basis) {
    ComplexMatrix& s = basis.isometry;
    for (std::size_t col = 0; col < s.cols(); ++col) {
        std::size_t nonzero = 0;
        std::size_t first = 0;
        for (std::size_t row = 0; row < s.rows(); ++row) {
            if (s(row, col) != Complex{0.0, 0.0}) {
                if (nonzero == 0) first = row;
                ++nonzero;
            }
        }
        if (nonzero >= 2) {
            s(first, col) = -s(first, col);
            break;
        }
    }
    return basis;
}

std::vector<LawResult> run_laws(const LawConfig& cfg) {
    BasisCache bases(cfg.inject_sym_sign_flip);
    std::vector<LawResult> results;
    const double eq = cfg.equality_tol;
    const double ord = cfg.order_tol;

    auto stream_for = [&](std::uint64_t salt, std::size_t i) {
        return SeededStream(derive_trial_seed(cfg.seed ^ (salt * 0x100000001B3ULL), i));
    };

    {
        Tracker tensor("tensor_multiplicativity");
        Tracker sym("sym_multiplicativity");
        for (std::size_t i = 0; i < cfg.instances; ++i) {
            const Shape s = shape_for(cfg, i);
            auto stream = stream_for(1, i);
            const ComplexMatrix a = gaussian(stream, s.k);
            const ComplexMatrix b = gaussian(stream, s.k);
            const ComplexMatrix ta = tensor_power(a, s.r);
            const ComplexMatrix tb = tensor_power(b, s.r);
            const double scale = 1.0 + ta.max_abs() * tb.max_abs() * static_cast<double>(ta.rows());
            tensor.record(max_abs_diff(tensor_power(a * b, s.r), ta * tb), eq * scale, s, i);
            tensor.count();

            const SymmetricBasis& basis = bases.get(s.k, s.r);
            const ComplexMatrix sa = sym_of(a, basis);
            const ComplexMatrix sb = sym_of(b, basis);
            const double sym_scale = 1.0 + sa.max_abs() * sb.max_abs() * static_cast<double>(sa.rows());
            sym.record(max_abs_diff(sym_of(a * b, basis), sa * sb), eq * sym_scale, s, i);
            sym.count();
        }
        results.push_back(tensor.take());
        results.push_back(sym.take());
    }

    {
        Tracker tensor("tensor_trace");
        Tracker sym("sym_trace");
        for (std::size_t i = 0; i < cfg.instances; ++i) {
            const Shape s = shape_for(cfg, i);
            auto stream = stream_for(2, i);
            const ComplexMatrix a = gaussian(stream, s.k);
            Complex expected{1.0, 0.0};
            for (int t = 0; t < s.r; ++t) expected *= a.trace();
            double diag_abs = 0.0;
            for (std::size_t d = 0; d < s.k; ++d) diag_abs += std::abs(a(d, d));
            tensor.record(std::abs(tensor_power(a, s.r).trace() - expected), eq * (1.0 + std::pow(diag_abs, s.r)), s,
                          i);
            tensor.count();

            const SymmetricBasis& basis = bases.get(s.k, s.r);
            const double bound = static_cast<double>(basis.dim) * magnitude_bound(a, s.r);
            sym.record(std::abs(sym_of(a, basis).trace() - complete_symmetric(a, s.r)), eq * (1.0 + bound), s, i);
            sym.count();
        }
        results.push_back(tensor.take());
        results.push_back(sym.take());
    }

    {
        Tracker tensor("tensor_determinant");
        Tracker sym("sym_determinant");
        for (std::size_t i = 0; i < cfg.instances; ++i) {
            const Shape s = shape_for(cfg, i);
            auto stream = stream_for(3, i);
            const ComplexMatrix a = shifted_gaussian(stream, s.k);
            const LogDet base = log_det(a);

            const std::size_t te = static_cast<std::size_t>(s.r) * checked_pow(s.k, s.r - 1, kTensorCapacity);
            const LogDet tdet = log_det(tensor_power(a, s.r));
            const double t_expected = static_cast<double>(te) * base.log_modulus;
            tensor.record(std::abs(tdet.log_modulus - t_expected), eq * (1.0 + std::abs(t_expected)), s, i);
            tensor.record(phase_gap(tdet.phase, phase_power(base.phase, te)), eq * (1.0 + static_cast<double>(te)), s,
                          i);
            tensor.count();

            const SymmetricBasis& basis = bases.get(s.k, s.r);
            // (r/k) C(k+r-1, r) = C(k+r-1, r-1)
            const std::size_t se = binomial(s.k + static_cast<std::size_t>(s.r) - 1, static_cast<std::size_t>(s.r) - 1);
            const LogDet sdet = log_det(sym_of(a, basis));
            const double s_expected = static_cast<double>(se) * base.log_modulus;
            sym.record(std::abs(sdet.log_modulus - s_expected), eq * (1.0 + std::abs(s_expected)), s, i);
            sym.record(phase_gap(sdet.phase, phase_power(base.phase, se)), eq * (1.0 + static_cast<double>(se)), s, i);
            sym.count();
        }
        results.push_back(tensor.take());
        results.push_back(sym.take());
    }

    {
        Tracker preserve("psd_preservation");
        Tracker mono("monotonicity");
        for (std::size_t i = 0; i < cfg.instances; ++i) {
            const Shape s = shape_for(cfg, i);
            auto stream = stream_for(4, i);
            const ComplexMatrix a = wishart(stream, 1, s.k);
            const ComplexMatrix b = wishart(stream, 1, s.k);
            const ComplexMatrix c = wishart(stream, 1, s.k);
            const SymmetricBasis& basis2 = bases.get(s.k, 2);

            const ComplexMatrix ab = kron(a, b);
            preserve.record_psd(ab, ord, trace_scale(ab), s, i);
            const ComplexMatrix mab = mixed_sym_product(a, b, basis2);
            preserve.record_psd(mab, ord, trace_scale(mab), s, i);
            preserve.count();

            // a + b >= a
            const ComplexMatrix big = a + b;
            const ComplexMatrix big_c = kron(big, c);
            mono.record_psd(big_c - kron(a, c), ord, trace_scale(big_c), s, i);
            const ComplexMatrix mbig = mixed_sym_product(big, c, basis2);
            mono.record_psd(mbig - mixed_sym_product(a, c, basis2), ord, trace_scale(mbig), s, i);
            mono.count();
        }
        results.push_back(preserve.take());
        results.push_back(mono.take());
    }

    {
        Tracker super("superadditivity");
        for (std::size_t i = 0; i < cfg.instances; ++i) {
            const Shape s = shape_for(cfg, i);
            auto stream = stream_for(5, i);
            const ComplexMatrix a = wishart(stream, 1, s.k);
            const ComplexMatrix b = wishart(stream, 1, s.k);
            const ComplexMatrix whole = tensor_power(a + b, s.r);
            super.record_psd(whole - tensor_power(a, s.r) - tensor_power(b, s.r), ord, trace_scale(whole), s, i);
            const SymmetricBasis& basis = bases.get(s.k, s.r);
            const ComplexMatrix sym_whole = sym_of(a + b, basis);
            super.record_psd(sym_whole - sym_of(a, basis) - sym_of(b, basis), ord, trace_scale(sym_whole), s, i);
            super.count();
        }
        results.push_back(super.take());
    }

    {
        Tracker iso("sym_isometry");
        std::size_t case_index = 0;
        for (std::size_t k = 1; k <= 4; ++k) {
            for (int r = 1; r <= 4; ++r) {
                const SymmetricBasis& basis = bases.get(k, r);
                const ComplexMatrix gram = basis.isometry.adjoint() * basis.isometry;
                iso.record(max_abs_diff(gram, ComplexMatrix::identity(basis.dim)), cfg.isometry_tol,
                           {1, k, r}, case_index++);
                iso.count();
            }
        }
        results.push_back(iso.take());
    }

    {
        Tracker embed("embedding");
        std::size_t used = 0;
        for (std::size_t i = 0; used < cfg.instances; ++i) {
            const Shape s = shape_for(cfg, i);
            const double side = static_cast<double>(s.n * s.k);
            if (std::pow(side, s.r) > static_cast<double>(cfg.embedding_limit)) continue;
            auto stream = stream_for(6, i);
            const BlockMatrix h(s.n, s.k, gaussian(stream, s.n * s.k));
            const ComplexMatrix t = block_map_tensor(h, s.r).body();
            const auto idx = embedding_index_set(s.n, s.k, s.r);
            const ComplexMatrix extracted = principal_submatrix(tensor_power(h.body(), s.r), idx);
            embed.record(max_abs_diff(extracted, t), cfg.embedding_tol * t.max_abs(), s, used);
            embed.count();
            ++used;
        }
        results.push_back(embed.take());
    }

    {
        Tracker inherit("block_psd_inheritance");
        Tracker super("block_superadditivity");
        Tracker compress("compression_consistency");
        for (std::size_t i = 0; i < cfg.instances; ++i) {
            const Shape s = shape_for(cfg, i);
            auto stream = stream_for(7, i);
            const BlockMatrix a(s.n, s.k, wishart(stream, s.n, s.k));
            const BlockMatrix b(s.n, s.k, wishart(stream, s.n, s.k));
            const BlockMatrix sum(s.n, s.k, a.body() + b.body());
            const SymmetricBasis& basis = bases.get(s.k, s.r);

            const ComplexMatrix ta = block_map_tensor(a, s.r).body();
            const ComplexMatrix qa = block_sym(a, basis);
            inherit.record_psd(ta, ord, trace_scale(ta), s, i);
            inherit.record_psd(qa, ord, trace_scale(qa), s, i);
            inherit.count();

            const ComplexMatrix t_sum = block_map_tensor(sum, s.r).body();
            super.record_psd(t_sum - ta - block_map_tensor(b, s.r).body(), ord, trace_scale(t_sum), s, i);
            const ComplexMatrix q_sum = block_sym(sum, basis);
            super.record_psd(q_sum - qa - block_sym(b, basis), ord, trace_scale(q_sum), s, i);
            super.count();

            const BlockMatrix tb(s.n, checked_pow(s.k, s.r, kTensorCapacity), ta);
            const BlockMatrix qb(s.n, basis.dim, qa);
            const ComplexMatrix ctp = compress_trace_power(a, s.r);
            const ComplexMatrix csp = compress_sym_poly(a, s.r);
            for (std::size_t p = 0; p < s.n; ++p) {
                for (std::size_t q = 0; q < s.n; ++q) {
                    const ComplexMatrix blk = a.block(p, q);
                    const double bound = magnitude_bound(blk, s.r);
                    compress.record(std::abs(ctp(p, q) - tb.block(p, q).trace()), eq * (1.0 + bound), s, i);
                    compress.record(std::abs(csp(p, q) - qb.block(p, q).trace()),
                                    eq * (1.0 + static_cast<double>(basis.dim) * bound), s, i);
                }
            }
            compress.count();
        }
        results.push_back(inherit.take());
        results.push_back(super.take());
        results.push_back(compress.take());
    }

    return results;
}

}  // namespace blockform
