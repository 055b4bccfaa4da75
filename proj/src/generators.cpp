#include "blockform/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockform {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::pair<InstanceKind, std::string_view> kKindNames[] = {
    {InstanceKind::wishart, "wishart"},
    {InstanceKind::block_diagonal, "block_diagonal"},
    {InstanceKind::rank_deficient, "rank_deficient"},
    {InstanceKind::near_singular, "near_singular"},
    {InstanceKind::identity, "identity"},
};

ComplexMatrix gaussian_matrix(SeededStream& stream, std::size_t rows, std::size_t cols) {
    ComplexMatrix x(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) x(i, j) = stream.next_complex_gaussian();
    return x;
}

/// X* X / scale, filled from the upper triangle so the result is exactly Hermitian.
ComplexMatrix gram(const ComplexMatrix& x, double scale) {
    const std::size_t m = x.cols();
    ComplexMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            Complex s{0.0, 0.0};
            for (std::size_t p = 0; p < x.rows(); ++p) s += std::conj(x(p, i)) * x(p, j);
            s /= scale;
            if (i == j) {
                out(i, i) = s.real();
            } else {
                out(i, j) = s;
                out(j, i) = std::conj(s);
            }
        }
    }
    return out;
}

/// Sum of the first m-1 outer products of a greedy pivoted Cholesky sweep,
/// i.e. w with its smallest pivot direction projected out.
ComplexMatrix drop_last_pivot(const ComplexMatrix& w) {
    const std::size_t m = w.rows();
    ComplexMatrix schur = w;
    ComplexMatrix kept(m, m);
    std::vector<bool> used(m, false);
    for (std::size_t step = 0; step + 1 < m; ++step) {
        std::size_t p = m;
        for (std::size_t i = 0; i < m; ++i)
            if (!used[i] && (p == m || schur(i, i).real() > schur(p, p).real())) p = i;
        const double d = schur(p, p).real();
        if (!(d > 0.0)) break;
        std::vector<Complex> col(m);
        for (std::size_t i = 0; i < m; ++i) col[i] = used[i] ? Complex{0.0, 0.0} : schur(i, p) / std::sqrt(d);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i; j < m; ++j) {
                const Complex v = col[i] * std::conj(col[j]);
                if (i == j) {
                    kept(i, i) += v.real();
                    schur(i, i) -= v.real();
                } else {
                    kept(i, j) += v;
                    kept(j, i) = std::conj(kept(i, j));
                    schur(i, j) -= v;
                    schur(j, i) = std::conj(schur(i, j));
                }
            }
        }
        used[p] = true;
    }
    return kept;
}

}  // namespace

std::string_view to_string(InstanceKind kind) noexcept {
    for (const auto& [k, name] : kKindNames)
        if (k == kind) return name;
    return "unknown";
}

std::optional<InstanceKind> parse_instance_kind(std::string_view name) noexcept {
    for (const auto& [k, kind_name] : kKindNames)
        if (kind_name == name) return k;
    return std::nullopt;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t SeededStream::next_u64() noexcept {
    ++counter_;
    return mix64(seed_ + counter_ * kGolden);
}

double SeededStream::next_unit() noexcept {
    // 53 random bits mapped onto (0, 1].
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

std::complex<double> SeededStream::next_complex_gaussian() noexcept {
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double radius = std::sqrt(-std::log(u1));  // |z|^2 ~ Exp(1)
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) noexcept {
    return mix64(master_seed + (trial_index + 1) * kGolden);
}

void validate(const GeneratorSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("generator spec: n must be at least 1");
    if (spec.k < 1) throw std::invalid_argument("generator spec: k must be at least 1");
    const std::size_t m = spec.n * spec.k;
    if (spec.rank) {
        if (*spec.rank > m) {
            throw std::invalid_argument("generator spec: rank " + std::to_string(*spec.rank) + " exceeds nk = " +
                                        std::to_string(m));
        }
        if (*spec.rank < 1) throw std::invalid_argument("generator spec: rank must be at least 1");
    }
    if (spec.epsilon && !(*spec.epsilon > 0.0 && std::isfinite(*spec.epsilon))) {
        throw std::invalid_argument("generator spec: epsilon must be positive and finite");
    }
}

BlockMatrix generate(const GeneratorSpec& spec) {
    validate(spec);
    const std::size_t n = spec.n;
    const std::size_t k = spec.k;
    const std::size_t m = n * k;
    SeededStream stream(spec.seed);

    switch (spec.kind) {
        case InstanceKind::identity:
            return BlockMatrix::identity(n, k);
        case InstanceKind::wishart:
            return BlockMatrix(n, k, gram(gaussian_matrix(stream, m, m), static_cast<double>(m)));
        case InstanceKind::block_diagonal: {
            ComplexMatrix body(m, m);
            for (std::size_t j = 0; j < n; ++j) {
                const ComplexMatrix blk = gram(gaussian_matrix(stream, k, k), static_cast<double>(k));
                for (std::size_t p = 0; p < k; ++p)
                    for (std::size_t q = 0; q < k; ++q) body(j * k + p, j * k + q) = blk(p, q);
            }
            return BlockMatrix(n, k, std::move(body));
        }
        case InstanceKind::rank_deficient: {
            const std::size_t rank = spec.rank.value_or(std::max<std::size_t>(1, m - 1));
            return BlockMatrix(n, k, gram(gaussian_matrix(stream, rank, m), static_cast<double>(m)));
        }
        case InstanceKind::near_singular: {
            const double eps = spec.epsilon.value_or(kDefaultNearSingularEpsilon);
            ComplexMatrix body = drop_last_pivot(gram(gaussian_matrix(stream, m, m), static_cast<double>(m)));
            for (std::size_t i = 0; i < m; ++i) body(i, i) += eps;
            return BlockMatrix(n, k, std::move(body));
        }
    }
    throw std::invalid_argument("generator spec: unknown kind");
}

}  // namespace blockform
