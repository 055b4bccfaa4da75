#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "blockform/block_matrix.hpp"

namespace blockform {

enum class InstanceKind { wishart, block_diagonal, rank_deficient, near_singular, identity };

std::string_view to_string(InstanceKind kind) noexcept;
std::optional<InstanceKind> parse_instance_kind(std::string_view name) noexcept;

inline constexpr double kDefaultNearSingularEpsilon = 1e-6;

struct GeneratorSpec {
    InstanceKind kind = InstanceKind::wishart;
    std::size_t n = 1;
    std::size_t k = 1;
    std::uint64_t seed = 0;
    /// rank_deficient only; defaults to nk - 1 (at least 1).
    std::optional<std::size_t> rank;
    /// near_singular only; defaults to kDefaultNearSingularEpsilon.
    std::optional<double> epsilon;
};

/// Counter-based splitmix64 stream: draw i is a pure function of (seed, i).
class SeededStream {
public:
    explicit SeededStream(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t next_u64() noexcept;
    /// Uniform on (0, 1].
    double next_unit() noexcept;
    /// Standard complex Gaussian (E|z|^2 = 1) by Box-Muller.
    std::complex<double> next_complex_gaussian() noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stateless per-trial seed; injective in trial_index for a fixed master seed.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) noexcept;

/// Throws std::invalid_argument naming the offending field.
void validate(const GeneratorSpec& spec);

/**
 * Build a PSD block matrix. The same spec always yields bit-identical output.
 *
 * wishart:        X* X / (nk), X an nk x nk standard complex Gaussian matrix.
 * block_diagonal: independent k x k Wishart blocks X_j* X_j / k, zero elsewhere.
 * rank_deficient: X* X / (nk) with X of shape rank x nk.
 * near_singular:  a Wishart matrix with its last pivoted-Cholesky direction
 *                 removed, plus epsilon * I.
 * identity:       I_{nk}.
 */
BlockMatrix generate(const GeneratorSpec& spec);

}  // namespace blockform
