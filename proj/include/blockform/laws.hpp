#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "blockform/multilinear.hpp"

namespace blockform {

/// Randomized battery over the algebraic laws of tensor and symmetric powers
/// and of the block maps built from them.
struct LawConfig {
    std::size_t instances = 200;
    std::uint64_t seed = 20200101;
    /// Order relations: pivot proxy of the difference must stay >= -order_tol * scale.
    double order_tol = 1e-9;
    /// Equalities (multiplicativity, trace and determinant laws).
    double equality_tol = 1e-10;
    /// Extraction of T_n^r(H) from the tensor power of H.
    double embedding_tol = 1e-13;
    double isometry_tol = 1e-12;
    std::size_t max_n = 3;
    std::size_t max_k = 3;
    int max_r = 3;
    /// Only instances with (nk)^r at or below this are used for the embedding law.
    std::size_t embedding_limit = 1000;
    /// Mutation hook: flip the sign of one entry of the symmetric basis.
    bool inject_sym_sign_flip = false;
};

/// Tolerances derived from a single user-facing tolerance, capped by the defaults.
LawConfig law_config_for_tol(double tol);

struct LawResult {
    std::string name;
    bool passed = true;
    std::size_t checked = 0;
    /// Largest error / allowance ratio seen (<= 1 when passing).
    double worst_ratio = 0.0;
    std::string detail;
};

std::vector<LawResult> run_laws(const LawConfig& config);

/// Copy of `basis` with one entry of the first multi-entry column negated.
SymmetricBasis with_sign_flip(SymmetricBasis basis);

}  // namespace blockform
