#pragma once

#include <cstddef>
#include <vector>

#include "blockform/matrix.hpp"

namespace blockform {

/// An nk x nk matrix viewed as an n x n grid of k x k blocks.
class BlockMatrix {
public:
    BlockMatrix(std::size_t n, std::size_t k, ComplexMatrix body);

    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }
    const ComplexMatrix& body() const noexcept { return body_; }

    /// Block H_ij (zero-based).
    ComplexMatrix block(std::size_t i, std::size_t j) const;

    static BlockMatrix identity(std::size_t n, std::size_t k);

private:
    std::size_t n_;
    std::size_t k_;
    ComplexMatrix body_;
};

inline constexpr std::size_t kTensorCapacity = 20000;

/// T_n^r(H): block (i, j) replaced by the r-fold Kronecker power of H_ij.
BlockMatrix block_map_tensor(const BlockMatrix& h, int r);

struct SymmetricBasis;

/// Q_n^r(H): block (i, j) replaced by the r-th symmetric power of H_ij.
BlockMatrix block_map_sym(const BlockMatrix& h, int r);
/// Same, compressing with a caller-supplied basis (must match k and r).
BlockMatrix block_map_sym(const BlockMatrix& h, const SymmetricBasis& basis);

/// Row indices of the r-fold tensor space of C^{nk} whose r coordinates all sit
/// in one block, block by block. Extracting them from the r-th tensor power of
/// H.body reproduces block_map_tensor(H, r) entry for entry.
std::vector<std::size_t> embedding_index_set(std::size_t n, std::size_t k, int r);

/// [tr H_ij]
ComplexMatrix compress_trace(const BlockMatrix& h);
/// [det H_ij]
ComplexMatrix compress_det(const BlockMatrix& h);
/// [(tr H_ij)^r]
ComplexMatrix compress_trace_power(const BlockMatrix& h, int r);
/// [s_r(H_ij)], complete homogeneous symmetric polynomial of each block's eigenvalues.
ComplexMatrix compress_sym_poly(const BlockMatrix& h, int r);

}  // namespace blockform
