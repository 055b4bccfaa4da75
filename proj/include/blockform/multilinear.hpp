#pragma once

#include <cstddef>
#include <vector>

#include "blockform/matrix.hpp"

namespace blockform {

/// A multiset of r indices drawn from [0, k), kept sorted.
struct MultisetIndex {
    std::vector<std::size_t> entries;
    /// multiplicities[i] = number of times i occurs in entries.
    std::vector<std::size_t> multiplicities;

    friend bool operator==(const MultisetIndex&, const MultisetIndex&) = default;
};

/**
 * Orthonormal basis of the symmetric subspace of the r-fold tensor power of C^k.
 *
 * Column alpha of `isometry` (k^r rows) is the normalized sum of the
 * elementary tensors whose sorted coordinates equal multisets[alpha]. Tensor
 * coordinates flatten with the first factor most significant, the same
 * convention kron uses. Every routine that exchanges symmetric-space matrices
 * goes through this one enumeration.
 */
struct SymmetricBasis {
    std::size_t k = 0;
    int r = 0;
    std::size_t dim = 0;
    std::vector<MultisetIndex> multisets;
    ComplexMatrix isometry;
};

/// Binomial coefficient C(n, m); throws CapacityError on overflow.
std::size_t binomial(std::size_t n, std::size_t m);

/// C(k + r - 1, r)
std::size_t sym_dim(std::size_t k, int r);

/// base^exp, or CapacityError when it exceeds limit.
std::size_t checked_pow(std::size_t base, int exp, std::size_t limit);

/// Kronecker product: block (i, j) of the result is a_ij * B.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// r-fold Kronecker power by left fold; r = 0 gives the 1x1 identity.
ComplexMatrix tensor_power(const ComplexMatrix& a, int r);

/// All multisets of size r over [0, k) in lexicographic order.
std::vector<MultisetIndex> multiset_indices(std::size_t k, int r);

SymmetricBasis symmetric_basis(std::size_t k, int r);

/// S* (r-fold tensor power of A) S.
ComplexMatrix sym_power(const ComplexMatrix& a, int r);
ComplexMatrix sym_power(const ComplexMatrix& a, const SymmetricBasis& basis);

/// S* ((A (x) B + B (x) A) / 2) S with the r = 2 basis.
ComplexMatrix mixed_sym_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix mixed_sym_product(const ComplexMatrix& a, const ComplexMatrix& b, const SymmetricBasis& basis);

/// s_r of the eigenvalues of A via Newton-Girard on power sums tr(A^m); s_0 = 1.
Complex complete_symmetric(const ComplexMatrix& a, int r);

}  // namespace blockform
