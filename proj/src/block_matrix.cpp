#include "blockform/block_matrix.hpp"

#include <string>

#include "blockform/dense.hpp"
#include "blockform/multilinear.hpp"

namespace blockform {

namespace {

template <typename BlockFn>
ComplexMatrix compress(const BlockMatrix& h, BlockFn fn) {
    ComplexMatrix out(h.n(), h.n());
    for (std::size_t i = 0; i < h.n(); ++i)
        for (std::size_t j = 0; j < h.n(); ++j) out(i, j) = fn(h.block(i, j));
    return out;
}

template <typename BlockFn>
BlockMatrix map_blocks(const BlockMatrix& h, std::size_t out_k, BlockFn fn) {
    const std::size_t n = h.n();
    ComplexMatrix body(n * out_k, n * out_k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const ComplexMatrix b = fn(h.block(i, j));
            for (std::size_t p = 0; p < out_k; ++p)
                for (std::size_t q = 0; q < out_k; ++q) body(i * out_k + p, j * out_k + q) = b(p, q);
        }
    return BlockMatrix(n, out_k, std::move(body));
}

void require_power(int r, const char* what) {
    if (r < 1) throw std::invalid_argument(std::string(what) + ": power must be at least 1");
}

}  // namespace

BlockMatrix::BlockMatrix(std::size_t n, std::size_t k, ComplexMatrix body) : n_(n), k_(k), body_(std::move(body)) {
    if (n_ == 0 || k_ == 0) throw DimensionError("BlockMatrix: n and k must be positive");
    if (body_.rows() != n_ * k_ || body_.cols() != n_ * k_) {
        throw DimensionError("BlockMatrix: body is " + std::to_string(body_.rows()) + "x" +
                             std::to_string(body_.cols()) + ", expected " + std::to_string(n_ * k_) + " square");
    }
}

ComplexMatrix BlockMatrix::block(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw DimensionError("BlockMatrix::block: block index out of range");
    return body_.block(i * k_, j * k_, k_, k_);
}

BlockMatrix BlockMatrix::identity(std::size_t n, std::size_t k) {
    return BlockMatrix(n, k, ComplexMatrix::identity(n * k));
}

BlockMatrix block_map_tensor(const BlockMatrix& h, int r) {
    require_power(r, "block_map_tensor");
    const std::size_t out_k = checked_pow(h.k(), r, kTensorCapacity);
    if (h.n() * out_k > kTensorCapacity) throw CapacityError("block_map_tensor: n * k^r exceeds capacity");
    return map_blocks(h, out_k, [r](const ComplexMatrix& b) { return tensor_power(b, r); });
}

BlockMatrix block_map_sym(const BlockMatrix& h, int r) {
    require_power(r, "block_map_sym");
    return block_map_sym(h, symmetric_basis(h.k(), r));
}

BlockMatrix block_map_sym(const BlockMatrix& h, const SymmetricBasis& basis) {
    if (basis.k != h.k()) throw DimensionError("block_map_sym: basis built for a different block size");
    if (h.n() * basis.dim > kTensorCapacity) throw CapacityError("block_map_sym: n * dim exceeds capacity");
    return map_blocks(h, basis.dim, [&basis](const ComplexMatrix& b) { return sym_power(b, basis); });
}

std::vector<std::size_t> embedding_index_set(std::size_t n, std::size_t k, int r) {
    require_power(r, "embedding_index_set");
    if (n == 0 || k == 0) throw DimensionError("embedding_index_set: n and k must be positive");
    const std::size_t side = n * k;
    checked_pow(side, r, kTensorCapacity);
    const std::size_t per_block = checked_pow(k, r, kTensorCapacity);

    std::vector<std::size_t> out;
    out.reserve(n * per_block);
    std::vector<std::size_t> local(static_cast<std::size_t>(r), 0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t t = 0; t < per_block; ++t) {
            // Decode t as r base-k digits, first factor most significant.
            std::size_t rest = t;
            for (std::size_t pos = local.size(); pos-- > 0;) {
                local[pos] = rest % k;
                rest /= k;
            }
            std::size_t flat = 0;
            for (std::size_t c : local) flat = flat * side + (j * k + c);
            out.push_back(flat);
        }
    }
    return out;
}

ComplexMatrix compress_trace(const BlockMatrix& h) {
    return compress(h, [](const ComplexMatrix& b) { return b.trace(); });
}

ComplexMatrix compress_det(const BlockMatrix& h) {
    return compress(h, [](const ComplexMatrix& b) { return determinant(b); });
}

ComplexMatrix compress_trace_power(const BlockMatrix& h, int r) {
    require_power(r, "compress_trace_power");
    return hadamard_power(compress_trace(h), r);
}

ComplexMatrix compress_sym_poly(const BlockMatrix& h, int r) {
    require_power(r, "compress_sym_poly");
    return compress(h, [r](const ComplexMatrix& b) { return complete_symmetric(b, r); });
}

}  // namespace blockform
