#include "blockform/multilinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "blockform/block_matrix.hpp"

namespace blockform {

namespace {

std::size_t flat_index(const std::vector<std::size_t>& coords, std::size_t k) {
    std::size_t idx = 0;
    for (std::size_t c : coords) idx = idx * k + c;
    return idx;
}

std::size_t factorial(std::size_t m) {
    std::size_t f = 1;
    for (std::size_t i = 2; i <= m; ++i) f *= i;
    return f;
}

void require_positive_power(int r, const char* what) {
    if (r < 1) throw std::invalid_argument(std::string(what) + ": power must be at least 1");
}

}  // namespace

std::size_t binomial(std::size_t n, std::size_t m) {
    if (m > n) return 0;
    m = std::min(m, n - m);
    std::size_t result = 1;
    for (std::size_t i = 1; i <= m; ++i) {
        const std::size_t num = n - m + i;
        if (result > std::numeric_limits<std::size_t>::max() / num) throw CapacityError("binomial overflow");
        result = result * num / i;
    }
    return result;
}

std::size_t sym_dim(std::size_t k, int r) {
    if (r < 0) throw std::invalid_argument("sym_dim: negative power");
    return binomial(k + static_cast<std::size_t>(r) - 1, static_cast<std::size_t>(r));
}

std::size_t checked_pow(std::size_t base, int exp, std::size_t limit) {
    if (exp < 0) throw std::invalid_argument("checked_pow: negative exponent");
    std::size_t out = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && out > limit / base) {
            throw CapacityError(std::to_string(base) + "^" + std::to_string(exp) + " exceeds capacity " +
                                std::to_string(limit));
        }
        out *= base;
    }
    if (out > limit) throw CapacityError("size " + std::to_string(out) + " exceeds capacity " + std::to_string(limit));
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t s = b.rows();
    const std::size_t t = b.cols();
    ComplexMatrix out(a.rows() * s, a.cols() * t);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t p = 0; p < s; ++p)
                for (std::size_t q = 0; q < t; ++q) out(i * s + p, j * t + q) = aij * b(p, q);
        }
    return out;
}

ComplexMatrix tensor_power(const ComplexMatrix& a, int r) {
    require_square(a, "tensor_power");
    if (r < 0) throw std::invalid_argument("tensor_power: negative power");
    checked_pow(a.rows(), r, kTensorCapacity);
    if (r == 0) return ComplexMatrix::identity(1);
    ComplexMatrix out = a;
    for (int step = 1; step < r; ++step) out = kron(out, a);
    return out;
}

std::vector<MultisetIndex> multiset_indices(std::size_t k, int r) {
    if (k < 1) throw std::invalid_argument("multiset_indices: k must be at least 1");
    if (r < 0) throw std::invalid_argument("multiset_indices: negative power");
    const auto len = static_cast<std::size_t>(r);
    std::vector<MultisetIndex> out;
    out.reserve(sym_dim(k, r));
    std::vector<std::size_t> cur(len, 0);
    while (true) {
        MultisetIndex m;
        m.entries = cur;
        m.multiplicities.assign(k, 0);
        for (std::size_t c : cur) ++m.multiplicities[c];
        out.push_back(std::move(m));
        // Next non-decreasing sequence in lexicographic order.
        std::size_t pos = len;
        while (pos > 0 && cur[pos - 1] == k - 1) --pos;
        if (pos == 0) break;
        const std::size_t v = cur[pos - 1] + 1;
        std::fill(cur.begin() + static_cast<std::ptrdiff_t>(pos - 1), cur.end(), v);
    }
    return out;
}

SymmetricBasis symmetric_basis(std::size_t k, int r) {
    require_positive_power(r, "symmetric_basis");
    const std::size_t rows = checked_pow(k, r, kTensorCapacity);
    SymmetricBasis basis;
    basis.k = k;
    basis.r = r;
    basis.multisets = multiset_indices(k, r);
    basis.dim = basis.multisets.size();
    basis.isometry = ComplexMatrix(rows, basis.dim);
    const std::size_t r_fact = factorial(static_cast<std::size_t>(r));
    for (std::size_t col = 0; col < basis.dim; ++col) {
        const MultisetIndex& m = basis.multisets[col];
        std::size_t denom = 1;
        for (std::size_t mult : m.multiplicities) denom *= factorial(mult);
        const double value = 1.0 / std::sqrt(static_cast<double>(r_fact / denom));
        std::vector<std::size_t> perm = m.entries;
        do {
            basis.isometry(flat_index(perm, k), col) = value;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return basis;
}

ComplexMatrix sym_power(const ComplexMatrix& a, int r) {
    require_square(a, "sym_power");
    return sym_power(a, symmetric_basis(a.rows(), r));
}

ComplexMatrix sym_power(const ComplexMatrix& a, const SymmetricBasis& basis) {
    require_square(a, "sym_power");
    if (a.rows() != basis.k) throw DimensionError("sym_power: basis built for a different size");
    const ComplexMatrix& s = basis.isometry;
    return s.adjoint() * (tensor_power(a, basis.r) * s);
}

ComplexMatrix mixed_sym_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "mixed_sym_product");
    require_square(b, "mixed_sym_product");
    return mixed_sym_product(a, b, symmetric_basis(a.rows(), 2));
}

ComplexMatrix mixed_sym_product(const ComplexMatrix& a, const ComplexMatrix& b, const SymmetricBasis& basis) {
    require_square(a, "mixed_sym_product");
    require_square(b, "mixed_sym_product");
    if (a.rows() != b.rows()) throw DimensionError("mixed_sym_product: operands differ in size");
    if (basis.k != a.rows() || basis.r != 2) throw DimensionError("mixed_sym_product: needs the r = 2 basis for k");
    ComplexMatrix sym = kron(a, b) + kron(b, a);
    sym *= 0.5;
    return basis.isometry.adjoint() * (sym * basis.isometry);
}

Complex complete_symmetric(const ComplexMatrix& a, int r) {
    require_square(a, "complete_symmetric");
    if (r < 0) throw std::invalid_argument("complete_symmetric: negative degree");
    std::vector<Complex> power_sums(static_cast<std::size_t>(r) + 1);
    ComplexMatrix power = ComplexMatrix::identity(a.rows());
    for (int m = 1; m <= r; ++m) {
        power = power * a;
        power_sums[static_cast<std::size_t>(m)] = power.trace();
    }
    std::vector<Complex> h(static_cast<std::size_t>(r) + 1);
    h[0] = 1.0;
    for (int j = 1; j <= r; ++j) {
        Complex acc{0.0, 0.0};
        for (int m = 1; m <= j; ++m)
            acc += power_sums[static_cast<std::size_t>(m)] * h[static_cast<std::size_t>(j - m)];
        h[static_cast<std::size_t>(j)] = acc / static_cast<double>(j);
    }
    return h[static_cast<std::size_t>(r)];
}

}  // namespace blockform
