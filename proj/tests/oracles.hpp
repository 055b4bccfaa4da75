#pragma once

// Brute-force reference computations. These deliberately avoid every code path
// of the library they are used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using Dense = std::vector<std::vector<Complex>>;

/// Laplace expansion along the first row.
inline Complex cofactor_determinant(const Dense& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1.0;
    if (n == 1) return a[0][0];
    Complex det = 0.0;
    for (std::size_t col = 0; col < n; ++col) {
        Dense minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Complex> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != col) row.push_back(a[i][j]);
            minor.push_back(std::move(row));
        }
        const double sign = (col % 2 == 0) ? 1.0 : -1.0;
        det += sign * a[0][col] * cofactor_determinant(minor);
    }
    return det;
}

/// Sum over all permutations.
inline Complex permanent(const Dense& a) {
    const std::size_t n = a.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Complex total = 0.0;
    do {
        Complex term = 1.0;
        for (std::size_t i = 0; i < n; ++i) term *= a[i][perm[i]];
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

inline double factorial(std::size_t m) {
    double f = 1.0;
    for (std::size_t i = 2; i <= m; ++i) f *= static_cast<double>(i);
    return f;
}

/// Sorted r-tuples over [0, k), lexicographic.
inline std::vector<std::vector<std::size_t>> sorted_tuples(std::size_t k, std::size_t r) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == r) {
            out.push_back(cur);
            return;
        }
        for (std::size_t v = start; v < k; ++v) {
            cur.push_back(v);
            self(self, v);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline double multiplicity_factorials(const std::vector<std::size_t>& tuple) {
    double prod = 1.0;
    std::size_t run = 1;
    for (std::size_t i = 1; i <= tuple.size(); ++i) {
        if (i < tuple.size() && tuple[i] == tuple[i - 1]) {
            ++run;
        } else {
            prod *= factorial(run);
            run = 1;
        }
    }
    return prod;
}

/// Symmetric power entries from permanents of submatrices with repeated indices:
/// (alpha, beta) -> per(A[alpha | beta]) / sqrt(alpha! beta!).
inline Dense sym_power_by_permanents(const Dense& a, std::size_t r) {
    const auto tuples = sorted_tuples(a.size(), r);
    Dense out(tuples.size(), std::vector<Complex>(tuples.size()));
    for (std::size_t p = 0; p < tuples.size(); ++p) {
        for (std::size_t q = 0; q < tuples.size(); ++q) {
            Dense sub(r, std::vector<Complex>(r));
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) sub[i][j] = a[tuples[p][i]][tuples[q][j]];
            out[p][q] = permanent(sub) /
                        std::sqrt(multiplicity_factorials(tuples[p]) * multiplicity_factorials(tuples[q]));
        }
    }
    return out;
}

/// h_r(lambda) by summing every non-decreasing index tuple.
inline Complex complete_symmetric_from_values(const std::vector<Complex>& values, std::size_t r) {
    Complex total = 0.0;
    for (const auto& tuple : sorted_tuples(values.size(), r)) {
        Complex term = 1.0;
        for (std::size_t idx : tuple) term *= values[idx];
        total += term;
    }
    return total;
}

inline double binomial(std::size_t n, std::size_t m) {
    return factorial(n) / (factorial(m) * factorial(n - m));
}

}  // namespace oracle
