#pragma once

// Reference implementations that share no code with the library.

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<std::int64_t>>;

// Laplace expansion along the first row.
inline std::int64_t cofactor_det(const Matrix& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    std::int64_t total = 0;
    for (std::size_t col = 0; col < n; ++col) {
        if (m[0][col] == 0) continue;
        Matrix minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<std::int64_t> row;
            for (std::size_t c = 0; c < n; ++c) {
                if (c != col) row.push_back(m[r][c]);
            }
            minor.push_back(row);
        }
        std::int64_t term = m[0][col] * cofactor_det(minor);
        total += (col % 2 == 0) ? term : -term;
    }
    return total;
}

// -Q of a chain with the given weights.
inline Matrix chain_matrix(const std::vector<std::int64_t>& w) {
    Matrix m(w.size(), std::vector<std::int64_t>(w.size(), 0));
    for (std::size_t i = 0; i < w.size(); ++i) {
        m[i][i] = w[i];
        if (i + 1 < w.size()) m[i][i + 1] = m[i + 1][i] = -1;
    }
    return m;
}

inline std::int64_t chain_det(const std::vector<std::int64_t>& w) { return cofactor_det(chain_matrix(w)); }

// Multiplicities of the blowups for one pair (c,p): each Euclid remainder r
// repeated by its quotient.
inline std::vector<std::int64_t> euclid_multiplicities(std::int64_t c, std::int64_t p) {
    std::vector<std::int64_t> out;
    while (p != 0) {
        for (std::int64_t i = 0; i < c / p; ++i) out.push_back(p);
        std::int64_t r = c % p;
        c = p;
        p = r;
    }
    return out;
}

struct Frac {
    std::int64_t num;
    std::int64_t den;
};

inline bool same(Frac a, std::int64_t num, std::int64_t den) { return a.num * den == num * a.den; }

}  // namespace oracle
