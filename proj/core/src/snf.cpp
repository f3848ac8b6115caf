#include "palfkit/snf.hpp"

#include <algorithm>
#include <stdexcept>

namespace palfkit {

namespace {

void swap_rows(IntMat& m, std::size_t a, std::size_t b) { std::swap(m[a], m[b]); }

void swap_cols(IntMat& m, std::size_t a, std::size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
}

// row[a] += c * row[b]
void add_row(IntMat& m, std::size_t a, std::size_t b, const BigInt& c) {
    for (std::size_t j = 0; j < m[a].size(); ++j) m[a][j] += c * m[b][j];
}

void add_col(IntMat& m, std::size_t a, std::size_t b, const BigInt& c) {
    for (auto& row : m) row[a] += c * row[b];
}

}  // namespace

std::vector<BigInt> smith_diagonal(IntMat m) {
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    std::size_t k = std::min(rows, cols);
    std::vector<BigInt> diag(k, 0);

    for (std::size_t t = 0; t < k; ++t) {
        // Find a nonzero pivot of minimal absolute value in the lower-right block.
        std::size_t pi = t, pj = t;
        bool found = false;
        BigInt best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m[i][j] != 0) {
                    BigInt a = abs(m[i][j]);
                    if (!found || a < best) {
                        found = true;
                        best = a;
                        pi = i;
                        pj = j;
                    }
                }
        if (!found) break;
        swap_rows(m, t, pi);
        swap_cols(m, t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (m[i][t] != 0) {
                    BigInt c = -(m[i][t] / m[t][t]);
                    add_row(m, i, t, c);
                    if (m[i][t] != 0) {  // remainder smaller than pivot: swap up
                        swap_rows(m, t, i);
                        clean = false;
                    }
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (m[t][j] != 0) {
                    BigInt c = -(m[t][j] / m[t][t]);
                    add_col(m, j, t, c);
                    if (m[t][j] != 0) {
                        swap_cols(m, t, j);
                        clean = false;
                    }
                }
            if (clean) {
                // Divisibility: pivot must divide the rest of the block.
                for (std::size_t i = t + 1; i < rows && clean; ++i)
                    for (std::size_t j = t + 1; j < cols && clean; ++j)
                        if (m[i][j] % m[t][t] != 0) {
                            add_row(m, t, i, 1);
                            clean = false;
                        }
            }
        }
        diag[t] = abs(m[t][t]);
    }
    return diag;
}

Cokernel cokernel(const IntMat& rows, long cols) {
    IntMat m = rows;
    for (auto& r : m)
        if (static_cast<long>(r.size()) != cols)
            throw std::invalid_argument("cokernel: ragged matrix");
    Cokernel out;
    if (m.empty()) {
        out.rank = cols;
        return out;
    }
    auto diag = smith_diagonal(std::move(m));
    long nonzero = 0;
    for (const auto& d : diag)
        if (d != 0) {
            ++nonzero;
            if (d > 1) out.torsion.push_back(d);
        }
    out.rank = cols - nonzero;
    return out;
}

BigInt determinant(IntMat m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    for (auto& r : m)
        if (r.size() != n) throw std::invalid_argument("determinant: not square");
    // Bareiss fraction-free elimination.
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t t = 0; t + 1 < n; ++t) {
        if (m[t][t] == 0) {
            std::size_t s = t + 1;
            while (s < n && m[s][t] == 0) ++s;
            if (s == n) return 0;
            swap_rows(m, t, s);
            sign = -sign;
        }
        for (std::size_t i = t + 1; i < n; ++i)
            for (std::size_t j = t + 1; j < n; ++j) {
                BigInt num = m[i][j] * m[t][t] - m[i][t] * m[t][j];
                m[i][j] = num / prev;
            }
        prev = m[t][t];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace palfkit
