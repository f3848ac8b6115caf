#pragma once

#include <vector>

#include "palfkit/rational.hpp"

namespace palfkit {

using IntMat = std::vector<std::vector<BigInt>>;

// Diagonal of the Smith normal form (nonnegative, each dividing the next,
// padded with zeros up to min(rows, cols)).
std::vector<BigInt> smith_diagonal(IntMat m);

// Cokernel Z^cols / rowspace(m): free rank + nontrivial torsion factors.
struct Cokernel {
    long rank = 0;
    std::vector<BigInt> torsion;  // entries > 1, dividing order
    bool trivial() const { return rank == 0 && torsion.empty(); }
    bool operator==(const Cokernel&) const = default;
};
Cokernel cokernel(const IntMat& rows, long cols);

// Exact determinant (Bareiss).
BigInt determinant(IntMat m);

}  // namespace palfkit
