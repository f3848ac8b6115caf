#pragma once

#include <optional>
#include <string>
#include <vector>

#include "palfkit/chains.hpp"
#include "palfkit/mcg.hpp"

namespace palfkit::relations {

struct BlowdownInfo {
    chains::ChainFraction chain;  // configuration chain being replaced
    BigInt d, n, a;               // class-T data: 1/(d n^2)(1, d n a - 1)
    // Present when d == 1: boundary is L(p^2, p q - 1) with (p, q) = (n, a).
    std::optional<std::pair<BigInt, BigInt>> pq;
};

// A monodromy substitution with the evidence that both sides define the
// same mapping class. Certificates are re-verified from scratch; nothing
// is trusted from serialization.
struct SubstitutionCertificate {
    std::string name;
    mcg::Page page;
    std::vector<mcg::Curve> lhs, rhs;
    std::optional<BlowdownInfo> blowdown;
    std::vector<std::string> evidence;
    bool verified = false;
};

// Runs the engine; fills evidence and the verified flag. Returns cert.verified.
bool verify(SubstitutionCertificate& cert);

// The lantern relation on the 3-holed disk: single-hole twists a, b, c and
// the boundary twist d against the three pair curves.
SubstitutionCertificate lantern();

// Daisy substitution for C_p, p >= 2: the linear plumbing
// (-(p+2), -2, ..., -2) with p - 1 vertices against the rational ball.
// Both words are synthesized and the engine arbitrates; nullopt if no
// certifiable word was found.
std::optional<SubstitutionCertificate> daisy(long p);

// Cyclic-side substitution for a class-T chain: minimal resolution word of
// the chain singularity against the word of the filling with b_2 = d - 1
// (a rational ball when d = 1). The engine picks the certified tuple.
SubstitutionCertificate rbd_relation(const chains::ChainFraction& chain);

std::optional<BlowdownInfo> recognize_config(const chains::ChainFraction& chain);

// Shipped catalog (lantern, daisies, the named rbd instances).
std::vector<SubstitutionCertificate> shipped_certificates();

}  // namespace palfkit::relations
