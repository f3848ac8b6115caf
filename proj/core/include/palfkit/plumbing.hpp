#pragma once

#include <optional>
#include <string>
#include <vector>

#include "palfkit/chains.hpp"
#include "palfkit/rational.hpp"

namespace palfkit::plumbing {

// Weighted tree of the (partial) resolution. `degree` is the
// self-intersection -b_v, so degree <= -1 throughout. Decorations mark
// linear subchains contracted to class-T (or RDP) singularities.
struct PlumbingGraph {
    struct Vertex {
        int id;
        long degree;  // self-intersection, e.g. -5
    };
    std::vector<Vertex> vertices;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> decorations;  // vertex-id paths

    long b(int id) const;  // -degree
    const Vertex& vertex(int id) const;
    std::vector<int> neighbors(int id) const;
    long valence(int id) const;
    bool is_tree() const;
    bool is_path(const std::vector<int>& ids) const;  // consecutive chain in the graph
    bool decorated(int id) const;
    chains::ChainFraction chain_of(const std::vector<int>& ids) const;  // b-values
};

PlumbingGraph build_cyclic(const BigInt& n, const BigInt& q);
PlumbingGraph build_dihedral(const BigInt& n, const BigInt& q);
PlumbingGraph build_star(long center_b, const chains::ChainFraction& arm1,
                         const chains::ChainFraction& arm2,
                         const chains::ChainFraction& arm3);

// First vertex (by id) whose valence exceeds |degree|.
std::optional<int> has_bad_vertex(const PlumbingGraph& g);

// Intersection matrix: degree on the diagonal, 1 per edge.
std::vector<std::vector<BigInt>> intersection_matrix(const PlumbingGraph& g);
bool negative_definite(const PlumbingGraph& g);

// Exact solution k of sum_j k_j (E_j . E_i) = b_i - 2 over the whole graph
// (or any vertex subset, via canonical_coefficients_on).
struct CanonicalCoefficients {
    std::vector<int> ids;
    std::vector<Rational> k;
    Rational at(int id) const;
};
CanonicalCoefficients canonical_coefficients(const PlumbingGraph& g);
CanonicalCoefficients canonical_coefficients_on(const PlumbingGraph& g,
                                                const std::vector<int>& ids);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> diagnostics;
};

// P-resolution test on a decorated graph. Checks, with exact arithmetic:
//  - decorated chains are linear, disjoint, pairwise non-adjacent;
//  - each decorated chain is class T (RDP chains allowed);
//  - relative ampleness: for every undecorated vertex v,
//      (b_v - 2) - sum of k-coefficients of decorated neighbors > 0,
//    where k is computed per decorated chain (undecorated vertices carry 0).
//    At a -1 vertex this is the familiar k_{E1} + k_{E2} < -1 condition.
// An undecorated graph is first normalized: every maximal all-(-2) chain
// not touching a decorated vertex is implicitly an RDP singularity, which
// realizes the minimal resolution as its own (RDP) P-resolution.
ValidationReport validate_P_resolution(const PlumbingGraph& g);

// The normalization used by validate/enumerate (idempotent).
PlumbingGraph normalize_rdp(const PlumbingGraph& g);

struct PResolutionList {
    std::vector<PlumbingGraph> resolutions;
    bool maybe_more_beyond_budget = false;
};

// All decorations of g and of its blow-ups (inserting -1 vertices on
// edges) within `budget` blow-ups that validate, deduplicated. Base
// vertices keep their identity; only blow-up vertices are renamed when
// comparing, so symmetric-but-distinct decorations of the input graph are
// kept apart, matching how P-resolution lists are presented.
PResolutionList enumerate_P_resolutions(const PlumbingGraph& g, int budget = 2);

struct PlumbingInvariants {
    long euler_char;             // 1 + #vertices for a tree
    long h1_rank;                // 0 for a tree of spheres
    std::vector<BigInt> h1_torsion;  // empty for a tree
    std::vector<std::vector<BigInt>> form;  // intersection matrix
    bool definite_negative;
};
PlumbingInvariants plumbing_invariants(const PlumbingGraph& g);

}  // namespace palfkit::plumbing
