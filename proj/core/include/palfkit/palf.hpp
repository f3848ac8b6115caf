#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "palfkit/chains.hpp"
#include "palfkit/genus1.hpp"
#include "palfkit/mcg.hpp"
#include "palfkit/plumbing.hpp"
#include "palfkit/relations.hpp"

namespace palfkit::palf {

// Words are stored with the rightmost letter applied first (see mcg.hpp).
// Synthesized words therefore list the most recently created cycle first;
// printing in reading order reverses this.

// Provenance of one twist in a synthesized word.
struct Label {
    enum class Kind { Free, Neck, Outer, TraceCycle, Meridian, Stabilizer, Handle, Subst };
    Kind kind = Kind::Free;
    int vertex = -1;  // owning vertex (Free/Outer), parent side (Neck)
    int child = -1;   // child vertex for Neck
    int index = 0;    // hole / meridian index / trace step / substitution id
    std::string text() const;
};

struct PalfDescription {
    mcg::Factorization fact;
    std::vector<Label> labels;  // one per word position
};

// Gay-Mark layout bookkeeping: which holes belong to whom.
struct PlanarLayout {
    PalfDescription pd;
    int root = -1;
    std::map<int, std::pair<int, int>> subtree;    // vertex -> hole interval of its subtree
    std::map<int, std::vector<int>> free_holes;    // vertex -> its free holes
    std::map<int, int> parent;                     // vertex -> dfs parent (root -> -1)
    std::vector<int> dfs_order;                    // vertices, root last
};

struct Genus1Palf {
    genus1::Registry registry;
    std::vector<genus1::Letter> word;
    std::vector<Label> labels;
    std::vector<int> chain;  // the linear subgraph, far end first
    int foot = 0;            // handle position (gamma_foot separates the feet)
    std::map<std::string, int> rotation;  // rotation numbers by curve name
    // vertex id -> (word position, coefficient): class of the vertex sphere
    // in terms of vanishing cycles, used by the adjunction check.
    std::map<int, std::vector<std::pair<int, int>>> vertex_classes;
    bool homology_reliable = true;
};

// Bhupal-Ozbagci word for the filling W_{n,q}(tuple): cycles accumulated
// along the blow-up trace (most recent first), then gamma_i meridians with
// multiplicity a_i - n_i.
PalfDescription bo_palf(const BigInt& n, const BigInt& q, const chains::Tuple& tuple,
                        const chains::BlowupTrace& trace);

// The tuple of the minimal resolution filling: (0) for e = 1 and
// (1,2,...,2,1) with the all-End trace otherwise.
chains::TupleWithTrace minimal_resolution_tuple(const BigInt& n, const BigInt& q);

// Gay-Mark planar PALF for a bad-vertex-free tree, flattened depth first.
// `root` (default: highest id with a free boundary) owns the outer
// boundary; children follow `prefer` ranks, then ascending id.
PlanarLayout gay_mark_layout(const plumbing::PlumbingGraph& g, int root = -1,
                             const std::vector<int>& prefer = {});
PalfDescription gay_mark_palf(const plumbing::PlumbingGraph& g, int root = -1,
                              const std::vector<int>& prefer = {});

int choose_genus(const plumbing::PlumbingGraph& g);

// Genus-1 PALF on a bad-vertex minimal resolution (star with a short all-2
// arm): the linear subgraph's word on the handle page plus the two
// handle-crossing cycles x, y. `chain` fixes the subgraph orientation.
Genus1Palf genus1_minres_palf(const plumbing::PlumbingGraph& g,
                              const std::vector<int>& chain = {});

// Hole-split embedding: old hole i opens into a consecutive run of new
// holes; extensions cable curves along the split strands.
struct Embedding {
    std::vector<std::pair<int, int>> image;  // per old hole: [first..last]
    int new_holes = 0;
};
Embedding identity_embedding(int holes);
Embedding split_at(int holes, int hole);

mcg::Curve extend_curve(const mcg::Curve& c, const Embedding& e, int old_holes);
mcg::Factorization extend_factorization(const mcg::Factorization& f, const Embedding& e);

mcg::Factorization positive_stabilize(const mcg::Factorization& f,
                                      const std::vector<int>& holes);

struct FillingResult {
    std::optional<PalfDescription> genus0;
    std::optional<Genus1Palf> genus1;
    std::vector<relations::SubstitutionCertificate> certificates;
    std::vector<std::string> notes;
    long euler_char = 0;
};

struct UnsupportedCase : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// PALF on the filling determined by a validated P-resolution of g. Cases:
// a linear subgraph carrying all non-RDP decorations (with or without a bad
// vertex), the Gamma_1..Gamma_7 blown-up shapes, and the two exceptional
// genus-1 shapes; anything else throws UnsupportedCase.
FillingResult filling_palf(const plumbing::PlumbingGraph& g,
                           const plumbing::PlumbingGraph& pres);

// Positions (1-based) of the curves bounding the pieces of the given
// vertices, i.e. the convex-plumbing subword of a chain.
std::vector<int> subword_for_vertices(const PlanarLayout& layout, const std::vector<int>& ids);

// The rewrite script of the two exceptional genus-1 cases, replayed with
// per-step validation; the final word isolates the blown-down subword.
genus1::ReplayResult exceptional_rewrite(const Genus1Palf& gp);

}  // namespace palfkit::palf
