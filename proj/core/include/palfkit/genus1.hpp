#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "palfkit/snf.hpp"

namespace palfkit::genus1 {

// Genus-1 pages arise from a planar page by joining two adjacent holes
// (slots foot, foot+1) with a handle. H_1 of the page has basis
//   a (handle core), e_1..e_slots (original hole circles),
// with <a, e_foot> = -1, <a, e_{foot+1}> = +1 and all else zero.
//
// Curves are named registry objects carrying declared homology classes and
// declared geometric data (disjoint pairs, dual pairs with intersection
// number one, curve-image relations). The engine replays rewrite scripts
// at this level; it does not solve the genus-1 word problem.

using HClass = std::vector<long>;  // coordinates in (a, e_1, ..., e_slots)

struct Registry {
    int slots = 0;
    int foot = 0;  // handle joins slots foot, foot+1
    std::vector<std::string> names;
    std::vector<HClass> classes;
    std::set<std::pair<int, int>> disjoint;  // symmetric, by curve index
    std::set<std::pair<int, int>> dual;      // geometric intersection one

    struct Alias {
        std::string name;
        std::vector<std::pair<int, bool>> word;  // twist word, rightmost applied first
    };
    std::vector<Alias> aliases;

    // Declared curve-image relation: names[lhs] is the image of names[base]
    // under the twist word (e.g. y = t_{a2} t_{g2} (x)).
    struct Relation {
        int lhs;
        std::vector<std::pair<int, bool>> word;
        int base;
    };
    std::vector<Relation> relations;

    int holes() const { return slots - 1; }  // inner boundary components
    int rank() const { return slots + 1; }
    int id(const std::string& name) const;
    long pairing(const HClass& u, const HClass& v) const;
    bool is_disjoint(int a, int b) const;
    bool is_dual(int a, int b) const;
};

// A twist letter: image of a named curve under a (possibly empty) twist word.
struct Letter {
    std::vector<std::pair<int, bool>> conj;  // rightmost applied first
    int base = 0;
};

Letter named(int id);
Letter simplify(const Registry& r, Letter l);
HClass homology(const Registry& r, const Letter& l);
std::string render(const Registry& r, const Letter& l);

// Action of the twist product on H_1 (Picard-Lefschetz per letter).
IntMat action_matrix(const Registry& r, const std::vector<Letter>& word);
IntMat relator_rows(const Registry& r, const std::vector<Letter>& word);

struct Factorization {
    const Registry* registry = nullptr;
    std::vector<Letter> word;
};

// Rewrite steps, replayed with per-step validation.
struct Step {
    enum class Kind { Hurwitz, HurwitzInverse, SubstituteRelation, GlobalConjugate };
    Kind kind;
    int pos = 0;       // 1-based, for Hurwitz/Substitute
    int relation = 0;  // index into registry relations
    int alias = 0;     // index into registry aliases, for GlobalConjugate
};

struct ReplayResult {
    bool ok = true;
    std::vector<std::string> transcript;
    Factorization final_word;
    Cokernel h1_before, h1_after;
};

// Replays the script; every step must preserve the homology action, the
// word length, and the isomorphism type of coker(relator rows).
ReplayResult replay(const Factorization& start, const std::vector<Step>& script);

std::string render_word(const Registry& r, const std::vector<Letter>& word);

}  // namespace palfkit::genus1
