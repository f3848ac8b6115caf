#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace palfkit::mcg {

// Conventions
//
// A genus-0 page is the disk with h holes, ordered 1..h left to right.
// pi_1 of the page is free on x_1..x_h (x_k a loop about hole k). The
// elementary braid generator s_k acts on the right of the page, swapping
// holes k, k+1; its Artin automorphism is
//     x_k |-> x_k x_{k+1} x_k^-1,   x_{k+1} |-> x_k.
// Words (braid or free-group) are stored left to right with the RIGHTMOST
// letter applied first, so word uv acts as u after v. Products of mapping
// classes and of factorizations follow the same rule.
//
// A mapping class is (Artin automorphism, boundary-twist vector); the twist
// about a curve enclosing the hole set S maps to (full twist on S,
// indicator of S). Two twist products are equal as mapping classes of the
// holed disk iff both coordinates agree; the lantern relation is the
// regression test for this model.

struct Page {
    int genus = 0;
    int holes = 0;
    bool operator==(const Page&) const = default;
};

using FreeWord = std::vector<int>;    // +-k, k in 1..h, freely reduced
using BraidWord = std::vector<int>;   // +-k, k in 1..h-1, freely reduced

FreeWord reduce(FreeWord w);
FreeWord inverse(const FreeWord& w);
FreeWord concat(const FreeWord& a, const FreeWord& b);  // reduced

// Automorphism of F_h with its inverse carried along (all constructors are
// invertible in closed form, composition maintains both directions).
struct FreeAut {
    int rank = 0;
    std::vector<FreeWord> img, inv;

    static FreeAut identity(int rank);
    static FreeAut elementary(int k, int rank, bool positive);  // s_k^{+-1}
    static FreeAut full_twist(int lo, int hi, int rank, bool positive);

    FreeWord apply(const FreeWord& w) const;
    FreeWord apply_inverse(const FreeWord& w) const;
    FreeAut compose(const FreeAut& g) const;  // (*this) o g
    FreeAut inverse_aut() const;
    bool is_identity() const;
    bool operator==(const FreeAut& o) const { return img == o.img; }
};

FreeAut braid_aut(const BraidWord& w, int rank);

// Permutation induced by a braid word (image of each hole).
std::vector<int> braid_perm(const BraidWord& w, int h);
int perm_image(const BraidWord& w, int hole);
int perm_preimage(const BraidWord& w, int hole);

// Simple closed curve: the image of the round curve about holes [lo..hi]
// under the braid `conj`. Curves about a single hole are boundary-parallel.
struct Curve {
    BraidWord conj;
    int lo = 1, hi = 1;

    static Curve round(int lo, int hi);
    static Curve conjugated(BraidWord w, int lo, int hi);
    bool operator==(const Curve&) const = default;  // syntactic; see curves_equal
};

std::uint32_t encloses(const Curve& c, int h);  // bit k-1 set iff hole k inside
int encloses_count(const Curve& c, int h);

struct MappingClass {
    FreeAut artin;
    std::vector<long> twist;

    static MappingClass identity(int h);
    MappingClass compose(const MappingClass& g) const;
    MappingClass inverse() const;
    bool is_identity() const;
    bool operator==(const MappingClass&) const;
};

MappingClass dehn_twist(const Page& page, const Curve& c, bool positive = true);

// Semantic curve equality: equal Dehn twists.
bool curves_equal(const Page& page, const Curve& a, const Curve& b);

struct Factorization {
    Page page;
    std::vector<Curve> word;
};

MappingClass product(const Page& page, const std::vector<Curve>& word);
bool mc_equal(const Page& page, const std::vector<Curve>& w1, const std::vector<Curve>& w2);

// Braid word representing the twist about c (empty for a single hole).
BraidWord twist_braid_word(const Curve& c);

// Image of b under t_a^{+-1}, as a curve.
Curve transport(const Curve& a, const Curve& b, bool positive);

enum class HurwitzDir { Forward, Inverse };

// Forward: (..., a, b, ...) -> (..., t_a(b), a, ...) at index i (1-based).
// Inverse: (..., a, b, ...) -> (..., b, t_b^{-1}(a), ...).
Factorization hurwitz_move(const Factorization& f, int i, HurwitzDir dir);

// Signed twist word g = t_{c_1}^{e_1} ... ; conjugates every curve by g.
struct SignedCurve {
    Curve curve;
    bool positive = true;
};
Factorization global_conjugate(const Factorization& f, const std::vector<SignedCurve>& g);

// Split hole s into holes s, s+1 (new hole immediately right). Curves and
// braid words are cabled along the strand ending at position s.
Curve split_curve(const Curve& c, int s, int h);
Factorization split_page(const Factorization& f, int s);

}  // namespace palfkit::mcg
