#pragma once

#include <optional>
#include <string>
#include <vector>

#include "palfkit/rational.hpp"

namespace palfkit::chains {

// Entries of a Hirzebruch-Jung continued fraction [c_1,...,c_t].
// Resolution chains have all entries >= 2; blow-up intermediates may
// contain 0 and 1.
using ChainFraction = std::vector<long>;

// Nonnegative e-tuple (n_1,...,n_e), candidate member of Lisca's Z_e.
using Tuple = std::vector<long>;

// Blow-up position: interior gap i (1 <= i <= t-1, between entries i and
// i+1) or the end rewrite, encoded as i == t. See blow_up().
struct BlowupPos {
    long gap;  // 1..t  (gap == t means End)
    bool operator==(const BlowupPos&) const = default;
};
using BlowupTrace = std::vector<long>;  // gap encoding per step

// [c_t] = c_t, [c_i,...,c_t] = c_i - 1/[c_{i+1},...,c_t].
// Returns nullopt when some proper suffix evaluates to 0, making a later
// step divide by zero (the chain is then inadmissible).
std::optional<Rational> hj_eval(const ChainFraction& chain);

// All proper suffix values [n_j,...,n_e] (j >= 2) are > 0. The full value
// is unconstrained.
bool is_admissible(const Tuple& t);

// Member of Z_e: admissible and [n_1,...,n_e] = 0.
bool in_Z(const Tuple& t);

// Unique expansion n/q = [b_1,...,b_r] with all b_i >= 2. Requires r > 1
// as a rational (i.e. n > q >= 1 after reduction).
ChainFraction hj_expand(const Rational& r);

ChainFraction blow_up(const ChainFraction& chain, long gap);
ChainFraction blow_down(const ChainFraction& chain, long index);  // 1-based, entry must be 1

// Class-T recognition for chains with entries >= 2.
struct ClassT {
    enum class Kind { No, RationalDoublePoint, Wahl };
    Kind kind = Kind::No;
    // For Wahl chains: the singularity is 1/(d n^2)(1, d n a - 1).
    BigInt d, n, a;
    // Reverse derivation down to a seed: each step is 'p' (drop leading 2,
    // decrement last) or 'q' (drop trailing 2, decrement first).
    std::string derivation;
    explicit operator bool() const { return kind != Kind::No; }
};
ClassT is_class_T(const ChainFraction& chain);

// Direct form test: value equals d n^2 / (d n a - 1) for valid (d, n, a),
// or the chain is all 2s. Used as the desk-scale oracle for is_class_T.
ClassT class_T_by_value(const ChainFraction& chain);

struct TupleWithTrace {
    Tuple tuple;
    BlowupTrace trace;  // canonical (lexicographically smallest) trace from (0)
};

// All of Z_e, via breadth-first blow-up from (0). Exponential in e.
std::vector<TupleWithTrace> enumerate_Z(long e);

// Z_e(n/(n-q)): members of Z_e bounded componentwise by the expansion
// [a_1,...,a_e] of n/(n-q). Pruned search, feasible well beyond
// what enumerate_Z can reach.
struct BoundedZ {
    ChainFraction bound;  // [a_1,...,a_e]
    std::vector<TupleWithTrace> tuples;
};
BoundedZ enumerate_Z_bounded(const BigInt& n, const BigInt& q);

// Replay check: trace applied from (0) must reproduce the tuple.
bool trace_replays_to(const BlowupTrace& trace, const Tuple& tuple);

std::string to_string(const ChainFraction& c);       // "[5,2]"
std::string tuple_to_string(const Tuple& t);         // "(2,2,1,3)"
ChainFraction parse_chain(const std::string& s);
Tuple parse_tuple(const std::string& s);

}  // namespace palfkit::chains
