#include "palfkit/chains.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace palfkit::chains {

std::optional<Rational> hj_eval(const ChainFraction& chain) {
    if (chain.empty()) throw std::domain_error("hj_eval: empty chain");
    Rational v(chain.back());
    for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) {
        if (v.is_zero()) return std::nullopt;
        v = Rational(*it) - v.reciprocal();
    }
    return v;
}

bool is_admissible(const Tuple& t) {
    if (t.empty()) return false;
    for (long x : t)
        if (x < 0) return false;
    Rational v(t.back());
    for (auto it = t.rbegin() + 1; it != t.rend(); ++it) {
        if (v <= Rational(0)) return false;  // proper suffixes must be positive
        v = Rational(*it) - v.reciprocal();
    }
    return true;
}

bool in_Z(const Tuple& t) {
    if (!is_admissible(t)) return false;
    auto v = hj_eval(t);
    return v && v->is_zero();
}

ChainFraction hj_expand(const Rational& r) {
    if (r <= Rational(1)) throw std::domain_error("hj_expand: need value > 1");
    ChainFraction out;
    Rational v = r;
    while (true) {
        BigInt b = v.ceil();
        out.push_back(b.get_si());
        Rational rem = Rational(b) - v;  // in [0,1)
        if (rem.is_zero()) break;
        v = rem.reciprocal();  // > 1
    }
    return out;
}

ChainFraction blow_up(const ChainFraction& chain, long gap) {
    long t = static_cast<long>(chain.size());
    if (gap < 1 || gap > t) throw std::domain_error("blow_up: bad position");
    ChainFraction out;
    out.reserve(chain.size() + 1);
    if (gap == t) {  // End: [c_1,...,c_t + 1, 1]
        out = chain;
        out.back() += 1;
        out.push_back(1);
        return out;
    }
    for (long i = 0; i < t; ++i) {
        long c = chain[i];
        if (i + 1 == gap) c += 1;
        if (i == gap) c += 1;
        out.push_back(c);
        if (i + 1 == gap) out.push_back(1);
    }
    return out;
}

ChainFraction blow_down(const ChainFraction& chain, long index) {
    long t = static_cast<long>(chain.size());
    if (index < 1 || index > t) throw std::domain_error("blow_down: bad index");
    if (chain[index - 1] != 1) throw std::domain_error("blow_down: entry is not 1");
    if (t == 1) throw std::domain_error("blow_down: cannot remove the only entry");
    ChainFraction out;
    out.reserve(chain.size() - 1);
    for (long i = 0; i < t; ++i) {
        if (i == index - 1) continue;
        long c = chain[i];
        if (i == index - 2 || i == index) c -= 1;
        out.push_back(c);
    }
    return out;
}

namespace {

bool all_twos(const ChainFraction& c) {
    return std::all_of(c.begin(), c.end(), [](long x) { return x == 2; });
}

bool is_seed(const ChainFraction& c) {
    if (c.size() == 1) return c[0] == 4;
    if (c.front() != 3 || c.back() != 3) return false;
    for (std::size_t i = 1; i + 1 < c.size(); ++i)
        if (c[i] != 2) return false;
    return true;
}

// (d, n, a) from the value p/q = d n^2 / (d n a - 1). gcd(p, q+1) = d n.
bool wahl_params(const Rational& v, BigInt& d, BigInt& n, BigInt& a) {
    BigInt p = v.num(), q = v.den();
    BigInt g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), BigInt(q + 1).get_mpz_t());
    if (g == 0 || p % g != 0) return false;
    n = p / g;
    if (n < 2 || g % n != 0) return false;
    d = g / n;
    if (d < 1) return false;
    a = (q + 1) / g;
    if (a < 1 || a >= n) return false;
    BigInt gna;
    mpz_gcd(gna.get_mpz_t(), n.get_mpz_t(), a.get_mpz_t());
    if (gna != 1) return false;
    return d * n * n == p && d * n * a - 1 == q;
}

}  // namespace

ClassT is_class_T(const ChainFraction& chain) {
    if (chain.empty()) throw std::domain_error("is_class_T: empty chain");
    for (long c : chain)
        if (c < 2) throw std::domain_error("is_class_T: entries must be >= 2");

    ClassT res;
    if (all_twos(chain)) {
        res.kind = ClassT::Kind::RationalDoublePoint;
        return res;
    }
    // Peel the two Wahl growth moves back to a seed.
    ChainFraction cur = chain;
    std::string deriv;
    while (!is_seed(cur)) {
        if (cur.size() < 2) return res;
        if (cur.front() == 2 && cur.back() >= 3) {
            cur.erase(cur.begin());
            cur.back() -= 1;
            deriv.push_back('p');
        } else if (cur.back() == 2 && cur.front() >= 3) {
            cur.pop_back();
            cur.front() -= 1;
            deriv.push_back('q');
        } else {
            return res;  // not class T
        }
    }
    res.kind = ClassT::Kind::Wahl;
    res.derivation = deriv;
    auto v = hj_eval(chain);
    if (!v || !wahl_params(*v, res.d, res.n, res.a))
        throw std::logic_error("is_class_T: seed-reachable chain without Wahl form");
    return res;
}

ClassT class_T_by_value(const ChainFraction& chain) {
    ClassT res;
    if (all_twos(chain)) {
        res.kind = ClassT::Kind::RationalDoublePoint;
        return res;
    }
    auto v = hj_eval(chain);
    if (v && wahl_params(*v, res.d, res.n, res.a)) res.kind = ClassT::Kind::Wahl;
    return res;
}

namespace {

// One BFS layer: all children of (tuple, trace) with canonical-trace dedup.
void bfs_layer(std::map<Tuple, BlowupTrace>& layer,
               const std::function<bool(const Tuple&)>& keep) {
    std::map<Tuple, BlowupTrace> next;
    for (const auto& [tup, trace] : layer) {
        long t = static_cast<long>(tup.size());
        for (long gap = 1; gap <= t; ++gap) {
            Tuple child = blow_up(tup, gap);
            if (!keep(child)) continue;
            BlowupTrace ct = trace;
            ct.push_back(gap);
            auto it = next.find(child);
            if (it == next.end() || ct < it->second) next[child] = ct;
        }
    }
    layer = std::move(next);
}

}  // namespace

std::vector<TupleWithTrace> enumerate_Z(long e) {
    if (e < 1) throw std::domain_error("enumerate_Z: e >= 1 required");
    std::map<Tuple, BlowupTrace> layer{{Tuple{0}, {}}};
    for (long step = 1; step < e; ++step)
        bfs_layer(layer, [](const Tuple&) { return true; });
    std::vector<TupleWithTrace> out;
    out.reserve(layer.size());
    for (auto& [tup, trace] : layer) out.push_back({tup, trace});
    return out;
}

namespace {

// Can `part` still embed into `bound` by an order-preserving injection with
// part[i] <= bound[phi(i)]? Entries only grow under further blow-ups, so a
// failure here prunes the whole subtree.
bool dominated(const Tuple& part, const ChainFraction& bound) {
    std::size_t j = 0;
    for (long x : part) {
        while (j < bound.size() && bound[j] < x) ++j;
        if (j == bound.size()) return false;
        ++j;
    }
    return true;
}

}  // namespace

BoundedZ enumerate_Z_bounded(const BigInt& n, const BigInt& q) {
    if (q < 1 || n <= q) throw std::domain_error("enumerate_Z_bounded: need 1 <= q < n");
    BigInt g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t());
    if (g != 1) throw std::domain_error("enumerate_Z_bounded: gcd(n,q) != 1");

    BoundedZ out;
    out.bound = hj_expand(Rational(n, n - q));
    long e = static_cast<long>(out.bound.size());

    std::map<Tuple, BlowupTrace> layer{{Tuple{0}, {}}};
    for (long step = 1; step < e; ++step)
        bfs_layer(layer, [&](const Tuple& t) { return dominated(t, out.bound); });
    for (auto& [tup, trace] : layer) {
        bool ok = tup.size() == out.bound.size();
        for (std::size_t i = 0; ok && i < tup.size(); ++i) ok = tup[i] <= out.bound[i];
        if (ok) out.tuples.push_back({tup, trace});
    }
    return out;
}

bool trace_replays_to(const BlowupTrace& trace, const Tuple& tuple) {
    Tuple cur{0};
    for (long gap : trace) {
        if (gap < 1 || gap > static_cast<long>(cur.size())) return false;
        cur = blow_up(cur, gap);
    }
    return cur == tuple;
}

namespace {

std::vector<long> parse_csv_longs(const std::string& s, char open, char close) {
    auto l = s.find(open), r = s.rfind(close);
    if (l == std::string::npos || r == std::string::npos || r < l)
        throw std::runtime_error("parse: expected bracketed list in '" + s + "'");
    std::vector<long> out;
    std::string body = s.substr(l + 1, r - l - 1);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stol(item));
    return out;
}

std::string join_csv(const std::vector<long>& v, char open, char close) {
    std::string s(1, open);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    s += close;
    return s;
}

}  // namespace

std::string to_string(const ChainFraction& c) { return join_csv(c, '[', ']'); }
std::string tuple_to_string(const Tuple& t) { return join_csv(t, '(', ')'); }
ChainFraction parse_chain(const std::string& s) { return parse_csv_longs(s, '[', ']'); }
Tuple parse_tuple(const std::string& s) { return parse_csv_longs(s, '(', ')'); }

}  // namespace palfkit::chains
