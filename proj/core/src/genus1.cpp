#include "palfkit/genus1.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace palfkit::genus1 {

int Registry::id(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    throw std::out_of_range("Registry: no curve named " + name);
}

long Registry::pairing(const HClass& u, const HClass& v) const {
    // <a, e_foot> = -1, <a, e_{foot+1}> = +1; e's pair trivially.
    long ua = u[0], va = v[0];
    long uf = u[static_cast<std::size_t>(foot)], vf = v[static_cast<std::size_t>(foot)];
    long ug = u[static_cast<std::size_t>(foot + 1)], vg = v[static_cast<std::size_t>(foot + 1)];
    return ua * (-vf + vg) - va * (-uf + ug);
}

bool Registry::is_disjoint(int a, int b) const {
    if (a == b) return true;
    return disjoint.count({std::min(a, b), std::max(a, b)}) > 0;
}

bool Registry::is_dual(int a, int b) const {
    return dual.count({std::min(a, b), std::max(a, b)}) > 0;
}

Letter named(int id) { return Letter{{}, id}; }

namespace {

std::vector<std::pair<int, bool>> reduce_word(std::vector<std::pair<int, bool>> w) {
    std::vector<std::pair<int, bool>> out;
    for (auto& l : w) {
        if (!out.empty() && out.back().first == l.first && out.back().second != l.second)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

}  // namespace

Letter simplify(const Registry& r, Letter l) {
    l.conj = reduce_word(std::move(l.conj));
    bool changed = true;
    while (changed && !l.conj.empty()) {
        changed = false;
        auto [g, gpos] = l.conj.back();
        if (g == l.base || r.is_disjoint(g, l.base)) {
            l.conj.pop_back();
            changed = true;
            continue;
        }
        // t_p t_q (p) = q for a dual pair, with both inverse variants.
        if (l.conj.size() >= 2) {
            auto [p, ppos] = l.conj[l.conj.size() - 2];
            if (ppos == gpos && p == l.base && r.is_dual(p, g)) {
                l.conj.pop_back();
                l.conj.pop_back();
                l.base = g;
                changed = true;
            }
        }
    }
    return l;
}

HClass homology(const Registry& r, const Letter& l) {
    HClass v = r.classes[static_cast<std::size_t>(l.base)];
    for (auto it = l.conj.rbegin(); it != l.conj.rend(); ++it) {
        const HClass& c = r.classes[static_cast<std::size_t>(it->first)];
        long coef = r.pairing(v, c);
        if (!it->second) coef = -coef;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += coef * c[i];
    }
    return v;
}

std::string render(const Registry& r, const Letter& l) {
    if (l.conj.empty()) return r.names[static_cast<std::size_t>(l.base)];
    for (const auto& alias : r.aliases)
        if (alias.word == l.conj)
            return alias.name + "(" + r.names[static_cast<std::size_t>(l.base)] + ")";
    std::ostringstream os;
    std::size_t i = 0;
    while (i < l.conj.size()) {
        std::size_t j = i;
        while (j < l.conj.size() && l.conj[j] == l.conj[i]) ++j;
        os << "t_" << r.names[static_cast<std::size_t>(l.conj[i].first)];
        long exp = static_cast<long>(j - i);
        if (!l.conj[i].second) exp = -exp;
        if (exp != 1) os << "^" << exp;
        i = j;
    }
    os << "(" << r.names[static_cast<std::size_t>(l.base)] << ")";
    return os.str();
}

namespace {

IntMat twist_matrix(const Registry& r, const HClass& c, bool positive) {
    int n = r.rank();
    IntMat m(static_cast<std::size_t>(n), std::vector<BigInt>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    // v -> v + <v, c> c on basis vectors.
    for (int j = 0; j < n; ++j) {
        HClass basis(static_cast<std::size_t>(n), 0);
        basis[static_cast<std::size_t>(j)] = 1;
        long coef = r.pairing(basis, c);
        if (!positive) coef = -coef;
        for (int i = 0; i < n; ++i)
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                BigInt(coef) * BigInt(c[static_cast<std::size_t>(i)]);
    }
    return m;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    std::size_t n = a.size();
    IntMat out(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (a[i][k] != 0)
                for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

IntMat letter_matrix(const Registry& r, const Letter& l, bool positive = true) {
    return twist_matrix(r, homology(r, l), positive);
}

}  // namespace

IntMat action_matrix(const Registry& r, const std::vector<Letter>& word) {
    int n = r.rank();
    IntMat acc(static_cast<std::size_t>(n), std::vector<BigInt>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    for (const Letter& l : word) acc = mat_mul(acc, letter_matrix(r, l));
    return acc;
}

IntMat relator_rows(const Registry& r, const std::vector<Letter>& word) {
    IntMat rows;
    for (const Letter& l : word) {
        HClass h = homology(r, l);
        std::vector<BigInt> row;
        row.reserve(h.size());
        for (long x : h) row.push_back(x);
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

Letter transport(const Registry& r, const Letter& a, const Letter& b, bool positive) {
    // t_a^{+-1} = W_a t_{base_a}^{+-1} W_a^{-1}; the image of b prepends that word.
    std::vector<std::pair<int, bool>> w = a.conj;
    w.push_back({a.base, positive});
    for (auto it = a.conj.rbegin(); it != a.conj.rend(); ++it)
        w.push_back({it->first, !it->second});
    Letter out;
    out.conj = std::move(w);
    out.conj.insert(out.conj.end(), b.conj.begin(), b.conj.end());
    out.base = b.base;
    return simplify(r, out);
}

}  // namespace

ReplayResult replay(const Factorization& start, const std::vector<Step>& script) {
    const Registry& r = *start.registry;
    ReplayResult res;
    res.final_word = start;
    auto& word = res.final_word.word;

    IntMat act0 = action_matrix(r, word);
    res.h1_before = cokernel(relator_rows(r, word), r.rank());
    std::size_t len0 = word.size();

    auto fail = [&](const std::string& msg) {
        res.ok = false;
        res.transcript.push_back("FAIL: " + msg);
    };

    int stepno = 0;
    for (const Step& s : script) {
        ++stepno;
        switch (s.kind) {
            case Step::Kind::Hurwitz:
            case Step::Kind::HurwitzInverse: {
                if (s.pos < 1 || s.pos >= static_cast<int>(word.size())) {
                    fail("step " + std::to_string(stepno) + ": hurwitz index out of range");
                    return res;
                }
                Letter& a = word[static_cast<std::size_t>(s.pos - 1)];
                Letter& b = word[static_cast<std::size_t>(s.pos)];
                if (s.kind == Step::Kind::Hurwitz) {
                    Letter moved = transport(r, a, b, true);
                    b = a;
                    a = moved;
                } else {
                    Letter moved = transport(r, b, a, false);
                    a = b;
                    b = moved;
                }
                break;
            }
            case Step::Kind::SubstituteRelation: {
                const auto& rel = r.relations[static_cast<std::size_t>(s.relation)];
                Letter& l = word[static_cast<std::size_t>(s.pos - 1)];
                if (!l.conj.empty() || l.base != rel.lhs) {
                    fail("step " + std::to_string(stepno) + ": relation lhs mismatch");
                    return res;
                }
                Letter expansion{rel.word, rel.base};
                if (homology(r, expansion) != r.classes[static_cast<std::size_t>(rel.lhs)]) {
                    fail("step " + std::to_string(stepno) +
                         ": declared class of " + r.names[static_cast<std::size_t>(rel.lhs)] +
                         " differs from its relation expansion");
                    return res;
                }
                l = expansion;
                break;
            }
            case Step::Kind::GlobalConjugate: {
                const auto& alias = r.aliases[static_cast<std::size_t>(s.alias)];
                for (Letter& l : word) {
                    Letter out;
                    out.conj = alias.word;
                    out.conj.insert(out.conj.end(), l.conj.begin(), l.conj.end());
                    out.base = l.base;
                    l = simplify(r, out);
                }
                break;
            }
        }
        if (word.size() != len0) {
            fail("step " + std::to_string(stepno) + ": word length changed");
            return res;
        }
        IntMat act = action_matrix(r, word);
        bool act_ok;
        if (s.kind == Step::Kind::GlobalConjugate) {
            const auto& alias = r.aliases[static_cast<std::size_t>(s.alias)];
            auto ident = [&] {
                IntMat m(static_cast<std::size_t>(r.rank()),
                         std::vector<BigInt>(static_cast<std::size_t>(r.rank()), 0));
                for (int i = 0; i < r.rank(); ++i)
                    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
                return m;
            };
            IntMat f = ident(), finv = ident();
            for (const auto& lw : alias.word)
                f = mat_mul(f, twist_matrix(r, r.classes[static_cast<std::size_t>(lw.first)],
                                            lw.second));
            for (auto it = alias.word.rbegin(); it != alias.word.rend(); ++it)
                finv = mat_mul(finv,
                               twist_matrix(r, r.classes[static_cast<std::size_t>(it->first)],
                                            !it->second));
            act_ok = act == mat_mul(mat_mul(f, act0), finv);
            act0 = act;
        } else {
            act_ok = act == act0;
        }
        if (!act_ok) {
            fail("step " + std::to_string(stepno) + ": homology action changed");
            return res;
        }
        Cokernel h1 = cokernel(relator_rows(r, word), r.rank());
        if (!(h1 == res.h1_before)) {
            fail("step " + std::to_string(stepno) + ": H1 of the total space changed");
            return res;
        }
        res.transcript.push_back("step " + std::to_string(stepno) + " ok: " +
                                 render_word(r, word));
    }
    res.h1_after = cokernel(relator_rows(r, word), r.rank());
    return res;
}

std::string render_word(const Registry& r, const std::vector<Letter>& word) {
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) out += " ";
        out += render(r, word[i]);
    }
    return out;
}

}  // namespace palfkit::genus1
