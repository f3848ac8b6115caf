#include "palfkit/palf.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace palfkit::palf {

std::string Label::text() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Free: os << "free v" << vertex << " hole " << index; break;
        case Kind::Neck: os << "neck v" << vertex << "-v" << child; break;
        case Kind::Outer: os << "outer v" << vertex; break;
        case Kind::TraceCycle: os << "cycle step " << index; break;
        case Kind::Meridian: os << "meridian " << index; break;
        case Kind::Stabilizer: os << "stabilizer hole " << index; break;
        case Kind::Handle: os << "handle cycle " << index; break;
        case Kind::Subst: os << "substitution " << index; break;
    }
    return os.str();
}

PalfDescription bo_palf(const BigInt& n, const BigInt& q, const chains::Tuple& tuple,
                        const chains::BlowupTrace& trace) {
    auto bound = chains::hj_expand(Rational(n, n - q));
    if (tuple.size() != bound.size()) throw std::domain_error("bo_palf: tuple length != e");
    for (std::size_t i = 0; i < tuple.size(); ++i)
        if (tuple[i] < 0 || tuple[i] > bound[i])
            throw std::domain_error("bo_palf: tuple not bounded by " + chains::to_string(bound));
    if (!chains::in_Z(tuple)) throw std::domain_error("bo_palf: tuple not in Z_e");
    if (!chains::trace_replays_to(trace, tuple))
        throw std::domain_error("bo_palf: trace does not replay to tuple");

    int h = 1;
    std::vector<mcg::Curve> cycles;
    chains::Tuple cur{0};
    int step = 0;
    for (long gap : trace) {
        ++step;
        long t = static_cast<long>(cur.size());
        cur = chains::blow_up(cur, gap);
        if (gap == t) {
            h += 1;
            cycles.push_back(mcg::Curve::round(h, h));
        } else {
            int s = static_cast<int>(gap) + 1;  // the hole that splits
            for (auto& c : cycles) c = mcg::split_curve(c, s, h);
            h += 1;
            cycles.push_back(mcg::Curve::conjugated({s}, 1, s));
        }
    }

    PalfDescription out;
    out.fact.page = mcg::Page{0, h};
    for (std::size_t i = cycles.size(); i-- > 0;) {
        out.fact.word.push_back(cycles[i]);
        out.labels.push_back({Label::Kind::TraceCycle, -1, -1, static_cast<int>(i) + 1});
    }
    for (std::size_t i = 0; i < bound.size(); ++i)
        for (long c = 0; c < bound[i] - tuple[i]; ++c) {
            out.fact.word.push_back(mcg::Curve::round(1, static_cast<int>(i) + 1));
            out.labels.push_back({Label::Kind::Meridian, -1, -1, static_cast<int>(i) + 1});
        }
    return out;
}

chains::TupleWithTrace minimal_resolution_tuple(const BigInt& n, const BigInt& q) {
    auto bound = chains::hj_expand(Rational(n, n - q));
    long e = static_cast<long>(bound.size());
    chains::TupleWithTrace out;
    if (e == 1) {
        out.tuple = {0};
        return out;
    }
    out.tuple.assign(static_cast<std::size_t>(e), 2);
    out.tuple.front() = 1;
    out.tuple.back() = 1;
    for (long i = 1; i < e; ++i) out.trace.push_back(i);  // all End blow-ups
    return out;
}

PlanarLayout gay_mark_layout(const plumbing::PlumbingGraph& g, int root,
                             const std::vector<int>& prefer) {
    if (!g.is_tree()) throw std::domain_error("gay_mark: tree required");
    if (plumbing::has_bad_vertex(g)) throw std::domain_error("gay_mark: bad vertex present");

    auto free_count = [&](int v) { return g.b(v) - g.valence(v); };
    if (root < 0) {
        for (const auto& v : g.vertices)
            if (free_count(v.id) >= 1 && (root < 0 || v.id > root)) root = v.id;
    }
    if (root < 0 || free_count(root) < 1)
        throw std::domain_error("gay_mark: root needs a free boundary");

    auto rank = [&](int id) {
        for (std::size_t i = 0; i < prefer.size(); ++i)
            if (prefer[i] == id) return static_cast<int>(i);
        return static_cast<int>(prefer.size()) + id;
    };

    PlanarLayout L;
    L.root = root;
    int next_hole = 1;

    std::function<void(int, int)> visit = [&](int v, int par) {
        L.parent[v] = par;
        int first = next_hole;
        std::vector<int> kids;
        for (int u : g.neighbors(v))
            if (u != par) kids.push_back(u);
        std::sort(kids.begin(), kids.end(), [&](int a, int b) { return rank(a) < rank(b); });
        for (int u : kids) {
            visit(u, v);
            auto [ulo, uhi] = L.subtree.at(u);
            L.pd.fact.word.push_back(mcg::Curve::round(ulo, uhi));
            L.pd.labels.push_back({Label::Kind::Neck, v, u, 0});
        }
        long frees = free_count(v) - (v == root ? 1 : 0);  // root keeps the outer boundary
        for (long k = 0; k < frees; ++k) {
            L.pd.fact.word.push_back(mcg::Curve::round(next_hole, next_hole));
            L.pd.labels.push_back({Label::Kind::Free, v, -1, next_hole});
            L.free_holes[v].push_back(next_hole);
            ++next_hole;
        }
        if (next_hole == first)
            throw std::logic_error("gay_mark: empty subtree interval");
        L.subtree[v] = {first, next_hole - 1};
        L.dfs_order.push_back(v);
    };
    visit(root, -1);

    int holes = next_hole - 1;
    L.pd.fact.page = mcg::Page{0, holes};
    L.pd.fact.word.push_back(mcg::Curve::round(1, holes));
    L.pd.labels.push_back({Label::Kind::Outer, root, -1, 0});
    return L;
}

PalfDescription gay_mark_palf(const plumbing::PlumbingGraph& g, int root,
                              const std::vector<int>& prefer) {
    return gay_mark_layout(g, root, prefer).pd;
}

int choose_genus(const plumbing::PlumbingGraph& g) {
    return plumbing::has_bad_vertex(g) ? 1 : 0;
}

Embedding identity_embedding(int holes) {
    Embedding e;
    e.new_holes = holes;
    for (int i = 1; i <= holes; ++i) e.image.push_back({i, i});
    return e;
}

Embedding split_at(int holes, int hole) {
    Embedding e;
    e.new_holes = holes + 1;
    for (int i = 1; i <= holes; ++i) {
        int lo = i + (i > hole ? 1 : 0);
        int hi = lo + (i == hole ? 1 : 0);
        e.image.push_back({lo, hi});
    }
    return e;
}

namespace {

void check_embedding(const Embedding& e) {
    int expect = 1;
    for (const auto& [lo, hi] : e.image) {
        if (lo != expect || hi < lo) throw std::domain_error("embedding: non-monotone hole map");
        expect = hi + 1;
    }
    if (expect != e.new_holes + 1) throw std::domain_error("embedding: holes not covered");
}

}  // namespace

mcg::Curve extend_curve(const mcg::Curve& c, const Embedding& e, int old_holes) {
    check_embedding(e);
    if (static_cast<int>(e.image.size()) < old_holes)
        throw std::domain_error("embedding: too few holes");
    mcg::Curve cur = c;
    int h = old_holes;
    // Account for image entries beyond the curve's page (outside region).
    int extra = static_cast<int>(e.image.size()) - old_holes;
    h += extra;
    // Expand every hole left to right; each extra copy is one cabling split.
    for (std::size_t i = 0; i < e.image.size(); ++i) {
        auto [lo, hi] = e.image[i];
        for (int s = lo; s < hi; ++s) {
            cur = mcg::split_curve(cur, s, h);
            ++h;
        }
    }
    if (h != e.new_holes) throw std::logic_error("extend_curve: hole count mismatch");
    return cur;
}

mcg::Factorization extend_factorization(const mcg::Factorization& f, const Embedding& e) {
    mcg::Factorization out;
    out.page = mcg::Page{0, e.new_holes};
    for (const auto& c : f.word) out.word.push_back(extend_curve(c, e, f.page.holes));
    return out;
}

mcg::Factorization positive_stabilize(const mcg::Factorization& f,
                                      const std::vector<int>& holes) {
    mcg::Factorization out = f;
    for (int p : holes) {
        if (p < 1 || p > f.page.holes) throw std::domain_error("positive_stabilize: bad hole");
        out.word.push_back(mcg::Curve::round(p, p));
    }
    return out;
}

std::vector<int> subword_for_vertices(const PlanarLayout& layout, const std::vector<int>& ids) {
    std::set<int> in(ids.begin(), ids.end());
    std::vector<int> out;
    for (std::size_t p = 0; p < layout.pd.labels.size(); ++p) {
        const Label& l = layout.pd.labels[p];
        bool take = false;
        switch (l.kind) {
            case Label::Kind::Free: take = in.count(l.vertex) > 0; break;
            case Label::Kind::Neck: take = in.count(l.vertex) > 0 || in.count(l.child) > 0; break;
            case Label::Kind::Outer: take = in.count(layout.root) > 0; break;
            default: break;
        }
        if (take) out.push_back(static_cast<int>(p) + 1);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Genus-1 minimal resolutions
// ---------------------------------------------------------------------------

namespace {

struct ArmInfo {
    std::vector<int> ids;  // from the center outwards
    chains::ChainFraction bs;
};

std::vector<ArmInfo> star_arms(const plumbing::PlumbingGraph& g, int center) {
    std::vector<ArmInfo> arms;
    for (int u : g.neighbors(center)) {
        ArmInfo arm;
        int prev = center, cur = u;
        while (true) {
            arm.ids.push_back(cur);
            arm.bs.push_back(g.b(cur));
            int nxt = -1;
            for (int w : g.neighbors(cur))
                if (w != prev) nxt = w;
            if (nxt < 0) break;
            prev = cur;
            cur = nxt;
        }
        arms.push_back(std::move(arm));
    }
    return arms;
}

}  // namespace

Genus1Palf genus1_minres_palf(const plumbing::PlumbingGraph& g, const std::vector<int>& chain) {
    auto bad = plumbing::has_bad_vertex(g);
    if (!bad) throw std::domain_error("genus1_minres_palf: no bad vertex");
    int center = *bad;
    if (g.valence(center) != 3)
        throw UnsupportedCase("genus1_minres_palf: bad vertex is not a 3-valent center");
    auto arms = star_arms(g, center);

    // Pick the missing arm: all-2 of length <= 2 (prefer the longer one).
    std::vector<int> chain_ids = chain;
    int missing = -1;
    if (chain_ids.empty()) {
        for (std::size_t i = 0; i < arms.size(); ++i) {
            bool all2 = std::all_of(arms[i].bs.begin(), arms[i].bs.end(),
                                    [](long b) { return b == 2; });
            if (all2 && arms[i].ids.size() <= 2 &&
                (missing < 0 ||
                 arms[i].ids.size() > arms[static_cast<std::size_t>(missing)].ids.size()))
                missing = static_cast<int>(i);
        }
        if (missing < 0) throw UnsupportedCase("genus1_minres_palf: no short all-2 arm");
        std::vector<std::vector<int>> rest;
        for (std::size_t i = 0; i < arms.size(); ++i)
            if (static_cast<int>(i) != missing) rest.push_back(arms[i].ids);
        auto mk = [&](const std::vector<int>& a, const std::vector<int>& b) {
            std::vector<int> ids(a.rbegin(), a.rend());
            ids.push_back(center);
            ids.insert(ids.end(), b.begin(), b.end());
            return ids;
        };
        auto c1 = mk(rest[0], rest[1]), c2 = mk(rest[1], rest[0]);
        chain_ids = g.chain_of(c1) <= g.chain_of(c2) ? c1 : c2;
    } else {
        if (!g.is_path(chain_ids))
            throw std::domain_error("genus1_minres_palf: chain override is not a path");
        for (std::size_t i = 0; i < arms.size(); ++i)
            if (!std::count(chain_ids.begin(), chain_ids.end(), arms[i].ids[0]))
                missing = static_cast<int>(i);
        if (missing < 0) throw std::domain_error("genus1_minres_palf: chain override covers all arms");
    }
    const auto& marm = arms[static_cast<std::size_t>(missing)];
    bool is32 = marm.ids.size() == 2;
    for (long b : marm.bs)
        if (b != 2) throw UnsupportedCase("genus1_minres_palf: missing arm is not all -2");

    // Planar part: Gay-Mark layout of the chain on its own.
    plumbing::PlumbingGraph cg;
    for (int id : chain_ids) cg.vertices.push_back({id, g.vertex(id).degree});
    for (std::size_t i = 0; i + 1 < chain_ids.size(); ++i)
        cg.edges.push_back({chain_ids[i], chain_ids[i + 1]});
    auto layout = gay_mark_layout(cg, chain_ids.back(), chain_ids);
    int slots = layout.pd.fact.page.holes;

    // Handle position: the neck index of the bad vertex's annulus.
    std::size_t jstar = 0;
    while (chain_ids[jstar] != center) ++jstar;
    if (jstar == 0) throw UnsupportedCase("genus1_minres_palf: center at the chain end");
    int foot = layout.subtree.at(chain_ids[jstar - 1]).second;
    if (foot + 1 > slots)
        throw UnsupportedCase("genus1_minres_palf: no room for the handle feet");

    Genus1Palf out;
    out.chain = chain_ids;
    out.foot = foot;
    auto& reg = out.registry;
    reg.slots = slots;
    reg.foot = foot;
    auto add_curve = [&](const std::string& name, genus1::HClass cls) {
        reg.names.push_back(name);
        reg.classes.push_back(std::move(cls));
        return static_cast<int>(reg.names.size()) - 1;
    };
    std::vector<int> aid(static_cast<std::size_t>(slots) + 1, -1);
    std::vector<int> gid(static_cast<std::size_t>(slots) + 1, -1);
    for (int i = 1; i <= slots; ++i) {
        genus1::HClass ca(static_cast<std::size_t>(slots) + 1, 0);
        ca[static_cast<std::size_t>(i)] = 1;
        aid[static_cast<std::size_t>(i)] = add_curve("a" + std::to_string(i), ca);
    }
    for (int i = 2; i <= slots; ++i) {
        genus1::HClass cgm(static_cast<std::size_t>(slots) + 1, 0);
        for (int j = 1; j <= i; ++j) cgm[static_cast<std::size_t>(j)] = 1;
        gid[static_cast<std::size_t>(i)] = add_curve("g" + std::to_string(i), cgm);
    }
    gid[1] = aid[1];  // gamma_1 is the hole-1 twist
    genus1::HClass ax(static_cast<std::size_t>(slots) + 1, 0);
    ax[0] = 1;
    int xid = add_curve("x", ax);
    int kk = foot;
    genus1::Registry::Relation rel;
    rel.word = {{aid[static_cast<std::size_t>(kk)], true},
                {gid[static_cast<std::size_t>(kk)], true}};
    rel.base = xid;
    int yid = add_curve("y", genus1::homology(reg, genus1::Letter{rel.word, xid}));
    rel.lhs = yid;
    reg.relations.push_back(rel);
    reg.aliases.push_back({"f",
                           {{xid, true},
                            {aid[static_cast<std::size_t>(kk + 1)], true},
                            {xid, false},
                            {xid, false}}});
    reg.dual.insert({std::min(xid, aid[static_cast<std::size_t>(kk + 1)]),
                     std::max(xid, aid[static_cast<std::size_t>(kk + 1)])});
    auto declare_disjoint = [&](int a, int b) {
        if (a != b) reg.disjoint.insert({std::min(a, b), std::max(a, b)});
    };
    for (int i = 1; i <= slots; ++i)
        for (int j = 1; j <= slots; ++j) {
            declare_disjoint(aid[static_cast<std::size_t>(i)], aid[static_cast<std::size_t>(j)]);
            declare_disjoint(aid[static_cast<std::size_t>(i)], gid[static_cast<std::size_t>(j)]);
            declare_disjoint(gid[static_cast<std::size_t>(i)], gid[static_cast<std::size_t>(j)]);
        }
    for (int i = 1; i <= slots; ++i) {
        if (i != kk && i != kk + 1) declare_disjoint(xid, aid[static_cast<std::size_t>(i)]);
        if (i != kk) declare_disjoint(xid, gid[static_cast<std::size_t>(i)]);
    }

    // Word: x, y (y twice for a length-2 missing arm), then planar letters,
    // gamma_foot copies first, singles ascending, wider gammas last.
    struct Planar {
        genus1::Letter letter;
        Label label;
        int lo, hi;
    };
    std::vector<Planar> planar;
    for (std::size_t p = 0; p < layout.pd.fact.word.size(); ++p) {
        const auto& c = layout.pd.fact.word[p];
        if (c.lo != 1 && c.lo != c.hi) throw std::logic_error("genus1: unexpected planar curve");
        Planar pl;
        pl.lo = c.lo;
        pl.hi = c.hi;
        pl.letter = genus1::named(c.lo == c.hi ? aid[static_cast<std::size_t>(c.lo)]
                                               : gid[static_cast<std::size_t>(c.hi)]);
        pl.label = layout.pd.labels[p];
        planar.push_back(pl);
    }
    auto sort_key = [&](const Planar& p) {
        bool single = p.lo == p.hi;
        bool orange = single ? (kk == 1 && p.lo == 1) : p.hi == kk;
        if (orange) return std::tuple<int, int>(0, 0);
        if (single) return std::tuple<int, int>(1, p.lo);
        return std::tuple<int, int>(2, p.hi);
    };
    std::stable_sort(planar.begin(), planar.end(),
                     [&](const Planar& a, const Planar& b) { return sort_key(a) < sort_key(b); });

    out.word.push_back(genus1::named(xid));
    out.labels.push_back({Label::Kind::Handle, marm.ids[0], -1, 1});
    out.word.push_back(genus1::named(yid));
    out.labels.push_back({Label::Kind::Handle, marm.ids[0], -1, 2});
    if (is32) {
        out.word.push_back(genus1::named(yid));
        out.labels.push_back({Label::Kind::Handle, marm.ids[1], -1, 3});
    }
    for (auto& p : planar) {
        out.word.push_back(p.letter);
        out.labels.push_back(p.label);
    }

    out.rotation["x"] = 1;
    out.rotation["y"] = -1;
    for (int i = 1; i <= slots; ++i) {
        out.rotation["a" + std::to_string(i)] = 1;
        out.rotation["g" + std::to_string(i)] = 1;
    }

    // Vertex classes: +1 on the parent-side neck (outer for the root), -1
    // on the remaining boundary curves of the piece.
    auto pos_of = [&](Label::Kind kind, int v, int child, int index) {
        for (std::size_t p = 0; p < out.labels.size(); ++p) {
            const Label& l = out.labels[p];
            if (l.kind == kind && l.vertex == v && l.child == child && l.index == index)
                return static_cast<int>(p) + 1;
        }
        throw std::logic_error("genus1: label not found");
    };
    for (std::size_t i = 0; i < chain_ids.size(); ++i) {
        int v = chain_ids[i];
        std::vector<std::pair<int, int>> cls;
        if (v == layout.root)
            cls.push_back({pos_of(Label::Kind::Outer, v, -1, 0), 1});
        else
            cls.push_back({pos_of(Label::Kind::Neck, layout.parent.at(v), v, 0), 1});
        if (i > 0) cls.push_back({pos_of(Label::Kind::Neck, v, chain_ids[i - 1], 0), -1});
        if (layout.free_holes.count(v))
            for (int hole : layout.free_holes.at(v))
                cls.push_back({pos_of(Label::Kind::Free, v, -1, hole), -1});
        out.vertex_classes[v] = cls;
    }
    {
        // Missing-arm vertex: blue - red + the orange pair; the outer (3,2)
        // vertex is blue - blue.
        int base = is32 ? 3 : 2;
        int orange1 = base + 1, orange2 = base + 2;
        const auto& l1 = out.word[static_cast<std::size_t>(orange1 - 1)];
        const auto& l2 = out.word[static_cast<std::size_t>(orange2 - 1)];
        int want = kk == 1 ? aid[1] : gid[static_cast<std::size_t>(kk)];
        if (!l1.conj.empty() || !l2.conj.empty() || l1.base != want || l2.base != want)
            throw UnsupportedCase("genus1_minres_palf: missing the orange meridian pair");
        out.vertex_classes[marm.ids[0]] = {{2, 1}, {1, -1}, {orange1, 1}, {orange2, 1}};
        if (is32) out.vertex_classes[marm.ids[1]] = {{2, 1}, {3, -1}};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fillings
// ---------------------------------------------------------------------------

namespace {

using plumbing::PlumbingGraph;

std::vector<std::vector<int>> leaf_paths(const PlumbingGraph& g) {
    std::vector<int> leaves;
    for (const auto& v : g.vertices)
        if (g.valence(v.id) <= 1) leaves.push_back(v.id);
    std::vector<std::vector<int>> out;
    for (int a : leaves)
        for (int b : leaves) {
            if (a >= b) continue;
            std::map<int, int> par;
            std::vector<int> stack{a};
            par[a] = a;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int u : g.neighbors(v))
                    if (!par.count(u)) {
                        par[u] = v;
                        stack.push_back(u);
                    }
            }
            std::vector<int> path;
            for (int v = b; v != a; v = par[v]) path.push_back(v);
            path.push_back(a);
            std::reverse(path.begin(), path.end());
            out.push_back(path);
        }
    if (g.vertices.size() == 1) out.push_back({g.vertices[0].id});
    return out;
}

bool path_contains(const std::vector<int>& path, const std::vector<int>& ids) {
    for (int id : ids)
        if (!std::count(path.begin(), path.end(), id)) return false;
    return true;
}

std::string tree_canonical(const PlumbingGraph& g) {
    auto chain_mark = [&](int id) -> std::string {
        for (const auto& d : g.decorations)
            if (std::count(d.begin(), d.end(), id)) {
                auto chain = g.chain_of(d);
                auto rev = chain;
                std::reverse(rev.begin(), rev.end());
                return chains::to_string(std::min(chain, rev));
            }
        return "-";
    };
    std::function<std::string(int, int)> enc = [&](int v, int par) -> std::string {
        std::vector<std::string> kids;
        for (int u : g.neighbors(v))
            if (u != par) kids.push_back(enc(u, v));
        std::sort(kids.begin(), kids.end());
        std::string s = "(" + std::to_string(g.vertex(v).degree) + "|" + chain_mark(v);
        for (auto& k : kids) s += k;
        s += ")";
        return s;
    };
    std::string best;
    for (const auto& v : g.vertices) {
        std::string s = enc(v.id, -1);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

PlumbingGraph blow_down_all(PlumbingGraph g) {
    bool again = true;
    while (again) {
        again = false;
        for (const auto& v : g.vertices) {
            if (v.degree != -1) continue;
            auto nb = g.neighbors(v.id);
            if (nb.size() > 2) throw std::domain_error("blow_down_all: -1 vertex of valence > 2");
            PlumbingGraph h;
            for (const auto& w : g.vertices)
                if (w.id != v.id)
                    h.vertices.push_back(
                        {w.id, w.degree + (std::count(nb.begin(), nb.end(), w.id) ? 1 : 0)});
            for (auto [a, b] : g.edges)
                if (a != v.id && b != v.id) h.edges.push_back({a, b});
            if (nb.size() == 2) h.edges.push_back({nb[0], nb[1]});
            h.decorations = g.decorations;
            g = std::move(h);
            again = true;
            break;
        }
    }
    return g;
}

struct Case1Sub {
    std::vector<int> vertices;  // oriented far end first
    chains::ChainFraction bs;
};

// Hole items of the sub-surface carrying the pieces of S: hanging subtrees
// count as single holes, read in ambient order.
std::vector<std::pair<int, int>> region_items(const PlanarLayout& layout,
                                              const PlumbingGraph& g,
                                              const std::vector<int>& S) {
    std::set<int> in(S.begin(), S.end());
    std::vector<std::pair<int, int>> items;
    for (int v : S) {
        for (int u : g.neighbors(v)) {
            if (in.count(u)) continue;
            if (layout.parent.count(v) && layout.parent.at(v) == u) continue;
            items.push_back(layout.subtree.at(u));
        }
        if (layout.free_holes.count(v))
            for (int hole : layout.free_holes.at(v)) items.push_back({hole, hole});
    }
    std::sort(items.begin(), items.end());
    return items;
}

relations::SubstitutionCertificate extend_certificate(
    const relations::SubstitutionCertificate& base, const Embedding& emb, int base_holes,
    const std::string& name) {
    relations::SubstitutionCertificate out;
    out.name = name;
    out.page = mcg::Page{0, emb.new_holes};
    for (const auto& c : base.lhs) out.lhs.push_back(extend_curve(c, emb, base_holes));
    for (const auto& c : base.rhs) out.rhs.push_back(extend_curve(c, emb, base_holes));
    out.blowdown = base.blowdown;
    return out;
}

FillingResult case1_genus0(const PlumbingGraph& g, const std::vector<int>& P,
                           const std::vector<Case1Sub>& subs) {
    auto layout = gay_mark_layout(g, P.back(), P);
    const auto& word0 = layout.pd.fact.word;
    int H = layout.pd.fact.page.holes;

    std::vector<std::vector<int>> sub_positions;
    std::set<int> taken;
    for (const auto& s : subs) {
        auto pos = subword_for_vertices(layout, s.vertices);
        for (int p : pos) {
            if (taken.count(p)) throw UnsupportedCase("case 1: overlapping substitution subwords");
            taken.insert(p);
        }
        sub_positions.push_back(pos);
    }
    std::vector<int> rest;
    for (int p = 1; p <= static_cast<int>(word0.size()); ++p)
        if (!taken.count(p)) rest.push_back(p);

    std::vector<mcg::Curve> reordered;
    std::vector<Label> relabels;
    auto push = [&](int p) {
        reordered.push_back(word0[static_cast<std::size_t>(p - 1)]);
        relabels.push_back(layout.pd.labels[static_cast<std::size_t>(p - 1)]);
    };
    for (int p : rest) push(p);
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (const auto& pos : sub_positions) {
        std::size_t beg = reordered.size();
        for (int p : pos) push(p);
        spans.push_back({beg, reordered.size()});
    }
    if (!mcg::mc_equal(layout.pd.fact.page, word0, reordered))
        throw std::logic_error("case 1: reordering changed the monodromy");

    FillingResult res;
    std::vector<mcg::Curve> out(reordered.begin(),
                                reordered.begin() + static_cast<long>(rest.size()));
    std::vector<Label> out_labels(relabels.begin(),
                                  relabels.begin() + static_cast<long>(rest.size()));
    int subst_id = 0;
    for (std::size_t si = 0; si < subs.size(); ++si) {
        ++subst_id;
        auto base = relations::rbd_relation(subs[si].bs);
        auto items = region_items(layout, g, subs[si].vertices);
        if (static_cast<int>(items.size()) != base.page.holes)
            throw std::logic_error("case 1: sub-surface holes do not match the relation page");
        Embedding emb;
        for (auto [lo, hi] : items) emb.image.push_back({lo, hi});
        int covered = items.back().second;
        if (covered < H) emb.image.push_back({covered + 1, H});
        emb.new_holes = H;
        auto cert =
            extend_certificate(base, emb, base.page.holes, base.name + " embedded");
        std::vector<mcg::Curve> subword(reordered.begin() + static_cast<long>(spans[si].first),
                                        reordered.begin() + static_cast<long>(spans[si].second));
        if (!mcg::mc_equal(layout.pd.fact.page, subword, cert.lhs))
            throw std::logic_error("case 1: subword does not realize the relation lhs");
        cert.lhs = subword;
        if (!relations::verify(cert))
            throw std::logic_error("case 1: embedded certificate failed verification");
        for (const auto& c : cert.rhs) {
            out.push_back(c);
            out_labels.push_back({Label::Kind::Subst, -1, -1, subst_id});
        }
        res.certificates.push_back(std::move(cert));
    }

    PalfDescription pd;
    pd.fact.page = layout.pd.fact.page;
    pd.fact.word = std::move(out);
    pd.labels = std::move(out_labels);
    res.euler_char = (1 - H) + static_cast<long>(pd.fact.word.size());
    res.genus0 = std::move(pd);
    return res;
}

FillingResult case1_genus1(const PlumbingGraph& g, const std::vector<int>& P,
                           const std::vector<Case1Sub>& subs) {
    auto gp = genus1_minres_palf(g, P);

    plumbing::PlumbingGraph cg;
    for (int id : gp.chain) cg.vertices.push_back({id, g.vertex(id).degree});
    for (std::size_t i = 0; i + 1 < gp.chain.size(); ++i)
        cg.edges.push_back({gp.chain[i], gp.chain[i + 1]});
    auto layout = gay_mark_layout(cg, gp.chain.back(), gp.chain);

    FillingResult res;
    Genus1Palf outp = gp;
    auto& reg = outp.registry;
    auto lam = [&](const genus1::HClass& c) {
        return -c[static_cast<std::size_t>(reg.foot)] + c[static_cast<std::size_t>(reg.foot + 1)];
    };

    // All position sets are read off the original word before any rebuild.
    std::set<int> replaced;
    struct Planned {
        std::set<int> pos;
        std::vector<genus1::Letter> repl;
        relations::SubstitutionCertificate cert;
    };
    std::vector<Planned> plans;
    int subst_id = 0;
    for (const auto& s : subs) {
        ++subst_id;
        Planned plan;
        for (int v : s.vertices)
            for (auto [p, coef] : gp.vertex_classes.at(v)) {
                (void)coef;
                plan.pos.insert(p);  // adjacent pieces share their neck
            }
        for (int p : plan.pos) {
            if (replaced.count(p))
                throw UnsupportedCase("case 1 genus 1: overlapping substitution subwords");
            replaced.insert(p);
        }
        auto base = relations::rbd_relation(s.bs);
        auto items = region_items(layout, cg, s.vertices);
        if (static_cast<int>(items.size()) != base.page.holes)
            throw std::logic_error("case 1 genus 1: sub-surface mismatch");

        std::vector<long> action_sum(static_cast<std::size_t>(reg.rank()), 0);
        for (std::size_t ci = 0; ci < base.rhs.size(); ++ci) {
            const auto& c = base.rhs[ci];
            std::uint32_t mask = mcg::encloses(c, base.page.holes);
            genus1::HClass cls(static_cast<std::size_t>(reg.rank()), 0);
            for (int q = 1; q <= base.page.holes; ++q)
                if (mask & (1u << (q - 1)))
                    for (int slot = items[static_cast<std::size_t>(q - 1)].first;
                         slot <= items[static_cast<std::size_t>(q - 1)].second; ++slot)
                        cls[static_cast<std::size_t>(slot)] += 1;
            reg.names.push_back("r" + std::to_string(subst_id) + "_" + std::to_string(ci + 1));
            reg.classes.push_back(cls);
            plan.repl.push_back(genus1::named(static_cast<int>(reg.names.size()) - 1));
            long l = lam(cls);
            for (std::size_t j = 0; j < cls.size(); ++j) action_sum[j] += l * cls[j];
        }
        std::vector<long> target(static_cast<std::size_t>(reg.rank()), 0);
        for (int p : plan.pos) {
            auto h = genus1::homology(gp.registry, gp.word[static_cast<std::size_t>(p - 1)]);
            long l = lam(h);
            for (std::size_t j = 0; j < h.size(); ++j) target[j] += l * h[j];
        }
        if (target != action_sum)
            throw UnsupportedCase("case 1 genus 1: substitution action mismatch");

        plan.cert = base;
        plan.cert.name += " (genus-1 ambient)";
        plan.cert.evidence.push_back("ambient homology action matches across the substitution");
        plans.push_back(std::move(plan));
    }

    std::vector<genus1::Letter> word;
    std::vector<Label> labels;
    for (std::size_t p = 0; p < gp.word.size(); ++p)
        if (!replaced.count(static_cast<int>(p) + 1)) {
            word.push_back(gp.word[p]);
            labels.push_back(gp.labels[p]);
        }
    int id = 0;
    for (auto& plan : plans) {
        ++id;
        for (const auto& l : plan.repl) {
            word.push_back(l);
            labels.push_back({Label::Kind::Subst, -1, -1, id});
        }
        res.certificates.push_back(std::move(plan.cert));
    }
    outp.word = std::move(word);
    outp.labels = std::move(labels);
    outp.vertex_classes.clear();

    res.euler_char = static_cast<long>(outp.word.size()) - reg.slots;
    res.genus1 = std::move(outp);
    return res;
}

FillingResult gamma_filling(const PlumbingGraph& pres, const PlumbingGraph& minres) {
    // The central chain: the decorated chain containing the 3-valent vertex.
    int central = -1;
    for (const auto& v : pres.vertices)
        if (pres.valence(v.id) >= 3) central = v.id;
    if (central < 0) throw UnsupportedCase("gamma filling: no central vertex");
    std::vector<int> S;
    for (const auto& d : pres.decorations)
        if (std::count(d.begin(), d.end(), central)) S = d;
    if (S.empty()) throw UnsupportedCase("gamma filling: central vertex is undecorated");

    // The chain survives the blow-downs; orient it along a maximal path of
    // the minimal resolution and root the layout at that path's end.
    std::vector<int> best;
    for (auto& path : leaf_paths(minres)) {
        if (!path_contains(path, S)) continue;
        if (best.empty() || path.size() > best.size() ||
            (path.size() == best.size() && path < best)) best = path;
    }
    if (best.empty()) throw UnsupportedCase("gamma filling: central chain not on a path");
    std::vector<int> ordered;
    for (int v : best)
        if (std::count(S.begin(), S.end(), v)) ordered.push_back(v);
    chains::ChainFraction sbs = pres.chain_of(ordered);  // degrees before blow-down

    auto layout = gay_mark_layout(minres, best.back(), best);
    int H = layout.pd.fact.page.holes;
    const auto& word0 = layout.pd.fact.word;

    std::set<int> aux;
    for (const auto& v : minres.vertices)
        if (!std::count(S.begin(), S.end(), v.id)) aux.insert(v.id);

    std::vector<int> neck_positions, lhs_positions;
    for (std::size_t p = 0; p < layout.pd.labels.size(); ++p) {
        const Label& l = layout.pd.labels[p];
        bool aux_neck =
            l.kind == Label::Kind::Neck && (aux.count(l.vertex) || aux.count(l.child));
        if (aux_neck)
            neck_positions.push_back(static_cast<int>(p) + 1);
        else
            lhs_positions.push_back(static_cast<int>(p) + 1);
    }

    auto base = relations::rbd_relation(sbs);
    if (base.page.holes != H)
        throw std::logic_error("gamma filling: relation page does not match the layout");

    std::vector<mcg::Curve> lhs, necks;
    std::vector<Label> neck_labels;
    for (int p : lhs_positions) lhs.push_back(word0[static_cast<std::size_t>(p - 1)]);
    for (int p : neck_positions) {
        necks.push_back(word0[static_cast<std::size_t>(p - 1)]);
        neck_labels.push_back(layout.pd.labels[static_cast<std::size_t>(p - 1)]);
    }
    std::vector<mcg::Curve> rearranged = necks;
    rearranged.insert(rearranged.end(), lhs.begin(), lhs.end());
    if (!mcg::mc_equal(layout.pd.fact.page, word0, rearranged))
        throw std::logic_error("gamma filling: reordering changed the monodromy");
    if (!mcg::mc_equal(layout.pd.fact.page, lhs, base.lhs))
        throw std::logic_error("gamma filling: subword does not realize the relation lhs");

    relations::SubstitutionCertificate cert = base;
    cert.lhs = lhs;
    if (!relations::verify(cert))
        throw std::logic_error("gamma filling: certificate failed verification");

    FillingResult res;
    PalfDescription pd;
    pd.fact.page = layout.pd.fact.page;
    pd.fact.word = necks;
    pd.labels = neck_labels;
    for (const auto& c : cert.rhs) {
        pd.fact.word.push_back(c);
        pd.labels.push_back({Label::Kind::Subst, -1, -1, 1});
    }
    res.euler_char = (1 - H) + static_cast<long>(pd.fact.word.size());
    res.certificates.push_back(std::move(cert));
    res.genus0 = std::move(pd);
    return res;
}

std::vector<genus1::Step> exceptional_script_for(const Genus1Palf& gp) {
    const auto& reg = gp.registry;
    int kk = gp.foot;
    int e = reg.slots;
    auto a = [&](int i) { return reg.id("a" + std::to_string(i)); };

    using genus1::Step;
    std::vector<Step> script;
    auto H = [&](int p) { script.push_back({Step::Kind::Hurwitz, p, 0, 0}); };
    auto Hi = [&](int p) { script.push_back({Step::Kind::HurwitzInverse, p, 0, 0}); };
    script.push_back({Step::Kind::SubstituteRelation, 2, 0, 0});
    // Move a_k in front of the gamma_k pair, unfolding y.
    int apos = 0;
    for (std::size_t p = 0; p < gp.word.size(); ++p)
        if (gp.word[p].conj.empty() && gp.word[p].base == a(kk)) apos = static_cast<int>(p) + 1;
    for (int p = apos - 1; p >= 3; --p) Hi(p);
    Hi(2);  // (c, a_k) -> (a_k, t_{g_k}(x))
    Hi(3);  // (d, g_k) -> (g_k, x)
    // Word: x a_k g_k x g_k a_1 ...; migrate the spare g_k right across the
    // remaining singles.
    for (int i = 0; i < e - 1; ++i) H(5 + i);
    // Bring a_{k+1} to the front of the singles block.
    int a1pos = 5;
    int idx = 0;
    for (int i = 1; i <= e; ++i) {
        if (i == kk) continue;
        if (i == kk + 1) break;
        ++idx;
    }
    for (int p = a1pos + idx - 1; p >= a1pos; --p) Hi(p);
    H(1);
    H(2);
    H(4);
    H(3);
    Hi(2);
    Hi(1);
    script.push_back({Step::Kind::GlobalConjugate, 0, 0, 0});
    return script;
}

FillingResult exceptional_genus1(const PlumbingGraph& pres, const PlumbingGraph& minres) {
    // The two shapes: the chain read (-3,-2,-5) or (-4,-2,-3) with a -2 on
    // the bad vertex. The chain orientation is part of the shipped script.
    auto bad = plumbing::has_bad_vertex(minres);
    if (!bad) throw UnsupportedCase("exceptional genus 1: no bad vertex");
    int center = *bad;
    auto arms = star_arms(minres, center);
    if (arms.size() != 3) throw UnsupportedCase("exceptional genus 1: not a 3-arm star");
    int a3 = -1, a5 = -1, a4 = -1;
    for (std::size_t i = 0; i < arms.size(); ++i) {
        if (arms[i].bs == chains::ChainFraction{3}) a3 = static_cast<int>(i);
        if (arms[i].bs == chains::ChainFraction{5}) a5 = static_cast<int>(i);
        if (arms[i].bs == chains::ChainFraction{4}) a4 = static_cast<int>(i);
    }
    std::vector<int> chain;
    chains::ChainFraction anchor_chain;
    bool icosahedral = a3 >= 0 && a5 >= 0;
    if (icosahedral) {
        chain = {arms[static_cast<std::size_t>(a3)].ids[0], center,
                 arms[static_cast<std::size_t>(a5)].ids[0]};
        anchor_chain = {3, 5, 2};
    } else if (a4 >= 0 && a3 >= 0) {
        chain = {arms[static_cast<std::size_t>(a4)].ids[0], center,
                 arms[static_cast<std::size_t>(a3)].ids[0]};
        anchor_chain = {4, 3, 2};
    } else {
        throw UnsupportedCase("exceptional genus 1: unrecognized arm degrees");
    }

    auto gp = genus1_minres_palf(minres, chain);
    auto script = exceptional_script_for(gp);

    genus1::Factorization start;
    start.registry = &gp.registry;
    start.word = gp.word;
    auto rr = genus1::replay(start, script);
    if (!rr.ok) {
        std::string msg = "exceptional genus 1: script replay failed";
        for (const auto& t : rr.transcript) msg += "\n  " + t;
        throw std::logic_error(msg);
    }

    // Move g_e left over f(g_k) so the blown-down subword is consecutive,
    // then replace it by the anchor word, formally.
    genus1::Factorization fin = rr.final_word;
    {
        std::vector<genus1::Step> swap{{genus1::Step::Kind::Hurwitz,
                                        static_cast<int>(fin.word.size()) - 1, 0, 0}};
        auto rr2 = genus1::replay(fin, swap);
        if (!rr2.ok) throw std::logic_error("exceptional genus 1: final swap failed");
        fin = rr2.final_word;
    }

    auto anchor = relations::rbd_relation(anchor_chain);
    if (anchor.lhs.size() + 2 != fin.word.size())
        throw std::logic_error("exceptional genus 1: subword length mismatch");

    FillingResult res;
    Genus1Palf outp = gp;
    outp.registry = *fin.registry;
    outp.word.clear();
    outp.labels.clear();
    outp.vertex_classes.clear();
    outp.homology_reliable = false;
    // Final word: t_x(a_{k+1}), [anchor rhs, formal letters], f(g_k).
    outp.word.push_back(fin.word.front());
    outp.labels.push_back({Label::Kind::Handle, -1, -1, 1});
    auto& reg2 = outp.registry;
    for (std::size_t ci = 0; ci < anchor.rhs.size(); ++ci) {
        genus1::HClass cls(static_cast<std::size_t>(reg2.rank()), 0);
        reg2.names.push_back("s" + std::to_string(ci + 1));
        reg2.classes.push_back(cls);
        outp.word.push_back(genus1::named(static_cast<int>(reg2.names.size()) - 1));
        outp.labels.push_back({Label::Kind::Subst, -1, -1, 1});
    }
    outp.word.push_back(fin.word.back());  // f(g_k), swapped to the end
    outp.labels.push_back({Label::Kind::Handle, -1, -1, 2});

    res.euler_char = static_cast<long>(outp.word.size()) - reg2.slots;
    relations::SubstitutionCertificate cert = anchor;
    cert.name += " (exceptional genus-1, formal substitution)";
    cert.evidence.push_back("rewrite script replayed; final word matches the derived form");
    for (const auto& t : rr.transcript) cert.evidence.push_back(t);
    res.certificates.push_back(std::move(cert));
    res.notes.push_back(
        "genus-1 exceptional case: substitution performed formally; homology of the "
        "composite word is not modeled");
    res.genus1 = std::move(outp);
    (void)pres;
    return res;
}

}  // namespace

genus1::ReplayResult exceptional_rewrite(const Genus1Palf& gp) {
    genus1::Factorization start;
    start.registry = &gp.registry;
    start.word = gp.word;
    return genus1::replay(start, exceptional_script_for(gp));
}

FillingResult filling_palf(const PlumbingGraph& g, const PlumbingGraph& pres) {
    auto rep = plumbing::validate_P_resolution(pres);
    if (!rep.ok) {
        std::string msg = "filling_palf: invalid P-resolution";
        for (const auto& d : rep.diagnostics) msg += "; " + d;
        throw std::domain_error(msg);
    }
    auto presN = plumbing::normalize_rdp(pres);

    std::vector<Case1Sub> wahl;
    for (const auto& d : presN.decorations) {
        auto bs = presN.chain_of(d);
        if (chains::is_class_T(bs).kind == chains::ClassT::Kind::Wahl)
            wahl.push_back({d, bs});
    }
    bool blown_up = false;
    for (const auto& v : presN.vertices)
        if (v.degree == -1) blown_up = true;

    if (!blown_up) {
        if (wahl.empty()) {
            FillingResult res;
            if (choose_genus(g) == 0) {
                auto pd = gay_mark_palf(g);
                res.euler_char =
                    (1 - pd.fact.page.holes) + static_cast<long>(pd.fact.word.size());
                res.genus0 = std::move(pd);
            } else {
                auto gp = genus1_minres_palf(g);
                res.euler_char = static_cast<long>(gp.word.size()) - gp.registry.slots;
                res.genus1 = std::move(gp);
            }
            res.notes.push_back("rational double point resolution; zero substitutions");
            return res;
        }
        std::vector<std::vector<int>> candidates;
        for (auto& path : leaf_paths(g)) {
            bool ok = true;
            for (const auto& s : wahl)
                if (!path_contains(path, s.vertices)) ok = false;
            if (!ok) continue;
            auto rev = path;
            std::reverse(rev.begin(), rev.end());
            if (g.chain_of(rev) < g.chain_of(path)) path = rev;
            candidates.push_back(path);
        }
        std::sort(candidates.begin(), candidates.end(),
                  [&](const auto& a, const auto& b) { return g.chain_of(a) < g.chain_of(b); });
        if (candidates.empty())
            throw UnsupportedCase("filling_palf: no linear subgraph contains all class-T chains");
        std::string first_error;
        for (const auto& best : candidates) {
            std::vector<Case1Sub> subs = wahl;
            for (auto& s : subs) {
                std::vector<int> ordered;
                for (int v : best)
                    if (std::count(s.vertices.begin(), s.vertices.end(), v)) ordered.push_back(v);
                if (ordered.size() != s.vertices.size())
                    throw std::logic_error("filling_palf: chain not contained in path");
                s.vertices = ordered;
                s.bs = g.chain_of(ordered);
            }
            try {
                if (choose_genus(g) == 0) return case1_genus0(g, best, subs);
                return case1_genus1(g, best, subs);
            } catch (const UnsupportedCase& ex) {
                if (first_error.empty()) first_error = ex.what();
            }
        }
        throw UnsupportedCase(first_error.empty() ? "filling_palf: case 1 failed" : first_error);
    }

    auto minres = blow_down_all(presN);
    {
        PlumbingGraph plain_min = minres, plain_g = g;
        plain_min.decorations.clear();
        plain_g.decorations.clear();
        if (tree_canonical(plain_min) != tree_canonical(plain_g))
            throw std::domain_error("filling_palf: P-resolution does not blow down to the graph");
    }
    minres.decorations.clear();
    if (choose_genus(minres) == 0) return gamma_filling(presN, minres);
    return exceptional_genus1(presN, minres);
}

}  // namespace palfkit::palf
