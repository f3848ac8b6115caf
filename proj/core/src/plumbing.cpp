#include "palfkit/plumbing.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "palfkit/snf.hpp"

namespace palfkit::plumbing {

long PlumbingGraph::b(int id) const { return -vertex(id).degree; }

const PlumbingGraph::Vertex& PlumbingGraph::vertex(int id) const {
    for (const auto& v : vertices)
        if (v.id == id) return v;
    throw std::out_of_range("PlumbingGraph: no vertex " + std::to_string(id));
}

std::vector<int> PlumbingGraph::neighbors(int id) const {
    std::vector<int> out;
    for (auto [a, b] : edges) {
        if (a == id) out.push_back(b);
        if (b == id) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

long PlumbingGraph::valence(int id) const { return static_cast<long>(neighbors(id).size()); }

bool PlumbingGraph::is_tree() const {
    if (vertices.empty()) return false;
    if (edges.size() + 1 != vertices.size()) return false;
    std::set<int> seen{vertices[0].id};
    std::vector<int> stack{vertices[0].id};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : neighbors(v))
            if (seen.insert(u).second) stack.push_back(u);
    }
    return seen.size() == vertices.size();
}

bool PlumbingGraph::is_path(const std::vector<int>& ids) const {
    if (ids.empty()) return false;
    std::set<int> uniq(ids.begin(), ids.end());
    if (uniq.size() != ids.size()) return false;
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
        auto nb = neighbors(ids[i]);
        if (!std::count(nb.begin(), nb.end(), ids[i + 1])) return false;
    }
    return true;
}

bool PlumbingGraph::decorated(int id) const {
    for (const auto& d : decorations)
        if (std::count(d.begin(), d.end(), id)) return true;
    return false;
}

chains::ChainFraction PlumbingGraph::chain_of(const std::vector<int>& ids) const {
    chains::ChainFraction out;
    for (int id : ids) out.push_back(b(id));
    return out;
}

PlumbingGraph build_cyclic(const BigInt& n, const BigInt& q) {
    if (q < 1 || n <= q) throw std::domain_error("build_cyclic: need 1 <= q < n");
    BigInt g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t());
    if (g != 1) throw std::domain_error("build_cyclic: gcd(n,q) != 1");
    auto bs = chains::hj_expand(Rational(n, q));
    PlumbingGraph out;
    for (std::size_t i = 0; i < bs.size(); ++i) {
        out.vertices.push_back({static_cast<int>(i), -bs[i]});
        if (i) out.edges.push_back({static_cast<int>(i - 1), static_cast<int>(i)});
    }
    return out;
}

PlumbingGraph build_dihedral(const BigInt& n, const BigInt& q) {
    if (q <= 1 || n <= q) throw std::domain_error("build_dihedral: need 1 < q < n");
    BigInt g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t());
    if (g != 1) throw std::domain_error("build_dihedral: gcd(n,q) != 1");
    auto bs = chains::hj_expand(Rational(n, q));  // [b, b_1, ..., b_r]
    PlumbingGraph out;
    out.vertices.push_back({0, -bs[0]});  // central -b
    out.vertices.push_back({1, -2});      // two -2 leaves
    out.vertices.push_back({2, -2});
    out.edges.push_back({0, 1});
    out.edges.push_back({0, 2});
    int prev = 0;
    for (std::size_t i = 1; i < bs.size(); ++i) {
        int id = static_cast<int>(2 + i);
        out.vertices.push_back({id, -bs[i]});
        out.edges.push_back({prev, id});
        prev = id;
    }
    return out;
}

PlumbingGraph build_star(long center_b, const chains::ChainFraction& arm1,
                         const chains::ChainFraction& arm2,
                         const chains::ChainFraction& arm3) {
    if (center_b < 2) throw std::domain_error("build_star: center b >= 2");
    for (const auto* arm : {&arm1, &arm2, &arm3})
        for (long c : *arm)
            if (c < 2) throw std::domain_error("build_star: arm entries >= 2");
    PlumbingGraph out;
    out.vertices.push_back({0, -center_b});
    int next = 1;
    for (const auto* arm : {&arm1, &arm2, &arm3}) {
        int prev = 0;
        for (long c : *arm) {
            out.vertices.push_back({next, -c});
            out.edges.push_back({prev, next});
            prev = next++;
        }
    }
    return out;
}

std::optional<int> has_bad_vertex(const PlumbingGraph& g) {
    std::vector<int> ids;
    for (const auto& v : g.vertices) ids.push_back(v.id);
    std::sort(ids.begin(), ids.end());
    for (int id : ids)
        if (-g.vertex(id).degree < g.valence(id)) return id;
    return std::nullopt;
}

std::vector<std::vector<BigInt>> intersection_matrix(const PlumbingGraph& g) {
    std::size_t n = g.vertices.size();
    std::map<int, std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) idx[g.vertices[i].id] = i;
    std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = g.vertices[i].degree;
    for (auto [a, b] : g.edges) {
        m[idx.at(a)][idx.at(b)] = 1;
        m[idx.at(b)][idx.at(a)] = 1;
    }
    return m;
}

bool negative_definite(const PlumbingGraph& g) {
    auto m = intersection_matrix(g);
    for (std::size_t k = 1; k <= m.size(); ++k) {
        IntMat lead(k, std::vector<BigInt>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) lead[i][j] = m[i][j];
        BigInt d = determinant(std::move(lead));
        if ((k % 2 == 0 && d <= 0) || (k % 2 == 1 && d >= 0)) return false;
    }
    return true;
}

Rational CanonicalCoefficients::at(int id) const {
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == id) return k[i];
    throw std::out_of_range("CanonicalCoefficients: no vertex " + std::to_string(id));
}

namespace {

// Solve M x = rhs exactly; M square nonsingular.
std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> m,
                                     std::vector<Rational> rhs) {
    std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::domain_error("solve: singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col].is_zero()) continue;
            Rational f = m[i][col] / m[col][col];
            for (std::size_t j = col; j < n; ++j) m[i][j] = m[i][j] - f * m[col][j];
            rhs[i] = rhs[i] - f * rhs[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
    return x;
}

}  // namespace

CanonicalCoefficients canonical_coefficients_on(const PlumbingGraph& g,
                                                const std::vector<int>& ids) {
    std::size_t n = ids.size();
    std::map<int, std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) idx[ids[i]] = i;
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = Rational(g.vertex(ids[i]).degree);
        rhs[i] = Rational(g.b(ids[i]) - 2);
        for (int u : g.neighbors(ids[i]))
            if (idx.count(u)) m[i][idx[u]] = Rational(1);
    }
    CanonicalCoefficients out;
    out.ids = ids;
    out.k = solve_rational(std::move(m), std::move(rhs));
    return out;
}

CanonicalCoefficients canonical_coefficients(const PlumbingGraph& g) {
    std::vector<int> ids;
    for (const auto& v : g.vertices) ids.push_back(v.id);
    return canonical_coefficients_on(g, ids);
}

namespace {

// Maximal connected all-(-2) components of undecorated vertices that have no
// edge to a decorated vertex. Such a component contracts to a rational
// double point, a topologically invisible decoration.
std::vector<std::vector<int>> implicit_rdp_components(const PlumbingGraph& g) {
    std::set<int> eligible;
    for (const auto& v : g.vertices)
        if (v.degree == -2 && !g.decorated(v.id)) {
            bool touches = false;
            for (int u : g.neighbors(v.id))
                if (g.decorated(u)) touches = true;
            if (!touches) eligible.insert(v.id);
        }
    std::vector<std::vector<int>> comps;
    std::set<int> seen;
    for (int start : eligible) {
        if (seen.count(start)) continue;
        std::vector<int> comp, stack{start};
        seen.insert(start);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int u : g.neighbors(v))
                if (eligible.count(u) && seen.insert(u).second) stack.push_back(u);
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(comp);
    }
    return comps;
}

// Order a connected subset as a path if it is one.
std::optional<std::vector<int>> as_path(const PlumbingGraph& g, const std::vector<int>& comp) {
    if (comp.size() == 1) return comp;
    std::set<int> in(comp.begin(), comp.end());
    std::vector<int> ends;
    for (int v : comp) {
        long deg_in = 0;
        for (int u : g.neighbors(v))
            if (in.count(u)) ++deg_in;
        if (deg_in > 2) return std::nullopt;
        if (deg_in == 1) ends.push_back(v);
    }
    if (ends.size() != 2) return std::nullopt;
    std::vector<int> path{std::min(ends[0], ends[1])};
    std::set<int> used{path[0]};
    while (path.size() < comp.size()) {
        bool advanced = false;
        for (int u : g.neighbors(path.back()))
            if (in.count(u) && !used.count(u)) {
                path.push_back(u);
                used.insert(u);
                advanced = true;
                break;
            }
        if (!advanced) return std::nullopt;
    }
    return path;
}

}  // namespace

PlumbingGraph normalize_rdp(const PlumbingGraph& g) {
    PlumbingGraph out = g;
    for (const auto& comp : implicit_rdp_components(g))
        if (auto p = as_path(g, comp)) out.decorations.push_back(*p);
    std::sort(out.decorations.begin(), out.decorations.end());
    return out;
}

ValidationReport validate_P_resolution(const PlumbingGraph& g_in) {
    ValidationReport rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.diagnostics.push_back(msg);
    };
    if (!g_in.is_tree()) {
        fail("graph is not a tree");
        return rep;
    }
    PlumbingGraph g = normalize_rdp(g_in);

    // Structural checks on decorated chains.
    std::set<int> dec_vertices;
    for (const auto& d : g.decorations) {
        if (!g.is_path(d)) {
            fail("decoration is not a linear subchain");
            continue;
        }
        for (int v : d)
            if (!dec_vertices.insert(v).second) fail("decorations share a vertex");
    }
    if (!rep.ok) return rep;
    for (std::size_t i = 0; i < g.decorations.size(); ++i)
        for (std::size_t j = i + 1; j < g.decorations.size(); ++j)
            for (int v : g.decorations[i])
                for (int u : g.decorations[j])
                    for (int w : g.neighbors(v))
                        if (w == u) fail("decorated chains are adjacent");
    if (!rep.ok) return rep;

    // Each decorated chain must contract to a class-T (or RDP) singularity.
    std::map<int, Rational> kcoef;  // decorated vertex -> canonical coefficient
    for (const auto& d : g.decorations) {
        auto chain = g.chain_of(d);
        for (long c : chain)
            if (c < 2) {
                fail("decorated chain contains a vertex of degree > -2: " +
                     chains::to_string(chain));
                return rep;
            }
        if (!chains::is_class_T(chain)) {
            fail("decorated chain is not class T: " + chains::to_string(chain));
            continue;
        }
        auto cc = canonical_coefficients_on(g, d);
        for (std::size_t i = 0; i < d.size(); ++i) kcoef[d[i]] = cc.k[i];
    }
    if (!rep.ok) return rep;

    // Relative ampleness at every surviving vertex.
    for (const auto& v : g.vertices) {
        if (dec_vertices.count(v.id)) continue;
        Rational val(g.b(v.id) - 2);
        for (int u : g.neighbors(v.id)) {
            auto it = kcoef.find(u);
            if (it != kcoef.end()) val = val - it->second;
        }
        if (!(val > Rational(0))) {
            fail("ampleness fails at vertex " + std::to_string(v.id) +
                 " (K.E = " + val.str() + ")");
        }
    }
    return rep;
}

namespace {

struct BlownGraph {
    PlumbingGraph g;
    // Per original edge (u < v): ids of inserted vertices ordered from u to v.
    std::map<std::pair<int, int>, std::vector<int>> subdivisions;
    int next_id;
};

std::string canonical_key(const BlownGraph& bg) {
    // Base vertices by id with degree; blow-up vertices named by position.
    std::map<int, std::string> name;
    std::ostringstream os;
    for (const auto& [edge, ins] : bg.subdivisions)
        for (std::size_t i = 0; i < ins.size(); ++i)
            name[ins[i]] = "e" + std::to_string(edge.first) + "_" + std::to_string(edge.second) +
                           "#" + std::to_string(i);
    std::vector<std::pair<int, long>> base;
    for (const auto& v : bg.g.vertices)
        if (!name.count(v.id)) {
            base.push_back({v.id, v.degree});
            name[v.id] = "v" + std::to_string(v.id);
        }
    std::sort(base.begin(), base.end());
    for (auto [id, deg] : base) os << "v" << id << ":" << deg << ";";
    for (const auto& [edge, ins] : bg.subdivisions) {
        os << "e" << edge.first << "_" << edge.second << ":";
        for (int id : ins) os << bg.g.vertex(id).degree << ",";
        os << ";";
    }
    std::vector<std::string> decs;
    for (const auto& d : bg.g.decorations) {
        std::vector<std::string> fwd, rev;
        for (int id : d) fwd.push_back(name.at(id));
        rev.assign(fwd.rbegin(), fwd.rend());
        std::string f, r;
        for (auto& s : fwd) f += s + ">";
        for (auto& s : rev) r += s + ">";
        decs.push_back(std::min(f, r));
    }
    std::sort(decs.begin(), decs.end());
    for (auto& d : decs) os << "D" << d << ";";
    return os.str();
}

// Blow up the edge (a, b): insert a -1 vertex, increment both endpoint b's.
BlownGraph blow_up_edge(const BlownGraph& bg, int a, int b) {
    BlownGraph out = bg;
    int nv = out.next_id++;
    for (auto& v : out.g.vertices)
        if (v.id == a || v.id == b) v.degree -= 1;
    out.g.vertices.push_back({nv, -1});
    auto& es = out.g.edges;
    es.erase(std::remove_if(es.begin(), es.end(),
                            [&](const std::pair<int, int>& e) {
                                return (e.first == a && e.second == b) ||
                                       (e.first == b && e.second == a);
                            }),
             es.end());
    es.push_back({a, nv});
    es.push_back({nv, b});

    // Record the insertion position along the original edge.
    for (auto& [edge, ins] : out.subdivisions) {
        std::vector<int> path{edge.first};
        path.insert(path.end(), ins.begin(), ins.end());
        path.push_back(edge.second);
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            if ((path[i] == a && path[i + 1] == b) || (path[i] == b && path[i + 1] == a)) {
                ins.insert(ins.begin() + static_cast<long>(i), nv);
                return out;
            }
    }
    auto key = std::minmax(a, b);
    out.subdivisions[{key.first, key.second}] = {nv};
    return out;
}

// All ways to decorate: families of pairwise disjoint, non-adjacent class-T
// paths. Candidates are filtered by class-T first, so the search is small.
void enumerate_decorations(const PlumbingGraph& base,
                           const std::vector<std::vector<int>>& candidates, std::size_t from,
                           PlumbingGraph& cur, std::vector<PlumbingGraph>& out) {
    out.push_back(cur);
    for (std::size_t i = from; i < candidates.size(); ++i) {
        const auto& cand = candidates[i];
        bool clash = false;
        for (const auto& d : cur.decorations) {
            for (int v : cand)
                for (int u : d) {
                    if (v == u) clash = true;
                    for (int w : base.neighbors(v))
                        if (w == u) clash = true;
                }
        }
        if (clash) continue;
        cur.decorations.push_back(cand);
        enumerate_decorations(base, candidates, i + 1, cur, out);
        cur.decorations.pop_back();
    }
}

// Candidate decorations are Wahl-type chains only: rational double point
// decorations are recovered canonically by normalize_rdp, so enumerating
// them separately would only multiply equivalent results (and explode on
// long all-2 chains).
std::vector<std::vector<int>> wahl_paths(const PlumbingGraph& g) {
    std::vector<int> ids;
    for (const auto& v : g.vertices) ids.push_back(v.id);
    std::sort(ids.begin(), ids.end());
    std::vector<std::vector<int>> cands;
    for (int s : ids) {
        std::vector<int> path{s};
        std::set<int> used{s};
        std::function<void(int)> grow = [&](int v) {
            if (path.front() <= path.back()) {
                auto chain = g.chain_of(path);
                bool ge2 = std::all_of(chain.begin(), chain.end(), [](long c) { return c >= 2; });
                if (ge2 && chains::class_T_by_value(chain).kind == chains::ClassT::Kind::Wahl)
                    cands.push_back(path);
            }
            for (int u : g.neighbors(v))
                if (!used.count(u)) {
                    used.insert(u);
                    path.push_back(u);
                    grow(u);
                    path.pop_back();
                    used.erase(u);
                }
        };
        grow(s);
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    return cands;
}

}  // namespace

PResolutionList enumerate_P_resolutions(const PlumbingGraph& g, int budget) {
    if (!g.is_tree()) throw std::domain_error("enumerate_P_resolutions: tree required");
    PResolutionList out;
    int max_id = 0;
    for (const auto& v : g.vertices) max_id = std::max(max_id, v.id);

    std::vector<BlownGraph> frontier{{g, {}, max_id + 1}};
    std::set<std::string> seen_graphs, seen_results;
    for (int depth = 0; depth <= budget; ++depth) {
        for (const auto& bg : frontier) {
            auto cands = wahl_paths(bg.g);
            PlumbingGraph cur = bg.g;
            cur.decorations.clear();
            std::vector<PlumbingGraph> decorated;
            enumerate_decorations(bg.g, cands, 0, cur, decorated);
            for (auto& d : decorated) {
                auto rep = validate_P_resolution(d);
                if (!rep.ok) continue;
                auto norm = normalize_rdp(d);
                BlownGraph keyed = bg;
                keyed.g = norm;
                auto key = canonical_key(keyed);
                if (seen_results.insert(key).second) {
                    out.resolutions.push_back(norm);
                    if (depth == budget && budget > 0) out.maybe_more_beyond_budget = true;
                }
            }
        }
        if (depth == budget) break;
        std::vector<BlownGraph> next;
        for (const auto& bg : frontier)
            for (auto [a, b] : bg.g.edges) {
                auto child = blow_up_edge(bg, a, b);
                auto key = canonical_key(child);
                if (seen_graphs.insert(key).second) next.push_back(std::move(child));
            }
        frontier = std::move(next);
    }
    return out;
}

PlumbingInvariants plumbing_invariants(const PlumbingGraph& g) {
    PlumbingInvariants inv;
    if (!g.is_tree()) throw std::domain_error("plumbing_invariants: tree required");
    inv.euler_char = 1 + static_cast<long>(g.vertices.size());
    inv.h1_rank = 0;
    inv.form = intersection_matrix(g);
    inv.definite_negative = negative_definite(g);
    return inv;
}

}  // namespace palfkit::plumbing
