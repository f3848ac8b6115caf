#include "palfkit/mcg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace palfkit::mcg {

FreeWord reduce(FreeWord w) {
    FreeWord out;
    out.reserve(w.size());
    for (int g : w) {
        if (!out.empty() && out.back() == -g)
            out.pop_back();
        else
            out.push_back(g);
    }
    return out;
}

FreeWord inverse(const FreeWord& w) {
    FreeWord out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return out;
}

FreeWord concat(const FreeWord& a, const FreeWord& b) {
    FreeWord out = a;
    for (int g : b) {
        if (!out.empty() && out.back() == -g)
            out.pop_back();
        else
            out.push_back(g);
    }
    return out;
}

namespace {

FreeWord substitute(const std::vector<FreeWord>& images, const FreeWord& w) {
    FreeWord out;
    for (int g : w) {
        const FreeWord& im = images[static_cast<std::size_t>(std::abs(g) - 1)];
        if (g > 0)
            for (int x : im) {
                if (!out.empty() && out.back() == -x)
                    out.pop_back();
                else
                    out.push_back(x);
            }
        else
            for (auto it = im.rbegin(); it != im.rend(); ++it) {
                int x = -*it;
                if (!out.empty() && out.back() == -x)
                    out.pop_back();
                else
                    out.push_back(x);
            }
    }
    return out;
}

}  // namespace

FreeAut FreeAut::identity(int rank) {
    FreeAut f;
    f.rank = rank;
    f.img.resize(static_cast<std::size_t>(rank));
    f.inv.resize(static_cast<std::size_t>(rank));
    for (int k = 1; k <= rank; ++k) {
        f.img[static_cast<std::size_t>(k - 1)] = {k};
        f.inv[static_cast<std::size_t>(k - 1)] = {k};
    }
    return f;
}

FreeAut FreeAut::elementary(int k, int rank, bool positive) {
    if (k < 1 || k >= rank) throw std::domain_error("elementary: bad generator index");
    FreeAut f = identity(rank);
    auto& imX = f.img[static_cast<std::size_t>(k - 1)];
    auto& imY = f.img[static_cast<std::size_t>(k)];
    auto& invX = f.inv[static_cast<std::size_t>(k - 1)];
    auto& invY = f.inv[static_cast<std::size_t>(k)];
    if (positive) {
        imX = {k, k + 1, -k};
        imY = {k};
        invX = {k + 1};
        invY = {-(k + 1), k, k + 1};
    } else {
        imX = {k + 1};
        imY = {-(k + 1), k, k + 1};
        invX = {k, k + 1, -k};
        invY = {k};
    }
    return f;
}

FreeAut FreeAut::full_twist(int lo, int hi, int rank, bool positive) {
    if (lo < 1 || hi > rank || lo > hi) throw std::domain_error("full_twist: bad interval");
    FreeAut f = identity(rank);
    if (lo == hi) return f;  // boundary-parallel, trivial on pi_1
    FreeWord c;
    for (int k = lo; k <= hi; ++k) c.push_back(k);
    FreeWord ci = inverse(c);
    for (int k = lo; k <= hi; ++k) {
        FreeWord& im = f.img[static_cast<std::size_t>(k - 1)];
        FreeWord& iv = f.inv[static_cast<std::size_t>(k - 1)];
        if (positive) {
            im = reduce(concat(concat(c, {k}), ci));
            iv = reduce(concat(concat(ci, {k}), c));
        } else {
            im = reduce(concat(concat(ci, {k}), c));
            iv = reduce(concat(concat(c, {k}), ci));
        }
    }
    return f;
}

FreeWord FreeAut::apply(const FreeWord& w) const { return substitute(img, w); }
FreeWord FreeAut::apply_inverse(const FreeWord& w) const { return substitute(inv, w); }

FreeAut FreeAut::compose(const FreeAut& g) const {
    FreeAut out;
    out.rank = rank;
    out.img.reserve(static_cast<std::size_t>(rank));
    out.inv.reserve(static_cast<std::size_t>(rank));
    for (int k = 0; k < rank; ++k) {
        out.img.push_back(apply(g.img[static_cast<std::size_t>(k)]));
        out.inv.push_back(g.apply_inverse(inv[static_cast<std::size_t>(k)]));
    }
    return out;
}

FreeAut FreeAut::inverse_aut() const {
    FreeAut out;
    out.rank = rank;
    out.img = inv;
    out.inv = img;
    return out;
}

bool FreeAut::is_identity() const {
    for (int k = 1; k <= rank; ++k)
        if (img[static_cast<std::size_t>(k - 1)] != FreeWord{k}) return false;
    return true;
}

FreeAut braid_aut(const BraidWord& w, int rank) {
    FreeAut acc = FreeAut::identity(rank);
    for (int g : w) acc = acc.compose(FreeAut::elementary(std::abs(g), rank, g > 0));
    return acc;
}

std::vector<int> braid_perm(const BraidWord& w, int h) {
    std::vector<int> p(static_cast<std::size_t>(h));
    std::iota(p.begin(), p.end(), 1);
    // image of hole q: apply letters right to left
    for (int q = 1; q <= h; ++q) {
        int cur = q;
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            int k = std::abs(*it);
            if (cur == k)
                cur = k + 1;
            else if (cur == k + 1)
                cur = k;
        }
        p[static_cast<std::size_t>(q - 1)] = cur;
    }
    return p;
}

int perm_image(const BraidWord& w, int hole) {
    int cur = hole;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        int k = std::abs(*it);
        if (cur == k)
            cur = k + 1;
        else if (cur == k + 1)
            cur = k;
    }
    return cur;
}

int perm_preimage(const BraidWord& w, int hole) {
    int cur = hole;
    for (int g : w) {  // inverse permutation: letters left to right
        int k = std::abs(g);
        if (cur == k)
            cur = k + 1;
        else if (cur == k + 1)
            cur = k;
    }
    return cur;
}

Curve Curve::round(int lo, int hi) {
    Curve c;
    c.lo = lo;
    c.hi = hi;
    return c;
}

Curve Curve::conjugated(BraidWord w, int lo, int hi) {
    Curve c;
    c.conj = reduce(std::move(w));
    c.lo = lo;
    c.hi = hi;
    return c;
}

std::uint32_t encloses(const Curve& c, int h) {
    std::uint32_t mask = 0;
    for (int q = c.lo; q <= c.hi; ++q) {
        int im = perm_image(c.conj, q);
        if (im < 1 || im > h) throw std::domain_error("encloses: curve leaves the page");
        mask |= 1u << (im - 1);
    }
    return mask;
}

int encloses_count(const Curve& c, int h) {
    return __builtin_popcount(encloses(c, h));
}

MappingClass MappingClass::identity(int h) {
    MappingClass m;
    m.artin = FreeAut::identity(h);
    m.twist.assign(static_cast<std::size_t>(h), 0);
    return m;
}

MappingClass MappingClass::compose(const MappingClass& g) const {
    MappingClass out;
    out.artin = artin.compose(g.artin);
    out.twist = twist;
    for (std::size_t i = 0; i < twist.size(); ++i) out.twist[i] += g.twist[i];
    return out;
}

MappingClass MappingClass::inverse() const {
    MappingClass out;
    out.artin = artin.inverse_aut();
    out.twist.reserve(twist.size());
    for (long t : twist) out.twist.push_back(-t);
    return out;
}

bool MappingClass::is_identity() const {
    return artin.is_identity() &&
           std::all_of(twist.begin(), twist.end(), [](long t) { return t == 0; });
}

bool MappingClass::operator==(const MappingClass& o) const {
    return twist == o.twist && artin == o.artin;
}

MappingClass dehn_twist(const Page& page, const Curve& c, bool positive) {
    if (page.genus != 0) throw std::domain_error("dehn_twist: genus-0 page required");
    int h = page.holes;
    if (c.lo < 1 || c.hi > h || c.lo > c.hi) throw std::domain_error("dehn_twist: bad interval");
    MappingClass m;
    if (c.conj.empty()) {
        m.artin = FreeAut::full_twist(c.lo, c.hi, h, positive);
    } else {
        FreeAut a = braid_aut(c.conj, h);
        m.artin = a.compose(FreeAut::full_twist(c.lo, c.hi, h, positive)).compose(a.inverse_aut());
    }
    m.twist.assign(static_cast<std::size_t>(h), 0);
    std::uint32_t mask = encloses(c, h);
    for (int q = 1; q <= h; ++q)
        if (mask & (1u << (q - 1))) m.twist[static_cast<std::size_t>(q - 1)] = positive ? 1 : -1;
    return m;
}

bool curves_equal(const Page& page, const Curve& a, const Curve& b) {
    return dehn_twist(page, a) == dehn_twist(page, b);
}

MappingClass product(const Page& page, const std::vector<Curve>& word) {
    MappingClass acc = MappingClass::identity(page.holes);
    for (const Curve& c : word) acc = acc.compose(dehn_twist(page, c));
    return acc;
}

bool mc_equal(const Page& page, const std::vector<Curve>& w1, const std::vector<Curve>& w2) {
    return product(page, w1) == product(page, w2);
}

BraidWord twist_braid_word(const Curve& c) {
    BraidWord ft;
    if (c.lo < c.hi) {
        int len = c.hi - c.lo + 1;
        for (int rep = 0; rep < len; ++rep)
            for (int k = c.lo; k < c.hi; ++k) ft.push_back(k);
    }
    BraidWord out = c.conj;
    out.insert(out.end(), ft.begin(), ft.end());
    BraidWord ci = inverse(c.conj);
    out.insert(out.end(), ci.begin(), ci.end());
    return reduce(std::move(out));
}

Curve transport(const Curve& a, const Curve& b, bool positive) {
    BraidWord w = twist_braid_word(a);
    if (!positive) w = inverse(w);
    return Curve::conjugated(concat(w, b.conj), b.lo, b.hi);
}

Factorization hurwitz_move(const Factorization& f, int i, HurwitzDir dir) {
    if (i < 1 || i >= static_cast<int>(f.word.size()))
        throw std::out_of_range("hurwitz_move: index");
    Factorization out = f;
    Curve& a = out.word[static_cast<std::size_t>(i - 1)];
    Curve& b = out.word[static_cast<std::size_t>(i)];
    if (dir == HurwitzDir::Forward) {
        Curve moved = transport(a, b, true);
        b = a;
        a = moved;
    } else {
        Curve moved = transport(b, a, false);
        a = b;
        b = moved;
    }
    return out;
}

Factorization global_conjugate(const Factorization& f, const std::vector<SignedCurve>& g) {
    BraidWord w;
    for (const auto& sc : g) {
        BraidWord t = twist_braid_word(sc.curve);
        if (!sc.positive) t = inverse(t);
        w = concat(w, t);
    }
    Factorization out = f;
    for (Curve& c : out.word) c = Curve::conjugated(concat(w, c.conj), c.lo, c.hi);
    return out;
}

Curve split_curve(const Curve& c, int s, int h) {
    if (s < 1 || s > h) throw std::domain_error("split_curve: bad hole");
    int p0 = perm_preimage(c.conj, s);  // strand ending at position s

    Curve out;
    if (p0 < c.lo)
        out.lo = c.lo + 1, out.hi = c.hi + 1;
    else if (p0 <= c.hi)
        out.lo = c.lo, out.hi = c.hi + 1;
    else
        out.lo = c.lo, out.hi = c.hi;

    // Cable the strand: walk letters in application order (right to left),
    // tracking the pair position d; the pair occupies (d, d+1) after the
    // reindexing, letters right of it shift by one.
    std::vector<BraidWord> applied;
    int d = p0;
    for (auto it = c.conj.rbegin(); it != c.conj.rend(); ++it) {
        int m = std::abs(*it);
        int sgn = *it > 0 ? 1 : -1;
        if (m + 1 < d) {
            applied.push_back({sgn * m});
        } else if (m > d) {
            applied.push_back({sgn * (m + 1)});
        } else if (m == d) {  // pair crosses the single strand to its right
            applied.push_back({sgn * d, sgn * (d + 1)});
            d = d + 1;
        } else {  // m == d - 1: single strand to the left crosses the pair
            applied.push_back({sgn * d, sgn * (d - 1)});
            d = d - 1;
        }
    }
    BraidWord w;
    for (auto it = applied.rbegin(); it != applied.rend(); ++it)
        w.insert(w.end(), it->begin(), it->end());
    out.conj = reduce(std::move(w));
    return out;
}

Factorization split_page(const Factorization& f, int s) {
    Factorization out;
    out.page = Page{0, f.page.holes + 1};
    out.word.reserve(f.word.size());
    for (const Curve& c : f.word) out.word.push_back(split_curve(c, s, f.page.holes));
    return out;
}

}  // namespace palfkit::mcg
