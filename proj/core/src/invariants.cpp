#include "palfkit/invariants.hpp"

#include <stdexcept>

namespace palfkit::invariants {

long euler_char(const mcg::Factorization& f) {
    long chi_page = 1 - f.page.holes;  // disk with h holes
    return chi_page + static_cast<long>(f.word.size());
}

long euler_char(const palf::Genus1Palf& f) {
    return static_cast<long>(f.word.size()) - f.registry.slots;
}

Cokernel first_homology(const mcg::Factorization& f) {
    IntMat rows;
    for (const auto& c : f.word) {
        std::vector<BigInt> row(static_cast<std::size_t>(f.page.holes), 0);
        auto mask = mcg::encloses(c, f.page.holes);
        for (int q = 1; q <= f.page.holes; ++q)
            if (mask & (1u << (q - 1))) row[static_cast<std::size_t>(q - 1)] = 1;
        rows.push_back(std::move(row));
    }
    return cokernel(rows, f.page.holes);
}

Cokernel first_homology(const palf::Genus1Palf& f) {
    if (!f.homology_reliable)
        throw std::domain_error("first_homology: word contains formally substituted letters");
    return cokernel(genus1::relator_rows(f.registry, f.word), f.registry.rank());
}

int rotation_number(const mcg::Curve&) {
    return 1;  // embedded planar curve, counterclockwise convention
}

int rotation_number(const palf::Genus1Palf& f, const genus1::Letter& l) {
    if (!l.conj.empty())
        throw std::domain_error("rotation_number: only registry curves carry declared values");
    auto it = f.rotation.find(f.registry.names[static_cast<std::size_t>(l.base)]);
    if (it == f.rotation.end()) throw std::domain_error("rotation_number: unregistered curve");
    return it->second;
}

AdjunctionReport check_adjunction(const palf::PalfDescription& pd,
                                  const plumbing::PlumbingGraph& g,
                                  const palf::PlanarLayout& layout) {
    AdjunctionReport rep;
    for (const auto& v : g.vertices) {
        long sum = 0;
        for (std::size_t p = 0; p < pd.labels.size(); ++p) {
            const auto& l = pd.labels[p];
            int r = rotation_number(pd.fact.word[p]);
            bool parent_side =
                (l.kind == palf::Label::Kind::Neck && l.child == v.id) ||
                (l.kind == palf::Label::Kind::Outer && v.id == layout.root);
            bool own = (l.kind == palf::Label::Kind::Free && l.vertex == v.id) ||
                       (l.kind == palf::Label::Kind::Neck && l.vertex == v.id);
            if (parent_side)
                sum += r;
            else if (own)
                sum -= r;
        }
        bool ok = sum == g.vertex(v.id).degree + 2;
        rep.vertex_ok[v.id] = ok;
        rep.all_ok = rep.all_ok && ok;
    }
    return rep;
}

AdjunctionReport check_adjunction(const palf::Genus1Palf& f, const plumbing::PlumbingGraph& g) {
    AdjunctionReport rep;
    for (const auto& v : g.vertices) {
        auto it = f.vertex_classes.find(v.id);
        if (it == f.vertex_classes.end()) {
            rep.vertex_ok[v.id] = false;
            rep.all_ok = false;
            continue;
        }
        long sum = 0;
        for (auto [pos, coef] : it->second)
            sum += coef * rotation_number(f, f.word[static_cast<std::size_t>(pos - 1)]);
        bool ok = sum == g.vertex(v.id).degree + 2;
        rep.vertex_ok[v.id] = ok;
        rep.all_ok = rep.all_ok && ok;
    }
    return rep;
}

Cokernel linking_oracle(const BigInt& n, const BigInt& q, const chains::Tuple& tuple) {
    auto bound = chains::hj_expand(Rational(n, n - q));
    long e = static_cast<long>(bound.size());
    if (static_cast<long>(tuple.size()) != e)
        throw std::domain_error("linking_oracle: tuple length mismatch");
    IntMat rows;
    for (long i = 0; i < e; ++i) {
        std::vector<BigInt> row(static_cast<std::size_t>(e), 0);
        row[static_cast<std::size_t>(i)] = tuple[static_cast<std::size_t>(i)];
        if (i > 0) row[static_cast<std::size_t>(i - 1)] = 1;
        if (i + 1 < e) row[static_cast<std::size_t>(i + 1)] = 1;
        rows.push_back(std::move(row));
    }
    for (long i = 0; i < e; ++i)
        for (long c = 0; c < bound[static_cast<std::size_t>(i)] - tuple[static_cast<std::size_t>(i)];
             ++c) {
            std::vector<BigInt> row(static_cast<std::size_t>(e), 0);
            row[static_cast<std::size_t>(i)] = 1;
            rows.push_back(std::move(row));
        }
    return cokernel(rows, e);
}

}  // namespace palfkit::invariants
