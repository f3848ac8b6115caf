#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "palfkit/mcg.hpp"
#include "palfkit/palf.hpp"
#include "palfkit/snf.hpp"

namespace palfkit::invariants {

// Euler characteristic of the Lefschetz fibration over the disk:
// chi(page) + number of twists.
long euler_char(const mcg::Factorization& f);
long euler_char(const palf::Genus1Palf& f);

// H_1 of the total space: H_1(page) modulo the vanishing cycle classes.
Cokernel first_homology(const mcg::Factorization& f);
Cokernel first_homology(const palf::Genus1Palf& f);

// Rotation numbers with the uniform counterclockwise convention; genus-1
// registry curves carry declared values.
int rotation_number(const mcg::Curve& c);
int rotation_number(const palf::Genus1Palf& f, const genus1::Letter& l);

struct AdjunctionReport {
    std::map<int, bool> vertex_ok;  // per vertex id
    bool all_ok = true;
};

// Adjunction equality sum m_i r(C_i) = deg(v) + 2 per vertex, with the
// vertex classes read from the synthesis labels (planar case) or from the
// registry class maps (genus 1).
AdjunctionReport check_adjunction(const palf::PalfDescription& pd,
                                  const plumbing::PlumbingGraph& g,
                                  const palf::PlanarLayout& layout);
AdjunctionReport check_adjunction(const palf::Genus1Palf& f, const plumbing::PlumbingGraph& g);

// Independent Kirby-calculus oracle for a Bhupal-Ozbagci filling: the
// cobordism presentation n_i mu_i + mu_{i-1} + mu_{i+1} = 0 with one
// relation mu_i = 0 per meridian handle.
Cokernel linking_oracle(const BigInt& n, const BigInt& q, const chains::Tuple& tuple);

}  // namespace palfkit::invariants
