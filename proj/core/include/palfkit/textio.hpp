#pragma once

#include <iosfwd>
#include <string>

#include "palfkit/palf.hpp"
#include "palfkit/plumbing.hpp"
#include "palfkit/relations.hpp"

namespace palfkit::textio {

// Graph text format: one directive per line.
//   vertex <id> <degree>
//   edge <a> <b>
//   decorate <id,id,...>
std::string write_graph(const plumbing::PlumbingGraph& g);
plumbing::PlumbingGraph parse_graph(std::istream& in);
plumbing::PlumbingGraph parse_graph_string(const std::string& s);

// Factorization text format.
//   page g=0 h=<n>
//   round <i>..<j>
//   conj <s-word> round <i>..<j>        e.g. conj s2 s1^-1 round 1..2
// Genus-1 words carry their registry inline:
//   page g=1 h=<n>
//   slots <n> foot <k>
//   curve <name> <c0,c1,...>
//   named <name>  |  image <word> <name>   (word: x a3^-1 ...)
std::string write_factorization(const mcg::Factorization& f);
mcg::Factorization parse_factorization_string(const std::string& s);

std::string write_genus1(const palf::Genus1Palf& f);

// Certificate file: lhs/rhs factorization blocks, blowdown data, evidence.
std::string write_certificate(const relations::SubstitutionCertificate& c);
relations::SubstitutionCertificate parse_certificate_string(const std::string& s);

// Display-only plain-text vector sketch of a planar factorization.
std::string diagram(const mcg::Factorization& f);

}  // namespace palfkit::textio
