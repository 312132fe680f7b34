#pragma once

#include <iosfwd>
#include <string>

#include "mcf/cutcheck.hpp"
#include "mcf/instance.hpp"
#include "mcf/lp.hpp"
#include "mcf/spgraph.hpp"
#include "mcf/sufficiency.hpp"

namespace mcf {

// Parse failure with the 1-based input line that caused it (0 when the
// problem is not tied to a line, e.g. a missing header).
struct ParseError : ContractError {
  int line;
  ParseError(int line, const std::string& what);
};

// Instance document:
//
//   mcf-instance v1
//   vertices N
//   supply U V WEIGHT
//   demand U V WEIGHT
//
// WEIGHT is a nonnegative rational, "7" or "7/3". '#' starts a comment,
// blank lines are skipped, directives may come in any order after the
// header except that `vertices` must precede every edge. Edge indices (and
// stable ids) are assigned in document order per kind.
Instance readInstance(std::istream& in);
Instance readInstanceString(const std::string& text);
Instance readInstanceFile(const std::string& path);

void writeInstance(std::ostream& out, const Instance& inst);
std::string instanceToString(const Instance& inst);

// Solution document, checkable against the instance it was produced from:
//
//   mcf-solution v1
//   congestion Q
//   flow I AMOUNT V0 E0 V1 E1 ... Vk     (demand index, then the walk)
//   load E LOAD CAPACITY                 (one line per supply edge)
void writeSolution(std::ostream& out, const Instance& inst, const MultiflowSolution& sol);

// Certificate documents, one `kind` each: violated-cut, odd-spindle,
// odd-parity, k4-minor.
void writeCutCertificate(std::ostream& out, const Instance& inst, const Cut& cut);
void writeSpindleCertificate(std::ostream& out, const SpindleWitness& witness);
void writeParityCertificate(std::ostream& out, const EulerianReport& rep);
void writeK4Certificate(std::ostream& out, const std::vector<std::vector<int>>& branchSets);

}  // namespace mcf
