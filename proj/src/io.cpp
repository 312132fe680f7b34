#include "mcf/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace mcf {

ParseError::ParseError(int line, const std::string& what)
    : ContractError(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line(line) {}

namespace {

std::vector<std::string> tokenize(const std::string& raw) {
  std::string line = raw;
  size_t hash = line.find('#');
  if (hash != std::string::npos) line.erase(hash);
  std::istringstream ss(line);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

int parseInt(const std::string& tok, int lineNo, const char* what) {
  size_t pos = 0;
  int v;
  try {
    v = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(lineNo, std::string(what) + " is not a number: '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError(lineNo, std::string(what) + " is not a number: '" + tok + "'");
  return v;
}

Rat parseWeight(const std::string& tok, int lineNo) {
  std::optional<Rat> w = ratFromString(tok);
  if (!w) throw ParseError(lineNo, "malformed weight '" + tok + "'");
  if (*w < 0) throw ParseError(lineNo, "negative weight '" + tok + "'");
  return *w;
}

}  // namespace

Instance readInstance(std::istream& in) {
  std::string line;
  int lineNo = 0;
  bool sawHeader = false;
  int vertices = -1;
  struct Row {
    int u, v;
    Rat w;
    int line;
  };
  std::vector<Row> supplyRows, demandRows;

  while (std::getline(in, line)) {
    ++lineNo;
    std::vector<std::string> toks = tokenize(line);
    if (toks.empty()) continue;
    if (!sawHeader) {
      if (toks.size() != 2 || toks[0] != "mcf-instance" || toks[1] != "v1")
        throw ParseError(lineNo, "expected header 'mcf-instance v1'");
      sawHeader = true;
      continue;
    }
    const std::string& kw = toks[0];
    if (kw == "vertices") {
      if (vertices >= 0) throw ParseError(lineNo, "duplicate 'vertices' directive");
      if (toks.size() != 2) throw ParseError(lineNo, "usage: vertices N");
      vertices = parseInt(toks[1], lineNo, "vertex count");
      if (vertices < 1) throw ParseError(lineNo, "vertex count must be at least 1");
      continue;
    }
    if (kw == "supply" || kw == "demand") {
      if (vertices < 0)
        throw ParseError(lineNo, "'" + kw + "' before the 'vertices' directive");
      if (toks.size() != 4) throw ParseError(lineNo, "usage: " + kw + " U V WEIGHT");
      Row r;
      r.u = parseInt(toks[1], lineNo, "endpoint");
      r.v = parseInt(toks[2], lineNo, "endpoint");
      r.w = parseWeight(toks[3], lineNo);
      r.line = lineNo;
      if (r.u < 0 || r.u >= vertices || r.v < 0 || r.v >= vertices)
        throw ParseError(lineNo, "endpoint out of range 0.." + std::to_string(vertices - 1));
      if (r.u == r.v) throw ParseError(lineNo, "self-loops are not allowed");
      (kw == "supply" ? supplyRows : demandRows).push_back(std::move(r));
      continue;
    }
    throw ParseError(lineNo, "unknown directive '" + kw + "'");
  }
  if (!sawHeader) throw ParseError(0, "empty input, expected 'mcf-instance v1'");
  if (vertices < 0) throw ParseError(0, "missing 'vertices' directive");

  Graph s(vertices), d(vertices);
  std::vector<Rat> caps, dems;
  for (const Row& r : supplyRows) {
    s.addEdge(r.u, r.v);
    caps.push_back(r.w);
  }
  for (const Row& r : demandRows) {
    d.addEdge(r.u, r.v);
    dems.push_back(r.w);
  }
  return Instance(GraphPair(std::move(s), std::move(d)), std::move(caps), std::move(dems));
}

Instance readInstanceString(const std::string& text) {
  std::istringstream in(text);
  return readInstance(in);
}

Instance readInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open '" + path + "'");
  return readInstance(in);
}

void writeInstance(std::ostream& out, const Instance& inst) {
  out << "mcf-instance v1\n";
  out << "vertices " << inst.vertexCount() << "\n";
  for (int e = 0; e < int(inst.supply().edges.size()); ++e) {
    const Edge& ed = inst.supply().edges[e];
    out << "supply " << ed.u << " " << ed.v << " " << ratToString(inst.capacities[e]) << "\n";
  }
  for (int d = 0; d < int(inst.demand().edges.size()); ++d) {
    const Edge& ed = inst.demand().edges[d];
    out << "demand " << ed.u << " " << ed.v << " " << ratToString(inst.demands[d]) << "\n";
  }
}

std::string instanceToString(const Instance& inst) {
  std::ostringstream out;
  writeInstance(out, inst);
  return out.str();
}

void writeSolution(std::ostream& out, const Instance& inst, const MultiflowSolution& sol) {
  out << "mcf-solution v1\n";
  out << "congestion " << ratToString(sol.congestion) << "\n";
  for (const PathFlow& pf : sol.flows) {
    out << "flow " << pf.demandEdge << " " << ratToString(pf.amount);
    for (size_t i = 0; i < pf.path.verts.size(); ++i) {
      out << " " << pf.path.verts[i];
      if (i < pf.path.edges.size()) out << " " << pf.path.edges[i];
    }
    out << "\n";
  }
  std::vector<Rat> load(inst.supply().edges.size(), Rat(0));
  for (const PathFlow& pf : sol.flows)
    for (int e : pf.path.edges) load[e] += pf.amount;
  for (int e = 0; e < int(load.size()); ++e)
    out << "load " << e << " " << ratToString(load[e]) << " "
        << ratToString(inst.capacities[e]) << "\n";
}

void writeCutCertificate(std::ostream& out, const Instance& inst, const Cut& cut) {
  out << "mcf-certificate v1\n";
  out << "kind violated-cut\n";
  out << "surplus " << ratToString(cut.surplus) << "\n";
  out << "side";
  for (int v : cut.side) out << " " << v;
  out << "\n";
  out << "crossing-supply";
  for (int e : cut.crossingSupply) out << " " << e;
  out << "\n";
  out << "crossing-demand";
  for (int e : cut.crossingDemand) out << " " << e;
  out << "\n";
  Rat cap(0), dem(0);
  for (int e : cut.crossingSupply) cap += inst.capacities[e];
  for (int e : cut.crossingDemand) dem += inst.demands[e];
  out << "# capacity across " << ratToString(cap) << ", demand across " << ratToString(dem)
      << "\n";
}

void writeSpindleCertificate(std::ostream& out, const SpindleWitness& witness) {
  out << "mcf-certificate v1\n";
  out << "kind odd-spindle\n";
  out << "p " << witness.p << "\n";
  out << "hub " << witness.hubA << " " << witness.hubB << "\n";
  out << "rim";
  for (int v : witness.rim) out << " " << v;
  out << "\n";
  for (const MinorStep& st : witness.steps) {
    switch (st.op) {
      case MinorOp::ContractSupply:
        out << "step contract-supply ";
        break;
      case MinorOp::DeleteSupply:
        out << "step delete-supply ";
        break;
      case MinorOp::DeleteDemand:
        out << "step delete-demand ";
        break;
    }
    out << st.edgeId << "\n";
  }
}

void writeParityCertificate(std::ostream& out, const EulerianReport& rep) {
  out << "mcf-certificate v1\n";
  out << "kind odd-parity\n";
  if (!rep.integral)
    out << "# weights are not all integral\n";
  else
    out << "vertex " << rep.oddVertex << "\n";
}

void writeK4Certificate(std::ostream& out, const std::vector<std::vector<int>>& branchSets) {
  out << "mcf-certificate v1\n";
  out << "kind k4-minor\n";
  for (const std::vector<int>& b : branchSets) {
    out << "branch";
    for (int v : b) out << " " << v;
    out << "\n";
  }
}

}  // namespace mcf
