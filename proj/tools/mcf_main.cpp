// mcf — exact multicommodity flow toolkit for series-parallel supply graphs.
//
// Subcommands: check, solve, sufficiency, generate, gap. Exit codes are
// stable: 0 success / property holds, 1 semantic negative (violated cut,
// refused routing, missing cut-sufficiency), 2 malformed input or guard.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mcf/cutcheck.hpp"
#include "mcf/gen.hpp"
#include "mcf/io.hpp"
#include "mcf/lp.hpp"
#include "mcf/routing.hpp"
#include "mcf/spgraph.hpp"
#include "mcf/sufficiency.hpp"

namespace {

using namespace mcf;

Instance readInput(const std::string& path) {
  if (path == "-") return readInstance(std::cin);
  return readInstanceFile(path);
}

void guardSize(const Instance& inst, int maxVertices) {
  if (maxVertices > 0 && inst.vertexCount() > maxVertices)
    throw ContractError("instance has " + std::to_string(inst.vertexCount()) +
                        " vertices; the guard is " + std::to_string(maxVertices) +
                        " (raise with --max-vertices)");
}

// Certificates go to --emit-certificates when given, inline to stdout
// otherwise, so a bare invocation is still self-contained.
void emitCertificate(const std::string& path, const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ContractError("cannot open certificate file: " + path);
  writer(out);
}

std::string joinInts(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(v[i]);
  }
  return s;
}

// ------------------------------------------------------------- check ----

int runCheck(const std::string& file, int maxVertices, const std::string& certPath) {
  Instance inst = readInput(file);
  guardSize(inst, maxVertices);
  CutReport rep = checkCutConditionSplit(inst);
  EulerianReport eu = checkEulerian(inst);

  std::cout << "cut condition: " << (rep.satisfied ? "satisfied" : "violated") << "\n";
  std::cout << "min surplus: " << ratToString(rep.minSurplus) << "\n";
  if (!rep.worstCut.side.empty())
    std::cout << "worst cut: side " << joinInts(rep.worstCut.side) << " | crossing supply "
              << rep.worstCut.crossingSupply.size() << " | crossing demand "
              << rep.worstCut.crossingDemand.size() << "\n";
  if (!eu.integral)
    std::cout << "eulerian: no (weights are not all integral)\n";
  else if (eu.eulerian)
    std::cout << "eulerian: yes\n";
  else
    std::cout << "eulerian: no (vertex " << eu.oddVertex << " has odd incident weight)\n";

  if (!rep.satisfied)
    emitCertificate(certPath, [&](std::ostream& out) { writeCutCertificate(out, inst, rep.worstCut); });
  return rep.satisfied ? 0 : 1;
}

// ------------------------------------------------------------- solve ----

int runSolve(const std::string& file, const std::string& mode, int maxVertices,
             const std::string& certPath) {
  Instance inst = readInput(file);
  guardSize(inst, maxVertices);

  if (mode == "fractional") {
    MultiflowSolution sol = minCongestion(inst);
    writeSolution(std::cout, inst, sol);
    return 0;
  }

  RoutingResult res = mode == "half" ? solveHalfIntegral(inst) : solveIntegral(inst);
  switch (res.status) {
    case RoutingResult::Routed:
      writeSolution(std::cout, inst, res.solution);
      return 0;
    case RoutingResult::CutViolated:
      std::cout << "refused: cut condition violated (surplus "
                << ratToString(res.violatedCut->surplus) << ")\n";
      emitCertificate(certPath,
                      [&](std::ostream& out) { writeCutCertificate(out, inst, *res.violatedCut); });
      return 1;
    case RoutingResult::NotEulerian:
      if (res.parity.integral)
        std::cout << "refused: instance is not Eulerian (vertex " << res.parity.oddVertex
                  << " has odd incident weight)\n";
      else
        std::cout << "refused: weights are not all integral\n";
      emitCertificate(certPath, [&](std::ostream& out) { writeParityCertificate(out, res.parity); });
      return 1;
    case RoutingResult::NotCutSufficient:
      std::cout << "refused: pair is not cut-sufficient (odd " << res.spindle->p
                << "-spindle minor, " << res.spindle->steps.size() << " steps)\n";
      emitCertificate(certPath,
                      [&](std::ostream& out) { writeSpindleCertificate(out, *res.spindle); });
      return 1;
  }
  throw ContractError("solve: unreachable status");
}

// -------------------------------------------------------- sufficiency ----

int runSufficiency(const std::string& file, int maxVertices, const std::string& certPath) {
  Instance inst = readInput(file);
  guardSize(inst, maxVertices);
  try {
    SufficiencyVerdict verdict = decideCutSufficiency(inst.pair);
    if (verdict.cutSufficient) {
      std::cout << "cut-sufficient: yes\n";
      if (!verdict.attestation.empty()) std::cout << "attestation: " << verdict.attestation << "\n";
      return 0;
    }
    std::cout << "cut-sufficient: no\n";
    std::cout << "witness: odd " << verdict.witness->p << "-spindle minor via "
              << verdict.witness->steps.size() << " steps\n";
    emitCertificate(certPath,
                    [&](std::ostream& out) { writeSpindleCertificate(out, *verdict.witness); });
    return 1;
  } catch (const NotSeriesParallelError& e) {
    std::cout << "series-parallel theorem does not apply — supply graph is not series-parallel\n";
    emitCertificate(certPath, [&](std::ostream& out) { writeK4Certificate(out, e.branchSets); });
    return 1;
  }
}

// ---------------------------------------------------------- generate ----

int runGenerate(const std::string& kind, int p, unsigned long long seed, int n, int demands,
                bool noEulerian, bool cutOk, const std::string& outPath) {
  Instance inst = [&] {
    if (kind == "spindle") {
      if (p < 3) throw ContractError("spindle needs p >= 3");
      return spindleInstance(p);
    }
    if (kind == "badk4") return badK4Instance();
    if (kind == "random-sp") {
      RandomInstanceOptions opt;
      opt.maxVertices = n;
      opt.maxDemands = demands;
      opt.forceEulerian = !noEulerian;
      opt.forceCutCondition = cutOk;
      return randomSpInstance(seed, opt);
    }
    throw ContractError("unknown kind '" + kind + "' (spindle | badk4 | random-sp)");
  }();

  if (outPath.empty() || outPath == "-") {
    writeInstance(std::cout, inst);
    return 0;
  }
  std::ofstream out(outPath);
  if (!out) throw ContractError("cannot open output file: " + outPath);
  writeInstance(out, inst);
  return 0;
}

// --------------------------------------------------------------- gap ----

int runGap(const std::string& file, int rounds, unsigned long long seed, int maxVertices) {
  Instance inst = readInput(file);  // weights are ignored: the search picks its own
  guardSize(inst, maxVertices);
  GeneralOptions opt;
  opt.maxRounds = rounds;
  opt.seed = seed;
  GeneralSolution gs = generalSolution(inst.pair, opt);

  std::cout << "gap: " << ratToString(gs.gap) << "\n";
  std::cout << "rounds: " << gs.rounds << "\n";
  std::cout << "congestion: " << ratToString(gs.flow.congestion) << "\n";
  std::cout << "distortion: " << ratToString(gs.cuts.distortion) << "\n";
  std::cout << "reduced vertices: " << gs.pair.vertexCount() << "\n";
  std::cout << "capacities:";
  for (const Rat& c : gs.capacities) std::cout << ' ' << ratToString(c);
  std::cout << "\ndemands:";
  for (const Rat& d : gs.demands) std::cout << ' ' << ratToString(d);
  std::cout << "\n";
  SlacknessReport slack = verifyComplementarySlackness(gs);
  std::cout << "complementary slackness: " << (slack.ok ? "ok" : "violated") << "\n";
  for (const std::string& v : slack.violations) std::cout << "  " << v << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact multicommodity flow on series-parallel supply graphs"};
  app.require_subcommand(1);

  std::string file = "-", certPath, mode = "integral", kind, outPath;
  int maxCheck = 64, maxSolve = 32, maxSuff = kSpindleSearchMaxVertices;
  int maxGap = kCutMetricVertexGuard;
  int p = 3, n = 10, demands = 4, rounds = 50;
  unsigned long long seed = 1, gapSeed = 0;
  bool noEulerian = false, cutOk = false;

  CLI::App* check = app.add_subcommand("check", "verify the cut condition and Eulerian parity");
  check->add_option("file", file, "instance document, '-' for stdin");
  check->add_option("--max-vertices", maxCheck, "size guard, 0 disables");
  check->add_option("--emit-certificates", certPath, "write certificates to this file");

  CLI::App* solve = app.add_subcommand("solve", "compute a minimum-congestion multiflow");
  solve->add_option("file", file, "instance document, '-' for stdin");
  solve->add_option("--mode", mode, "fractional | integral | half")
      ->check(CLI::IsMember({"fractional", "integral", "half"}));
  solve->add_option("--max-vertices", maxSolve, "size guard, 0 disables");
  solve->add_option("--emit-certificates", certPath, "write refusal certificates to this file");

  CLI::App* suff = app.add_subcommand("sufficiency", "decide cut-sufficiency of the graph pair");
  suff->add_option("file", file, "instance document, '-' for stdin");
  suff->add_option("--max-vertices", maxSuff, "size guard, 0 disables");
  suff->add_option("--emit-certificates", certPath, "write witness certificates to this file");

  CLI::App* gen = app.add_subcommand("generate", "emit a fixture instance document");
  gen->add_option("kind", kind, "spindle | badk4 | random-sp")->required();
  gen->add_option("--p", p, "spindle rim size (>= 3)");
  gen->add_option("--seed", seed, "random-sp seed");
  gen->add_option("--n", n, "random-sp vertex target");
  gen->add_option("--demands", demands, "random-sp demand count cap");
  gen->add_flag("--no-eulerian", noEulerian, "skip the Eulerian parity repair");
  gen->add_flag("--cut-ok", cutOk, "also repair cut-condition violations");
  gen->add_option("-o,--output", outPath, "output file, stdout by default");

  CLI::App* gap = app.add_subcommand("gap", "search for a large flow-cut gap on the pair's shape");
  gap->add_option("file", file, "instance document, '-' for stdin (weights ignored)");
  gap->add_option("--rounds", rounds, "alternating-search round limit");
  gap->add_option("--seed", gapSeed, "nonzero: random initial weights");
  gap->add_option("--max-vertices", maxGap, "size guard, 0 disables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*check) return runCheck(file, maxCheck, certPath);
    if (*solve) return runSolve(file, mode, maxSolve, certPath);
    if (*suff) return runSufficiency(file, maxSuff, certPath);
    if (*gen) return runGenerate(kind, p, seed, n, demands, noEulerian, cutOk, outPath);
    if (*gap) return runGap(file, rounds, gapSeed, maxGap);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NotSeriesParallelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
