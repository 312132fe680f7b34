#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcf/instance.hpp"
#include "mcf/rational.hpp"
#include "mcf/spgraph.hpp"

namespace mcf {

// ------------------------------------------------------------ LP kernel ----

enum class RowSense { LE, EQ, GE };

struct LpRow {
  std::vector<std::pair<int, Rat>> terms;  // (variable, coefficient)
  RowSense sense = RowSense::LE;
  Rat rhs;
};

// All variables are nonnegative.
struct RationalLP {
  bool maximize = false;
  std::vector<Rat> objective;
  std::vector<LpRow> rows;

  int addVariable(const Rat& objCoeff = Rat(0)) {
    objective.push_back(objCoeff);
    return int(objective.size()) - 1;
  }
  void addRow(std::vector<std::pair<int, Rat>> terms, RowSense sense, Rat rhs) {
    rows.push_back(LpRow{std::move(terms), sense, std::move(rhs)});
  }
};

// At Optimal the result is self-certified before being returned: the primal
// point is feasible, objective == Σ dual[i]·rhs[i] (strong duality, exact),
// dual signs match row senses, and every reduced cost has the optimal sign.
struct LpResult {
  enum Status { Optimal, Infeasible, Unbounded };
  Status status = Infeasible;
  Rat objective;
  std::vector<Rat> x;
  std::vector<Rat> dual;  // one multiplier per row
};

LpResult solveLp(const RationalLP& lp);

// -------------------------------------------------- congestion and duals ----

struct PathFlow {
  int demandEdge = -1;
  VPath path;
  Rat amount;
};

struct MultiflowSolution {
  Rat congestion;  // α: minimum over flows of max load/capacity ratio
  std::vector<PathFlow> flows;
  std::vector<Rat> edgeLoad;  // per supply edge, total of `flows` through it
  std::vector<Rat> residual;  // capacity - load (negative only when α > 1)
};

// Exact minimum congestion via the per-commodity directed edge-flow LP,
// followed by cycle cancellation and path decomposition. Each demand is
// delivered exactly (over-delivery and circulation in the raw LP point are
// trimmed), so edgeLoad is consistent with `flows` by construction and
// satisfies load ≤ α·capacity edge-wise.
MultiflowSolution minCongestion(const Instance& inst);

// Edge lengths and per-demand distances, indexed like the instance edges.
struct MetricAssignment {
  std::vector<Rat> lengths;
  std::vector<Rat> distances;
};

// Optimal dual of the congestion LP: Σ c_e·l_e = 1, every d_i is the exact
// l-shortest-path distance between the demand's endpoints, and
// Σ D_i·d_i = minCongestion. All equalities are verified before returning.
MetricAssignment dualMetric(const Instance& inst);

// Both sides of one congestion solve, so audits that need the flow and its
// dual do not pay for two LP runs.
struct CongestionSolution {
  MultiflowSolution flow;
  MetricAssignment metric;
};
CongestionSolution congestionWithMetric(const Instance& inst);

// Exact shortest-path distance under nonnegative edge lengths; nullopt when
// t is unreachable from s.
std::optional<Rat> shortestPathDistance(const Graph& g, const std::vector<Rat>& lengths,
                                        int s, int t);

// ------------------------------------------------------- cut-cone metric ----

struct CutMetricSolution {
  Rat distortion;  // γ
  // Central cut side (sorted vertex list) -> positive weight x_C.
  std::vector<std::pair<std::vector<int>, Rat>> weights;
};

inline constexpr int kCutMetricVertexGuard = 16;

// Minimum-distortion approximation of the (l,d) metric by a cut-cone metric,
// with weight variables restricted a priori to central cuts. Requires the
// metric inequalities d_i ≤ dist_l(s_i,t_i); guarded by vertex count.
CutMetricSolution cutMetric(const GraphPair& pair, const MetricAssignment& metric);

// ------------------------------------------------------ general solution ----

// A simple pair (all of c, D, l positive after reductions) together with the
// mutually optimal sextuple. `gap` is the best congestion seen across
// cut-condition-satisfying iterates of the alternating search: a lower bound
// on the pair's flow-cut gap, not a proven optimum.
struct GeneralSolution {
  GraphPair pair;              // reduced pair the solution lives on
  std::vector<int> vertexMap;  // original -> reduced vertex, -1 once dropped
  std::vector<Rat> capacities;  // c*
  std::vector<Rat> demands;     // D*
  MetricAssignment metric;      // l*, d*
  MultiflowSolution flow;       // f*
  CutMetricSolution cuts;       // x*, γ*
  Rat gap;
  int rounds = 0;
  std::vector<Rat> objectiveLog;  // per-round metric objective, nondecreasing
};

// Alternating maximization from unit capacities and demands: solve the
// metric side for (l,d), re-optimize (c,D) against it (the dual of the
// cut-metric program), reduce to a simple pair, repeat until the objective
// stalls (improvement < 1/10^9 three rounds running) or 50 rounds pass.
GeneralSolution generalSolution(const GraphPair& pair);

// Knobs for the alternating search. A nonzero seed starts from pseudo-random
// integer weights in 1..4 instead of all ones — vertex weight landscapes can
// hide better gaps from the flat start.
struct GeneralOptions {
  int maxRounds = 50;
  unsigned long long seed = 0;
};
GeneralSolution generalSolution(const GraphPair& pair, const GeneralOptions& options);

struct SlacknessReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Complementary-slackness audit of a general solution: (a) positive cut
// weights sit only on tight cuts; (b) flow-carrying paths are d-shortest and
// every positive demand carries flow; (c) the cut-weight/distance/length
// chain holds with the simple-pair equalities.
SlacknessReport verifyComplementarySlackness(const GeneralSolution& gs);

enum class BubbleVerdict { CutSufficient, Inconclusive };

// Fires when some demand admits a path crossing every tight cut (under the
// general solution's c*, D*) at most once; firing forces distortion 1.
BubbleVerdict bubbleSufficiencyTest(const GeneralSolution& gs);

}  // namespace mcf
