#include "mcf/routing.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace mcf {

// ------------------------------------------------- noncrossing machinery ----

namespace {

int slotOf(const std::vector<int>& rotation, int edge, const char* who) {
  for (int i = 0; i < int(rotation.size()); ++i)
    if (rotation[i] == edge) return i;
  throw ContractError(std::string(who) + ": edge missing from rotation");
}

// Slot i such that the wedge between rotation[w][i] and rotation[w][i+1]
// lies on the outer face. The face seen between consecutive slots i, i+1 is
// the face of the dart leaving w through slot i+1.
int outerGapSlot(const PlanarEmbedding& emb, int w) {
  const std::vector<int>& rot = emb.rotation[w];
  int found = -1;
  for (int i = 0; i < int(rot.size()); ++i) {
    int nxt = rot[(i + 1) % rot.size()];
    if (emb.faceOf(nxt, w) == emb.outerFace) {
      if (found >= 0)
        throw ContractError("outer face touches a vertex twice; embedding not usable here");
      found = i;
    }
  }
  if (found < 0) throw ContractError("vertex does not touch the outer face");
  return found;
}

}  // namespace

std::vector<int> sidesOfPath(const PlanarEmbedding& emb, const VPath& path) {
  const Graph& g = emb.graph;
  int n = g.n;
  if (path.verts.size() < 2 || path.edges.size() + 1 != path.verts.size())
    throw ContractError("sidesOfPath: malformed path");

  std::vector<char> onPath(n, 0);
  for (int v : path.verts) {
    if (onPath[v]) throw ContractError("sidesOfPath: path is not simple");
    onPath[v] = 1;
  }

  int u = path.verts.front(), v = path.verts.back();

  // Per path vertex, each rotation slot is left (0), right (1), or the path
  // itself (-1). Left is everything scanned forward from the outbound dart
  // until the inbound one; at u the inbound is the virtual closure through
  // the outer face, at v the outbound is.
  std::vector<std::vector<int>> slotSide(n);
  for (int i = 0; i < int(path.verts.size()); ++i) {
    int w = path.verts[i];
    const std::vector<int>& rot = emb.rotation[w];
    int deg = int(rot.size());
    // token ring: real slots plus one virtual token at the outer gap of an
    // endpoint; tokens are (slot, isVirtual)
    std::vector<std::pair<int, bool>> ring;
    bool needVirtual = (i == 0 || i + 1 == int(path.verts.size()));
    int gap = needVirtual ? outerGapSlot(emb, w) : -1;
    for (int s = 0; s < deg; ++s) {
      ring.push_back({s, false});
      if (needVirtual && s == gap) ring.push_back({-1, true});
    }
    int inTok = -1, outTok = -1;
    for (int t = 0; t < int(ring.size()); ++t) {
      if (ring[t].second) {
        (i == 0 ? inTok : outTok) = t;
        continue;
      }
      int e = rot[ring[t].first];
      if (i > 0 && e == path.edges[i - 1]) inTok = t;
      if (i + 1 < int(path.verts.size()) && e == path.edges[i]) outTok = t;
    }
    if (inTok < 0 || outTok < 0)
      throw ContractError("sidesOfPath: path darts missing at a vertex");
    slotSide[w].assign(deg, -1);
    int m = int(ring.size());
    for (int t = (outTok + 1) % m; t != inTok; t = (t + 1) % m)
      if (!ring[t].second) slotSide[w][ring[t].first] = 0;
    for (int t = (inTok + 1) % m; t != outTok; t = (t + 1) % m)
      if (!ring[t].second) slotSide[w][ring[t].first] = 1;
  }

  // components of G minus the path, then one attachment side per component
  std::vector<int> comp(n, -1);
  int comps = 0;
  for (int s = 0; s < n; ++s) {
    if (onPath[s] || comp[s] >= 0) continue;
    comp[s] = comps;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (const Edge& e : g.edges) {
        int y = -1;
        if (e.u == x) y = e.v;
        if (e.v == x) y = e.u;
        if (y < 0 || onPath[y] || comp[y] >= 0) continue;
        comp[y] = comps;
        q.push(y);
      }
    }
    ++comps;
  }

  std::vector<int> compSide(comps, -1);
  for (int ei = 0; ei < int(g.edges.size()); ++ei) {
    const Edge& e = g.edges[ei];
    bool uOn = onPath[e.u], vOn = onPath[e.v];
    if (uOn == vOn) continue;  // chords and interior edges say nothing new
    int w = uOn ? e.u : e.v;
    int y = uOn ? e.v : e.u;
    int side = slotSide[w][slotOf(emb.rotation[w], ei, "sidesOfPath")];
    if (side < 0) throw ContractError("sidesOfPath: attachment dart classified as path");
    int c = comp[y];
    if (compSide[c] == -1)
      compSide[c] = side;
    else if (compSide[c] != side)
      throw ContractError("sidesOfPath: component attaches on both sides");
  }

  std::vector<int> out(n, -1);
  for (int x = 0; x < n; ++x) {
    if (onPath[x]) continue;
    if (comp[x] < 0 || compSide[comp[x]] < 0)
      throw ContractError("sidesOfPath: vertex with no classified attachment");
    out[x] = compSide[comp[x]];
  }
  (void)u;
  (void)v;
  return out;
}

bool pathsCross(const PlanarEmbedding& emb, const VPath& p, const VPath& q) {
  std::vector<int> side = sidesOfPath(emb, p);
  bool left = false, right = false;
  for (int w : q.verts) {
    if (side[w] == 0) left = true;
    if (side[w] == 1) right = true;
  }
  return left && right;
}

// ------------------------------------------------------ path extraction ----

namespace {

struct DirectedDemandFlow {
  std::vector<Rat> amount;  // per supply edge
  std::vector<int> head;    // flow runs toward head; meaningless at amount 0
};

DirectedDemandFlow gatherDirected(const Instance& inst, const MultiflowSolution& frac,
                                  int demandEdge) {
  const Graph& g = inst.supply();
  DirectedDemandFlow df;
  df.amount.assign(g.edges.size(), Rat(0));
  df.head.assign(g.edges.size(), -1);
  for (const PathFlow& pf : frac.flows) {
    if (pf.demandEdge != demandEdge || pf.amount == 0) continue;
    for (int i = 0; i < int(pf.path.edges.size()); ++i) {
      int e = pf.path.edges[i];
      int to = pf.path.verts[i + 1];
      if (df.amount[e] == 0) {
        df.head[e] = to;
        df.amount[e] = pf.amount;
      } else if (df.head[e] == to) {
        df.amount[e] += pf.amount;
      } else {
        df.amount[e] -= pf.amount;
        if (df.amount[e] < 0) {
          df.amount[e] = -df.amount[e];
          df.head[e] = to;
        }
      }
    }
  }
  return df;
}

// Remove directed cycles (parallel edges make them possible even within one
// commodity) so every walk along positive flow must terminate.
void cancelDirectedCycles(const Graph& g, DirectedDemandFlow& df) {
  int n = g.n;
  for (int rounds = 0; rounds <= int(g.edges.size()); ++rounds) {
    // walk forward from every vertex until stuck or a vertex repeats
    std::vector<int> stamp(n, -1), via(n, -1);
    bool cancelled = false;
    for (int s = 0; s < n && !cancelled; ++s) {
      if (stamp[s] >= 0) continue;
      int cur = s;
      std::vector<int> trail;
      while (cur >= 0 && stamp[cur] == -1) {
        stamp[cur] = s;
        trail.push_back(cur);
        int next = -1;
        for (int e = 0; e < int(g.edges.size()); ++e)
          if (df.amount[e] > 0 && g.edges[e].u != g.edges[e].v &&
              (g.edges[e].u == cur || g.edges[e].v == cur) && df.head[e] != cur) {
            via[cur] = e;
            next = df.head[e];
            break;
          }
        cur = next;
      }
      if (cur >= 0 && stamp[cur] == s) {
        // cycle: follow via[] from cur back to itself
        Rat m(-1);
        int x = cur;
        do {
          int e = via[x];
          if (m < 0 || df.amount[e] < m) m = df.amount[e];
          x = df.head[e];
        } while (x != cur);
        x = cur;
        do {
          int e = via[x];
          df.amount[e] -= m;
          x = df.head[e];
        } while (x != cur);
        cancelled = true;
      }
    }
    if (!cancelled) return;
  }
  throw ContractError("noncrossing decomposition: cycle cancellation did not settle");
}

}  // namespace

std::vector<PathFlow> noncrossingDecomposition(const Instance& inst,
                                               const PlanarEmbedding& emb,
                                               const MultiflowSolution& frac,
                                               int demandEdge) {
  const Graph& g = inst.supply();
  inst.demand().checkEdge(demandEdge, "noncrossingDecomposition");
  int u = inst.demand().edges[demandEdge].u;
  int v = inst.demand().edges[demandEdge].v;

  DirectedDemandFlow df = gatherDirected(inst, frac, demandEdge);
  cancelDirectedCycles(g, df);

  // conservation audit: u emits the demand, v absorbs it, others balance
  std::vector<Rat> net(g.n, Rat(0));
  for (int e = 0; e < int(g.edges.size()); ++e) {
    if (df.amount[e] == 0) continue;
    int h = df.head[e];
    int t = g.other(e, h);
    net[t] += df.amount[e];
    net[h] -= df.amount[e];
  }
  for (int w = 0; w < g.n; ++w) {
    Rat want(0);
    if (w == u) want = inst.demands[demandEdge];
    if (w == v) want = -inst.demands[demandEdge];
    if (net[w] != want)
      throw ContractError("noncrossing decomposition: flow conservation is off");
  }

  std::vector<PathFlow> out;
  Rat remaining = inst.demands[demandEdge];
  int guard = 2 * int(g.edges.size()) + 4;
  while (remaining > 0) {
    if (--guard < 0)
      throw ContractError("noncrossing decomposition: extraction did not terminate");
    VPath path;
    path.verts.push_back(u);
    std::vector<char> seen(g.n, 0);
    seen[u] = 1;
    int cur = u, arrival = -1;
    while (cur != v) {
      const std::vector<int>& rot = emb.rotation[cur];
      int start = (arrival < 0) ? (outerGapSlot(emb, cur) + 1) % int(rot.size())
                                : (slotOf(rot, arrival, "noncrossingDecomposition") + 1) %
                                      int(rot.size());
      int chosen = -1;
      for (int k = 0; k < int(rot.size()); ++k) {
        int e = rot[(start + k) % rot.size()];
        if (df.amount[e] > 0 && df.head[e] != cur) {
          chosen = e;
          break;
        }
      }
      if (chosen < 0)
        throw ContractError("noncrossing decomposition: walk stuck before the sink");
      cur = df.head[chosen];
      if (seen[cur])
        throw ContractError("noncrossing decomposition: walk revisits a vertex");
      seen[cur] = 1;
      path.edges.push_back(chosen);
      path.verts.push_back(cur);
      arrival = chosen;
    }
    Rat m = remaining;
    for (int e : path.edges)
      if (df.amount[e] < m) m = df.amount[e];
    if (m <= 0) throw ContractError("noncrossing decomposition: empty peel");
    for (int e : path.edges) df.amount[e] -= m;
    PathFlow pf;
    pf.demandEdge = demandEdge;
    pf.path = std::move(path);
    pf.amount = m;
    out.push_back(std::move(pf));
    remaining -= m;
  }
  for (int e = 0; e < int(g.edges.size()); ++e)
    if (df.amount[e] != 0)
      throw ContractError("noncrossing decomposition: leftover flow after extraction");

  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (pathsCross(emb, out[i].path, out[j].path))
        throw ContractError("noncrossing decomposition: extracted paths cross");
  return out;
}

// ----------------------------------------------------------- cycle chain ----

CycleChain buildCycleChain(const Instance& inst, const std::vector<VPath>& paths) {
  if (paths.empty()) throw ContractError("buildCycleChain: no paths");
  const VPath& p1 = paths.front();
  const VPath& pk = paths.back();
  int n = inst.vertexCount();

  std::vector<int> posInPk(n, -1);
  for (int i = 0; i < int(pk.verts.size()); ++i) posInPk[pk.verts[i]] = i;

  CycleChain chain;
  chain.paths = paths;
  std::vector<int> posInP1;
  int prevPos = -1;
  for (int i = 0; i < int(p1.verts.size()); ++i) {
    int w = p1.verts[i];
    if (posInPk[w] < 0) continue;
    if (posInPk[w] <= prevPos)
      throw ContractError("buildCycleChain: shared vertices out of order");
    prevPos = posInPk[w];
    chain.common.push_back(w);
    posInP1.push_back(i);
  }
  if (chain.common.empty() || chain.common.front() != p1.verts.front() ||
      chain.common.back() != p1.verts.back())
    throw ContractError("buildCycleChain: endpoints must be shared");

  // a vertex shared by the outer two paths lies on every path, in this order
  for (const VPath& q : paths) {
    int at = -1;
    for (int w : chain.common) {
      int found = -1;
      for (int i = at + 1; i < int(q.verts.size()); ++i)
        if (q.verts[i] == w) {
          found = i;
          break;
        }
      if (found < 0)
        throw ContractError("buildCycleChain: a path skips a shared vertex");
      at = found;
    }
  }

  auto subpath = [](const VPath& p, int from, int to) {
    VPath s;
    for (int i = from; i <= to; ++i) s.verts.push_back(p.verts[i]);
    for (int i = from; i < to; ++i) s.edges.push_back(p.edges[i]);
    return s;
  };

  for (int i = 0; i + 1 < int(chain.common.size()); ++i) {
    ChainSpan span;
    span.a = chain.common[i];
    span.b = chain.common[i + 1];
    span.sideOne = subpath(p1, posInP1[i], posInP1[i + 1]);
    int fa = posInPk[span.a], fb = posInPk[span.b];
    VPath two = subpath(pk, fa, fb);
    span.isCycle = (two.edges != span.sideOne.edges);
    if (span.isCycle) span.sideTwo = std::move(two);
    chain.spans.push_back(std::move(span));
  }
  return chain;
}

// ------------------------------------------------------- unit operations ----

namespace {

int maxDemandId(const Instance& inst) {
  int m = -1;
  for (const Edge& e : inst.demand().edges) m = std::max(m, e.id);
  return m;
}

int demandIndexById(const Instance& inst, int id) {
  return inst.demand().edgeByStableId(id);
}

// One push with fresh unit ids reported back; demand graph rebuilt so a
// zeroed demand edge disappears. The cut condition is re-verified — by the
// shared-vertex precondition it can only have improved.
Instance pushOne(const Instance& inst, int demandIdx, int w, int* keptId, int* movedId) {
  const Edge& de = inst.demand().edges[demandIdx];
  if (inst.demands[demandIdx] < 1) throw ContractError("push: no unit to move");
  if (w == de.u || w == de.v) throw ContractError("push: vertex is already an endpoint");
  int fresh = maxDemandId(inst) + 1;

  Graph dg(inst.vertexCount());
  std::vector<Rat> dems;
  for (int i = 0; i < int(inst.demand().edges.size()); ++i) {
    Rat value = inst.demands[i];
    if (i == demandIdx) value -= 1;
    if (i == demandIdx && value == 0) continue;
    const Edge& e = inst.demand().edges[i];
    dg.addEdge(e.u, e.v, e.id);
    dems.push_back(value);
  }
  dg.addEdge(de.u, w, fresh);
  dems.push_back(Rat(1));
  dg.addEdge(w, de.v, fresh + 1);
  dems.push_back(Rat(1));
  *keptId = fresh;
  *movedId = fresh + 1;

  Instance next(GraphPair(inst.supply(), std::move(dg)), inst.capacities, std::move(dems));
  CutReport rep = checkCutConditionSplit(next);
  if (!rep.satisfied)
    throw ContractError("push: cut condition failed afterwards — path precondition broken");
  return next;
}

}  // namespace

Instance pushUnit(const Instance& inst, int demandEdge, int w, const MultiflowSolution& frac) {
  inst.demand().checkEdge(demandEdge, "pushUnit");
  inst.supply().checkVertex(w, "pushUnit");
  bool sawFlow = false;
  for (const PathFlow& pf : frac.flows) {
    if (pf.demandEdge != demandEdge || pf.amount == 0) continue;
    sawFlow = true;
    if (std::find(pf.path.verts.begin(), pf.path.verts.end(), w) == pf.path.verts.end())
      throw ContractError("pushUnit: a flow path of the demand avoids the vertex");
  }
  if (!sawFlow) throw ContractError("pushUnit: the demand carries no flow");
  int keptId, movedId;
  return pushOne(inst, demandEdge, w, &keptId, &movedId);
}

PushOutcome pushChain(const Instance& inst, int demandEdge, const CycleChain& chain) {
  inst.demand().checkEdge(demandEdge, "pushChain");
  const Edge& de = inst.demand().edges[demandEdge];
  if (!(chain.common.front() == de.u && chain.common.back() == de.v))
    throw ContractError("pushChain: chain does not join the demand's endpoints");

  PushOutcome out;
  out.ledger.demandId = de.id;
  out.ledger.chain = chain.common;
  out.instance = inst;
  int m = int(chain.common.size());
  if (m <= 2) return out;  // nothing between the endpoints

  // Every flow path of the demand passes each shared vertex in chain order
  // (asserted when the chain was built), which is the push precondition for
  // the original demand and for every (q_j, v) unit in turn.
  int keptId = -1, movedId = -1;
  out.instance = pushOne(out.instance, demandEdge, chain.common[1], &keptId, &movedId);
  out.ledger.unitIds.push_back(keptId);
  for (int j = 2; j + 1 < m; ++j) {
    int idx = demandIndexById(out.instance, movedId);
    if (idx < 0) throw ContractError("pushChain: lost track of the moving unit");
    out.instance = pushOne(out.instance, idx, chain.common[j], &keptId, &movedId);
    out.ledger.unitIds.push_back(keptId);
  }
  out.ledger.unitIds.push_back(movedId);
  return out;
}

VPath chooseSides(const Instance& inst, const CycleChain& chain, int v) {
  const Graph& g = inst.supply();
  VPath out;
  out.verts.push_back(chain.common.front());

  for (const ChainSpan& span : chain.spans) {
    const VPath* pick = &span.sideOne;
    if (span.isCycle) {
      std::vector<char> onCycle(g.n, 0);
      for (int w : span.sideOne.verts) onCycle[w] = 1;
      for (int w : span.sideTwo.verts) onCycle[w] = 1;

      if (!onCycle[v]) {
        // linked: reaches v in the supply graph touching the cycle only at w
        auto linked = [&](int w) {
          std::vector<char> seen(g.n, 0);
          std::queue<int> q;
          q.push(w);
          seen[w] = 1;
          while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (const Edge& e : g.edges) {
              int y = -1;
              if (e.u == x) y = e.v;
              if (e.v == x) y = e.u;
              if (y < 0 || seen[y] || (onCycle[y] && y != v)) continue;
              if (y == v) return true;
              seen[y] = 1;
              q.push(y);
            }
          }
          return false;
        };
        auto blocked = [&](const VPath& side) {
          for (int i = 1; i + 1 < int(side.verts.size()); ++i)
            if (linked(side.verts[i])) return true;
          return false;
        };
        bool one = blocked(span.sideOne), two = blocked(span.sideTwo);
        if (one && two)
          throw ContractError("chooseSides: both sides hold a vertex linked to the target");
        if (one) pick = &span.sideTwo;
      }
    }
    for (int i = 1; i < int(pick->verts.size()); ++i) out.verts.push_back(pick->verts[i]);
    for (int e : pick->edges) out.edges.push_back(e);
  }

  std::vector<char> seen(g.n, 0);
  for (int w : out.verts) {
    if (seen[w]) throw ContractError("chooseSides: assembled route is not simple");
    seen[w] = 1;
  }
  return out;
}

Instance routeUnit(const Instance& inst, const VPath& path, const PushLedger& ledger,
                   bool recheck) {
  if (path.verts.size() != path.edges.size() + 1 || path.verts.size() < 2)
    throw ContractError("routeUnit: malformed path");
  if (ledger.chain.size() < 2 || path.verts.front() != ledger.chain.front() ||
      path.verts.back() != ledger.chain.back())
    throw ContractError("routeUnit: path does not match the ledger chain");
  {
    // chain vertices must appear along the path in order
    int at = -1;
    for (int w : ledger.chain) {
      int found = -1;
      for (int i = at + 1; i < int(path.verts.size()); ++i)
        if (path.verts[i] == w) {
          found = i;
          break;
        }
      if (found < 0) throw ContractError("routeUnit: path skips a chain vertex");
      at = found;
    }
  }

  std::vector<Rat> caps = inst.capacities;
  for (int i = 0; i < int(path.edges.size()); ++i) {
    int e = path.edges[i];
    inst.supply().checkEdge(e, "routeUnit");
    if (inst.supply().edges[e].u + inst.supply().edges[e].v !=
        path.verts[i] + path.verts[i + 1])
      throw ContractError("routeUnit: path edge does not join its vertices");
    if (caps[e] < 1) throw ContractError("routeUnit: capacity underflow");
    caps[e] -= 1;
  }

  std::vector<Rat> dems = inst.demands;
  if (ledger.unitIds.empty()) {
    int idx = demandIndexById(inst, ledger.demandId);
    if (idx < 0) throw ContractError("routeUnit: demand id not found");
    if (dems[idx] < 1) throw ContractError("routeUnit: demand underflow");
    dems[idx] -= 1;
  } else {
    for (int id : ledger.unitIds) {
      int idx = demandIndexById(inst, id);
      if (idx < 0) throw ContractError("routeUnit: chain unit not found");
      if (dems[idx] != 1) throw ContractError("routeUnit: chain unit is not a unit");
      dems[idx] = 0;
    }
  }

  // normalize: zero-capacity supply edges and zero demands disappear
  Graph sg(inst.vertexCount());
  std::vector<Rat> outCaps;
  for (int e = 0; e < int(inst.supply().edges.size()); ++e) {
    if (caps[e] == 0) continue;
    const Edge& se = inst.supply().edges[e];
    sg.addEdge(se.u, se.v, se.id);
    outCaps.push_back(caps[e]);
  }
  Graph dg(inst.vertexCount());
  std::vector<Rat> outDems;
  for (int d = 0; d < int(inst.demand().edges.size()); ++d) {
    if (dems[d] == 0) continue;
    const Edge& de = inst.demand().edges[d];
    dg.addEdge(de.u, de.v, de.id);
    outDems.push_back(dems[d]);
  }
  Instance next(GraphPair(std::move(sg), std::move(dg)), std::move(outCaps),
                std::move(outDems));
  if (recheck) {
    CutReport rep = checkCutConditionSplit(next);
    if (!rep.satisfied)
      throw ContractError("routeUnit: cut condition failed after routing the unit");
  }
  return next;
}

// ------------------------------------------------------------ the driver ----

namespace {

void requireUniqueIds(const GraphPair& pair, const char* who) {
  auto check = [&](const Graph& g) {
    std::set<int> seen;
    for (const Edge& e : g.edges)
      if (!seen.insert(e.id).second)
        throw ContractError(std::string(who) + ": duplicate stable edge id " +
                            std::to_string(e.id));
  };
  check(pair.supply);
  check(pair.demand);
}

// Flow recorded against stable ids, so it survives graph rebuilds.
struct IdFlow {
  int demandId = -1;
  std::vector<int> verts;
  std::vector<int> edgeIds;
  long units = 0;
};

Instance normalizeInstance(const Instance& inst) {
  Graph sg(inst.vertexCount());
  std::vector<Rat> caps;
  for (int e = 0; e < int(inst.supply().edges.size()); ++e) {
    if (inst.capacities[e] == 0) continue;
    const Edge& se = inst.supply().edges[e];
    sg.addEdge(se.u, se.v, se.id);
    caps.push_back(inst.capacities[e]);
  }
  Graph dg(inst.vertexCount());
  std::vector<Rat> dems;
  for (int d = 0; d < int(inst.demand().edges.size()); ++d) {
    if (inst.demands[d] == 0) continue;
    const Edge& de = inst.demand().edges[d];
    dg.addEdge(de.u, de.v, de.id);
    dems.push_back(inst.demands[d]);
  }
  return Instance(GraphPair(std::move(sg), std::move(dg)), std::move(caps), std::move(dems));
}

// lexicographically smallest (min endpoint, max endpoint, id) positive demand
int lexSelect(const Instance& inst) {
  int best = -1;
  std::array<int, 3> bestKey{};
  for (int d = 0; d < int(inst.demand().edges.size()); ++d) {
    if (inst.demands[d] <= 0) continue;
    const Edge& e = inst.demand().edges[d];
    std::array<int, 3> key{std::min(e.u, e.v), std::max(e.u, e.v), e.id};
    if (best < 0 || key < bestKey) {
      best = d;
      bestKey = key;
    }
  }
  return best;
}

void routeRecursive(const Instance& start, bool bulkFloor, int depth, std::vector<IdFlow>& out);

// Floor pre-routing: integral parts of the LP paths are routed without any
// structural work. Paths are re-resolved through stable ids each unit, and
// a stale item (an edge or the demand has meanwhile vanished) is skipped —
// the next LP round covers it.
bool floorPreroute(Instance& cur, const MultiflowSolution& frac, bool bulk,
                   std::vector<IdFlow>& out) {
  struct Item {
    int demandId;
    std::vector<int> verts;
    std::vector<int> edgeIds;
    long units;
  };
  std::vector<Item> items;
  for (const PathFlow& pf : frac.flows) {
    if (pf.amount < 1) continue;
    Item it;
    it.demandId = cur.demand().edges[pf.demandEdge].id;
    it.verts = pf.path.verts;
    for (int e : pf.path.edges) it.edgeIds.push_back(cur.supply().edges[e].id);
    it.units = ratFloorLong(pf.amount);
    items.push_back(std::move(it));
  }

  bool any = false;
  for (const Item& it : items) {
    long done = 0;
    while (done < it.units) {
      int didx = demandIndexById(cur, it.demandId);
      if (didx < 0 || cur.demands[didx] < 1) break;
      std::vector<int> edges;
      bool stale = false;
      for (int id : it.edgeIds) {
        int e = cur.supply().edgeByStableId(id);
        if (e < 0 || cur.capacities[e] < 1) {
          stale = true;
          break;
        }
        edges.push_back(e);
      }
      if (stale) break;

      long step = 1;
      if (bulk) {
        Rat most = cur.demands[didx];
        for (int e : edges)
          if (cur.capacities[e] < most) most = cur.capacities[e];
        step = std::min(it.units - done, ratFloorLong(most));
        if (step < 1) break;
      }

      if (step == 1) {
        PushLedger ledger;
        ledger.demandId = it.demandId;
        ledger.chain = {it.verts.front(), it.verts.back()};
        VPath path;
        path.verts = it.verts;
        path.edges = edges;
        cur = routeUnit(cur, path, ledger, true);
      } else {
        std::vector<Rat> caps = cur.capacities, dems = cur.demands;
        for (int e : edges) caps[e] -= step;
        dems[didx] -= step;
        Instance bulked(cur.pair, std::move(caps), std::move(dems));
        bulked = normalizeInstance(bulked);
        CutReport rep = checkCutConditionSplit(bulked);
        if (!rep.satisfied)
          throw ContractError("floor preroute: bulk step broke the cut condition");
        cur = std::move(bulked);
      }

      IdFlow f;
      f.demandId = it.demandId;
      f.verts = it.verts;
      f.edgeIds = it.edgeIds;
      f.units = step;
      out.push_back(std::move(f));
      done += step;
      any = true;
    }
  }
  return any;
}

// One full §-style unit step is the fallback once every path flow is
// fractional: embed, peel noncrossing paths, push the unit along the shared
// chain, route it on the sides free of linked vertices.
void unitStep(Instance& cur, const MultiflowSolution& frac, int demandIdx,
              std::vector<IdFlow>& out) {
  const Edge de = cur.demand().edges[demandIdx];
  PlanarEmbedding emb = embedWithOuterPair(cur.supply(), de.u, de.v);
  std::vector<PathFlow> peeled = noncrossingDecomposition(cur, emb, frac, demandIdx);
  std::vector<VPath> paths;
  for (const PathFlow& pf : peeled) paths.push_back(pf.path);
  CycleChain chain = buildCycleChain(cur, paths);
  PushOutcome pushed = pushChain(cur, demandIdx, chain);
  VPath route = chooseSides(pushed.instance, chain, de.v);

  IdFlow f;
  f.demandId = de.id;
  f.verts = route.verts;
  for (int e : route.edges) f.edgeIds.push_back(pushed.instance.supply().edges[e].id);
  f.units = 1;

  cur = routeUnit(pushed.instance, route, pushed.ledger, true);
  out.push_back(std::move(f));
}

void routeBiconnected(Instance cur, bool bulkFloor, int depth, std::vector<IdFlow>& out) {
  int guard = 0;
  while (true) {
    cur = normalizeInstance(cur);
    if (cur.demands.empty()) return;
    if (!isConnected(cur.supply()) || !isBiconnected(cur.supply())) {
      routeRecursive(cur, bulkFloor, depth + 1, out);
      return;
    }
    if (++guard > 100000) throw ContractError("routing: biconnected loop did not finish");

    MultiflowSolution frac = minCongestion(cur);
    if (frac.congestion > 1)
      throw ContractError(
          "routing: congestion above 1; instance is not cut-sufficient after all");

    if (floorPreroute(cur, frac, bulkFloor, out)) continue;
    int d = lexSelect(cur);
    if (d < 0) return;
    unitStep(cur, frac, d, out);
  }
}

void routeRecursive(const Instance& start, bool bulkFloor, int depth,
                    std::vector<IdFlow>& out) {
  if (depth > 400) throw ContractError("routing: recursion depth exhausted");
  Instance cur = normalizeInstance(start);
  if (cur.demands.empty()) return;
  const Graph& g = cur.supply();

  if (!isConnected(g)) {
    std::vector<int> comp = componentIds(g);
    for (const Edge& e : cur.demand().edges)
      if (comp[e.u] != comp[e.v])
        throw ContractError("routing: demand spans supply components");
    int comps = 1 + *std::max_element(comp.begin(), comp.end());
    for (int c = 0; c < comps; ++c) {
      std::vector<int> verts;
      for (int v = 0; v < g.n; ++v)
        if (comp[v] == c) verts.push_back(v);
      SubPair sub = inducedSubpair(cur.pair, verts);
      std::vector<Rat> caps, dems;
      for (int idx : sub.supplyEdgeOrig) caps.push_back(cur.capacities[idx]);
      for (int idx : sub.demandEdgeOrig) dems.push_back(cur.demands[idx]);
      Instance si(sub.pair, std::move(caps), std::move(dems));
      std::vector<IdFlow> local;
      routeRecursive(si, bulkFloor, depth + 1, local);
      for (IdFlow& f : local) {
        for (int& w : f.verts) w = sub.vertices[w];
        out.push_back(std::move(f));
      }
    }
    return;
  }

  if (isBiconnected(g)) {
    routeBiconnected(std::move(cur), bulkFloor, depth, out);
    return;
  }

  // split into blocks, route each, then rejoin fragment paths demand by demand
  BlockSplit split = splitIntoBlockPairs(cur.pair);
  std::vector<std::vector<IdFlow>> perBlock(split.blocks.size());
  for (int b = 0; b < int(split.blocks.size()); ++b) {
    const BlockPair& bp = split.blocks[b];
    std::vector<Rat> caps, dems;
    for (int idx : bp.supplyEdgeOrig) caps.push_back(cur.capacities[idx]);
    for (int idx : bp.demandEdgeOrig) dems.push_back(cur.demands[idx]);
    Instance bi(bp.pair, std::move(caps), std::move(dems));

    // the projection must preserve both standing invariants
    EulerianReport parity = checkEulerian(bi);
    if (!parity.eulerian)
      throw ContractError("routing: block projection lost the parity invariant");
    CutReport cutRep = checkCutConditionSplit(bi);
    if (!cutRep.satisfied)
      throw ContractError("routing: block projection lost the cut condition");

    std::vector<IdFlow> local;
    routeRecursive(bi, bulkFloor, depth + 1, local);
    for (IdFlow& f : local)
      for (int& w : f.verts) w = bp.vertices[w];
    perBlock[b] = std::move(local);
  }

  for (int d = 0; d < int(cur.demand().edges.size()); ++d) {
    const std::vector<std::array<int, 3>>& route = split.demandRoutes[d];
    if (route.empty())
      throw ContractError("routing: a positive demand got no block route");
    int id = cur.demand().edges[d].id;

    // collect this demand's flows per visited block, oriented entry -> exit
    std::vector<std::vector<IdFlow*>> lists(route.size());
    for (int leg = 0; leg < int(route.size()); ++leg) {
      for (IdFlow& f : perBlock[route[leg][0]])
        if (f.demandId == id) lists[leg].push_back(&f);
      long total = 0;
      for (IdFlow* f : lists[leg]) {
        if (f->verts.front() == route[leg][2] && f->verts.back() == route[leg][1]) {
          std::reverse(f->verts.begin(), f->verts.end());
          std::reverse(f->edgeIds.begin(), f->edgeIds.end());
        }
        if (f->verts.front() != route[leg][1] || f->verts.back() != route[leg][2])
          throw ContractError("routing: block flow endpoints disagree with the projection");
        total += f->units;
      }
      Rat want = cur.demands[d];
      if (Rat(total) != want)
        throw ContractError("routing: block delivery does not match the demand");
    }

    std::vector<int> at(route.size(), 0);
    std::vector<long> used(route.size(), 0);
    long remaining = ratFloorLong(cur.demands[d]);
    while (remaining > 0) {
      long step = remaining;
      for (int leg = 0; leg < int(route.size()); ++leg)
        step = std::min(step, lists[leg][at[leg]]->units - used[leg]);
      IdFlow joined;
      joined.demandId = id;
      joined.units = step;
      for (int leg = 0; leg < int(route.size()); ++leg) {
        const IdFlow& f = *lists[leg][at[leg]];
        int from = joined.verts.empty() ? 0 : 1;  // junction vertex already present
        joined.verts.insert(joined.verts.end(), f.verts.begin() + from, f.verts.end());
        joined.edgeIds.insert(joined.edgeIds.end(), f.edgeIds.begin(), f.edgeIds.end());
      }
      out.push_back(std::move(joined));
      remaining -= step;
      for (int leg = 0; leg < int(route.size()); ++leg) {
        used[leg] += step;
        if (used[leg] == lists[leg][at[leg]]->units) {
          used[leg] = 0;
          ++at[leg];
        }
      }
    }
  }
}

// Certificate steps that delete everything a normalization dropped, so a
// witness found on the normalized pair replays against the raw input.
SpindleWitness liftThroughNormalization(const Instance& inst, const SpindleWitness& w) {
  SpindleWitness lifted = w;
  std::vector<MinorStep> steps;
  for (int e = 0; e < int(inst.supply().edges.size()); ++e)
    if (inst.capacities[e] == 0)
      steps.push_back({MinorOp::DeleteSupply, inst.supply().edges[e].id});
  for (int d = 0; d < int(inst.demand().edges.size()); ++d)
    if (inst.demands[d] == 0)
      steps.push_back({MinorOp::DeleteDemand, inst.demand().edges[d].id});
  steps.insert(steps.end(), w.steps.begin(), w.steps.end());
  lifted.steps = std::move(steps);
  checkSpindleWitness(inst.pair, lifted);
  return lifted;
}

}  // namespace

RoutingResult solveIntegral(const Instance& inst, bool assumeCutSufficient, bool bulkFloor) {
  requireUniqueIds(inst.pair, "solveIntegral");
  RoutingResult res;
  res.parity = checkEulerian(inst);
  if (!res.parity.integral || !res.parity.eulerian) {
    res.status = RoutingResult::NotEulerian;
    return res;
  }

  Instance norm = normalizeInstance(inst);
  CutReport cut = checkCutConditionSplit(norm);
  if (!cut.satisfied) {
    res.status = RoutingResult::CutViolated;
    res.violatedCut = cutOf(inst, cut.worstCut.side);
    return res;
  }

  if (!assumeCutSufficient) {
    SufficiencyVerdict verdict = decideCutSufficiency(norm.pair);
    if (!verdict.cutSufficient) {
      res.status = RoutingResult::NotCutSufficient;
      res.spindle = liftThroughNormalization(inst, *verdict.witness);
      return res;
    }
  }

  std::vector<IdFlow> flows;
  routeRecursive(norm, bulkFloor, 0, flows);

  MultiflowSolution sol;
  sol.congestion = 0;
  sol.edgeLoad.assign(inst.supply().edges.size(), Rat(0));
  for (const IdFlow& f : flows) {
    PathFlow pf;
    pf.demandEdge = demandIndexById(inst, f.demandId);
    if (pf.demandEdge < 0) throw ContractError("solveIntegral: flow for unknown demand");
    pf.amount = Rat(f.units);
    pf.path.verts = f.verts;
    for (int id : f.edgeIds) {
      int e = inst.supply().edgeByStableId(id);
      if (e < 0) throw ContractError("solveIntegral: flow over unknown supply edge");
      pf.path.edges.push_back(e);
    }
    for (int e : pf.path.edges) sol.edgeLoad[e] += pf.amount;
    sol.flows.push_back(std::move(pf));
  }
  sol.residual = inst.capacities;
  for (int e = 0; e < int(sol.residual.size()); ++e) {
    sol.residual[e] -= sol.edgeLoad[e];
    if (inst.capacities[e] > 0) {
      Rat ratio = sol.edgeLoad[e] / inst.capacities[e];
      if (ratio > sol.congestion) sol.congestion = ratio;
    }
  }

  verifyRouting(inst, sol, Rat(1));
  res.status = RoutingResult::Routed;
  res.solution = std::move(sol);
  return res;
}

RoutingResult solveHalfIntegral(const Instance& inst, bool assumeCutSufficient) {
  requireUniqueIds(inst.pair, "solveHalfIntegral");
  RoutingResult res;
  res.parity = checkEulerian(inst);
  if (!res.parity.integral) {
    res.status = RoutingResult::NotEulerian;
    return res;
  }

  std::vector<Rat> caps, dems;
  for (const Rat& c : inst.capacities) caps.push_back(c * 2);
  for (const Rat& d : inst.demands) dems.push_back(d * 2);
  Instance doubled(inst.pair, std::move(caps), std::move(dems));
  if (!checkEulerian(doubled).eulerian)
    throw ContractError("solveHalfIntegral: doubling failed to even out the parity");

  RoutingResult inner = solveIntegral(doubled, assumeCutSufficient);
  switch (inner.status) {
    case RoutingResult::CutViolated:
      res.status = RoutingResult::CutViolated;
      res.violatedCut = cutOf(inst, inner.violatedCut->side);
      return res;
    case RoutingResult::NotCutSufficient:
      res.status = RoutingResult::NotCutSufficient;
      res.spindle = inner.spindle;
      return res;
    case RoutingResult::NotEulerian:
      throw ContractError("solveHalfIntegral: doubled instance reported parity failure");
    case RoutingResult::Routed:
      break;
  }

  MultiflowSolution sol = std::move(inner.solution);
  for (PathFlow& pf : sol.flows) pf.amount /= 2;
  for (Rat& l : sol.edgeLoad) l /= 2;
  sol.residual = inst.capacities;
  for (int e = 0; e < int(sol.residual.size()); ++e) sol.residual[e] -= sol.edgeLoad[e];

  verifyRouting(inst, sol, Rat(1, 2));
  res.status = RoutingResult::Routed;
  res.solution = std::move(sol);
  return res;
}

void verifyRouting(const Instance& inst, const MultiflowSolution& sol, const Rat& granularity) {
  if (granularity <= 0) throw ContractError("verifyRouting: nonpositive granularity");
  const Graph& g = inst.supply();
  std::vector<Rat> load(g.edges.size(), Rat(0));
  std::vector<Rat> delivered(inst.demands.size(), Rat(0));

  for (const PathFlow& pf : sol.flows) {
    if (pf.amount <= 0) throw ContractError("verifyRouting: nonpositive flow amount");
    if (!ratIsInteger(pf.amount / granularity))
      throw ContractError("verifyRouting: amount " + ratToString(pf.amount) +
                          " is not a multiple of " + ratToString(granularity));
    inst.demand().checkEdge(pf.demandEdge, "verifyRouting");
    const VPath& p = pf.path;
    if (p.verts.size() != p.edges.size() + 1 || p.verts.size() < 2)
      throw ContractError("verifyRouting: malformed path");
    for (int i = 0; i < int(p.edges.size()); ++i) {
      g.checkEdge(p.edges[i], "verifyRouting");
      const Edge& e = g.edges[p.edges[i]];
      bool forward = (e.u == p.verts[i] && e.v == p.verts[i + 1]);
      bool backward = (e.v == p.verts[i] && e.u == p.verts[i + 1]);
      if (!forward && !backward)
        throw ContractError("verifyRouting: path edge does not join its vertices");
      load[p.edges[i]] += pf.amount;
    }
    const Edge& de = inst.demand().edges[pf.demandEdge];
    bool straight = (p.verts.front() == de.u && p.verts.back() == de.v);
    bool reversed = (p.verts.front() == de.v && p.verts.back() == de.u);
    if (!straight && !reversed)
      throw ContractError("verifyRouting: path does not join the demand's endpoints");
    delivered[pf.demandEdge] += pf.amount;
  }

  for (int d = 0; d < int(inst.demands.size()); ++d)
    if (delivered[d] != inst.demands[d])
      throw ContractError("verifyRouting: demand " + std::to_string(d) + " delivered " +
                          ratToString(delivered[d]) + " of " + ratToString(inst.demands[d]));
  for (int e = 0; e < int(g.edges.size()); ++e) {
    if (load[e] > inst.capacities[e])
      throw ContractError("verifyRouting: edge " + std::to_string(e) + " over capacity");
    if (int(sol.edgeLoad.size()) == int(g.edges.size()) && sol.edgeLoad[e] != load[e])
      throw ContractError("verifyRouting: edgeLoad bookkeeping mismatch");
  }
}

}  // namespace mcf
