#include "mcf/cutcheck.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <queue>

namespace mcf {

namespace {

std::vector<unsigned> neighborMasks(const Graph& g) {
  std::vector<unsigned> nb(g.n, 0);
  for (const Edge& e : g.edges) {
    nb[e.u] |= 1u << e.v;
    nb[e.v] |= 1u << e.u;
  }
  return nb;
}

bool maskConnected(const std::vector<unsigned>& nb, unsigned mask) {
  if (mask == 0) return false;
  unsigned seen = mask & (~mask + 1);  // lowest set bit
  for (;;) {
    unsigned grow = seen;
    unsigned frontier = seen;
    while (frontier) {
      int v = __builtin_ctz(frontier);
      frontier &= frontier - 1;
      grow |= nb[v] & mask;
    }
    if (grow == seen) break;
    seen = grow;
  }
  return seen == mask;
}

std::vector<int> maskToList(unsigned mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(__builtin_ctz(mask));
    mask &= mask - 1;
  }
  return out;
}

// ------------------------------------------------------------ brute force ----

// Every proper nonempty subset containing vertex 0 covers each bipartition
// exactly once; the 0-side is also the lexicographically smaller side, which
// is what tie-breaking wants.
struct BruteScan {
  const Instance& inst;
  std::vector<unsigned> nbSupply;
  unsigned full;

  explicit BruteScan(const Instance& in) : inst(in), nbSupply(neighborMasks(in.supply())) {
    int n = inst.vertexCount();
    if (n > kBruteForceCutGuard)
      throw ContractError("cut check: brute force guarded at " +
                          std::to_string(kBruteForceCutGuard) + " vertices, got " +
                          std::to_string(n));
    full = (n >= 32) ? 0xffffffffu : ((1u << n) - 1);
  }

  bool central(unsigned mask) const {
    return maskConnected(nbSupply, mask) && maskConnected(nbSupply, full & ~mask);
  }

  template <typename Fn>
  void forEachCentral(Fn&& fn) const {
    for (unsigned mask = 1; mask < full; mask += 2)
      if (central(mask)) fn(mask);
  }
};

Rat surplusOfMask(const Instance& inst, unsigned mask) {
  Rat s = 0;
  const auto& se = inst.supply().edges;
  for (size_t i = 0; i < se.size(); ++i)
    if (((mask >> se[i].u) ^ (mask >> se[i].v)) & 1) s += inst.capacities[i];
  const auto& de = inst.demand().edges;
  for (size_t i = 0; i < de.size(); ++i)
    if (((mask >> de[i].u) ^ (mask >> de[i].v)) & 1) s -= inst.demands[i];
  return s;
}

// Integer fast path: when all weights are machine-sized integers the scan
// runs in int64 and only the winning mask is re-derived exactly.
bool int64Weights(const Instance& inst, std::vector<long>& caps, std::vector<long>& dems) {
  const long kLimit = 1L << 40;
  auto fits = [&](const Rat& r, long& out) {
    if (!ratIsInteger(r)) return false;
    if (!r.get_num().fits_slong_p()) return false;
    out = r.get_num().get_si();
    return out < kLimit && out > -kLimit;
  };
  caps.resize(inst.capacities.size());
  dems.resize(inst.demands.size());
  for (size_t i = 0; i < caps.size(); ++i)
    if (!fits(inst.capacities[i], caps[i])) return false;
  for (size_t i = 0; i < dems.size(); ++i)
    if (!fits(inst.demands[i], dems[i])) return false;
  return true;
}

CutReport bruteForceReport(const Instance& inst) {
  BruteScan scan(inst);
  bool found = false;
  unsigned bestMask = 0;

  std::vector<long> caps, dems;
  if (int64Weights(inst, caps, dems)) {
    long best = 0;
    scan.forEachCentral([&](unsigned mask) {
      long s = 0;
      const auto& se = inst.supply().edges;
      for (size_t i = 0; i < se.size(); ++i)
        if (((mask >> se[i].u) ^ (mask >> se[i].v)) & 1) s += caps[i];
      const auto& de = inst.demand().edges;
      for (size_t i = 0; i < de.size(); ++i)
        if (((mask >> de[i].u) ^ (mask >> de[i].v)) & 1) s -= dems[i];
      if (!found || s < best ||
          (s == best && maskToList(mask) < maskToList(bestMask))) {
        found = true;
        best = s;
        bestMask = mask;
      }
    });
  } else {
    Rat best = 0;
    scan.forEachCentral([&](unsigned mask) {
      Rat s = surplusOfMask(inst, mask);
      if (!found || s < best ||
          (s == best && maskToList(mask) < maskToList(bestMask))) {
        found = true;
        best = s;
        bestMask = mask;
      }
    });
  }

  CutReport rep;
  if (!found) {  // no central cut at all; the condition holds vacuously
    rep.satisfied = true;
    rep.minSurplus = 0;
    return rep;
  }
  rep.worstCut = cutOf(inst, maskToList(bestMask));
  rep.minSurplus = rep.worstCut.surplus;
  rep.satisfied = rep.minSurplus >= 0;
  return rep;
}

// ------------------------------------------------- decomposition-tree DP ----

// State of one subtree tile: the sides chosen for its two attachments,
// whether the attachments are joined by a same-side supply path inside the
// tile, how many finished components (touching no attachment) each side has
// accumulated, and the sides of internal vertices that still carry demand
// edges leaving the tile. Everything else about an assignment is moot, so
// assignments agreeing on the state collapse to the cheapest one.
struct DpEntry {
  Rat value;
  unsigned long long mask = 0;  // winning side assignment of the tile
};

constexpr int kDpPendingGuard = 20;

class SpCutDp {
 public:
  SpCutDp(const Instance& inst, const SpTree& tree) : inst_(inst), tree_(tree) {
    n_ = inst.vertexCount();
    if (n_ > 63) throw ContractError("cut check: tree DP guarded at 63 vertices");
    buildPostorder();
    buildDemandIndex();
    buildPending();
  }

  CutReport run() {
    for (int nd : postorder_) {
      const SpNode& node = tree_.nodes[nd];
      switch (node.kind) {
        case SpNode::Leaf: leafStates(nd); break;
        case SpNode::Series: mergeSeries(nd); break;
        case SpNode::Parallel: mergeParallel(nd); break;
      }
    }
    return rootReport();
  }

 private:
  // key layout: sa | sb<<1 | span<<2 | isl0<<3 (2 bits) | isl1<<5 (2 bits)
  //             | pendBits<<7
  static uint64_t pack(int sa, int sb, bool span, int isl0, int isl1, uint64_t pend) {
    return uint64_t(sa) | uint64_t(sb) << 1 | uint64_t(span) << 2 |
           uint64_t(isl0) << 3 | uint64_t(isl1) << 5 | pend << 7;
  }

  void buildPostorder() {
    postorder_.clear();
    std::vector<std::pair<int, int>> stack{{tree_.root, 0}};
    while (!stack.empty()) {
      auto& [nd, phase] = stack.back();
      const SpNode& node = tree_.nodes[nd];
      if (node.kind == SpNode::Leaf || phase == 2) {
        postorder_.push_back(nd);
        stack.pop_back();
      } else if (phase == 0) {
        phase = 1;
        stack.emplace_back(node.left, 0);
      } else {
        phase = 2;
        stack.emplace_back(node.right, 0);
      }
    }
    tile_.resize(tree_.nodes.size());
    for (int nd : postorder_) tile_[nd] = tree_.tileVertices(nd);
  }

  // Each demand is charged at the postorder-first node whose tile holds both
  // endpoints, so it is subtracted exactly once.
  void buildDemandIndex() {
    const Graph& dg = inst_.demand();
    charged_.assign(tree_.nodes.size(), {});
    partnerMask_.assign(n_, 0);
    for (size_t i = 0; i < dg.edges.size(); ++i) {
      partnerMask_[dg.edges[i].u] |= 1ull << dg.edges[i].v;
      partnerMask_[dg.edges[i].v] |= 1ull << dg.edges[i].u;
      for (int nd : postorder_) {
        unsigned long long want =
            (1ull << dg.edges[i].u) | (1ull << dg.edges[i].v);
        if ((tile_[nd] & want) == want) {
          charged_[nd].push_back(int(i));
          break;
        }
      }
    }
  }

  void buildPending() {
    pend_.resize(tree_.nodes.size());
    for (int nd : postorder_) {
      const SpNode& node = tree_.nodes[nd];
      unsigned long long internals =
          tile_[nd] & ~((1ull << node.a) | (1ull << node.b));
      pend_[nd].clear();
      for (unsigned long long m = internals; m; m &= m - 1) {
        int v = __builtin_ctzll(m);
        if (partnerMask_[v] & ~tile_[nd]) pend_[nd].push_back(v);
      }
      if (int(pend_[nd].size()) > kDpPendingGuard)
        throw ContractError("cut check: tree DP pending-set guard exceeded");
    }
    table_.assign(tree_.nodes.size(), {});
  }

  // Side of `v` in a child's winning assignment: attachments from the packed
  // key, internals from the stored mask (pending internals are part of the
  // key via pendBits, so equal-key states agree on them).
  static int maskSide(unsigned long long mask, int v) { return int((mask >> v) & 1); }

  void keep(int nd, uint64_t key, const Rat& value, unsigned long long mask) {
    auto it = table_[nd].find(key);
    if (it == table_[nd].end() || value < it->second.value)
      table_[nd][key] = DpEntry{value, mask};
  }

  // Demand endpoints at a charge node are attachments, the series middle, or
  // pending internals of a child; their sides are all recoverable from the
  // merged assignment mask.
  Rat chargedDelta(int nd, unsigned long long mask) const {
    Rat delta = 0;
    for (int d : charged_[nd]) {
      const Edge& e = inst_.demand().edges[d];
      if (maskSide(mask, e.u) != maskSide(mask, e.v)) delta -= inst_.demands[d];
    }
    return delta;
  }

  uint64_t pendBitsOf(int nd, unsigned long long mask) const {
    uint64_t bits = 0;
    for (size_t i = 0; i < pend_[nd].size(); ++i)
      bits |= uint64_t(maskSide(mask, pend_[nd][i])) << i;
    return bits;
  }

  // Two same-side finished components can never reunite, and a finished
  // component can never join one still touching an attachment.
  static bool viable(int sa, int sb, bool span, int isl0, int isl1) {
    for (int side = 0; side < 2; ++side) {
      int isl = side ? isl1 : isl0;
      int anchored = (sa == side ? 1 : 0) + (sb == side ? 1 : 0);
      if (anchored == 2 && span) anchored = 1;
      if (isl >= 2 || (isl >= 1 && anchored >= 1)) return false;
    }
    return true;
  }

  void leafStates(int nd) {
    const SpNode& node = tree_.nodes[nd];
    for (int sa = 0; sa < 2; ++sa)
      for (int sb = 0; sb < 2; ++sb) {
        unsigned long long mask =
            (unsigned long long)(sa) << node.a | (unsigned long long)(sb) << node.b;
        Rat value = (sa != sb) ? inst_.capacities[node.edge] : Rat(0);
        value += chargedDelta(nd, mask);
        keep(nd, pack(sa, sb, sa == sb, 0, 0, 0), value, mask);
      }
  }

  struct Unpacked {
    int sa, sb;
    bool span;
    int isl0, isl1;
  };

  static Unpacked unpackKey(uint64_t key) {
    return Unpacked{int(key & 1), int((key >> 1) & 1), bool((key >> 2) & 1),
                    int((key >> 3) & 3), int((key >> 5) & 3)};
  }

  // The child stores its own attachments normalized; report the side of a
  // concrete vertex of the merged node.
  static int attachSide(const SpNode& child, const Unpacked& st, int v) {
    if (v == child.a) return st.sa;
    if (v == child.b) return st.sb;
    throw ContractError("cut check: attachment lookup out of tile");
  }

  void mergeSeries(int nd) {
    const SpNode& node = tree_.nodes[nd];
    const SpNode& lc = tree_.nodes[node.left];
    const SpNode& rc = tree_.nodes[node.right];
    int m = node.middle;
    for (const auto& [k1, e1] : table_[node.left])
      for (const auto& [k2, e2] : table_[node.right]) {
        Unpacked u1 = unpackKey(k1), u2 = unpackKey(k2);
        int sm = attachSide(lc, u1, m);
        if (sm != attachSide(rc, u2, m)) continue;
        int sa = attachSide(lc, u1, node.a);
        int sb = attachSide(rc, u2, node.b);
        bool touchesA = (sa == sm) && u1.span;
        bool touchesB = (sb == sm) && u2.span;
        int isl0 = u1.isl0 + u2.isl0;
        int isl1 = u1.isl1 + u2.isl1;
        // The glued middle component finishes here unless it still holds an
        // attachment of the merged tile.
        if (!touchesA && !touchesB) (sm ? isl1 : isl0) += 1;
        bool span = touchesA && touchesB;
        if (!viable(sa, sb, span, isl0, isl1)) continue;
        unsigned long long mask = e1.mask | e2.mask;
        Rat value = e1.value + e2.value + chargedDelta(nd, mask);
        keep(nd, pack(sa, sb, span, isl0, isl1, pendBitsOf(nd, mask)), value, mask);
      }
  }

  void mergeParallel(int nd) {
    const SpNode& node = tree_.nodes[nd];
    const SpNode& lc = tree_.nodes[node.left];
    const SpNode& rc = tree_.nodes[node.right];
    for (const auto& [k1, e1] : table_[node.left])
      for (const auto& [k2, e2] : table_[node.right]) {
        Unpacked u1 = unpackKey(k1), u2 = unpackKey(k2);
        int sa = attachSide(lc, u1, node.a);
        if (sa != attachSide(rc, u2, node.a)) continue;
        int sb = attachSide(lc, u1, node.b);
        if (sb != attachSide(rc, u2, node.b)) continue;
        bool span = (sa == sb) && (u1.span || u2.span);
        int isl0 = u1.isl0 + u2.isl0;
        int isl1 = u1.isl1 + u2.isl1;
        if (!viable(sa, sb, span, isl0, isl1)) continue;
        unsigned long long mask = e1.mask | e2.mask;
        Rat value = e1.value + e2.value + chargedDelta(nd, mask);
        keep(nd, pack(sa, sb, span, isl0, isl1, pendBitsOf(nd, mask)), value, mask);
      }
  }

  CutReport rootReport() {
    bool found = false;
    Rat best = 0;
    unsigned long long bestMask = 0;
    for (const auto& [key, entry] : table_[tree_.root]) {
      Unpacked st = unpackKey(key);
      bool ok = true;
      for (int side = 0; side < 2 && ok; ++side) {
        int isl = side ? st.isl1 : st.isl0;
        int anchored = (st.sa == side ? 1 : 0) + (st.sb == side ? 1 : 0);
        if (anchored == 2 && st.span) anchored = 1;
        ok = (anchored + isl == 1);  // exactly one component, hence nonempty
      }
      if (!ok) continue;
      if (!found || entry.value < best) {
        found = true;
        best = entry.value;
        bestMask = entry.mask;
      }
    }
    CutReport rep;
    if (!found) {
      rep.satisfied = true;
      rep.minSurplus = 0;
      return rep;
    }
    std::vector<int> side;
    for (int v = 0; v < n_; ++v)
      if ((bestMask >> v) & 1) side.push_back(v);
    rep.worstCut = cutOf(inst_, cutRepresentative(n_, side));
    rep.minSurplus = rep.worstCut.surplus;
    rep.satisfied = rep.minSurplus >= 0;
    if (rep.minSurplus != best)
      throw ContractError("cut check: tree DP value disagrees with its witness");
    if (!isCentral(inst_, rep.worstCut.side))
      throw ContractError("cut check: tree DP witness is not central");
    return rep;
  }

  const Instance& inst_;
  const SpTree& tree_;
  int n_ = 0;
  std::vector<int> postorder_;
  std::vector<unsigned long long> tile_;
  std::vector<std::vector<int>> charged_;
  std::vector<unsigned long long> partnerMask_;
  std::vector<std::vector<int>> pend_;
  std::vector<std::map<uint64_t, DpEntry>> table_;
};

}  // namespace

std::vector<unsigned> centralCutMasks(const Graph& supply) {
  if (supply.n > kBruteForceCutGuard)
    throw ContractError("central cut enumeration guarded at " +
                        std::to_string(kBruteForceCutGuard) + " vertices");
  std::vector<unsigned> out;
  if (supply.n < 2) return out;
  std::vector<unsigned> nb = neighborMasks(supply);
  unsigned full = (1u << supply.n) - 1;
  for (unsigned mask = 1; mask < full; mask += 2)
    if (maskConnected(nb, mask) && maskConnected(nb, full & ~mask)) out.push_back(mask);
  return out;
}

void forEachHalfSubset(int n, const std::function<void(unsigned)>& fn) {
  if (n > kBruteForceCutGuard)
    throw ContractError("subset enumeration guarded at " +
                        std::to_string(kBruteForceCutGuard) + " vertices");
  if (n < 2) return;
  unsigned full = (1u << n) - 1;
  for (unsigned mask = 1; mask < full; mask += 2) fn(mask);
}

CutReport checkCutCondition(const Instance& inst, CutEngine engine) {
  int n = inst.vertexCount();
  if (n <= 1) {
    CutReport rep;
    rep.satisfied = true;
    rep.minSurplus = 0;
    return rep;
  }
  if (!isConnected(inst.supply()))
    throw ContractError("cut check: supply graph must be connected");

  if (engine == CutEngine::Auto)
    engine = (n <= 13) ? CutEngine::BruteForce : CutEngine::SpTreeDp;

  if (engine == CutEngine::SpTreeDp) {
    Recognition rec = recognizeSeriesParallel(inst.supply());
    if (rec.status != Recognition::SeriesParallel) {
      if (n <= kBruteForceCutGuard) return bruteForceReport(inst);
      throw ContractError("cut check: tree DP needs biconnected series-parallel supply");
    }
    return SpCutDp(inst, *rec.tree).run();
  }
  return bruteForceReport(inst);
}

CutReport checkCutConditionSplit(const Instance& inst, CutEngine engine) {
  const Graph& g = inst.supply();
  if (g.n <= 1 || isConnected(g)) return checkCutCondition(inst, engine);

  std::vector<int> comp = componentIds(g);
  const auto& de = inst.demand().edges;
  for (size_t i = 0; i < de.size(); ++i) {
    if (comp[de[i].u] == comp[de[i].v] || inst.demands[i] == 0) continue;
    std::vector<int> side;
    for (int v = 0; v < g.n; ++v)
      if (comp[v] == comp[de[i].u]) side.push_back(v);
    CutReport rep;
    rep.worstCut = cutOf(inst, side);
    rep.minSurplus = rep.worstCut.surplus;
    rep.satisfied = false;
    return rep;
  }

  int comps = 1 + *std::max_element(comp.begin(), comp.end());
  CutReport best;
  best.satisfied = true;
  best.minSurplus = 0;
  bool have = false;
  for (int c = 0; c < comps; ++c) {
    std::vector<int> verts;
    for (int v = 0; v < g.n; ++v)
      if (comp[v] == c) verts.push_back(v);
    if (verts.size() < 2) continue;
    SubPair sub = inducedSubpair(inst.pair, verts);
    std::vector<Rat> caps, dems;
    for (int idx : sub.supplyEdgeOrig) caps.push_back(inst.capacities[idx]);
    for (int idx : sub.demandEdgeOrig) dems.push_back(inst.demands[idx]);
    CutReport r = checkCutCondition(Instance(sub.pair, caps, dems), engine);
    std::vector<int> side;
    for (int v : r.worstCut.side) side.push_back(sub.vertices[v]);
    Cut lifted = cutOf(inst, side);
    if (!have || lifted.surplus < best.minSurplus) {
      best.worstCut = lifted;
      best.minSurplus = lifted.surplus;
      have = true;
    }
  }
  best.satisfied = best.minSurplus >= 0;
  return best;
}

EulerianReport checkEulerian(const Instance& inst) {
  EulerianReport rep;
  for (const Rat& c : inst.capacities)
    if (!ratIsInteger(c)) rep.integral = false;
  for (const Rat& d : inst.demands)
    if (!ratIsInteger(d)) rep.integral = false;
  if (!rep.integral) return rep;

  std::vector<Rat> total(inst.vertexCount(), Rat(0));
  const auto& se = inst.supply().edges;
  for (size_t i = 0; i < se.size(); ++i) {
    total[se[i].u] += inst.capacities[i];
    total[se[i].v] += inst.capacities[i];
  }
  const auto& de = inst.demand().edges;
  for (size_t i = 0; i < de.size(); ++i) {
    total[de[i].u] += inst.demands[i];
    total[de[i].v] += inst.demands[i];
  }
  for (int v = 0; v < inst.vertexCount(); ++v)
    if (mpz_odd_p(total[v].get_num().get_mpz_t())) {
      rep.oddVertex = v;
      return rep;
    }
  rep.eulerian = true;
  return rep;
}

std::vector<Cut> enumerateTightCentralCuts(const Instance& inst) {
  int n = inst.vertexCount();
  std::vector<Cut> out;
  if (n < 2) return out;
  if (!isConnected(inst.supply()))
    throw ContractError("tight cuts: supply graph must be connected");
  BruteScan scan(inst);
  scan.forEachCentral([&](unsigned mask) {
    Rat s = surplusOfMask(inst, mask);
    if (s == 0) out.push_back(cutOf(inst, maskToList(mask)));
  });
  std::sort(out.begin(), out.end(),
            [](const Cut& x, const Cut& y) { return x.side < y.side; });
  return out;
}

std::vector<std::vector<int>> bubblesFor(const Instance& inst, int demandEdge) {
  inst.demand().checkEdge(demandEdge, "bubblesFor");
  int x = inst.demand().edges[demandEdge].u;
  int y = inst.demand().edges[demandEdge].v;
  int n = inst.vertexCount();
  std::vector<std::vector<int>> out;
  for (const Cut& cut : enumerateTightCentralCuts(inst)) {
    std::vector<char> inSide(n, 0);
    for (int v : cut.side) inSide[v] = 1;
    if (!inSide[x] && !inSide[y]) {
      out.push_back(cut.side);
    } else if (inSide[x] && inSide[y]) {
      std::vector<int> comp;
      for (int v = 0; v < n; ++v)
        if (!inSide[v]) comp.push_back(v);
      out.push_back(std::move(comp));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CoverageReport isCoveredByBubbles(const Instance& inst, int demandEdge) {
  const Graph& g = inst.supply();
  inst.demand().checkEdge(demandEdge, "isCoveredByBubbles");
  int x = inst.demand().edges[demandEdge].u;
  int y = inst.demand().edges[demandEdge].v;

  // A path starting and ending outside a vertex set crosses its cut iff it
  // touches the set, so "crosses some bubble" = "meets some bubble vertex".
  std::vector<char> blocked(g.n, 0);
  for (const auto& bubble : bubblesFor(inst, demandEdge))
    for (int v : bubble) blocked[v] = 1;

  Adjacency adj(g);
  std::vector<int> parentEdge(g.n, -1), parentVert(g.n, -1);
  std::vector<char> seen(g.n, 0);
  std::queue<int> q;
  q.push(x);
  seen[x] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int e : adj.inc[v]) {
      int w = g.other(e, v);
      if (seen[w] || blocked[w]) continue;
      seen[w] = 1;
      parentEdge[w] = e;
      parentVert[w] = v;
      q.push(w);
    }
  }

  CoverageReport rep;
  if (!seen[y]) {
    rep.covered = true;
    return rep;
  }
  VPath path;
  for (int v = y; v != -1; v = parentVert[v]) {
    path.verts.push_back(v);
    if (parentEdge[v] != -1) path.edges.push_back(parentEdge[v]);
  }
  std::reverse(path.verts.begin(), path.verts.end());
  std::reverse(path.edges.begin(), path.edges.end());
  rep.covered = false;
  rep.uncoveredPath = path;

  for (const Cut& cut : enumerateTightCentralCuts(inst)) {
    std::vector<char> inSide(inst.vertexCount(), 0);
    for (int v : cut.side) inSide[v] = 1;
    int crossings = 0;
    for (size_t i = 0; i + 1 < path.verts.size(); ++i)
      if (inSide[path.verts[i]] != inSide[path.verts[i + 1]]) ++crossings;
    if (crossings >= 2) {
      rep.multiCrossedTightCut = cut.side;
      break;
    }
  }
  return rep;
}

}  // namespace mcf
