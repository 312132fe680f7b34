#include "mcf/spgraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace mcf {

std::vector<std::pair<int, int>> SpTree::evaluate(int node) const {
  const SpNode& nd = nodes.at(node);
  if (nd.kind == SpNode::Leaf) {
    const Edge& e = graph.edges[nd.edge];
    return {{std::min(e.u, e.v), std::max(e.u, e.v)}};
  }
  auto l = evaluate(nd.left);
  auto r = evaluate(nd.right);
  l.insert(l.end(), r.begin(), r.end());
  return l;
}

unsigned long long SpTree::tileVertices(int node) const {
  const SpNode& nd = nodes.at(node);
  if (nd.kind == SpNode::Leaf) {
    const Edge& e = graph.edges[nd.edge];
    return (1ULL << e.u) | (1ULL << e.v);
  }
  return tileVertices(nd.left) | tileVertices(nd.right);
}

// --------------------------------------------------------------- reduction ----

namespace {

struct RedEdge {
  int u, v;
  int node;
  bool alive;
};

struct ReductionOutcome {
  std::vector<SpNode> nodes;
  std::vector<RedEdge> edges;
  std::vector<int> alive;
};

// Parallel merges first, then the smallest eligible series vertex; both picked
// in a fixed order so the resulting tree is deterministic for a given graph.
ReductionOutcome reduceAll(const Graph& g, const std::vector<char>& protect) {
  ReductionOutcome out;
  out.edges.reserve(g.edges.size());
  for (size_t i = 0; i < g.edges.size(); ++i) {
    SpNode leaf;
    leaf.kind = SpNode::Leaf;
    leaf.a = std::min(g.edges[i].u, g.edges[i].v);
    leaf.b = std::max(g.edges[i].u, g.edges[i].v);
    leaf.edge = static_cast<int>(i);
    out.nodes.push_back(leaf);
    out.edges.push_back(RedEdge{g.edges[i].u, g.edges[i].v, static_cast<int>(i), true});
  }
  auto ends = [](const RedEdge& e) {
    return std::pair<int, int>(std::min(e.u, e.v), std::max(e.u, e.v));
  };
  while (true) {
    // Parallel pair with the smallest endpoint pair, then smallest indices.
    int pi = -1, pj = -1;
    std::map<std::pair<int, int>, int> first;
    for (size_t j = 0; j < out.edges.size(); ++j) {
      if (!out.edges[j].alive) continue;
      auto key = ends(out.edges[j]);
      auto it = first.find(key);
      if (it == first.end()) {
        first[key] = static_cast<int>(j);
      } else if (pi == -1 || key < ends(out.edges[pi])) {
        pi = it->second;
        pj = static_cast<int>(j);
      }
    }
    if (pi != -1) {
      SpNode par;
      par.kind = SpNode::Parallel;
      par.a = ends(out.edges[pi]).first;
      par.b = ends(out.edges[pi]).second;
      par.left = out.edges[pi].node;
      par.right = out.edges[pj].node;
      out.edges[pj].alive = false;
      out.edges[pi].u = par.a;
      out.edges[pi].v = par.b;
      out.edges[pi].node = static_cast<int>(out.nodes.size());
      out.nodes.push_back(par);
      continue;
    }
    // Smallest unprotected vertex of reduced degree 2. Its two edges go to
    // distinct neighbors, otherwise the parallel rule would have fired.
    std::vector<std::vector<int>> inc(g.n);
    for (size_t j = 0; j < out.edges.size(); ++j) {
      if (!out.edges[j].alive) continue;
      inc[out.edges[j].u].push_back(static_cast<int>(j));
      inc[out.edges[j].v].push_back(static_cast<int>(j));
    }
    int sv = -1;
    for (int v = 0; v < g.n; ++v)
      if (!protect[v] && inc[v].size() == 2) {
        sv = v;
        break;
      }
    if (sv == -1) break;
    int e1 = inc[sv][0], e2 = inc[sv][1];
    int x = out.edges[e1].u == sv ? out.edges[e1].v : out.edges[e1].u;
    int y = out.edges[e2].u == sv ? out.edges[e2].v : out.edges[e2].u;
    if (x == y) throw ContractError("reduceAll: parallel pair escaped the parallel rule");
    if (x > y) {
      std::swap(x, y);
      std::swap(e1, e2);
    }
    SpNode ser;
    ser.kind = SpNode::Series;
    ser.a = x;
    ser.b = y;
    ser.middle = sv;
    ser.left = out.edges[e1].node;
    ser.right = out.edges[e2].node;
    out.edges[e2].alive = false;
    out.edges[e1].u = x;
    out.edges[e1].v = y;
    out.edges[e1].node = static_cast<int>(out.nodes.size());
    out.nodes.push_back(ser);
  }
  for (size_t j = 0; j < out.edges.size(); ++j)
    if (out.edges[j].alive) out.alive.push_back(static_cast<int>(j));
  return out;
}

std::vector<int> subtreeLeafEdges(const std::vector<SpNode>& nodes, int node) {
  std::vector<int> out, stack{node};
  while (!stack.empty()) {
    const SpNode& nd = nodes[stack.back()];
    stack.pop_back();
    if (nd.kind == SpNode::Leaf) {
      out.push_back(nd.edge);
    } else {
      stack.push_back(nd.left);
      stack.push_back(nd.right);
    }
  }
  return out;
}

// BFS path between two vertices using only the given edges of g.
VPath pathWithinEdges(const Graph& g, const std::vector<int>& allowed, int from, int to) {
  std::vector<int> prevEdge(g.n, -1), prevVert(g.n, -1);
  std::vector<char> seen(g.n, 0);
  std::deque<int> q{from};
  seen[from] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    if (v == to) break;
    for (int e : allowed) {
      int w;
      if (g.edges[e].u == v)
        w = g.edges[e].v;
      else if (g.edges[e].v == v)
        w = g.edges[e].u;
      else
        continue;
      if (!seen[w]) {
        seen[w] = 1;
        prevEdge[w] = e;
        prevVert[w] = v;
        q.push_back(w);
      }
    }
  }
  if (!seen[to]) throw ContractError("pathWithinEdges: endpoints not connected in tile");
  VPath p;
  for (int v = to; v != from; v = prevVert[v]) {
    p.verts.push_back(v);
    p.edges.push_back(prevEdge[v]);
  }
  p.verts.push_back(from);
  std::reverse(p.verts.begin(), p.verts.end());
  std::reverse(p.edges.begin(), p.edges.end());
  return p;
}

// K4 subdivision in a simple graph of minimum degree >= 3: four branch
// vertices joined by six internally disjoint paths, found by backtracking.
struct K4Search {
  const std::vector<std::vector<int>>& adj;  // reduced-graph adjacency (vertex lists)
  int n;
  std::vector<char> used;
  std::array<int, 4> branch{};
  std::array<std::vector<int>, 6> paths;  // vertex sequences in the reduced graph
  long steps = 0;

  explicit K4Search(const std::vector<std::vector<int>>& adj)
      : adj(adj), n(static_cast<int>(adj.size())), used(adj.size(), 0) {}

  bool connectPairs(int pairIdx) {
    static constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    if (pairIdx == 6) return true;
    int from = branch[kPairs[pairIdx][0]], to = branch[kPairs[pairIdx][1]];
    std::vector<int> path{from};
    return extend(pairIdx, from, to, path);
  }

  bool extend(int pairIdx, int v, int to, std::vector<int>& path) {
    if (++steps > 2000000) throw ContractError("K4 witness search guard exceeded");
    for (int w : adj[v]) {
      if (w == to) {
        // Interiors are already marked used by the walk; they stay marked for
        // the remaining pairs and unwind with the walk on failure.
        path.push_back(w);
        paths[pairIdx] = path;
        if (connectPairs(pairIdx + 1)) return true;
        path.pop_back();
        continue;
      }
      if (used[w] || w == branch[0] || w == branch[1] || w == branch[2] || w == branch[3])
        continue;
      used[w] = 1;
      path.push_back(w);
      if (extend(pairIdx, w, to, path)) return true;
      path.pop_back();
      used[w] = 0;
    }
    return false;
  }

  bool run() {
    std::vector<int> verts;
    for (int v = 0; v < n; ++v)
      if (!adj[v].empty()) verts.push_back(v);
    int m = static_cast<int>(verts.size());
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int k = j + 1; k < m; ++k)
          for (int l = k + 1; l < m; ++l) {
            branch = {verts[i], verts[j], verts[k], verts[l]};
            std::fill(used.begin(), used.end(), 0);
            if (connectPairs(0)) return true;
          }
    return false;
  }
};

K4Witness k4FromStuckReduction(const Graph& g, const ReductionOutcome& red) {
  std::vector<std::vector<int>> adj(g.n);          // reduced-graph vertex adjacency
  std::map<std::pair<int, int>, int> reducedEdge;  // endpoints -> red edge index
  for (int j : red.alive) {
    int u = red.edges[j].u, v = red.edges[j].v;
    adj[u].push_back(v);
    adj[v].push_back(u);
    reducedEdge[{std::min(u, v), std::max(u, v)}] = j;
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  K4Search search(adj);
  if (!search.run())
    throw ContractError("stuck reduction without a K4 subdivision; reduction is buggy");

  // Expand each reduced path to an original-graph walk through the tiles.
  K4Witness wit;
  for (int i = 0; i < 4; ++i) wit.branchSets[i] = {search.branch[i]};
  static constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (int p = 0; p < 6; ++p) {
    const std::vector<int>& rp = search.paths[p];
    std::vector<int> interior;
    for (size_t leg = 0; leg + 1 < rp.size(); ++leg) {
      int u = rp[leg], v = rp[leg + 1];
      int j = reducedEdge.at({std::min(u, v), std::max(u, v)});
      auto tile = subtreeLeafEdges(red.nodes, red.edges[j].node);
      VPath orig = pathWithinEdges(g, tile, u, v);
      for (size_t t = 1; t + 1 < orig.verts.size(); ++t) interior.push_back(orig.verts[t]);
      if (leg + 2 < rp.size()) interior.push_back(v);
    }
    // Interior vertices hang off the lower-numbered branch set; the last one
    // is adjacent to the other branch vertex, which keeps the sets adjacent.
    for (int w : interior) wit.branchSets[kPairs[p][0]].push_back(w);
  }
  for (auto& bs : wit.branchSets) std::sort(bs.begin(), bs.end());
  return wit;
}

}  // namespace

Recognition recognizeSeriesParallel(const Graph& g) {
  if (g.n < 2 || g.edges.empty())
    throw ContractError("recognizeSeriesParallel: need at least two vertices and one edge");
  Recognition rec;
  if (!isConnected(g)) {
    rec.status = Recognition::NotBiconnected;
    rec.cutVertex = -1;
    return rec;
  }
  auto cuts = cutVertices(g);
  if (!cuts.empty()) {
    rec.status = Recognition::NotBiconnected;
    rec.cutVertex = cuts.front();
    return rec;
  }
  auto red = reduceAll(g, std::vector<char>(g.n, 0));
  if (red.alive.size() == 1) {
    rec.status = Recognition::SeriesParallel;
    SpTree tree;
    tree.graph = g;
    tree.nodes = std::move(red.nodes);
    tree.root = red.edges[red.alive[0]].node;
    rec.tree = std::move(tree);
    return rec;
  }
  rec.status = Recognition::HasK4Minor;
  rec.k4 = k4FromStuckReduction(g, red);
  return rec;
}

bool isSplitPair(const Graph& g, int u, int v) {
  g.checkVertex(u, "isSplitPair");
  g.checkVertex(v, "isSplitPair");
  if (u == v) throw ContractError("isSplitPair: vertices must differ");
  Graph aug = g;
  aug.addEdge(u, v, static_cast<int>(g.edges.size()));
  return recognizeSeriesParallel(aug).status == Recognition::SeriesParallel;
}

std::vector<std::pair<int, int>> allSplitPairs(const Graph& g) {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (isSplitPair(g, u, v)) out.emplace_back(u, v);
  return out;
}

// ------------------------------------------------------------- orientation ----

Orientation orient(const Graph& g, int s, int t) {
  g.checkVertex(s, "orient");
  g.checkVertex(t, "orient");
  if (s == t) throw ContractError("orient: source and sink must differ");
  Recognition rec = recognizeSeriesParallel(g);
  if (rec.status == Recognition::NotBiconnected)
    throw ContractError(rec.cutVertex < 0
                            ? "orient: graph is disconnected"
                            : "orient: graph has cut vertex " + std::to_string(rec.cutVertex) +
                                  "; orient the blocks separately");
  if (rec.status == Recognition::HasK4Minor)
    throw ContractError("orient: graph is not series-parallel (K4 minor)");
  if (!isSplitPair(g, s, t))
    throw ContractError("orient: (" + std::to_string(s) + "," + std::to_string(t) +
                        ") is not a split pair");

  // Terminal-protected reduction collapses the graph onto the pair; directions
  // then flow top-down from (s,t) through the tree.
  std::vector<char> protect(g.n, 0);
  protect[s] = protect[t] = 1;
  auto red = reduceAll(g, protect);
  if (red.alive.size() != 1)
    throw ContractError("orient: terminal-protected reduction did not collapse to one edge");
  const RedEdge& rootEdge = red.edges[red.alive[0]];
  if (std::min(rootEdge.u, rootEdge.v) != std::min(s, t) ||
      std::max(rootEdge.u, rootEdge.v) != std::max(s, t))
    throw ContractError("orient: reduction root does not span the split pair");

  Orientation o;
  o.graph = g;
  o.uToV.assign(g.edges.size(), 0);
  o.source = s;
  o.sink = t;
  std::function<void(int, int, int)> assign = [&](int node, int top, int bottom) {
    const SpNode& nd = red.nodes[node];
    switch (nd.kind) {
      case SpNode::Leaf:
        o.uToV[nd.edge] = (g.edges[nd.edge].u == top) ? 1 : 0;
        return;
      case SpNode::Parallel:
        assign(nd.left, top, bottom);
        assign(nd.right, top, bottom);
        return;
      case SpNode::Series: {
        unsigned long long leftTile = 0;
        for (int e : subtreeLeafEdges(red.nodes, nd.left))
          leftTile |= (1ULL << g.edges[e].u) | (1ULL << g.edges[e].v);
        bool topInLeft = (leftTile >> top) & 1ULL;
        assign(topInLeft ? nd.left : nd.right, top, nd.middle);
        assign(topInLeft ? nd.right : nd.left, nd.middle, bottom);
        return;
      }
    }
  };
  if (g.n > 63) throw ContractError("orient: vertex count exceeds desk-scale guard");
  assign(rootEdge.node, s, t);

  // The orientation is acyclic with s the unique source and t the unique sink.
  std::vector<int> indeg(g.n, 0), outdeg(g.n, 0);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    ++outdeg[o.edgeTail(static_cast<int>(e))];
    ++indeg[o.edgeHead(static_cast<int>(e))];
  }
  for (int v = 0; v < g.n; ++v) {
    if ((indeg[v] == 0) != (v == s) || (outdeg[v] == 0) != (v == t))
      throw ContractError("orient: source/sink uniqueness violated; orientation is buggy");
  }
  std::vector<int> indegCopy = indeg, order;
  for (int v = 0; v < g.n; ++v)
    if (indegCopy[v] == 0) order.push_back(v);
  for (size_t head = 0; head < order.size(); ++head) {
    int v = order[head];
    for (size_t e = 0; e < g.edges.size(); ++e)
      if (o.edgeTail(static_cast<int>(e)) == v && --indegCopy[o.edgeHead(static_cast<int>(e))] == 0)
        order.push_back(o.edgeHead(static_cast<int>(e)));
  }
  if (order.size() != static_cast<size_t>(g.n))
    throw ContractError("orient: produced a directed cycle; orientation is buggy");
  return o;
}

bool reaches(const Orientation& o, int x, int y) {
  o.graph.checkVertex(x, "reaches");
  o.graph.checkVertex(y, "reaches");
  std::vector<char> seen(o.graph.n, 0);
  std::vector<int> stack{x};
  seen[x] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (v == y) return true;
    for (size_t e = 0; e < o.graph.edges.size(); ++e)
      if (o.edgeTail(static_cast<int>(e)) == v && !seen[o.edgeHead(static_cast<int>(e))]) {
        seen[o.edgeHead(static_cast<int>(e))] = 1;
        stack.push_back(o.edgeHead(static_cast<int>(e)));
      }
  }
  return false;
}

bool isCompliant(const Orientation& o, int u, int v) {
  if (u == v) throw ContractError("isCompliant: vertices must differ");
  return reaches(o, u, v) || reaches(o, v, u);
}

namespace {

// Lexicographically extreme directed path, found by ordered DFS. smallest
// picks ascending successors, otherwise descending.
std::vector<int> extremeDipath(const Orientation& o, int from, int to, bool smallest) {
  std::vector<int> path{from};
  std::vector<char> onPath(o.graph.n, 0);
  onPath[from] = 1;
  std::function<bool(int)> go = [&](int v) -> bool {
    if (v == to) return true;
    std::vector<int> next;
    for (size_t e = 0; e < o.graph.edges.size(); ++e)
      if (o.edgeTail(static_cast<int>(e)) == v) next.push_back(o.edgeHead(static_cast<int>(e)));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (!smallest) std::reverse(next.begin(), next.end());
    for (int w : next) {
      if (onPath[w]) continue;
      onPath[w] = 1;
      path.push_back(w);
      if (go(w)) return true;
      path.pop_back();
      onPath[w] = 0;
    }
    return false;
  };
  if (!go(from)) throw ContractError("extremeDipath: no directed path");
  return path;
}

std::pair<int, int> terminalsFromChoice(const Orientation& o, int u, int v, bool smallest) {
  auto psu = extremeDipath(o, o.source, u, smallest);
  auto psv = extremeDipath(o, o.source, v, smallest);
  auto put = extremeDipath(o, u, o.sink, smallest);
  auto pvt = extremeDipath(o, v, o.sink, smallest);
  std::vector<char> onPsv(o.graph.n, 0), onPvt(o.graph.n, 0);
  for (int x : psv) onPsv[x] = 1;
  for (int x : pvt) onPvt[x] = 1;
  int w = -1, z = -1;
  for (int x : psu)
    if (onPsv[x]) w = x;  // last shared vertex of the source prefixes
  for (int x : put)
    if (onPvt[x]) {
      z = x;  // first shared vertex of the sink suffixes
      break;
    }
  if (w < 0 || z < 0) throw ContractError("terminalsOf: prefixes or suffixes never meet");
  return {w, z};
}

}  // namespace

std::pair<int, int> terminalsOf(const Orientation& o, int u, int v) {
  if (isCompliant(o, u, v))
    throw ContractError("terminalsOf: pair is compliant; terminals are undefined");
  auto wz = terminalsFromChoice(o, u, v, true);
  if (wz != terminalsFromChoice(o, u, v, false))
    throw ContractError("terminalsOf: result depends on path choice; uniqueness violated");
  auto [w, z] = wz;
  if (w == z) throw ContractError("terminalsOf: degenerate single terminal");
  // (w,z) must be a 2-vertex cut separating u from v.
  Graph rest(o.graph.n);
  for (const Edge& e : o.graph.edges)
    if (e.u != w && e.u != z && e.v != w && e.v != z) rest.addEdge(e.u, e.v);
  auto comp = componentIds(rest);
  if (u == w || u == z || v == w || v == z || comp[u] == comp[v])
    throw ContractError("terminalsOf: candidate pair fails the separation check");
  return wz;
}

bool brackets(const Orientation& o, std::pair<int, int> outer, std::pair<int, int> inner) {
  auto [w, z] = outer;
  auto [u, v] = inner;
  // A directed w-z path through both inner vertices exists iff they can be
  // chained by reachability in one of the two orders (concatenated directed
  // paths in a dag are simple).
  return (reaches(o, w, u) && reaches(o, u, v) && reaches(o, v, z)) ||
         (reaches(o, w, v) && reaches(o, v, u) && reaches(o, u, z));
}

// ------------------------------------------------------------------- paths ----

std::vector<VPath> allSimplePaths(const Graph& g, int u, int v, int guard) {
  g.checkVertex(u, "allSimplePaths");
  g.checkVertex(v, "allSimplePaths");
  Adjacency adj(g);
  std::vector<VPath> out;
  VPath cur;
  cur.verts.push_back(u);
  std::vector<char> onPath(g.n, 0);
  onPath[u] = 1;
  std::function<void(int)> go = [&](int x) {
    if (x == v) {
      if (static_cast<int>(out.size()) >= guard)
        throw ContractError("allSimplePaths: enumeration guard (" + std::to_string(guard) +
                            ") exceeded");
      out.push_back(cur);
      return;
    }
    std::vector<std::pair<int, int>> next;  // (vertex, edge), sorted
    for (int e : adj.inc[x]) next.emplace_back(g.other(e, x), e);
    std::sort(next.begin(), next.end());
    for (auto [w, e] : next) {
      if (onPath[w]) continue;
      onPath[w] = 1;
      cur.verts.push_back(w);
      cur.edges.push_back(e);
      go(w);
      cur.verts.pop_back();
      cur.edges.pop_back();
      onPath[w] = 0;
    }
  };
  go(u);
  return out;
}

namespace {

// Unit-vertex-capacity max flow on a split digraph, enough for two
// augmentations. Arcs are (from, to) over node ids; returns parent usage.
struct UnitFlow {
  int n;
  std::vector<std::vector<int>> to;
  std::vector<std::vector<int>> cap;

  explicit UnitFlow(int nodes) : n(nodes), to(nodes), cap(nodes) {}

  void arc(int a, int b, int c) {
    to[a].push_back(b);
    cap[a].push_back(c);
    to[b].push_back(a);
    cap[b].push_back(0);
  }

  int augment(int s, int t) {
    std::vector<int> prevNode(n, -1), prevArc(n, -1);
    std::deque<int> q{s};
    prevNode[s] = s;
    while (!q.empty() && prevNode[t] == -1) {
      int v = q.front();
      q.pop_front();
      for (size_t i = 0; i < to[v].size(); ++i)
        if (cap[v][i] > 0 && prevNode[to[v][i]] == -1) {
          prevNode[to[v][i]] = v;
          prevArc[to[v][i]] = static_cast<int>(i);
          q.push_back(to[v][i]);
        }
    }
    if (prevNode[t] == -1) return 0;
    for (int v = t; v != s; v = prevNode[v]) {
      int p = prevNode[v], i = prevArc[v];
      cap[p][i] -= 1;
      // find reverse arc
      for (size_t j = 0; j < to[v].size(); ++j)
        if (to[v][j] == p) {
          cap[v][j] += 1;
          break;
        }
    }
    return 1;
  }
};

VPath pathFromVertexSequence(const Graph& g, const std::vector<int>& verts) {
  VPath p;
  p.verts = verts;
  for (size_t i = 0; i + 1 < verts.size(); ++i) {
    int found = -1;
    for (size_t e = 0; e < g.edges.size(); ++e) {
      const Edge& ed = g.edges[e];
      if ((ed.u == verts[i] && ed.v == verts[i + 1]) ||
          (ed.v == verts[i] && ed.u == verts[i + 1])) {
        found = static_cast<int>(e);
        break;
      }
    }
    if (found == -1) throw ContractError("pathFromVertexSequence: consecutive pair not adjacent");
    p.edges.push_back(found);
  }
  return p;
}

}  // namespace

VPath pathThroughVertex(const Graph& g, int s, int t, int via) {
  g.checkVertex(s, "pathThroughVertex");
  g.checkVertex(t, "pathThroughVertex");
  g.checkVertex(via, "pathThroughVertex");
  if (s == t) throw ContractError("pathThroughVertex: endpoints must differ");
  if (!isBiconnected(g)) throw ContractError("pathThroughVertex: graph must be biconnected");
  if (via == s || via == t) {
    auto paths = allSimplePaths(g, s, t, kPathEnumerationGuard);
    return paths.front();
  }
  // Unit vertex capacities; two disjoint via->{s,t} paths exist by Menger.
  int base = 2 * g.n;
  UnitFlow f(base + 2);
  int super = base, sink = base + 1;
  for (int v = 0; v < g.n; ++v) f.arc(2 * v, 2 * v + 1, v == via ? 2 : 1);
  for (const Edge& e : g.edges) {
    f.arc(2 * e.u + 1, 2 * e.v, 1);
    f.arc(2 * e.v + 1, 2 * e.u, 1);
  }
  f.arc(super, 2 * via, 2);
  f.arc(2 * s + 1, sink, 1);
  f.arc(2 * t + 1, sink, 1);
  if (f.augment(super, sink) + f.augment(super, sink) != 2)
    throw ContractError("pathThroughVertex: disjoint paths missing; graph not biconnected?");
  std::vector<std::vector<char>> used(f.to.size());
  for (size_t i = 0; i < f.to.size(); ++i) used[i].assign(f.to[i].size(), 0);
  std::vector<int> leg1, leg2;
  // Each leg ends when it reaches s or t.
  auto trace = [&](std::vector<int>& out) {
    out.assign(1, via);
    int cur = 2 * via + 1;
    while (out.back() != s && out.back() != t) {
      bool advanced = false;
      for (size_t i = 0; i < f.to[cur].size(); ++i) {
        if (used[cur][i] || f.cap[cur][i] != 0) continue;
        int nxt = f.to[cur][i];
        if (nxt % 2 != 0 || nxt == 2 * via) continue;
        used[cur][i] = 1;
        out.push_back(nxt / 2);
        cur = nxt + 1;
        advanced = true;
        break;
      }
      if (!advanced) throw ContractError("pathThroughVertex: trace stuck");
    }
  };
  trace(leg1);
  trace(leg2);
  if (leg1.back() == t) std::swap(leg1, leg2);
  std::reverse(leg1.begin(), leg1.end());  // now s .. via
  leg1.insert(leg1.end(), leg2.begin() + 1, leg2.end());
  return pathFromVertexSequence(g, leg1);
}

VPath pathThroughEdge(const Graph& g, int s, int t, int edgeIdx) {
  g.checkEdge(edgeIdx, "pathThroughEdge");
  if (s == t) throw ContractError("pathThroughEdge: endpoints must differ");
  if (!isBiconnected(g)) throw ContractError("pathThroughEdge: graph must be biconnected");
  int x = g.edges[edgeIdx].u, y = g.edges[edgeIdx].v;
  // Degenerate overlaps reduce to one avoiding path.
  auto avoidPath = [&](int from, int to, int avoid) {
    Graph h(g.n);
    std::vector<int> mapBack;
    for (size_t e = 0; e < g.edges.size(); ++e) {
      if (static_cast<int>(e) == edgeIdx) continue;
      if (g.edges[e].u == avoid || g.edges[e].v == avoid) continue;
      h.addEdge(g.edges[e].u, g.edges[e].v, static_cast<int>(e));
    }
    auto paths = allSimplePaths(h, from, to, kPathEnumerationGuard);
    if (paths.empty()) throw ContractError("pathThroughEdge: no avoiding path");
    VPath p = paths.front();
    for (int& e : p.edges) e = h.edges[e].id;  // back to g's edge indices
    return p;
  };
  auto prepend = [&](int v, VPath tail) {
    VPath p;
    p.verts.push_back(v);
    p.verts.insert(p.verts.end(), tail.verts.begin(), tail.verts.end());
    p.edges.push_back(edgeIdx);
    p.edges.insert(p.edges.end(), tail.edges.begin(), tail.edges.end());
    return p;
  };
  if ((s == x && t == y) || (s == y && t == x)) {
    VPath p;
    p.verts = {s, t};
    p.edges = {edgeIdx};
    return p;
  }
  if (s == x) return prepend(s, avoidPath(y, t, s));
  if (s == y) return prepend(s, avoidPath(x, t, s));
  if (t == x) {
    VPath p = prepend(t, avoidPath(y, s, t));
    std::reverse(p.verts.begin(), p.verts.end());
    std::reverse(p.edges.begin(), p.edges.end());
    return p;
  }
  if (t == y) {
    VPath p = prepend(t, avoidPath(x, s, t));
    std::reverse(p.verts.begin(), p.verts.end());
    std::reverse(p.edges.begin(), p.edges.end());
    return p;
  }
  // General position: two vertex-disjoint paths pairing {s,t} with {x,y}.
  int base = 2 * g.n;
  UnitFlow f(base + 2);
  int super = base, sink = base + 1;
  for (int v = 0; v < g.n; ++v) f.arc(2 * v, 2 * v + 1, 1);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    if (static_cast<int>(e) == edgeIdx) continue;
    f.arc(2 * g.edges[e].u + 1, 2 * g.edges[e].v, 1);
    f.arc(2 * g.edges[e].v + 1, 2 * g.edges[e].u, 1);
  }
  f.arc(super, 2 * x, 1);
  f.arc(super, 2 * y, 1);
  f.arc(2 * s + 1, sink, 1);
  f.arc(2 * t + 1, sink, 1);
  if (f.augment(super, sink) + f.augment(super, sink) != 2)
    throw ContractError("pathThroughEdge: disjoint path pair missing");
  std::vector<std::vector<char>> used(f.to.size());
  for (size_t i = 0; i < f.to.size(); ++i) used[i].assign(f.to[i].size(), 0);
  auto trace = [&](int from, std::vector<int>& out) {
    out.assign(1, from);
    int cur = 2 * from + 1;
    while (out.back() != s && out.back() != t) {
      bool advanced = false;
      for (size_t i = 0; i < f.to[cur].size(); ++i) {
        if (used[cur][i] || f.cap[cur][i] != 0) continue;
        int nxt = f.to[cur][i];
        if (nxt % 2 != 0) continue;
        used[cur][i] = 1;
        out.push_back(nxt / 2);
        cur = nxt + 1;
        advanced = true;
        break;
      }
      if (!advanced) throw ContractError("pathThroughEdge: trace stuck");
    }
  };
  std::vector<int> fromX, fromY;
  trace(x, fromX);
  trace(y, fromY);
  if (fromX.back() == t) std::swap(fromX, fromY);  // fromX ends at s
  std::reverse(fromX.begin(), fromX.end());        // s .. x
  fromX.insert(fromX.end(), fromY.begin(), fromY.end());  // + y .. t
  VPath p = pathFromVertexSequence(g, fromX);
  // Force the designated edge for the x-y hop (parallel edges are distinct).
  for (size_t i = 0; i + 1 < p.verts.size(); ++i) {
    int a = p.verts[i], b = p.verts[i + 1];
    if ((a == x && b == y) || (a == y && b == x)) {
      p.edges[i] = edgeIdx;
      break;
    }
  }
  return p;
}

}  // namespace mcf
