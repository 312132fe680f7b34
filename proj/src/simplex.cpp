#include <algorithm>
#include <cstdint>

#include "mcf/lp.hpp"

// Revised simplex over exact rationals: sparse columns, dense basis inverse.
// Pricing starts out greedy (most negative reduced cost) and switches to
// Bland's rule for good after a streak of degenerate pivots, which keeps the
// usual speed while inheriting Bland's termination guarantee.

namespace mcf {

namespace {

constexpr int kDegenerateStreakLimit = 40;
constexpr long kPivotGuard = 1000000;

struct StdForm {
  int m = 0;        // rows
  int nUser = 0;    // user variables (prefix of the column list)
  int nTotal = 0;   // user + slack/surplus + artificial
  std::vector<std::vector<std::pair<int, Rat>>> col;  // sparse, by column
  std::vector<Rat> b;                                 // all >= 0
  std::vector<Rat> phase2Cost;                        // by column
  std::vector<char> artificial;                       // by column
  std::vector<int> rowSign;                           // user row scaling
  std::vector<int> startBasis;                        // by row
};

// Normalize to min cᵀx, Ax = b, x >= 0, b >= 0 with a ready starting basis:
// slack for <= rows, artificial for = and >= rows.
StdForm standardize(const RationalLP& lp) {
  StdForm sf;
  sf.m = int(lp.rows.size());
  sf.nUser = int(lp.objective.size());
  sf.col.resize(sf.nUser);
  sf.phase2Cost.resize(sf.nUser);
  sf.artificial.assign(sf.nUser, 0);
  for (int j = 0; j < sf.nUser; ++j)
    sf.phase2Cost[j] = lp.maximize ? -lp.objective[j] : lp.objective[j];

  sf.b.resize(sf.m);
  sf.rowSign.resize(sf.m);
  sf.startBasis.assign(sf.m, -1);
  std::vector<RowSense> sense(sf.m);
  for (int i = 0; i < sf.m; ++i) {
    const LpRow& row = lp.rows[i];
    int s = (row.rhs < 0) ? -1 : 1;
    sf.rowSign[i] = s;
    sf.b[i] = s < 0 ? Rat(-row.rhs) : row.rhs;
    sense[i] = row.sense;
    if (s < 0) {
      if (row.sense == RowSense::LE) sense[i] = RowSense::GE;
      if (row.sense == RowSense::GE) sense[i] = RowSense::LE;
    }
    for (const auto& [var, coeff] : row.terms) {
      if (var < 0 || var >= sf.nUser)
        throw ContractError("solveLp: row references unknown variable " + std::to_string(var));
      Rat c = s < 0 ? Rat(-coeff) : coeff;
      if (c != 0) sf.col[var].emplace_back(i, std::move(c));
    }
  }
  // Merge duplicate mentions of one variable within a row.
  for (auto& column : sf.col) {
    std::sort(column.begin(), column.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<std::pair<int, Rat>> merged;
    for (auto& [row, c] : column) {
      if (!merged.empty() && merged.back().first == row)
        merged.back().second += c;
      else
        merged.emplace_back(row, std::move(c));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& t) { return t.second == 0; }),
                 merged.end());
    column = std::move(merged);
  }

  auto appendColumn = [&](int row, const Rat& coeff, bool isArt) {
    sf.col.push_back({{row, coeff}});
    sf.phase2Cost.push_back(Rat(0));
    sf.artificial.push_back(isArt ? 1 : 0);
    return int(sf.col.size()) - 1;
  };
  for (int i = 0; i < sf.m; ++i) {
    if (sense[i] == RowSense::LE) {
      sf.startBasis[i] = appendColumn(i, Rat(1), false);
    } else {
      if (sense[i] == RowSense::GE) appendColumn(i, Rat(-1), false);
      sf.startBasis[i] = appendColumn(i, Rat(1), true);
    }
  }
  sf.nTotal = int(sf.col.size());
  return sf;
}

class Simplex {
 public:
  explicit Simplex(const StdForm& sf) : sf_(sf) {
    basis_ = sf.startBasis;
    inBasis_.assign(sf.nTotal, 0);
    for (int c : basis_) inBasis_[c] = 1;
    xB_ = sf.b;
    binv_.assign(sf.m, std::vector<Rat>(sf.m, Rat(0)));
    for (int i = 0; i < sf.m; ++i) binv_[i][i] = 1;
  }

  // Returns false if phase 1 ends with positive infeasibility.
  bool phase1() {
    std::vector<Rat> cost(sf_.nTotal, Rat(0));
    for (int j = 0; j < sf_.nTotal; ++j)
      if (sf_.artificial[j]) cost[j] = 1;
    iterate(cost, /*barArtificials=*/false);
    Rat infeas = 0;
    for (int i = 0; i < sf_.m; ++i)
      if (sf_.artificial[basis_[i]]) infeas += xB_[i];
    return infeas == 0;
  }

  // Returns false on unboundedness.
  bool phase2() { return iterate(sf_.phase2Cost, /*barArtificials=*/true); }

  std::vector<Rat> primal() const {
    std::vector<Rat> x(sf_.nUser, Rat(0));
    for (int i = 0; i < sf_.m; ++i)
      if (basis_[i] < sf_.nUser) x[basis_[i]] = xB_[i];
    return x;
  }

  // y = c_B B^{-1}, the internal duals of the minimization form.
  std::vector<Rat> duals() const {
    std::vector<Rat> y(sf_.m, Rat(0));
    for (int k = 0; k < sf_.m; ++k) {
      const Rat& ck = sf_.phase2Cost[basis_[k]];
      if (ck == 0) continue;
      for (int j = 0; j < sf_.m; ++j) y[j] += ck * binv_[k][j];
    }
    return y;
  }

 private:
  bool iterate(const std::vector<Rat>& cost, bool barArtificials) {
    for (;;) {
      if (++pivots_ > kPivotGuard) throw ContractError("solveLp: pivot guard exceeded");
      std::vector<Rat> y(sf_.m, Rat(0));
      for (int k = 0; k < sf_.m; ++k) {
        const Rat& ck = cost[basis_[k]];
        if (ck == 0) continue;
        for (int j = 0; j < sf_.m; ++j) y[j] += ck * binv_[k][j];
      }
      int entering = -1;
      Rat bestRc;
      for (int j = 0; j < sf_.nTotal; ++j) {
        if (inBasis_[j]) continue;
        if (barArtificials && sf_.artificial[j]) continue;
        Rat rc = cost[j];
        for (const auto& [row, a] : sf_.col[j]) rc -= y[row] * a;
        if (rc < 0) {
          if (bland_) {
            entering = j;  // first improving column wins
            break;
          }
          if (entering == -1 || rc < bestRc) {
            entering = j;
            bestRc = rc;
          }
        }
      }
      if (entering == -1) return true;  // optimal for this phase

      std::vector<Rat> dir(sf_.m, Rat(0));
      for (const auto& [row, a] : sf_.col[entering])
        for (int k = 0; k < sf_.m; ++k)
          if (binv_[k][row] != 0) dir[k] += binv_[k][row] * a;

      // Ratio test; basic artificials also leave at ratio zero on a negative
      // direction entry so they can never climb back above zero.
      int leave = -1;
      Rat theta;
      for (int k = 0; k < sf_.m; ++k) {
        bool candidate = dir[k] > 0;
        if (!candidate && sf_.artificial[basis_[k]] && dir[k] != 0 && xB_[k] == 0)
          candidate = true;
        if (!candidate) continue;
        Rat ratio = dir[k] > 0 ? Rat(xB_[k] / dir[k]) : Rat(0);
        if (leave == -1 || ratio < theta ||
            (ratio == theta && basis_[k] < basis_[leave])) {
          leave = k;
          theta = ratio;
        }
      }
      if (leave == -1) return false;  // unbounded direction

      if (theta == 0) {
        if (++degenerateStreak_ >= kDegenerateStreakLimit) bland_ = true;
      } else {
        degenerateStreak_ = 0;
      }

      const Rat pivot = dir[leave];
      for (int j = 0; j < sf_.m; ++j) binv_[leave][j] /= pivot;
      xB_[leave] /= pivot;
      for (int k = 0; k < sf_.m; ++k) {
        if (k == leave || dir[k] == 0) continue;
        for (int j = 0; j < sf_.m; ++j)
          if (binv_[leave][j] != 0) binv_[k][j] -= dir[k] * binv_[leave][j];
        xB_[k] -= dir[k] * xB_[leave];
      }
      inBasis_[basis_[leave]] = 0;
      inBasis_[entering] = 1;
      basis_[leave] = entering;
    }
  }

  const StdForm& sf_;
  std::vector<int> basis_;
  std::vector<char> inBasis_;
  std::vector<Rat> xB_;
  std::vector<std::vector<Rat>> binv_;
  bool bland_ = false;
  int degenerateStreak_ = 0;
  long pivots_ = 0;
};

// Exact certificate check; any failure here is a solver bug surfaced loudly.
void certify(const RationalLP& lp, const LpResult& res) {
  Rat primalObj = 0;
  for (size_t j = 0; j < lp.objective.size(); ++j) {
    if (res.x[j] < 0) throw ContractError("solveLp: negative variable in certificate");
    primalObj += lp.objective[j] * res.x[j];
  }
  if (primalObj != res.objective)
    throw ContractError("solveLp: objective does not match primal point");

  Rat dualObj = 0;
  for (size_t i = 0; i < lp.rows.size(); ++i) {
    const LpRow& row = lp.rows[i];
    Rat lhs = 0;
    for (const auto& [var, coeff] : row.terms) lhs += coeff * res.x[var];
    bool tightOk = lhs == row.rhs;
    if (row.sense == RowSense::LE && !(lhs <= row.rhs))
      throw ContractError("solveLp: primal row violated (<=)");
    if (row.sense == RowSense::GE && !(lhs >= row.rhs))
      throw ContractError("solveLp: primal row violated (>=)");
    if (row.sense == RowSense::EQ && !tightOk)
      throw ContractError("solveLp: primal row violated (=)");
    // Dual sign and complementary slackness per row.
    const Rat& yi = res.dual[i];
    int sgn = lp.maximize ? -1 : 1;  // LE duals: <= 0 for min, >= 0 for max
    if (row.sense == RowSense::LE && sgn * yi > 0)
      throw ContractError("solveLp: dual sign violated (<=)");
    if (row.sense == RowSense::GE && sgn * yi < 0)
      throw ContractError("solveLp: dual sign violated (>=)");
    if (!tightOk && yi != 0)
      throw ContractError("solveLp: complementary slackness violated on a row");
    dualObj += yi * row.rhs;
  }
  if (dualObj != res.objective)
    throw ContractError("solveLp: strong duality check failed");

  // Reduced costs: optimal sign everywhere, zero on positive variables.
  std::vector<Rat> rc(lp.objective.size());
  for (size_t j = 0; j < lp.objective.size(); ++j) rc[j] = lp.objective[j];
  for (size_t i = 0; i < lp.rows.size(); ++i)
    for (const auto& [var, coeff] : lp.rows[i].terms) rc[var] -= res.dual[i] * coeff;
  for (size_t j = 0; j < lp.objective.size(); ++j) {
    if (!lp.maximize && rc[j] < 0)
      throw ContractError("solveLp: negative reduced cost at optimum");
    if (lp.maximize && rc[j] > 0)
      throw ContractError("solveLp: positive reduced cost at optimum");
    if (res.x[j] > 0 && rc[j] != 0)
      throw ContractError("solveLp: complementary slackness violated on a column");
  }
}

}  // namespace

LpResult solveLp(const RationalLP& lp) {
  for (const LpRow& row : lp.rows)
    for (const auto& term : row.terms)
      if (term.first < 0 || term.first >= int(lp.objective.size()))
        throw ContractError("solveLp: malformed row");

  LpResult res;
  if (lp.rows.empty()) {
    // Unconstrained nonnegative variables: either 0 is optimal or the
    // objective is unbounded in the improving direction.
    for (const Rat& c : lp.objective)
      if ((lp.maximize && c > 0) || (!lp.maximize && c < 0)) {
        res.status = LpResult::Unbounded;
        return res;
      }
    res.status = LpResult::Optimal;
    res.objective = 0;
    res.x.assign(lp.objective.size(), Rat(0));
    return res;
  }

  StdForm sf = standardize(lp);
  Simplex simplex(sf);
  if (!simplex.phase1()) {
    res.status = LpResult::Infeasible;
    return res;
  }
  if (!simplex.phase2()) {
    res.status = LpResult::Unbounded;
    return res;
  }

  res.status = LpResult::Optimal;
  res.x = simplex.primal();
  res.objective = 0;
  for (size_t j = 0; j < res.x.size(); ++j) res.objective += lp.objective[j] * res.x[j];

  std::vector<Rat> y = simplex.duals();
  res.dual.resize(sf.m);
  for (int i = 0; i < sf.m; ++i) {
    res.dual[i] = Rat(sf.rowSign[i]) * y[i];
    if (lp.maximize) res.dual[i] = -res.dual[i];
  }
  certify(lp, res);
  return res;
}

}  // namespace mcf
