#pragma once

// Dense two-phase tableau simplex over exact rationals, plus rank helpers.
//
// Free variables are split into nonnegative pairs. Bland's rule is the
// default; the largest-coefficient rule falls back to Bland after a run of
// degenerate pivots.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "latdiam/errors.hpp"
#include "latdiam/rational.hpp"

namespace latdiam {

using RationalVector = std::vector<Rational>;

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class VarSign { Free, NonNegative };
enum class Sense { Minimize, Maximize };
enum class PivotRule { Bland, LargestCoefficient };
enum class LpStatus { Optimal, Feasible, Infeasible, Unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Feasible: return "feasible";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

struct Constraint {
  RationalVector coefficients;
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

struct Objective {
  RationalVector coefficients;
  Sense sense = Sense::Minimize;
};

struct LinProgram {
  std::size_t num_vars = 0;
  std::vector<Constraint> constraints;
  std::vector<VarSign> var_sign;  // empty means all nonnegative
  std::optional<Objective> objective;

  LinProgram() = default;
  explicit LinProgram(std::size_t vars, VarSign sign = VarSign::NonNegative)
      : num_vars(vars), var_sign(vars, sign) {}

  void add(RationalVector row, Relation rel, Rational rhs) {
    constraints.push_back({std::move(row), rel, std::move(rhs)});
  }
  void minimize(RationalVector c) { objective = Objective{std::move(c), Sense::Minimize}; }
  void maximize(RationalVector c) { objective = Objective{std::move(c), Sense::Maximize}; }

  [[nodiscard]] VarSign sign_of(std::size_t j) const {
    return var_sign.empty() ? VarSign::NonNegative : var_sign[j];
  }
};

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::optional<RationalVector> point;
  std::optional<Rational> value;

  [[nodiscard]] bool has_point() const {
    return status == LpStatus::Optimal || status == LpStatus::Feasible;
  }
};

struct LpOptions {
  PivotRule rule = PivotRule::Bland;
  // Consecutive degenerate pivots tolerated under LargestCoefficient before
  // switching to Bland for the rest of the phase.
  std::size_t degenerate_limit = 50;
};

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) acc += a[i] * b[i];
  }
  return acc;
}

/// True iff `point` satisfies every constraint and sign restriction exactly.
inline bool satisfies(const LinProgram& p, std::span<const Rational> point) {
  if (point.size() != p.num_vars) return false;
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    if (p.sign_of(j) == VarSign::NonNegative && point[j].sign() < 0) return false;
  }
  for (const auto& c : p.constraints) {
    auto lhs = dot(c.coefficients, point);
    switch (c.relation) {
      case Relation::LessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : a_(rows, RationalVector(cols)), b_(rows), basis_(rows), allowed_(cols, true) {}

  RationalVector& row(std::size_t i) { return a_[i]; }
  Rational& rhs(std::size_t i) { return b_[i]; }
  std::size_t& basic(std::size_t i) { return basis_[i]; }
  [[nodiscard]] std::size_t rows() const { return a_.size(); }
  [[nodiscard]] std::size_t cols() const { return allowed_.size(); }
  void forbid(std::size_t col) { allowed_[col] = false; }

  void set_costs(const RationalVector& cost) {
    reduced_ = cost;
    for (std::size_t i = 0; i < rows(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j < cols(); ++j) {
        if (!a_[i][j].is_zero()) reduced_[j] -= cb * a_[i][j];
      }
    }
  }

  enum class Result { Optimal, Unbounded };

  Result optimize(const LpOptions& opt) {
    bool bland = opt.rule == PivotRule::Bland;
    std::size_t degenerate_run = 0;
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < cols(); ++j) {
        if (!allowed_[j] || reduced_[j].sign() >= 0) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (!enter || reduced_[j] < reduced_[*enter]) enter = j;
      }
      if (!enter) return Result::Optimal;
      std::size_t s = *enter;

      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (a_[i][s].sign() <= 0) continue;
        Rational ratio = b_[i] / a_[i][s];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return Result::Unbounded;

      if (best.is_zero()) {
        if (!bland && ++degenerate_run > opt.degenerate_limit) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(*leave, s);
    }
  }

  void pivot(std::size_t r, std::size_t s) {
    auto& pr = a_[r];
    Rational inv = Rational(1) / pr[s];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < cols(); ++j) {
      if (pr[j].is_zero()) continue;
      pr[j] *= inv;
      nz.push_back(j);
    }
    b_[r] *= inv;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || a_[i][s].is_zero()) continue;
      Rational f = a_[i][s];
      for (auto j : nz) a_[i][j] -= f * pr[j];
      if (!b_[r].is_zero()) b_[i] -= f * b_[r];
    }
    if (!reduced_.empty() && !reduced_[s].is_zero()) {
      Rational f = reduced_[s];
      for (auto j : nz) reduced_[j] -= f * pr[j];
    }
    basis_[r] = s;
  }

  void erase_row(std::size_t i) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(i));
    b_.erase(b_.begin() + static_cast<std::ptrdiff_t>(i));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
  }

  [[nodiscard]] RationalVector solution() const {
    RationalVector x(cols());
    for (std::size_t i = 0; i < rows(); ++i) x[basis_[i]] = b_[i];
    return x;
  }

 private:
  std::vector<RationalVector> a_;
  RationalVector b_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
  RationalVector reduced_;
};

}  // namespace detail

/// Solves `p` exactly. Without an objective the outcome is `Feasible` (with a
/// witness point) or `Infeasible`.
inline LpOutcome lp_solve(const LinProgram& p, const LpOptions& opt = {}) {
  const std::size_t n = p.num_vars;
  if (!p.var_sign.empty() && p.var_sign.size() != n) {
    throw InputError("var_sign length " + std::to_string(p.var_sign.size()) +
                     " does not match num_vars " + std::to_string(n));
  }
  for (std::size_t r = 0; r < p.constraints.size(); ++r) {
    if (p.constraints[r].coefficients.size() != n) {
      throw InputError("constraint " + std::to_string(r) + " has " +
                       std::to_string(p.constraints[r].coefficients.size()) +
                       " coefficients, expected " + std::to_string(n));
    }
  }
  if (p.objective && p.objective->coefficients.size() != n) {
    throw InputError("objective length does not match num_vars");
  }

  // Column layout: structural (free vars split), then slack/surplus, then
  // artificials.
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = cols++;
    if (p.sign_of(j) == VarSign::Free) neg_col[j] = cols++;
  }
  const std::size_t structural = cols;

  struct RowPlan {
    bool negate;
    Relation rel;
  };
  std::vector<RowPlan> plan;
  std::size_t slacks = 0, artificials = 0;
  for (const auto& c : p.constraints) {
    bool negate = c.rhs.sign() < 0;
    Relation rel = c.relation;
    if (negate && rel != Relation::Equal) {
      rel = rel == Relation::LessEqual ? Relation::GreaterEqual : Relation::LessEqual;
    }
    plan.push_back({negate, rel});
    if (rel != Relation::Equal) ++slacks;
    if (rel != Relation::LessEqual) ++artificials;
  }
  const std::size_t m = p.constraints.size();
  const std::size_t slack_base = structural;
  const std::size_t art_base = structural + slacks;
  cols = art_base + artificials;

  detail::Tableau t(m, cols);
  std::size_t next_slack = slack_base, next_art = art_base;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = p.constraints[i];
    auto& row = t.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = c.coefficients[j];
      if (v.is_zero()) continue;
      Rational coef = plan[i].negate ? -v : v;
      row[pos_col[j]] = coef;
      if (neg_col[j] != SIZE_MAX) row[neg_col[j]] = -coef;
    }
    t.rhs(i) = plan[i].negate ? -c.rhs : c.rhs;
    switch (plan[i].rel) {
      case Relation::LessEqual:
        row[next_slack] = Rational(1);
        t.basic(i) = next_slack++;
        break;
      case Relation::GreaterEqual:
        row[next_slack++] = Rational(-1);
        row[next_art] = Rational(1);
        t.basic(i) = next_art++;
        break;
      case Relation::Equal:
        row[next_art] = Rational(1);
        t.basic(i) = next_art++;
        break;
    }
  }

  // Phase 1: minimize the sum of artificials.
  if (artificials > 0) {
    RationalVector cost(cols);
    for (std::size_t j = art_base; j < cols; ++j) cost[j] = Rational(1);
    t.set_costs(cost);
    t.optimize(opt);
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (t.basic(i) >= art_base && t.rhs(i).sign() != 0) return {LpStatus::Infeasible, {}, {}};
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.rows();) {
      if (t.basic(i) < art_base) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < art_base; ++j) {
        if (!t.row(i)[j].is_zero()) {
          col = j;
          break;
        }
      }
      if (col) {
        t.pivot(i, *col);
        ++i;
      } else {
        t.erase_row(i);
      }
    }
    for (std::size_t j = art_base; j < cols; ++j) t.forbid(j);
  }

  auto extract = [&](const RationalVector& x) {
    RationalVector point(n);
    for (std::size_t j = 0; j < n; ++j) {
      point[j] = x[pos_col[j]];
      if (neg_col[j] != SIZE_MAX) point[j] -= x[neg_col[j]];
    }
    return point;
  };

  if (!p.objective) {
    return {LpStatus::Feasible, extract(t.solution()), {}};
  }

  RationalVector cost(cols);
  const auto& obj = *p.objective;
  for (std::size_t j = 0; j < n; ++j) {
    Rational c = obj.sense == Sense::Maximize ? -obj.coefficients[j] : obj.coefficients[j];
    cost[pos_col[j]] = c;
    if (neg_col[j] != SIZE_MAX) cost[neg_col[j]] = -c;
  }
  t.set_costs(cost);
  if (t.optimize(opt) == detail::Tableau::Result::Unbounded) {
    return {LpStatus::Unbounded, {}, {}};
  }
  auto point = extract(t.solution());
  auto value = dot(obj.coefficients, point);
  return {LpStatus::Optimal, std::move(point), std::move(value)};
}

/// Row rank of a rational matrix by Gaussian elimination.
inline std::size_t rank(std::vector<RationalVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c].is_zero()) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
      }
    }
    ++r;
  }
  return r;
}

/// Dimension of the affine hull of a nonempty integer point list.
template <class PointList>
std::size_t affine_rank(const PointList& points) {
  if (points.empty()) throw InputError("affine_rank of an empty point list");
  const auto& base = points.front();
  std::vector<RationalVector> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].size() != base.size()) throw InputError("points of mixed dimension");
    RationalVector row(base.size());
    for (std::size_t j = 0; j < base.size(); ++j) {
      row[j] = Rational(static_cast<std::int64_t>(points[i][j] - base[j]));
    }
    diffs.push_back(std::move(row));
  }
  return rank(std::move(diffs));
}

}  // namespace latdiam
