// Copyright 2026 The indiv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "indiv/lp.hpp"

#include <sstream>

namespace indiv {

void LinearSystem::add(Constraint c) {
  if (c.coeffs.size() != vars_)
    throw Error(ErrorCode::kDimensionMismatch,
                "constraint has " + std::to_string(c.coeffs.size()) +
                    " coefficients, system has " + std::to_string(vars_) +
                    " variables");
  rows_.push_back(std::move(c));
}

void LinearSystem::add(std::vector<Rational> coeffs, Relation rel, Rational rhs,
                       std::string label) {
  add(Constraint{std::move(coeffs), rel, std::move(rhs), std::move(label)});
}

std::string format_constraint(const Constraint& c, std::string_view var) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
    const Rational& a = c.coeffs[i];
    if (a == 0) continue;
    Rational mag = abs(a);
    if (first) {
      if (a < 0) os << '-';
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    if (mag != 1) os << mag << '*';
    os << var << (i + 1);
    first = false;
  }
  if (first) os << '0';
  switch (c.relation) {
    case Relation::kLessEqual: os << " <= "; break;
    case Relation::kLess: os << " < "; break;
    case Relation::kEqual: os << " = "; break;
  }
  os << c.rhs;
  return os.str();
}

bool verify_certificate(const LinearSystem& system,
                        const FarkasCertificate& cert) {
  if (cert.multipliers.size() != system.size()) return false;
  std::vector<Rational> combo(system.variables(), Rational(0));
  Rational rhs = 0;
  bool strict_weight = false;
  for (std::size_t r = 0; r < system.size(); ++r) {
    const Rational& lam = cert.multipliers[r];
    if (lam == 0) continue;
    const Constraint& c = system[r];
    if (c.relation != Relation::kEqual && lam < 0) return false;
    if (c.relation == Relation::kLess) strict_weight = true;
    for (std::size_t i = 0; i < combo.size(); ++i) combo[i] += lam * c.coeffs[i];
    rhs += lam * c.rhs;
  }
  for (const auto& v : combo)
    if (v != 0) return false;
  return rhs < 0 || (rhs == 0 && strict_weight);
}

bool satisfies(const LinearSystem& system, std::span<const Rational> point) {
  if (point.size() != system.variables()) return false;
  for (const auto& c : system.constraints()) {
    Rational lhs = dot(c.coeffs, point);
    switch (c.relation) {
      case Relation::kLessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::kLess:
        if (lhs >= c.rhs) return false;
        break;
      case Relation::kEqual:
        if (lhs != c.rhs) return false;
        break;
    }
  }
  return true;
}

namespace {

// Two-phase simplex with Bland's rule for
//   min cost . v  s.t.  M v = rhs,  v >= 0
// where M is given column-wise. The systems we solve are the duals of
// tall problems over few free variables, so M has few rows.
class StandardForm {
 public:
  enum class Status { kOptimal, kInfeasible, kUnbounded };

  StandardForm(std::size_t rows, std::vector<std::vector<Rational>> columns,
               std::vector<Rational> cost, std::vector<Rational> rhs)
      : m_(rows), n_(columns.size()), cost_(std::move(cost)) {
    width_ = n_ + m_;
    t_.assign(m_, std::vector<Rational>(width_ + 1, Rational(0)));
    sign_.assign(m_, 1);
    for (std::size_t i = 0; i < m_; ++i) {
      if (rhs[i] < 0) sign_[i] = -1;
      for (std::size_t j = 0; j < n_; ++j)
        if (columns[j][i] != 0)
          t_[i][j] = sign_[i] > 0 ? columns[j][i] : Rational(-columns[j][i]);
      t_[i][n_ + i] = 1;
      t_[i][width_] = sign_[i] > 0 ? rhs[i] : Rational(-rhs[i]);
    }
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  Status solve() {
    // Phase 1: minimize the sum of artificials.
    z_.assign(width_ + 1, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j)
        if (t_[i][j] != 0) z_[j] -= t_[i][j];
      z_[width_] -= t_[i][width_];
    }
    iterate();
    if (z_[width_] != 0) return Status::kInfeasible;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (t_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
    }
    // Phase 2.
    z_.assign(width_ + 1, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) z_[j] = cost_[j];
    for (std::size_t i = 0; i < m_; ++i) {
      std::size_t b = basis_[i];
      if (b >= n_ || cost_[b] == 0) continue;
      for (std::size_t j = 0; j <= width_; ++j)
        if (t_[i][j] != 0) z_[j] -= cost_[b] * t_[i][j];
    }
    auto ray_col = iterate();
    if (ray_col) {
      ray_.assign(n_, Rational(0));
      ray_[*ray_col] = 1;
      for (std::size_t i = 0; i < m_; ++i)
        if (basis_[i] < n_) ray_[basis_[i]] = -t_[i][*ray_col];
      return Status::kUnbounded;
    }
    return Status::kOptimal;
  }

  Rational value() const { return -z_[width_]; }

  std::vector<Rational> primal() const {
    std::vector<Rational> v(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) v[basis_[i]] = t_[i][width_];
    return v;
  }

  // Simplex multipliers of the equality rows (cost_B B^-1).
  std::vector<Rational> duals() const {
    std::vector<Rational> y(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      y[i] = -z_[n_ + i];
      if (sign_[i] < 0) y[i] = -y[i];
    }
    return y;
  }

  const std::vector<Rational>& ray() const { return ray_; }

 private:
  // Runs Bland pivots until optimal. Returns the entering column when the
  // objective is unbounded below along it.
  std::optional<std::size_t> iterate() {
    while (true) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (z_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == n_) return std::nullopt;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][width_] / t_[i][enter];
        if (leave == m_ || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return enter;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / t_[r][c];
    for (auto& v : t_[r])
      if (v != 0) v *= inv;
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[c] == 0) return;
      Rational f = row[c];
      for (std::size_t j = 0; j <= width_; ++j)
        if (t_[r][j] != 0) row[j] -= f * t_[r][j];
    };
    for (std::size_t i = 0; i < m_; ++i)
      if (i != r) eliminate(t_[i]);
    eliminate(z_);
    basis_[r] = c;
  }

  std::size_t m_, n_, width_;
  std::vector<Rational> cost_;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> z_;
  std::vector<int> sign_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> ray_;
};

// Primal problem: max c . x over rows (a, b, kind), x free. Solved through
// its dual min b . y, sum y_r a_r = c, y_r >= 0 on inequality rows.
struct DualOutcome {
  StandardForm::Status status;
  std::vector<Rational> x;            // primal optimum
  Rational value;
  std::vector<Rational> multipliers;  // per row: dual optimum or dual ray
};

DualOutcome solve_via_dual(std::size_t vars,
                           const std::vector<const Constraint*>& rows,
                           std::span<const Rational> objective) {
  std::vector<std::vector<Rational>> cols;
  std::vector<Rational> cost;
  std::vector<std::pair<std::size_t, int>> owner;  // (row, sign)
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Constraint& c = *rows[r];
    cols.push_back(c.coeffs);
    cost.push_back(c.rhs);
    owner.emplace_back(r, 1);
    if (c.relation == Relation::kEqual) {
      std::vector<Rational> neg(vars);
      for (std::size_t i = 0; i < vars; ++i) neg[i] = -c.coeffs[i];
      cols.push_back(std::move(neg));
      cost.push_back(-c.rhs);
      owner.emplace_back(r, -1);
    }
  }
  std::vector<Rational> rhs(objective.begin(), objective.end());
  StandardForm sf(vars, std::move(cols), std::move(cost), std::move(rhs));
  DualOutcome out;
  out.status = sf.solve();
  out.multipliers.assign(rows.size(), Rational(0));
  auto scatter = [&](const std::vector<Rational>& v) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] == 0) continue;
      auto [r, s] = owner[k];
      out.multipliers[r] += s > 0 ? v[k] : Rational(-v[k]);
    }
  };
  if (out.status == StandardForm::Status::kOptimal) {
    out.x = sf.duals();
    out.value = sf.value();
    scatter(sf.primal());
  } else if (out.status == StandardForm::Status::kUnbounded) {
    scatter(sf.ray());
  }
  return out;
}

std::vector<const Constraint*> row_pointers(const LinearSystem& s) {
  std::vector<const Constraint*> rows;
  rows.reserve(s.size());
  for (const auto& c : s.constraints()) rows.push_back(&c);
  return rows;
}

FarkasCertificate normalized_ray(const LinearSystem& system,
                                 std::vector<Rational> lam) {
  lam.resize(system.size());
  Rational rhs = 0;
  for (std::size_t r = 0; r < system.size(); ++r) rhs += lam[r] * system[r].rhs;
  if (rhs < 0)
    for (auto& v : lam) v /= -rhs;
  return {std::move(lam)};
}

// Extends the system by a slack variable e appended after the original ones.
// Rows selected by `tighten` become a.x + e <= b; a cap e <= 1 is added last.
template <typename Pred>
std::vector<Constraint> with_slack(const LinearSystem& s, Pred tighten) {
  std::vector<Constraint> rows;
  rows.reserve(s.size() + 1);
  for (const auto& c : s.constraints()) {
    Constraint e = c;
    e.coeffs.push_back(Rational(tighten(c) ? 1 : 0));
    if (e.relation == Relation::kLess) e.relation = Relation::kLessEqual;
    rows.push_back(std::move(e));
  }
  Constraint cap;
  cap.coeffs.assign(s.variables() + 1, Rational(0));
  cap.coeffs.back() = 1;
  cap.rhs = 1;
  rows.push_back(std::move(cap));
  return rows;
}

}  // namespace

LpResult maximize(const LinearSystem& system,
                  std::span<const Rational> objective) {
  if (objective.size() != system.variables())
    throw Error(ErrorCode::kDimensionMismatch, "objective length mismatch");
  auto rows = row_pointers(system);
  auto d = solve_via_dual(system.variables(), rows, objective);
  LpResult res;
  switch (d.status) {
    case StandardForm::Status::kOptimal:
      res.status = LpStatus::kOptimal;
      res.point = std::move(d.x);
      res.value = std::move(d.value);
      return res;
    case StandardForm::Status::kUnbounded:
      res.status = LpStatus::kInfeasible;
      res.certificate = normalized_ray(system, std::move(d.multipliers));
      return res;
    case StandardForm::Status::kInfeasible:
      break;
  }
  // The dual is infeasible: the primal is unbounded or infeasible.
  std::vector<Rational> zero(system.variables(), Rational(0));
  auto f = solve_via_dual(system.variables(), rows, zero);
  if (f.status == StandardForm::Status::kUnbounded) {
    res.status = LpStatus::kInfeasible;
    res.certificate = normalized_ray(system, std::move(f.multipliers));
  } else {
    res.status = LpStatus::kUnbounded;
    res.point = std::move(f.x);
  }
  return res;
}

LpResult minimize(const LinearSystem& system,
                  std::span<const Rational> objective) {
  std::vector<Rational> neg(objective.size());
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -objective[i];
  LpResult r = maximize(system, neg);
  r.value = -r.value;
  return r;
}

namespace {

struct SlackSolve {
  bool infeasible = false;
  Rational slack;
  std::vector<Rational> point;
  std::vector<Rational> multipliers;  // per original row
};

template <typename Pred>
SlackSolve solve_slack(const LinearSystem& system, Pred tighten) {
  const std::size_t n = system.variables();
  auto ext = with_slack(system, tighten);
  std::vector<const Constraint*> rows;
  for (const auto& c : ext) rows.push_back(&c);
  std::vector<Rational> obj(n + 1, Rational(0));
  obj[n] = 1;
  auto d = solve_via_dual(n + 1, rows, obj);
  SlackSolve out;
  d.multipliers.resize(system.size());
  out.multipliers = std::move(d.multipliers);
  if (d.status != StandardForm::Status::kOptimal) {
    out.infeasible = true;
    return out;
  }
  out.slack = d.x[n];
  d.x.resize(n);
  out.point = std::move(d.x);
  return out;
}

}  // namespace

PointResult find_point(const LinearSystem& system) {
  auto s = solve_slack(system, [](const Constraint& c) {
    return c.relation == Relation::kLess;
  });
  PointResult res;
  if (!s.infeasible && s.slack > 0) {
    res.point = std::move(s.point);
    return res;
  }
  res.certificate = normalized_ray(system, std::move(s.multipliers));
  return res;
}

SlackResult max_slack(const LinearSystem& system) {
  auto s = solve_slack(system, [](const Constraint& c) {
    return c.relation != Relation::kEqual;
  });
  SlackResult res;
  if (s.infeasible) {
    res.slack = -1;
    res.certificate = normalized_ray(system, std::move(s.multipliers));
    return res;
  }
  res.slack = s.slack;
  res.point = std::move(s.point);
  if (res.slack < 0)
    res.certificate = normalized_ray(system, std::move(s.multipliers));
  return res;
}

}  // namespace indiv
