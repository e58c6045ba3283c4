#include "gcvx/exact_lp.hpp"

#include "gcvx/errors.hpp"

namespace gcvx::lp {

namespace {

struct Tableau {
  std::vector<Vec> rows;  // each row: N coefficients followed by the rhs
  std::vector<std::size_t> basis;
  std::size_t columns = 0;

  [[nodiscard]] const Rational& rhs(std::size_t i) const { return rows[i][columns]; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = rows[r][c];
    for (auto& v : rows[r]) v = v / p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = 0; j <= columns; ++j) {
        if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
      }
    }
    basis[r] = c;
  }

  [[nodiscard]] Rational reduced_cost(const Vec& cost, std::size_t j) const {
    Rational r = cost[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i][j].is_zero()) r -= cost[basis[i]] * rows[i][j];
    }
    return r;
  }

  [[nodiscard]] Rational objective(const Vec& cost) const {
    Rational v;
    for (std::size_t i = 0; i < rows.size(); ++i) v += cost[basis[i]] * rhs(i);
    return v;
  }

  // Bland's rule; returns false when unbounded.
  bool optimize(const Vec& cost, std::size_t allowed_columns) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < allowed_columns; ++j) {
        if (reduced_cost(cost, j) > Rational(0)) {
          entering = j;
          break;
        }
      }
      if (!entering) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const Rational& a = rows[i][*entering];
        if (a.sign() <= 0) continue;
        const Rational ratio = rhs(i) / a;
        if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *entering);
    }
  }
};

}  // namespace

Result maximize(const Matrix& a, const Vec& b, const Vec& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw DomainError("lp: rhs size mismatch");
  for (const auto& row : a) {
    if (row.size() != n) throw DomainError("lp: constraint row size mismatch");
  }

  Tableau t;
  t.columns = n + m;
  std::vector<int> flipped(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    Vec row(n + m + 1);
    flipped[i] = b[i].sign() < 0 ? -1 : 1;
    const Rational s(flipped[i]);
    for (std::size_t j = 0; j < n; ++j) row[j] = s * a[i][j];
    row[n + i] = 1;
    row[n + m] = s * b[i];
    t.rows.push_back(std::move(row));
    t.basis.push_back(n + i);
  }

  Vec phase1(n + m);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
  t.optimize(phase1, n + m);

  Result result;
  if (t.objective(phase1).sign() < 0) {
    result.status = Status::infeasible;
    result.farkas.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      Rational y;
      for (std::size_t i = 0; i < m; ++i) y += phase1[t.basis[i]] * t.rows[i][n + k];
      result.farkas[k] = y * Rational(flipped[k]);
    }
    return result;
  }

  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < t.rows.size();) {
    if (t.basis[i] < n) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n; ++j) {
      if (!t.rows[i][j].is_zero()) {
        col = j;
        break;
      }
    }
    if (col) {
      t.pivot(i, *col);
      ++i;
    } else {
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  Vec phase2(n + m);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  if (!t.optimize(phase2, n)) {
    result.status = Status::unbounded;
    return result;
  }
  result.status = Status::optimal;
  result.x.assign(n, Rational());
  for (std::size_t i = 0; i < t.rows.size(); ++i) result.x[t.basis[i]] = t.rhs(i);
  result.value = t.objective(phase2);
  return result;
}

Result feasible(const Matrix& a, const Vec& b) {
  const std::size_t n = a.empty() ? 0 : a.front().size();
  return maximize(a, b, Vec(n));
}

namespace {

// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> row_reduce(Matrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (auto& v : a[r]) v *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<Vec> solve_unique(const Matrix& a, const Vec& b) {
  if (a.size() != b.size()) throw DomainError("linear system: rhs size mismatch");
  const std::size_t n = a.empty() ? 0 : a.front().size();
  Matrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  const auto pivots = row_reduce(aug, n + 1);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;  // inconsistent
  if (pivots.size() != n) return std::nullopt;                      // underdetermined
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[pivots[i]] = aug[i][n];
  return x;
}

std::size_t rank(Matrix a) {
  const std::size_t n = a.empty() ? 0 : a.front().size();
  return row_reduce(a, n).size();
}

}  // namespace gcvx::lp
