#include "sbmc/lp.h"

#include <cmath>
#include <limits>
#include <utility>

#include "sbmc/error.h"

namespace sbmc {
namespace {

constexpr double kEps = 1e-10;

// Tableau simplex. Row m holds the objective, row m + 1 the phase-one
// objective; column n is the artificial variable, column n + 1 the right-hand
// side. basis[i] / nonbasic[j] name the variable occupying each slot, slacks
// numbered n.. and the artificial -1.
class Tableau {
 public:
  Tableau(const std::vector<double>& a, const std::vector<double>& b,
          const std::vector<double>& c)
      : m_(b.size()),
        n_(c.size()),
        width_(n_ + 2),
        t_((m_ + 2) * width_, 0.0),
        basis_(m_),
        nonbasic_(n_ + 1) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = a[i * n_ + j];
      basis_[i] = static_cast<long>(n_ + i);
      at(i, n_) = -1.0;
      at(i, n_ + 1) = b[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasic_[j] = static_cast<long>(j);
      at(m_, j) = -c[j];
    }
    nonbasic_[n_] = -1;
    at(m_ + 1, n_) = 1.0;
  }

  LpResult solve() {
    LpResult result;
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i) {
      if (at(i, n_ + 1) < at(r, n_ + 1)) r = i;
    }
    if (m_ > 0 && at(r, n_ + 1) < -kEps) {
      pivot(r, n_);
      if (!run(2) || at(m_ + 1, n_ + 1) < -kEps) {
        result.status = LpStatus::kInfeasible;
        return result;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] != -1) continue;
        std::size_t s = 0;
        for (std::size_t j = 1; j <= n_; ++j) {
          if (better(i, j, s)) s = j;
        }
        pivot(i, s);
      }
    }
    const bool bounded = run(1);
    result.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < n_) {
        result.x[basis_[i]] = at(i, n_ + 1);
      }
    }
    if (!bounded) {
      result.status = LpStatus::kUnbounded;
      result.objective = std::numeric_limits<double>::infinity();
      return result;
    }
    result.status = LpStatus::kOptimal;
    result.objective = at(m_, n_ + 1);
    return result;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }

  // Entering-column order: smaller reduced cost, then smaller variable id.
  bool better(std::size_t row, std::size_t j, std::size_t s) {
    const double xj = at(row, j);
    const double xs = at(row, s);
    return xj < xs || (xj == xs && nonbasic_[j] < nonbasic_[s]);
  }

  void pivot(std::size_t r, std::size_t s) {
    double* pivot_row = &at(r, 0);
    const double inv = 1.0 / pivot_row[s];
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r) continue;
      double* row = &at(i, 0);
      if (std::abs(row[s]) <= kEps) continue;
      const double factor = row[s] * inv;
      for (std::size_t j = 0; j < width_; ++j) row[j] -= pivot_row[j] * factor;
      row[s] = pivot_row[s] * factor;
    }
    for (std::size_t j = 0; j < width_; ++j) {
      if (j != s) pivot_row[j] *= inv;
    }
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i != r) at(i, s) *= -inv;
    }
    pivot_row[s] = inv;
    std::swap(basis_[r], nonbasic_[s]);
  }

  // Dantzig pricing, switching to Bland's rule after a long run of pivots so
  // degenerate problems cannot cycle.
  bool run(int phase) {
    const std::size_t objective_row = m_ + phase - 1;
    const std::size_t dantzig_limit = 50 * (m_ + n_ + 1);
    for (std::size_t iteration = 0;; ++iteration) {
      const bool bland = iteration >= dantzig_limit;
      std::size_t s = SIZE_MAX;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        if (bland) {
          if (at(objective_row, j) < -kEps &&
              (s == SIZE_MAX || nonbasic_[j] < nonbasic_[s])) {
            s = j;
          }
        } else if (s == SIZE_MAX || better(objective_row, j, s)) {
          s = j;
        }
      }
      if (s == SIZE_MAX || at(objective_row, s) >= -kEps) return true;
      std::size_t r = SIZE_MAX;
      for (std::size_t i = 0; i < m_; ++i) {
        if (at(i, s) <= kEps) continue;
        if (r == SIZE_MAX) {
          r = i;
          continue;
        }
        const double ratio_i = at(i, n_ + 1) / at(i, s);
        const double ratio_r = at(r, n_ + 1) / at(r, s);
        if (ratio_i < ratio_r || (ratio_i == ratio_r && basis_[i] < basis_[r])) {
          r = i;
        }
      }
      if (r == SIZE_MAX) return false;
      pivot(r, s);
    }
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t width_;
  std::vector<double> t_;
  std::vector<long> basis_;
  std::vector<long> nonbasic_;
};

}  // namespace

LpResult maximize(const std::vector<double>& a, const std::vector<double>& b,
                  const std::vector<double>& c) {
  if (a.size() != b.size() * c.size()) {
    throw Error(ErrorKind::kSizeMismatch,
                "maximize: constraint matrix must be rows x cols");
  }
  return Tableau(a, b, c).solve();
}

}  // namespace sbmc
