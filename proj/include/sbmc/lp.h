#pragma once

#include <vector>

namespace sbmc {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
};

// Dense two-phase simplex (Bland's rule fallback against cycling).
// Maximizes c'x subject to A x <= b, x >= 0. A is row-major, rows x cols.
LpResult maximize(const std::vector<double>& a, const std::vector<double>& b,
                  const std::vector<double>& c);

}  // namespace sbmc
