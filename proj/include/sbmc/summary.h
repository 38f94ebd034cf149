#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace sbmc {

struct SampleSummary {
  double mean = 0.0;
  double variance = 0.0;  // unbiased (n - 1 denominator)
  double se = 0.0;        // standard error of the mean
  std::size_t count = 0;
};

// Two-pass mean and variance, summed in index order.
inline SampleSummary summarize(std::span<const double> values) {
  SampleSummary s;
  s.count = values.size();
  if (s.count == 0) return s;
  double total = 0.0;
  for (double v : values) total += v;
  s.mean = total / static_cast<double>(s.count);
  if (s.count > 1) {
    double squares = 0.0;
    for (double v : values) squares += (v - s.mean) * (v - s.mean);
    s.variance = squares / static_cast<double>(s.count - 1);
    s.se = std::sqrt(s.variance / static_cast<double>(s.count));
  }
  return s;
}

}  // namespace sbmc
