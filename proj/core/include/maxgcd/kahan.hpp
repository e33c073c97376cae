#pragma once

#include <cmath>

namespace maxgcd {

// Neumaier-compensated accumulator. All long sums (log-space products,
// window sums, Monte Carlo aggregates) go through this so results do not
// depend on summation order noise.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace maxgcd
