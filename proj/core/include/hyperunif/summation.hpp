#ifndef HYPERUNIF_SUMMATION_HPP_
#define HYPERUNIF_SUMMATION_HPP_

#include <cmath>

namespace hyperunif {

/// Neumaier's variant of Kahan summation.
template <typename Real = double>
class CompensatedSum {
 public:
  void add(Real v) {
    const Real t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(Real v) {
    add(v);
    return *this;
  }
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_ = 0;
  Real comp_ = 0;
};

}  // namespace hyperunif

#endif  // HYPERUNIF_SUMMATION_HPP_
