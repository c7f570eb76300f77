#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace coopgrid {

// Clamped linear interpolation between start and end over duration steps.
struct LinearSchedule {
  double start = 1.0;
  double end = 1.0;
  long duration = 1;

  double value(long t) const {
    if (duration <= 0 || t >= duration) return end;
    if (t <= 0) return start;
    return start + (end - start) * (static_cast<double>(t) / duration);
  }

  static LinearSchedule constant(double v) { return {v, v, 0}; }
};

// Adam with bias-corrected moments; the effective learning rate is
// base_lr * lr_multiplier, so a schedule can anneal it.
class Adam {
 public:
  Adam(int parameter_count, double base_lr, double beta1 = 0.9,
       double beta2 = 0.999, double epsilon = 1e-8)
      : m_(parameter_count, 0.0),
        v_(parameter_count, 0.0),
        base_lr_(base_lr),
        beta1_(beta1),
        beta2_(beta2),
        eps_(epsilon) {}

  void step(std::vector<double>& params, const std::vector<double>& grads,
            double lr_multiplier);

  long step_count() const { return t_; }

 private:
  std::vector<double> m_, v_;
  double base_lr_, beta1_, beta2_, eps_;
  long t_ = 0;
};

}  // namespace coopgrid
