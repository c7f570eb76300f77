#include "coopgrid/optim.hpp"

#include <cmath>

namespace coopgrid {

void Adam::step(std::vector<double>& params, const std::vector<double>& grads,
                double lr_multiplier) {
  if (params.size() != m_.size() || grads.size() != m_.size())
    throw std::invalid_argument("Adam: parameter/gradient shape mismatch");
  ++t_;
  const double lr = base_lr_ * lr_multiplier;
  const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grads[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grads[i] * grads[i];
    const double mhat = m_[i] / bc1;
    const double vhat = v_[i] / bc2;
    params[i] -= lr * mhat / (std::sqrt(vhat) + eps_);
  }
}

}  // namespace coopgrid
