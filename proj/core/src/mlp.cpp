#include "coopgrid/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace coopgrid {

Mlp::Mlp(int input, int hidden, int output)
    : in_(input), hidden_(hidden), out_(output) {
  w1_ = 0;
  b1_ = w1_ + hidden_ * in_;
  w2_ = b1_ + hidden_;
  b2_ = w2_ + hidden_ * hidden_;
  w3_ = b2_ + hidden_;
  b3_ = w3_ + out_ * hidden_;
  params_.assign(b3_ + out_, 0.0);
}

void Mlp::init_uniform(Rng& rng) {
  const double s1 = 1.0 / std::sqrt(static_cast<double>(in_));
  const double s2 = 1.0 / std::sqrt(static_cast<double>(hidden_));
  for (int i = w1_; i < w2_; ++i) params_[i] = rng.uniform_in(-s1, s1);
  for (int i = w2_; i < w3_; ++i) params_[i] = rng.uniform_in(-s2, s2);
  for (int i = w3_; i < static_cast<int>(params_.size()); ++i)
    params_[i] = rng.uniform_in(-s2, s2);
}

std::vector<double> Mlp::forward(std::span<const double> state) const {
  return forward_cached(state).out;
}

Mlp::Cache Mlp::forward_cached(std::span<const double> state) const {
  if (static_cast<int>(state.size()) != in_)
    throw std::invalid_argument("state dimension mismatch");
  Cache c;
  c.input.assign(state.begin(), state.end());
  c.h1.resize(hidden_);
  for (int u = 0; u < hidden_; ++u) {
    double z = params_[b1_ + u];
    const double* w = &params_[w1_ + u * in_];
    for (int k = 0; k < in_; ++k) z += w[k] * c.input[k];
    c.h1[u] = std::tanh(z);
  }
  c.h2.resize(hidden_);
  for (int u = 0; u < hidden_; ++u) {
    double z = params_[b2_ + u];
    const double* w = &params_[w2_ + u * hidden_];
    for (int k = 0; k < hidden_; ++k) z += w[k] * c.h1[k];
    c.h2[u] = std::tanh(z);
  }
  c.out.resize(out_);
  for (int u = 0; u < out_; ++u) {
    double z = params_[b3_ + u];
    const double* w = &params_[w3_ + u * hidden_];
    for (int k = 0; k < hidden_; ++k) z += w[k] * c.h2[k];
    c.out[u] = z;
  }
  return c;
}

void Mlp::backward(const Cache& cache, std::span<const double> grad_out,
                   std::vector<double>& grad) const {
  // Output layer.
  std::vector<double> dh2(hidden_, 0.0);
  for (int u = 0; u < out_; ++u) {
    const double g = grad_out[u];
    if (g == 0.0) continue;
    grad[b3_ + u] += g;
    double* gw = &grad[w3_ + u * hidden_];
    const double* w = &params_[w3_ + u * hidden_];
    for (int k = 0; k < hidden_; ++k) {
      gw[k] += g * cache.h2[k];
      dh2[k] += g * w[k];
    }
  }
  // Second hidden layer (tanh' = 1 - h^2).
  std::vector<double> dh1(hidden_, 0.0);
  for (int u = 0; u < hidden_; ++u) {
    const double g = dh2[u] * (1.0 - cache.h2[u] * cache.h2[u]);
    if (g == 0.0) continue;
    grad[b2_ + u] += g;
    double* gw = &grad[w2_ + u * hidden_];
    const double* w = &params_[w2_ + u * hidden_];
    for (int k = 0; k < hidden_; ++k) {
      gw[k] += g * cache.h1[k];
      dh1[k] += g * w[k];
    }
  }
  // First hidden layer.
  for (int u = 0; u < hidden_; ++u) {
    const double g = dh1[u] * (1.0 - cache.h1[u] * cache.h1[u]);
    if (g == 0.0) continue;
    grad[b1_ + u] += g;
    double* gw = &grad[w1_ + u * in_];
    for (int k = 0; k < in_; ++k) gw[k] += g * cache.input[k];
  }
}

}  // namespace coopgrid
