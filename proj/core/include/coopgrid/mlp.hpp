#pragma once

#include <span>
#include <vector>

#include "coopgrid/rng.hpp"

namespace coopgrid {

// Fully connected input -> hidden -> hidden -> output network with tanh on
// both hidden layers and an identity output. Parameters live in one flat
// vector so the optimizer and finite-difference checks can treat the whole
// network as a single point in parameter space.
class Mlp {
 public:
  Mlp(int input, int hidden, int output);

  int input_size() const { return in_; }
  int hidden_size() const { return hidden_; }
  int output_size() const { return out_; }
  int parameter_count() const { return static_cast<int>(params_.size()); }

  std::vector<double>& parameters() { return params_; }
  const std::vector<double>& parameters() const { return params_; }

  // Uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)] per layer.
  void init_uniform(Rng& rng);

  std::vector<double> forward(std::span<const double> state) const;

  struct Cache {
    std::vector<double> input;
    std::vector<double> h1;  // post-tanh
    std::vector<double> h2;  // post-tanh
    std::vector<double> out;
  };

  Cache forward_cached(std::span<const double> state) const;

  // Accumulates d(loss)/d(params) into grad given d(loss)/d(output).
  // grad must be parameter_count() long.
  void backward(const Cache& cache, std::span<const double> grad_out,
                std::vector<double>& grad) const;

 private:
  int in_, hidden_, out_;
  // Layout: W1 (hidden x in), b1, W2 (hidden x hidden), b2,
  //         W3 (out x hidden), b3. Row-major, row = destination unit.
  int w1_, b1_, w2_, b2_, w3_, b3_;
  std::vector<double> params_;
};

inline constexpr int kHiddenUnits = 32;

}  // namespace coopgrid
