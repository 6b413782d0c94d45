#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hydrolfc::surrogate {

// Hidden-unit activation. ThresholdSpikeRate clamps a scaled shifted net
// input to [0, 1], i.e. the normalized firing rate of an integrate-and-fire
// unit; Sigmoid and Identity are the usual alternatives.
enum class Activation { kThresholdSpikeRate, kSigmoid, kIdentity };

struct SurrogateConfig {
  int hidden = 25;
  Activation activation = Activation::kThresholdSpikeRate;
  double rate_gain = 1.0;   // slope of the spike-rate clamp
  double threshold = 0.0;   // firing threshold
  std::uint64_t seed = 1;

  void validate() const;
};

// Single-hidden-layer network with a fixed random hidden layer and a
// least-squares output layer: y = sum_j beta_j * g(w_j . x + b_j). The
// hidden layer is drawn once; training only re-solves beta.
class SurrogateNet {
 public:
  SurrogateNet(int inputs, int hidden, Activation activation,
               double rate_gain = 1.0, double threshold = 0.0);

  // Draws hidden weights in [-1, 1] and biases in [-1, 1] from the seeded
  // stream.
  static SurrogateNet random(int inputs, const SurrogateConfig& config);

  // Explicit hidden layer, row-major weights of shape hidden x inputs.
  void set_hidden_layer(std::vector<double> weights,
                        std::vector<double> biases);
  void set_output_weights(std::vector<double> beta);

  struct TrainStats {
    double residual_norm = 0.0;
    int rank = 0;
    bool rank_deficient = false;
  };

  // Least-squares fit of the output weights on (xs, ys); needs at least as
  // many samples as hidden units. A rank-deficient feature matrix yields
  // the minimum-norm solution and is flagged.
  TrainStats train(const std::vector<std::vector<double>>& xs,
                   const std::vector<double>& ys);

  double predict(std::span<const double> x) const;

  // One row of the feature matrix: hidden activations for x.
  std::vector<double> features(std::span<const double> x) const;

  int inputs() const { return inputs_; }
  int hidden() const { return hidden_; }
  bool trained() const { return !beta_.empty(); }
  const std::vector<double>& output_weights() const { return beta_; }
  const TrainStats& last_train_stats() const { return stats_; }

 private:
  double activate(double net) const;

  int inputs_;
  int hidden_;
  Activation activation_;
  double rate_gain_;
  double threshold_;
  std::vector<double> weights_;  // hidden x inputs, row-major
  std::vector<double> biases_;   // hidden
  std::vector<double> beta_;     // hidden; empty until trained/set
  TrainStats stats_;
};

}  // namespace hydrolfc::surrogate
