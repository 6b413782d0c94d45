#include "hydrolfc/surrogate.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "hydrolfc/rng.hpp"

namespace hydrolfc::surrogate {

void SurrogateConfig::validate() const {
  if (hidden < 1) throw std::domain_error("surrogate needs >= 1 hidden unit");
  if (!(rate_gain > 0.0)) throw std::domain_error("rate gain must be > 0");
  if (!std::isfinite(threshold))
    throw std::domain_error("threshold must be finite");
}

SurrogateNet::SurrogateNet(int inputs, int hidden, Activation activation,
                           double rate_gain, double threshold)
    : inputs_(inputs),
      hidden_(hidden),
      activation_(activation),
      rate_gain_(rate_gain),
      threshold_(threshold),
      weights_(static_cast<std::size_t>(hidden) * inputs, 0.0),
      biases_(hidden, 0.0) {
  if (inputs < 1 || hidden < 1)
    throw std::domain_error("surrogate dimensions must be >= 1");
}

SurrogateNet SurrogateNet::random(int inputs, const SurrogateConfig& config) {
  config.validate();
  SurrogateNet net(inputs, config.hidden, config.activation, config.rate_gain,
                   config.threshold);
  auto stream =
      rng::derive_stream(config.seed, 0, 0, rng::Salt::kSurrogateLayer);
  for (auto& w : net.weights_) w = stream.next_uniform(-1.0, 1.0);
  for (auto& b : net.biases_) b = stream.next_uniform(-1.0, 1.0);
  return net;
}

void SurrogateNet::set_hidden_layer(std::vector<double> weights,
                                    std::vector<double> biases) {
  if (weights.size() != static_cast<std::size_t>(hidden_) * inputs_ ||
      biases.size() != static_cast<std::size_t>(hidden_))
    throw std::domain_error("hidden layer dimensions mismatch");
  weights_ = std::move(weights);
  biases_ = std::move(biases);
  beta_.clear();
}

void SurrogateNet::set_output_weights(std::vector<double> beta) {
  if (beta.size() != static_cast<std::size_t>(hidden_))
    throw std::domain_error("output weight count mismatch");
  beta_ = std::move(beta);
}

double SurrogateNet::activate(double net) const {
  switch (activation_) {
    case Activation::kThresholdSpikeRate: {
      const double rate = rate_gain_ * (net - threshold_);
      return rate < 0.0 ? 0.0 : (rate > 1.0 ? 1.0 : rate);
    }
    case Activation::kSigmoid:
      return 1.0 / (1.0 + std::exp(-net));
    case Activation::kIdentity:
      return net;
  }
  throw std::logic_error("unknown activation");
}

std::vector<double> SurrogateNet::features(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(inputs_))
    throw std::domain_error("input dimension mismatch");
  std::vector<double> h(hidden_);
  for (int j = 0; j < hidden_; ++j) {
    double net = biases_[j];
    const double* w = &weights_[static_cast<std::size_t>(j) * inputs_];
    for (int i = 0; i < inputs_; ++i) net += w[i] * x[i];
    h[j] = activate(net);
  }
  return h;
}

SurrogateNet::TrainStats SurrogateNet::train(
    const std::vector<std::vector<double>>& xs,
    const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw std::domain_error("sample/target count mismatch");
  if (xs.size() < static_cast<std::size_t>(hidden_))
    throw std::domain_error("training needs at least `hidden` samples");

  const auto rows = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd h(rows, hidden_);
  Eigen::VectorXd y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto feat = features(xs[static_cast<std::size_t>(r)]);
    for (int j = 0; j < hidden_; ++j) h(r, j) = feat[j];
    y(r) = ys[static_cast<std::size_t>(r)];
  }

  // SVD gives the least-squares solution, minimum-norm when the feature
  // matrix is rank deficient.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      h, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd beta = svd.solve(y);

  beta_.assign(beta.data(), beta.data() + beta.size());
  stats_.rank = static_cast<int>(svd.rank());
  stats_.rank_deficient = stats_.rank < hidden_;
  stats_.residual_norm = (h * beta - y).norm();
  return stats_;
}

double SurrogateNet::predict(std::span<const double> x) const {
  if (beta_.empty())
    throw std::logic_error("surrogate must be trained before predicting");
  const auto feat = features(x);
  double y = 0.0;
  for (int j = 0; j < hidden_; ++j) y += beta_[j] * feat[j];
  return y;
}

}  // namespace hydrolfc::surrogate
