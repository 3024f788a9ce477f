#ifndef HTMDOC_CLASSIFIER_HPP
#define HTMDOC_CLASSIFIER_HPP

#include <Eigen/Dense>
#include <cstdint>

#include "htmdoc/spatial_pooler.hpp"

namespace htmdoc {

struct CategoryDistribution {
  Eigen::VectorXd probabilities;  // each in (0,1], sums to 1
};

// Single-layer feed-forward softmax classifier over SDR inputs, trained by
// online gradient descent on the active bits only. Weights start at zero.
class SdrClassifier {
public:
  SdrClassifier() : weights_(0, 0), alpha_(0.01) {}
  SdrClassifier(uint32_t num_inputs, uint32_t num_categories, double alpha);

  static SdrClassifier restore(Eigen::MatrixXd weights, double alpha);

  // Activations are sums of weights on active bits; softmax with
  // max-subtraction.
  CategoryDistribution infer(const SDR& sdr) const;

  // w_ij -= alpha * (y_j - z_j) for every active bit i.
  void learn(const SDR& sdr, uint32_t true_category);

  // Argmax of infer; ties go to the lower category index.
  uint32_t predict(const SDR& sdr) const;

  uint32_t num_inputs() const { return static_cast<uint32_t>(weights_.rows()); }
  uint32_t num_categories() const {
    return static_cast<uint32_t>(weights_.cols());
  }
  double alpha() const { return alpha_; }
  const Eigen::MatrixXd& weights() const { return weights_; }
  Eigen::MatrixXd& mutable_weights() { return weights_; }

private:
  Eigen::MatrixXd weights_;  // num_inputs x num_categories
  double alpha_;
};

}  // namespace htmdoc

#endif
