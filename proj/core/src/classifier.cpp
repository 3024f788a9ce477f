#include "htmdoc/classifier.hpp"

#include <cmath>

#include "htmdoc/error.hpp"

namespace htmdoc {

SdrClassifier::SdrClassifier(uint32_t num_inputs, uint32_t num_categories,
                             double alpha)
    : weights_(Eigen::MatrixXd::Zero(num_inputs, num_categories)),
      alpha_(alpha) {
  if (num_inputs < 1) throw ContractError("SdrClassifier: num_inputs < 1");
  if (num_categories < 2)
    throw ContractError("SdrClassifier: need at least two categories");
  if (!(alpha > 0.0)) throw ContractError("SdrClassifier: alpha must be > 0");
}

SdrClassifier SdrClassifier::restore(Eigen::MatrixXd weights, double alpha) {
  if (!(alpha > 0.0)) throw ContractError("SdrClassifier: alpha must be > 0");
  SdrClassifier clf;
  clf.weights_ = std::move(weights);
  clf.alpha_ = alpha;
  return clf;
}

CategoryDistribution SdrClassifier::infer(const SDR& sdr) const {
  if (sdr.width != num_inputs())
    throw ContractError("SdrClassifier::infer: SDR width mismatch");
  Eigen::VectorXd activation = Eigen::VectorXd::Zero(weights_.cols());
  for (uint32_t i : sdr.active) activation += weights_.row(i).transpose();
  // softmax with max-subtraction
  const double shift = activation.maxCoeff();
  Eigen::VectorXd ex = (activation.array() - shift).exp();
  CategoryDistribution dist;
  dist.probabilities = ex / ex.sum();
  return dist;
}

void SdrClassifier::learn(const SDR& sdr, uint32_t true_category) {
  if (true_category >= num_categories())
    throw ContractError("SdrClassifier::learn: category index out of range");
  const CategoryDistribution y = infer(sdr);
  Eigen::VectorXd error = y.probabilities;  // y - z
  error[true_category] -= 1.0;
  for (uint32_t i : sdr.active)
    weights_.row(i) -= alpha_ * error.transpose();
}

uint32_t SdrClassifier::predict(const SDR& sdr) const {
  const CategoryDistribution dist = infer(sdr);
  uint32_t best = 0;
  for (uint32_t j = 1; j < dist.probabilities.size(); ++j)
    if (dist.probabilities[j] > dist.probabilities[best]) best = j;
  return best;
}

}  // namespace htmdoc
