#include "mes/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mes/blackbox.hpp"

namespace mes {

ExplanationFamily ExplanationFamily::axis(std::size_t feature_index, int sign,
                                          std::string name) {
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("axis family sign must be +1 or -1");
  }
  ExplanationFamily fam;
  fam.kind = Kind::AxisAligned;
  fam.feature_index = feature_index;
  fam.sign = sign;
  if (name.empty()) {
    name = "x" + std::to_string(feature_index) + (sign > 0 ? "_le" : "_ge");
  }
  fam.name = std::move(name);
  return fam;
}

ExplanationFamily ExplanationFamily::linear(std::vector<double> weights,
                                            double offset, std::string name) {
  if (weights.empty()) {
    throw std::invalid_argument("linear family needs at least one weight");
  }
  ExplanationFamily fam;
  fam.kind = Kind::Linear;
  fam.weights = std::move(weights);
  fam.offset = offset;
  fam.name = name.empty() ? "linear" : std::move(name);
  return fam;
}

double family_eval(const ExplanationFamily& fam, const FeatureVector& x) {
  double g = 0.0;
  if (fam.kind == ExplanationFamily::Kind::AxisAligned) {
    if (fam.feature_index >= x.size()) {
      throw std::invalid_argument("family feature index out of range");
    }
    g = fam.sign * x[fam.feature_index];
  } else {
    if (fam.weights.size() != x.size()) {
      throw std::invalid_argument("family weight dimension mismatch");
    }
    g = fam.offset;
    for (std::size_t j = 0; j < x.size(); ++j) g += fam.weights[j] * x[j];
  }
  if (!std::isfinite(g)) {
    throw std::invalid_argument("family evaluation is not finite");
  }
  return g;
}

bool explanation_holds(const ExplanationFamily& fam, double threshold,
                       const FeatureVector& x) {
  if (!(threshold < kPlusInf)) return true;  // null explanation
  return family_eval(fam, x) <= threshold;
}

StepFunction::StepFunction(std::vector<double> breakpoints,
                           std::vector<double> values, double left_value)
    : breakpoints_(std::move(breakpoints)),
      values_(std::move(values)),
      left_value_(left_value) {
  if (breakpoints_.size() != values_.size()) {
    throw std::invalid_argument("step function breakpoint/value size mismatch");
  }
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    if (!std::isfinite(breakpoints_[k])) {
      throw std::invalid_argument("step function breakpoints must be finite");
    }
    if (k > 0 && !(breakpoints_[k - 1] < breakpoints_[k])) {
      throw std::invalid_argument(
          "step function breakpoints must be strictly increasing");
    }
  }
}

StepFunction StepFunction::ecdf(std::vector<double> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("ecdf needs at least one sample");
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  std::vector<double> breakpoints;
  std::vector<double> values;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ++count;
    if (i + 1 == n || samples[i + 1] != samples[i]) {
      breakpoints.push_back(samples[i]);
      values.push_back(static_cast<double>(count) / static_cast<double>(n));
    }
  }
  return StepFunction(std::move(breakpoints), std::move(values), 0.0);
}

double StepFunction::eval(double z) const {
  // Largest breakpoint <= z; right continuity makes upper_bound the fit.
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), z);
  if (it == breakpoints_.begin()) return left_value_;
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

namespace detail {

double exact_score_counts(std::size_t e1, std::size_t n1, std::size_t e0,
                          std::size_t n0) {
  if (n1 == 0 || n0 == 0) {
    throw std::runtime_error("degenerate classifier on data: one class empty");
  }
  return static_cast<double>(e1) / static_cast<double>(n1) -
         static_cast<double>(e0) / static_cast<double>(n0);
}

}  // namespace detail

double exact_score(BlackBox& f, std::span<const FeatureVector> data,
                   const ExplanationFamily& fam, double threshold) {
  const std::vector<int> labels = f.predict_batch(data);
  return exact_score_rule(labels, data, [&](const FeatureVector& x) {
    return explanation_holds(fam, threshold, x);
  });
}

}  // namespace mes
