#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mes/blackbox.hpp"
#include "mes/core.hpp"

namespace mes {

/// Input distribution p(x): either a standard multivariate Gaussian or the
/// empirical distribution over a dataset (uniform draws with replacement).
/// Sampling is deterministic given (seed, stream tag).
class InputDensity {
 public:
  static InputDensity standard_gaussian(std::size_t dim, std::uint64_t seed);
  static InputDensity empirical(std::vector<FeatureVector> dataset,
                                std::uint64_t seed);

  bool is_gaussian() const { return dataset_.empty(); }
  std::size_t dimension() const { return dim_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<FeatureVector>& dataset() const { return dataset_; }

 private:
  InputDensity() = default;
  std::size_t dim_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<FeatureVector> dataset_;  // empty for the Gaussian kind
};

/// n iid draws from p. Repeated calls with the same arguments return the
/// same points; pass distinct tags to obtain independent streams.
std::vector<FeatureVector> sample(const InputDensity& p, std::size_t n,
                                  std::string_view stream_tag = "sample");

struct ConditionalSample {
  std::vector<FeatureVector> points;
  std::size_t proposals = 0;  // draws from p consumed, for rate diagnostics

  double acceptance_rate() const {
    return proposals ? static_cast<double>(points.size()) /
                           static_cast<double>(proposals)
                     : 0.0;
  }
};

/// n points with f(x) = label, by rejection sampling from p. Classifier
/// queries are batched (batch_size per round trip). Throws "class too rare"
/// once max_draws proposals are exhausted; 0 uses the default 1000*n.
ConditionalSample conditional_sample(const InputDensity& p, BlackBox& f,
                                     int label, std::size_t n,
                                     std::size_t max_draws = 0,
                                     std::size_t batch_size = 1024,
                                     std::string_view stream_tag = {});

}  // namespace mes
