#include "mes/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mes/rng.hpp"

namespace mes {

InputDensity InputDensity::standard_gaussian(std::size_t dim,
                                             std::uint64_t seed) {
  if (dim == 0) throw std::invalid_argument("gaussian density needs dim >= 1");
  InputDensity p;
  p.dim_ = dim;
  p.seed_ = seed;
  return p;
}

InputDensity InputDensity::empirical(std::vector<FeatureVector> dataset,
                                     std::uint64_t seed) {
  if (dataset.empty()) {
    throw std::invalid_argument("empirical density needs a nonempty dataset");
  }
  const std::size_t dim = dataset.front().size();
  for (const auto& x : dataset) {
    if (x.size() != dim) {
      throw std::invalid_argument("empirical dataset has mixed dimensions");
    }
    for (double v : x) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("empirical dataset has non-finite entries");
      }
    }
  }
  InputDensity p;
  p.dim_ = dim;
  p.seed_ = seed;
  p.dataset_ = std::move(dataset);
  return p;
}

namespace {

void draw_into(const InputDensity& p, Rng& rng, std::size_t n,
               std::vector<FeatureVector>& out) {
  if (p.is_gaussian()) {
    for (std::size_t i = 0; i < n; ++i) {
      FeatureVector x(p.dimension());
      for (double& v : x) v = rng.gaussian();
      out.push_back(std::move(x));
    }
  } else {
    const auto& data = p.dataset();
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(data[rng.bounded(data.size())]);
    }
  }
}

}  // namespace

std::vector<FeatureVector> sample(const InputDensity& p, std::size_t n,
                                  std::string_view stream_tag) {
  if (n == 0) throw std::invalid_argument("sample needs n >= 1");
  Rng rng(p.seed(), stream_tag);
  std::vector<FeatureVector> out;
  out.reserve(n);
  draw_into(p, rng, n, out);
  return out;
}

ConditionalSample conditional_sample(const InputDensity& p, BlackBox& f,
                                     int label, std::size_t n,
                                     std::size_t max_draws,
                                     std::size_t batch_size,
                                     std::string_view stream_tag) {
  if (n == 0) throw std::invalid_argument("conditional_sample needs n >= 1");
  if (label != 0 && label != 1) {
    throw std::invalid_argument("conditional_sample label must be 0 or 1");
  }
  if (max_draws == 0) max_draws = 1000 * n;
  if (max_draws < n) {
    throw std::invalid_argument("conditional_sample max_draws must be >= n");
  }
  if (batch_size == 0) batch_size = 1;

  std::string tag = stream_tag.empty()
                        ? "cond." + std::to_string(label)
                        : std::string(stream_tag);
  Rng rng(p.seed(), tag);

  ConditionalSample result;
  result.points.reserve(n);
  std::vector<FeatureVector> batch;
  while (result.points.size() < n && result.proposals < max_draws) {
    const std::size_t want =
        std::min(batch_size, max_draws - result.proposals);
    batch.clear();
    batch.reserve(want);
    draw_into(p, rng, want, batch);
    const std::vector<int> labels = f.predict_batch(batch);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      ++result.proposals;
      if (labels[i] == label) {
        result.points.push_back(std::move(batch[i]));
        // Stop counting at the draw that filled the request so the reported
        // acceptance rate is not diluted by the unused tail of the batch.
        if (result.points.size() == n) break;
      }
    }
  }
  if (result.points.size() < n) {
    throw std::runtime_error(
        "class too rare: accepted " + std::to_string(result.points.size()) +
        "/" + std::to_string(n) + " for label " + std::to_string(label) +
        " after " + std::to_string(result.proposals) +
        " draws (acceptance rate " +
        std::to_string(result.acceptance_rate()) + ")");
  }
  return result;
}

}  // namespace mes
