#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mes/core.hpp"

namespace mes {

/// Queryable binary classifier f: X -> {0,1}. predict must behave as a pure
/// function for the lifetime of the handle.
class BlackBox {
 public:
  virtual ~BlackBox() = default;

  virtual int predict(const FeatureVector& x) = 0;

  /// Elementwise equal to mapping predict; overridden where batching
  /// amortizes transport cost.
  virtual std::vector<int> predict_batch(std::span<const FeatureVector> xs);

  virtual bool thread_safe() const { return true; }

  /// Expected input dimension when the model knows it.
  virtual std::optional<std::size_t> dimension() const { return std::nullopt; }

  virtual std::string describe() const = 0;
};

using BlackBoxPtr = std::unique_ptr<BlackBox>;

/// Built-in rule classifier wrapping an arbitrary pure predicate.
BlackBoxPtr make_rule_blackbox(std::function<int(const FeatureVector&)> rule,
                               std::string description = "builtin_rule");

/// Linear threshold classifier: label 1 iff w.x + bias >= 0.
BlackBoxPtr make_linear_blackbox(std::vector<double> weights, double bias);

/// Classifier hosted by a child process speaking the line protocol:
/// one request per line (comma separated decimal floats), one reply line
/// holding the single character "0" or "1". Single-owner handle.
BlackBoxPtr make_external_blackbox(const std::string& command);

/// Multiclass classifier interface for wrap_multiclass.
class MulticlassModel {
 public:
  virtual ~MulticlassModel() = default;
  virtual int classify(const FeatureVector& x) = 0;
  virtual std::vector<int> classify_batch(std::span<const FeatureVector> xs);
  virtual bool thread_safe() const { return true; }
  virtual std::string describe() const = 0;
};

using MulticlassModelPtr = std::shared_ptr<MulticlassModel>;

MulticlassModelPtr make_function_multiclass(
    std::function<int(const FeatureVector&)> fn,
    std::string description = "multiclass_stub");

/// Multiclass model hosted by a child process; same line protocol with the
/// reply being a decimal class id.
MulticlassModelPtr make_external_multiclass(const std::string& command);

/// Binary view of a multiclass model: predict(x) = 1 iff model(x) == k.
BlackBoxPtr wrap_multiclass(MulticlassModelPtr model, int k);

}  // namespace mes
