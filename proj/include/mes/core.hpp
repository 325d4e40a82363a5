#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace mes {

class BlackBox;

using FeatureVector = std::vector<double>;

constexpr double kPlusInf = std::numeric_limits<double>::infinity();

/// Scalar feature function g whose sub-level sets {x : g(x) <= a} are the
/// candidate explanations. Axis-aligned families project one coordinate
/// (sign -1 gives the >= direction); linear families compute w.x + b.
struct ExplanationFamily {
  enum class Kind { AxisAligned, Linear };

  Kind kind = Kind::AxisAligned;
  std::size_t feature_index = 0;  // axis-aligned only
  int sign = +1;                  // axis-aligned only, +1 or -1
  std::vector<double> weights;    // linear only
  double offset = 0.0;            // linear only
  std::string name;

  static ExplanationFamily axis(std::size_t feature_index, int sign,
                                std::string name = {});
  static ExplanationFamily linear(std::vector<double> weights, double offset,
                                  std::string name = {});
};

/// g(x). Rejects dimension mismatches and non-finite results.
double family_eval(const ExplanationFamily& fam, const FeatureVector& x);

/// One threshold rule I{g(x) <= a} together with its score. threshold = +inf
/// encodes the null explanation E0 (identically true, score exactly 0).
struct Explanation {
  int family_index = -1;
  double threshold = kPlusInf;
  double score = 0.0;

  bool is_null() const { return !(threshold < kPlusInf); }

  static Explanation null() { return Explanation{}; }
};

/// Does the rule hold at x?
bool explanation_holds(const ExplanationFamily& fam, double threshold,
                       const FeatureVector& x);

/// Piecewise-constant right-continuous function over strictly increasing
/// breakpoints:
///   eval(z) = left_value            for z <  b[0]
///   eval(z) = values[k]             for b[k] <= z < b[k+1]
///   eval(z) = values[size-1]        for z >= b[size-1]
/// An ECDF instance has left_value 0, nondecreasing values, final value 1.
class StepFunction {
 public:
  StepFunction() = default;
  StepFunction(std::vector<double> breakpoints, std::vector<double> values,
               double left_value);

  /// ECDF of a nonempty sample set. Duplicate samples merge into one
  /// breakpoint with cumulative count.
  static StepFunction ecdf(std::vector<double> samples);

  double eval(double z) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  double left_value() const { return left_value_; }
  std::size_t size() const { return breakpoints_.size(); }
  bool empty() const { return breakpoints_.empty(); }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  double left_value_ = 0.0;
};

inline double step_eval(const StepFunction& s, double z) { return s.eval(z); }

/// Exact quality score S(E) = P(E | f=1) - P(E | f=0) by full enumeration of
/// an empirical point set. Rejects when either class is empty under f.
double exact_score(BlackBox& f, std::span<const FeatureVector> data,
                   const ExplanationFamily& fam, double threshold);

/// Same, for an arbitrary Boolean rule (oracle/test hook).
template <typename Rule>
double exact_score_rule(std::span<const int> labels,
                        std::span<const FeatureVector> data, Rule&& rule);

namespace detail {
double exact_score_counts(std::size_t e1, std::size_t n1, std::size_t e0,
                          std::size_t n0);
}

template <typename Rule>
double exact_score_rule(std::span<const int> labels,
                        std::span<const FeatureVector> data, Rule&& rule) {
  std::size_t n1 = 0, n0 = 0, e1 = 0, e0 = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const bool holds = static_cast<bool>(rule(data[i]));
    if (labels[i] == 1) {
      ++n1;
      e1 += holds;
    } else {
      ++n0;
      e0 += holds;
    }
  }
  return detail::exact_score_counts(e1, n1, e0, n0);
}

}  // namespace mes
