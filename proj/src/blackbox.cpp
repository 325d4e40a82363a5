#include "mes/blackbox.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <utility>

namespace mes {

std::vector<int> BlackBox::predict_batch(std::span<const FeatureVector> xs) {
  std::vector<int> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(predict(x));
  return out;
}

std::vector<int> MulticlassModel::classify_batch(
    std::span<const FeatureVector> xs) {
  std::vector<int> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(classify(x));
  return out;
}

namespace {

void append_request_line(std::string& buf, const FeatureVector& x) {
  char num[32];
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j) buf.push_back(',');
    auto r = std::to_chars(num, num + sizeof(num), x[j]);
    buf.append(num, r.ptr);
  }
  buf.push_back('\n');
}

/// Child process with line-oriented stdin/stdout. One in-flight batch at a
/// time: write all request lines, then read the same number of replies.
class Subprocess {
 public:
  explicit Subprocess(const std::string& command) : command_(command) {
    ::signal(SIGPIPE, SIG_IGN);
    int to_child[2];
    int from_child[2];
    if (::pipe(to_child) != 0 || ::pipe(from_child) != 0) {
      throw std::runtime_error("transport error: pipe failed for '" + command +
                               "'");
    }
    pid_ = ::fork();
    if (pid_ < 0) {
      throw std::runtime_error("transport error: fork failed");
    }
    if (pid_ == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      ::execl("/bin/sh", "sh", "-c", command.c_str(), (char*)nullptr);
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    in_fd_ = to_child[1];
    out_fd_ = from_child[0];
  }

  ~Subprocess() {
    if (in_fd_ >= 0) ::close(in_fd_);
    if (out_fd_ >= 0) ::close(out_fd_);
    if (pid_ > 0) {
      int status = 0;
      ::waitpid(pid_, &status, 0);
    }
  }

  Subprocess(const Subprocess&) = delete;
  Subprocess& operator=(const Subprocess&) = delete;

  void write_all(const std::string& data) {
    std::size_t off = 0;
    while (off < data.size()) {
      ssize_t n = ::write(in_fd_, data.data() + off, data.size() - off);
      if (n < 0) {
        throw std::runtime_error("transport error: model process '" +
                                 command_ + "' closed stdin");
      }
      off += static_cast<std::size_t>(n);
    }
  }

  std::string read_line() {
    std::string line;
    for (;;) {
      auto nl = buf_.find('\n');
      if (nl != std::string::npos) {
        line = buf_.substr(0, nl);
        buf_.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      char chunk[4096];
      ssize_t n = ::read(out_fd_, chunk, sizeof(chunk));
      if (n <= 0) {
        throw std::runtime_error("transport error: model process '" +
                                 command_ + "' ended before replying");
      }
      buf_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  std::string command_;
  pid_t pid_ = -1;
  int in_fd_ = -1;
  int out_fd_ = -1;
  std::string buf_;
};

class RuleBlackBox final : public BlackBox {
 public:
  RuleBlackBox(std::function<int(const FeatureVector&)> rule,
               std::string description)
      : rule_(std::move(rule)), description_(std::move(description)) {}

  int predict(const FeatureVector& x) override { return rule_(x) ? 1 : 0; }

  std::string describe() const override { return description_; }

 private:
  std::function<int(const FeatureVector&)> rule_;
  std::string description_;
};

class LinearBlackBox final : public BlackBox {
 public:
  LinearBlackBox(std::vector<double> weights, double bias)
      : weights_(std::move(weights)), bias_(bias) {
    if (weights_.empty()) {
      throw std::invalid_argument("linear model needs at least one weight");
    }
    for (double w : weights_) {
      if (!std::isfinite(w)) {
        throw std::invalid_argument("linear model weights must be finite");
      }
    }
    if (!std::isfinite(bias_)) {
      throw std::invalid_argument("linear model bias must be finite");
    }
  }

  int predict(const FeatureVector& x) override {
    if (x.size() != weights_.size()) {
      throw std::invalid_argument("linear model dimension mismatch");
    }
    double z = bias_;
    for (std::size_t j = 0; j < x.size(); ++j) z += weights_[j] * x[j];
    return z >= 0.0 ? 1 : 0;
  }

  std::optional<std::size_t> dimension() const override {
    return weights_.size();
  }

  std::string describe() const override {
    return "linear_model(D=" + std::to_string(weights_.size()) + ")";
  }

 private:
  std::vector<double> weights_;
  double bias_;
};

int parse_binary_reply(const std::string& line, const std::string& command) {
  if (line == "0") return 0;
  if (line == "1") return 1;
  throw std::runtime_error("transport error: malformed reply '" + line +
                           "' from '" + command + "' (want 0 or 1)");
}

class ExternalBlackBox final : public BlackBox {
 public:
  explicit ExternalBlackBox(const std::string& command)
      : command_(command), proc_(command) {}

  int predict(const FeatureVector& x) override {
    std::string req;
    append_request_line(req, x);
    proc_.write_all(req);
    return parse_binary_reply(proc_.read_line(), command_);
  }

  std::vector<int> predict_batch(std::span<const FeatureVector> xs) override {
    std::vector<int> out;
    out.reserve(xs.size());
    std::string req;
    for (const auto& x : xs) append_request_line(req, x);
    proc_.write_all(req);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out.push_back(parse_binary_reply(proc_.read_line(), command_));
    }
    return out;
  }

  bool thread_safe() const override { return false; }

  std::string describe() const override {
    return "external_process(" + command_ + ")";
  }

 private:
  std::string command_;
  Subprocess proc_;
};

class FunctionMulticlass final : public MulticlassModel {
 public:
  FunctionMulticlass(std::function<int(const FeatureVector&)> fn,
                     std::string description)
      : fn_(std::move(fn)), description_(std::move(description)) {}

  int classify(const FeatureVector& x) override { return fn_(x); }

  std::string describe() const override { return description_; }

 private:
  std::function<int(const FeatureVector&)> fn_;
  std::string description_;
};

class ExternalMulticlass final : public MulticlassModel {
 public:
  explicit ExternalMulticlass(const std::string& command)
      : command_(command), proc_(command) {}

  int classify(const FeatureVector& x) override {
    std::string req;
    append_request_line(req, x);
    proc_.write_all(req);
    return parse_class_reply(proc_.read_line());
  }

  std::vector<int> classify_batch(std::span<const FeatureVector> xs) override {
    std::vector<int> out;
    out.reserve(xs.size());
    std::string req;
    for (const auto& x : xs) append_request_line(req, x);
    proc_.write_all(req);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out.push_back(parse_class_reply(proc_.read_line()));
    }
    return out;
  }

  bool thread_safe() const override { return false; }

  std::string describe() const override {
    return "external_multiclass(" + command_ + ")";
  }

 private:
  int parse_class_reply(const std::string& line) const {
    int k = 0;
    auto [p, ec] = std::from_chars(line.data(), line.data() + line.size(), k);
    if (ec != std::errc{} || p != line.data() + line.size()) {
      throw std::runtime_error("transport error: malformed class reply '" +
                               line + "' from '" + command_ + "'");
    }
    return k;
  }

  std::string command_;
  Subprocess proc_;
};

class MulticlassWrapper final : public BlackBox {
 public:
  MulticlassWrapper(MulticlassModelPtr model, int k)
      : model_(std::move(model)), k_(k) {}

  int predict(const FeatureVector& x) override {
    return model_->classify(x) == k_ ? 1 : 0;
  }

  std::vector<int> predict_batch(std::span<const FeatureVector> xs) override {
    std::vector<int> raw = model_->classify_batch(xs);
    for (int& v : raw) v = (v == k_) ? 1 : 0;
    return raw;
  }

  bool thread_safe() const override { return model_->thread_safe(); }

  std::string describe() const override {
    return "multiclass_wrapper(k=" + std::to_string(k_) + ", " +
           model_->describe() + ")";
  }

 private:
  MulticlassModelPtr model_;
  int k_;
};

}  // namespace

BlackBoxPtr make_rule_blackbox(std::function<int(const FeatureVector&)> rule,
                               std::string description) {
  return std::make_unique<RuleBlackBox>(std::move(rule),
                                        std::move(description));
}

BlackBoxPtr make_linear_blackbox(std::vector<double> weights, double bias) {
  return std::make_unique<LinearBlackBox>(std::move(weights), bias);
}

BlackBoxPtr make_external_blackbox(const std::string& command) {
  return std::make_unique<ExternalBlackBox>(command);
}

MulticlassModelPtr make_function_multiclass(
    std::function<int(const FeatureVector&)> fn, std::string description) {
  return std::make_shared<FunctionMulticlass>(std::move(fn),
                                              std::move(description));
}

MulticlassModelPtr make_external_multiclass(const std::string& command) {
  return std::make_shared<ExternalMulticlass>(command);
}

BlackBoxPtr wrap_multiclass(MulticlassModelPtr model, int k) {
  if (!model) throw std::invalid_argument("wrap_multiclass: null model");
  return std::make_unique<MulticlassWrapper>(std::move(model), k);
}

}  // namespace mes
