#include "combopt/environments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace combopt {

FeedbackMode parse_feedback_mode(const std::string& s) {
  if (s == "full") return FeedbackMode::Full;
  if (s == "semi") return FeedbackMode::SemiBandit;
  if (s == "bandit") return FeedbackMode::Bandit;
  throw std::invalid_argument("unknown feedback mode: " + s);
}

std::string feedback_mode_name(FeedbackMode mode) {
  switch (mode) {
    case FeedbackMode::Full: return "full";
    case FeedbackMode::SemiBandit: return "semi";
    case FeedbackMode::Bandit: return "bandit";
  }
  return "?";
}

Feedback observe(FeedbackMode mode, const ActionVector& a,
                 std::span<const double> z) {
  if (a.bits.size() != z.size()) {
    throw std::invalid_argument("observe: dimension mismatch");
  }
  Feedback fb;
  fb.mode = mode;
  switch (mode) {
    case FeedbackMode::Full:
      fb.values.assign(z.begin(), z.end());
      break;
    case FeedbackMode::SemiBandit:
      fb.values.resize(z.size());
      for (std::size_t i = 0; i < z.size(); ++i) {
        fb.values[i] = a.bits[i] ? z[i] : 0.0;
      }
      break;
    case FeedbackMode::Bandit:
      fb.scalar = a.dot(z);
      break;
  }
  return fb;
}

double Adversary::best_expected_round_loss() const {
  throw std::logic_error("best_expected_round_loss: adversary is not stochastic");
}

namespace {

void check_range(std::span<const double> z) {
  for (double zi : z) {
    if (!(zi >= 0.0 && zi <= 1.0)) {
      throw std::invalid_argument("adversary: loss outside [0,1]");
    }
  }
}

class AlternatingAdversary final : public Adversary {
 public:
  explicit AlternatingAdversary(int d) : d_(d), descriptor_("alternating") {
    if (d < 4 || d % 4 != 0) {
      throw std::invalid_argument("alternating: d must be a positive multiple of 4");
    }
  }

  std::vector<double> loss_vector(long t, RngStream&) override {
    std::vector<double> z(d_, 0.0);
    const int half = d_ / 2;
    const int quarter = d_ / 4;
    const int start = (t % 2 == 1) ? half : half + quarter;
    for (int i = 0; i < quarter; ++i) z[start + i] = 1.0;
    return z;
  }

  const std::string& describe() const override { return descriptor_; }
  std::unique_ptr<Adversary> clone() const override {
    return std::make_unique<AlternatingAdversary>(*this);
  }

 private:
  int d_;
  std::string descriptor_;
};

class EpsilonSkewAdversary final : public Adversary {
 public:
  EpsilonSkewAdversary(int d, double eps) : d_(d), eps_(eps) {
    if (d < 4 || d % 4 != 0) {
      throw std::invalid_argument("epsskew: d must be a positive multiple of 4");
    }
    if (!(eps > 0.0 && eps <= 1.0)) {
      throw std::invalid_argument("epsskew: eps must lie in (0, 1]");
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "epsskew:eps=%g", eps);
    descriptor_ = buf;
  }

  std::vector<double> loss_vector(long, RngStream&) override {
    std::vector<double> z(d_, 0.0);
    const int quarter = d_ / 4;
    for (int i = 0; i < quarter; ++i) z[i] = 1.0 - eps_;
    for (int i = quarter; i < 2 * quarter; ++i) z[i] = 1.0;
    return z;
  }

  const std::string& describe() const override { return descriptor_; }
  std::unique_ptr<Adversary> clone() const override {
    return std::make_unique<EpsilonSkewAdversary>(*this);
  }

 private:
  int d_;
  double eps_;
  std::string descriptor_;
};

class AlphaAdversary final : public Adversary {
 public:
  AlphaAdversary(const ActionSet& set, const ActionVector& alpha, double eps,
                 std::string descriptor)
      : eps_(eps), descriptor_(std::move(descriptor)) {
    if (set.kind() != SetKind::ParallelGames) {
      throw std::invalid_argument("alpha adversary: needs a pgames action set");
    }
    if (alpha.dim() != set.dim() || set.index_of(alpha) < 0) {
      throw std::invalid_argument("alpha adversary: alpha is not in the action set");
    }
    if (!(eps >= 0.0 && eps < 0.5)) {
      throw std::invalid_argument("alpha adversary: eps must lie in [0, 1/2)");
    }
    means_.resize(set.dim());
    for (int i = 0; i < set.dim(); ++i) {
      means_[i] = 0.5 - eps * (alpha.bits[i] ? 1.0 : 0.0);
    }
    best_round_loss_ = static_cast<double>(set.weight()) * (0.5 - eps);
  }

  std::vector<double> loss_vector(long, RngStream& env) override {
    std::vector<double> z(means_.size());
    for (std::size_t i = 0; i < means_.size(); ++i) {
      z[i] = env.bernoulli(means_[i]) ? 1.0 : 0.0;
    }
    return z;
  }

  bool stochastic() const override { return true; }
  double best_expected_round_loss() const override { return best_round_loss_; }
  const std::string& describe() const override { return descriptor_; }
  std::unique_ptr<Adversary> clone() const override {
    return std::make_unique<AlphaAdversary>(*this);
  }

  std::span<const double> means() const { return means_; }

 private:
  double eps_;
  std::vector<double> means_;
  double best_round_loss_ = 0.0;
  std::string descriptor_;
};

class IidUniformAdversary final : public Adversary {
 public:
  explicit IidUniformAdversary(int d, int m) : d_(d), m_(m), descriptor_("iid") {}

  std::vector<double> loss_vector(long, RngStream& env) override {
    std::vector<double> z(d_);
    for (double& zi : z) zi = env.uniform();
    return z;
  }

  bool stochastic() const override { return true; }
  double best_expected_round_loss() const override { return 0.5 * m_; }
  const std::string& describe() const override { return descriptor_; }
  std::unique_ptr<Adversary> clone() const override {
    return std::make_unique<IidUniformAdversary>(*this);
  }

 private:
  int d_;
  int m_;
  std::string descriptor_;
};

class FixedSequenceAdversary final : public Adversary {
 public:
  FixedSequenceAdversary(std::vector<std::vector<double>> losses,
                         std::string descriptor)
      : losses_(std::move(losses)), descriptor_(std::move(descriptor)) {
    if (losses_.empty()) {
      throw std::invalid_argument("fixed sequence: no rounds");
    }
    for (const auto& z : losses_) {
      if (z.size() != losses_[0].size()) {
        throw std::invalid_argument("fixed sequence: ragged rows");
      }
      check_range(z);
    }
  }

  std::vector<double> loss_vector(long t, RngStream&) override {
    if (t < 1 || t > static_cast<long>(losses_.size())) {
      throw std::out_of_range("fixed sequence: round " + std::to_string(t) +
                              " beyond the " + std::to_string(losses_.size()) +
                              " provided");
    }
    return losses_[t - 1];
  }

  const std::string& describe() const override { return descriptor_; }
  std::unique_ptr<Adversary> clone() const override {
    return std::make_unique<FixedSequenceAdversary>(*this);
  }

 private:
  std::vector<std::vector<double>> losses_;
  std::string descriptor_;
};

}  // namespace

std::unique_ptr<Adversary> alternating_adversary(int d) {
  return std::make_unique<AlternatingAdversary>(d);
}

std::unique_ptr<Adversary> epsilon_skew_adversary(int d, double eps) {
  return std::make_unique<EpsilonSkewAdversary>(d, eps);
}

std::unique_ptr<Adversary> alpha_adversary(const ActionSet& set,
                                           const ActionVector& alpha,
                                           double eps) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "alpha:eps=%g,alpha=%ld", eps,
                set.index_of(alpha));
  return std::make_unique<AlphaAdversary>(set, alpha, eps, buf);
}

std::unique_ptr<Adversary> iid_uniform_adversary(int d, int m) {
  return std::make_unique<IidUniformAdversary>(d, m);
}

std::unique_ptr<Adversary> fixed_sequence_adversary(
    std::vector<std::vector<double>> losses) {
  return std::make_unique<FixedSequenceAdversary>(std::move(losses),
                                                  "file:<inline>");
}

std::unique_ptr<Adversary> fixed_sequence_from_file(const std::string& path,
                                                    int d) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("fixed sequence: cannot open " + path);
  std::vector<std::vector<double>> losses;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    std::vector<double> row;
    double v;
    while (ss >> v) row.push_back(v);
    if (static_cast<int>(row.size()) != d) {
      throw std::invalid_argument("fixed sequence: row with " +
                                  std::to_string(row.size()) +
                                  " entries, expected " + std::to_string(d));
    }
    losses.push_back(std::move(row));
  }
  return std::make_unique<FixedSequenceAdversary>(std::move(losses),
                                                  "file:" + path);
}

std::unique_ptr<Adversary> make_adversary(const std::string& descriptor,
                                          const ActionSet& set) {
  if (descriptor == "alternating") return alternating_adversary(set.dim());
  if (descriptor == "iid") return iid_uniform_adversary(set.dim(), set.weight());
  const auto colon = descriptor.find(':');
  const std::string kind = descriptor.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? "" : descriptor.substr(colon + 1);
  if (kind == "file") return fixed_sequence_from_file(rest, set.dim());
  if (kind == "epsskew" || kind == "alpha") {
    double eps = 0.0;
    long alpha_index = 0;
    bool have_eps = false;
    std::istringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("bad adversary parameter: " + item);
      }
      const std::string key = item.substr(0, eq);
      const std::string value = item.substr(eq + 1);
      if (key == "eps") {
        eps = std::stod(value);
        have_eps = true;
      } else if (key == "alpha" && kind == "alpha") {
        alpha_index = std::stol(value);
      } else {
        throw std::invalid_argument("unknown adversary parameter: " + key);
      }
    }
    if (!have_eps) throw std::invalid_argument(kind + ": missing eps");
    if (kind == "epsskew") return epsilon_skew_adversary(set.dim(), eps);
    const auto& verts = set.vertices();
    if (alpha_index < 0 || alpha_index >= static_cast<long>(verts.size())) {
      throw std::invalid_argument("alpha: index out of range");
    }
    return alpha_adversary(set, verts[alpha_index], eps);
  }
  throw std::invalid_argument("unknown adversary: " + descriptor);
}

}  // namespace combopt
