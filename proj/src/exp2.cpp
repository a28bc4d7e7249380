#include "combopt/exp2.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "combopt/numeric.hpp"

namespace combopt {

Exp2Player::Exp2Player(const ActionSet& set, double eta, double gamma,
                       FeedbackMode mode)
    : set_(&set), eta_(eta), gamma_(gamma), mode_(mode) {
  if (!set.enumerable()) {
    throw std::invalid_argument(
        "exp2: needs explicit vertex weights; set exceeds the enumeration cap");
  }
  if (!(eta > 0.0)) throw std::invalid_argument("exp2: eta must be positive");
  if (mode == FeedbackMode::Bandit) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
      throw std::invalid_argument(
          "exp2: bandit mode needs exploration gamma in (0, 1)");
    }
  } else if (gamma != 0.0) {
    throw std::invalid_argument("exp2: gamma is only used in bandit mode");
  }
  logw_.assign(set.vertices().size(), 0.0);
}

std::vector<double> Exp2Player::probabilities() const {
  return softmax_from_log(logw_);
}

std::vector<double> Exp2Player::sampling_distribution() const {
  std::vector<double> p = probabilities();
  if (gamma_ > 0.0) {
    const double u = gamma_ / static_cast<double>(p.size());
    for (double& pi : p) pi = (1.0 - gamma_) * pi + u;
  }
  return p;
}

ActionVector Exp2Player::act(RngStream& rng) {
  const std::vector<double> p = sampling_distribution();
  return set_->vertices()[rng.categorical(p)];
}

std::vector<double> Exp2Player::estimate(const ActionVector& a,
                                         const Feedback& fb) const {
  const int d = set_->dim();
  switch (fb.mode) {
    case FeedbackMode::Full:
      return fb.values;
    case FeedbackMode::SemiBandit: {
      const std::vector<double> p = probabilities();
      const auto& verts = set_->vertices();
      std::vector<double> coord_prob(d, 0.0);
      for (std::size_t k = 0; k < verts.size(); ++k) {
        for (int i = 0; i < d; ++i) {
          if (verts[k].bits[i]) coord_prob[i] += p[k];
        }
      }
      std::vector<double> out(d, 0.0);
      for (int i = 0; i < d; ++i) {
        if (!a.bits[i]) continue;
        if (coord_prob[i] < 1e-12) {
          throw std::runtime_error(
              "exp2: vanishing coordinate probability in semi-bandit estimate");
        }
        out[i] = fb.values[i] / coord_prob[i];
      }
      return out;
    }
    case FeedbackMode::Bandit: {
      const std::vector<double> p = sampling_distribution();
      const auto& verts = set_->vertices();
      Eigen::MatrixXd P = Eigen::MatrixXd::Zero(d, d);
      for (std::size_t k = 0; k < verts.size(); ++k) {
        const auto sup = verts[k].support();
        for (int i : sup) {
          for (int j : sup) P(i, j) += p[k];
        }
      }
      Eigen::VectorXd target(d);
      for (int i = 0; i < d; ++i) {
        target(i) = a.bits[i] ? fb.scalar : 0.0;
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P);
      if (es.info() != Eigen::Success) {
        throw std::runtime_error("exp2: eigendecomposition of P_t failed");
      }
      const double cutoff = 1e-10 * std::max(0.0, es.eigenvalues().maxCoeff());
      Eigen::VectorXd zt = Eigen::VectorXd::Zero(d);
      for (int k = 0; k < d; ++k) {
        const double lambda = es.eigenvalues()(k);
        if (lambda > cutoff) {
          zt += es.eigenvectors().col(k) *
                (es.eigenvectors().col(k).dot(target) / lambda);
        }
      }
      const double residual = (P * zt - target).cwiseAbs().maxCoeff();
      if (residual > 1e-7 * (1.0 + std::abs(fb.scalar))) {
        throw std::runtime_error(
            "exp2: played action outside the range of P_t (pseudoinverse "
            "residual " +
            std::to_string(residual) + ")");
      }
      return std::vector<double>(zt.data(), zt.data() + d);
    }
  }
  throw std::logic_error("unreachable");
}

void Exp2Player::update(std::span<const double> estimate) {
  if (static_cast<int>(estimate.size()) != set_->dim()) {
    throw std::invalid_argument("exp2 update: dimension mismatch");
  }
  for (double e : estimate) {
    if (!std::isfinite(e)) {
      throw std::invalid_argument("exp2 update: non-finite estimate");
    }
  }
  const auto& verts = set_->vertices();
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < verts.size(); ++k) {
    logw_[k] -= eta_ * verts[k].dot(estimate);
    top = std::max(top, logw_[k]);
  }
  if (!std::isfinite(top)) {
    throw std::runtime_error("exp2: weight overflow; eta * estimate too large");
  }
  for (double& lw : logw_) lw -= top;
}

void Exp2Player::learn(const ActionVector& a, const Feedback& fb) {
  if (fb.mode != mode_) {
    throw std::invalid_argument("exp2: feedback mode mismatch");
  }
  update(estimate(a, fb));
}

}  // namespace combopt
