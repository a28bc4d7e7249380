#include "combopt/numeric.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace combopt {

double log_sum_exp(std::span<const double> v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double sum = 0.0;
  for (double x : v) {
    if (std::isfinite(x)) sum += std::exp(x - m);
  }
  return m + std::log(sum);
}

double log_binom(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("log_binom: k out of range");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

std::vector<double> softmax_from_log(std::span<const double> logw) {
  if (logw.empty()) throw std::invalid_argument("softmax_from_log: empty input");
  double m = logw[0];
  for (double x : logw) m = std::max(m, x);
  std::vector<double> p(logw.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logw.size(); ++i) {
    p[i] = std::exp(logw[i] - m);
    sum += p[i];
  }
  for (double& x : p) x /= sum;
  return p;
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace combopt
