#include "combopt/legendre.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace combopt {

namespace {

void check_dim(const LegendreFunction& F, std::span<const double> x,
               const char* what) {
  if (static_cast<int>(x.size()) != F.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

LegendreFunction LegendreFunction::negentropy(int dim) {
  if (dim < 1) throw std::invalid_argument("negentropy: dim must be positive");
  return LegendreFunction(Family::Negentropy, 0.0, dim);
}

LegendreFunction LegendreFunction::power_potential(double q, int dim) {
  if (dim < 1) throw std::invalid_argument("power potential: dim must be positive");
  if (!(q > 1.0)) throw std::invalid_argument("power potential: q must exceed 1");
  return LegendreFunction(Family::PowerPotential, q, dim);
}

LegendreFunction LegendreFunction::parse(const std::string& spec, int dim) {
  if (spec == "negentropy") return negentropy(dim);
  const std::string prefix = "inf:q=";
  if (spec.rfind(prefix, 0) == 0) {
    const double q = std::stod(spec.substr(prefix.size()));
    return power_potential(q, dim);
  }
  throw std::invalid_argument("unknown legendre spec: " + spec);
}

std::string LegendreFunction::describe() const {
  if (family_ == Family::Negentropy) return "negentropy";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "inf:q=%g", q_);
  return buf;
}

double LegendreFunction::value1(double x) const {
  if (x < 0.0) throw std::domain_error("legendre value: negative coordinate");
  if (x == 0.0) return 0.0;
  if (family_ == Family::Negentropy) return x * std::log(x) - x;
  return -(q_ / (q_ - 1.0)) * std::pow(x, 1.0 - 1.0 / q_);
}

double LegendreFunction::grad1(double x) const {
  if (!(x > 0.0)) {
    throw std::domain_error("legendre gradient: needs a strictly interior point");
  }
  if (family_ == Family::Negentropy) return std::log(x);
  return -std::pow(x, -1.0 / q_);
}

bool LegendreFunction::in_dual(double u) const {
  if (!std::isfinite(u)) return false;
  if (family_ == Family::Negentropy) return true;
  return u < 0.0;
}

double LegendreFunction::dual_sup() const {
  return family_ == Family::Negentropy
             ? std::numeric_limits<double>::infinity()
             : 0.0;
}

double LegendreFunction::conj1(double u) const {
  if (!in_dual(u)) throw std::domain_error("legendre conjugate: point outside dual domain");
  if (family_ == Family::Negentropy) return std::exp(u);
  return std::pow(-u, 1.0 - q_) / (q_ - 1.0);
}

double LegendreFunction::grad_star1(double u) const {
  if (!in_dual(u)) throw std::domain_error("legendre dual map: point outside dual domain");
  if (family_ == Family::Negentropy) return std::exp(u);
  return std::pow(-u, -q_);
}

double LegendreFunction::psi_prime1(double u) const {
  if (!in_dual(u)) throw std::domain_error("psi': point outside dual domain");
  if (family_ == Family::Negentropy) return std::exp(u);
  return q_ * std::pow(-u, -q_ - 1.0);
}

double LegendreFunction::value(std::span<const double> x) const {
  check_dim(*this, x, "legendre value");
  double s = 0.0;
  for (double xi : x) s += value1(xi);
  return s;
}

std::vector<double> LegendreFunction::grad(std::span<const double> x) const {
  check_dim(*this, x, "legendre gradient");
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = grad1(x[i]);
  return g;
}

std::vector<double> LegendreFunction::grad_star(std::span<const double> u) const {
  check_dim(*this, u, "legendre dual map");
  std::vector<double> x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) x[i] = grad_star1(u[i]);
  return x;
}

double bregman(const LegendreFunction& F, std::span<const double> x,
               std::span<const double> y) {
  check_dim(F, x, "bregman");
  check_dim(F, y, "bregman");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += F.value1(x[i]) - F.value1(y[i]) - (x[i] - y[i]) * F.grad1(y[i]);
  }
  return s;
}

double dual_bregman(const LegendreFunction& F, std::span<const double> u,
                    std::span<const double> v) {
  check_dim(F, u, "dual bregman");
  check_dim(F, v, "dual bregman");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    s += F.conj1(u[i]) - F.conj1(v[i]) - (u[i] - v[i]) * F.grad_star1(v[i]);
  }
  return s;
}

double dual_bregman_negentropy_closed_form(std::span<const double> u,
                                           std::span<const double> v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("dual bregman: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double t = u[i] - v[i];
    s += std::exp(v[i]) * (std::expm1(t) - t);
  }
  return s;
}

std::pair<double, double> psi_quadratic_bound(const LegendreFunction& F,
                                              std::span<const double> u,
                                              std::span<const double> v) {
  check_dim(F, u, "psi quadratic bound");
  check_dim(F, v, "psi quadratic bound");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] > v[i]) {
      throw std::invalid_argument(
          "psi quadratic bound: requires u <= v coordinatewise");
    }
  }
  const double lhs = dual_bregman(F, u, v);
  double rhs = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double t = u[i] - v[i];
    rhs += 0.5 * F.psi_prime1(v[i]) * t * t;
  }
  return {lhs, rhs};
}

}  // namespace combopt
