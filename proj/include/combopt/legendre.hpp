#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace combopt {

// Separable Legendre functions on (0, inf)^d used by the mirror-descent
// player. Two families:
//
//   negentropy        F(x) = sum_i x_i log x_i - x_i
//                     gradF = log, gradF* = exp, dual domain R^d
//   power potential   F(x) = -(q/(q-1)) sum_i x_i^{1-1/q},  q > 1
//                     gradF(x) = -x^{-1/q}, gradF*(u) = (-u)^{-q},
//                     dual domain (-inf, 0)^d
//
// The second family is induced by the potential psi(u) = (-u)^{-q}; the
// exponential potential recovers negentropy. Values of F extend to the
// domain closure with the 0 log 0 = 0 convention; gradients are only
// defined strictly inside.
class LegendreFunction {
 public:
  enum class Family { Negentropy, PowerPotential };

  static LegendreFunction negentropy(int dim);
  static LegendreFunction power_potential(double q, int dim);
  // Grammar: negentropy | inf:q=2
  static LegendreFunction parse(const std::string& spec, int dim);

  Family family() const { return family_; }
  double q() const { return q_; }
  int dim() const { return dim_; }
  std::string describe() const;

  // Scalar pieces of the separable function.
  double value1(double x) const;      // f(x), x >= 0
  double grad1(double x) const;       // f'(x), x > 0
  double conj1(double u) const;       // f*(u), u in dual domain
  double grad_star1(double u) const;  // (f*)'(u) = psi(u)
  double psi_prime1(double u) const;  // psi'(u)
  bool in_dual(double u) const;
  // Open upper end of the scalar dual domain (0 for power, +inf for
  // negentropy); the lower end is -inf for both.
  double dual_sup() const;

  double value(std::span<const double> x) const;
  std::vector<double> grad(std::span<const double> x) const;
  std::vector<double> grad_star(std::span<const double> u) const;

 private:
  LegendreFunction(Family family, double q, int dim)
      : family_(family), q_(q), dim_(dim) {}

  Family family_;
  double q_;
  int dim_;
};

// D_F(x, y) = F(x) - F(y) - (x - y).gradF(y); x in the domain closure,
// y strictly inside.
double bregman(const LegendreFunction& F, std::span<const double> x,
               std::span<const double> y);

// D_{F*}(u, v) = F*(u) - F*(v) - (u - v).gradF*(v) on the dual domain.
// Agrees with bregman(F, gradF*(v), gradF*(u)).
double dual_bregman(const LegendreFunction& F, std::span<const double> u,
                    std::span<const double> v);

// Negentropy dual divergence in closed form:
// sum_i e^{v_i} theta(u_i - v_i) with theta(t) = e^t - 1 - t.
double dual_bregman_negentropy_closed_form(std::span<const double> u,
                                           std::span<const double> v);

// Quadratic envelope of the dual divergence for coordinatewise u <= v:
// returns (D_{F*}(u, v), (1/2) sum_i psi'(v_i) (u_i - v_i)^2).
std::pair<double, double> psi_quadratic_bound(const LegendreFunction& F,
                                              std::span<const double> u,
                                              std::span<const double> v);

}  // namespace combopt
