#pragma once

#include <span>
#include <vector>

namespace combopt {

// log(sum_i exp(v[i])) with the usual max shift. -inf entries are skipped;
// an empty or all -inf input returns -inf.
double log_sum_exp(std::span<const double> v);

// log C(n, k) via lgamma.
double log_binom(int n, int k);

// exp(logw[i] - max) / sum, normalized to sum to 1.
std::vector<double> softmax_from_log(std::span<const double> logw);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace combopt
