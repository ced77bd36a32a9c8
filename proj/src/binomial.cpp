#include "seqtest/binomial.hpp"

#include <cmath>
#include <limits>

namespace seqtest {

double binomial_log_pmf(long n, double p, long k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  if (p <= 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return k == n ? 0.0 : -std::numeric_limits<double>::infinity();
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) +
         kd * std::log(p) + (nd - kd) * std::log1p(-p);
}

std::vector<double> binomial_pmf(long n, double p) {
  std::vector<double> pmf(static_cast<std::size_t>(n + 1));
  for (long k = 0; k <= n; ++k) pmf[static_cast<std::size_t>(k)] = std::exp(binomial_log_pmf(n, p, k));
  return pmf;
}

double binomial_upper_tail(long n, double p, long k) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  // Sum the shorter-in-mass tail directly, complement otherwise.
  const double mean = static_cast<double>(n) * p;
  if (static_cast<double>(k) > mean) {
    double sum = 0.0;
    for (long j = n; j >= k; --j) sum += std::exp(binomial_log_pmf(n, p, j));
    return sum > 1.0 ? 1.0 : sum;
  }
  return 1.0 - binomial_lower_tail(n, p, k - 1);
}

double binomial_lower_tail(long n, double p, long k) {
  if (k < 0) return 0.0;
  if (k >= n) return 1.0;
  const double mean = static_cast<double>(n) * p;
  if (static_cast<double>(k) < mean) {
    double sum = 0.0;
    for (long j = 0; j <= k; ++j) sum += std::exp(binomial_log_pmf(n, p, j));
    return sum > 1.0 ? 1.0 : sum;
  }
  return 1.0 - binomial_upper_tail(n, p, k + 1);
}

BinomialTails binomial_tails(long n, double p) {
  const auto pmf = binomial_pmf(n, p);
  const auto size = pmf.size();
  BinomialTails t{std::vector<double>(size), std::vector<double>(size)};
  double acc = 0.0;
  for (std::size_t k = size; k-- > 0;) {
    acc += pmf[k];
    t.upper[k] = acc > 1.0 ? 1.0 : acc;
  }
  acc = 0.0;
  for (std::size_t k = 0; k < size; ++k) {
    acc += pmf[k];
    t.lower[k] = acc > 1.0 ? 1.0 : acc;
  }
  return t;
}

}  // namespace seqtest
