#pragma once

#include <vector>

namespace seqtest {

// log P(Bin(n, p) = k) for 0 <= k <= n and p in [0, 1].
double binomial_log_pmf(long n, double p, long k);

// Full pmf vector of Bin(n, p), entries 0..n.
std::vector<double> binomial_pmf(long n, double p);

// P(Bin(n, p) >= k) and P(Bin(n, p) <= k), each summed from the side of the
// requested tail so tiny tails keep their relative precision. Arguments
// outside 0..n saturate to 0 or 1.
double binomial_upper_tail(long n, double p, long k);
double binomial_lower_tail(long n, double p, long k);

// Cumulative tables for one pmf vector: upper[k] = P(X >= k), lower[k] = P(X <= k).
struct BinomialTails {
  std::vector<double> upper;
  std::vector<double> lower;
};
BinomialTails binomial_tails(long n, double p);

}  // namespace seqtest
