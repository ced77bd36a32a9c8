#pragma once

#include <string>
#include <variant>

namespace seqtest {

struct GaussianMean {
  double eta;
};

struct BernoulliOneSided {
  double p0;
  double p1;
};

enum class Hypothesis { H0, H1 };

// A simple-vs-simple testing problem with iid observations. The test
// statistic is the average log-likelihood ratio; every threshold in the
// library lives on that scale.
//
// The sufficient statistic S_n is the running sum of observations for the
// Gaussian model and the success count for the Bernoulli model. Truth values
// are a mean mu or a success probability theta.
class HypothesisModel {
 public:
  static HypothesisModel gaussian(double eta);
  static HypothesisModel bernoulli(double p0, double p1);

  bool is_lattice() const { return std::holds_alternative<BernoulliOneSided>(kind_); }
  const std::variant<GaussianMean, BernoulliOneSided>& kind() const { return kind_; }
  std::string describe() const;

  double I0() const { return I0_; }
  double I1() const { return I1_; }
  double chernoff() const;

  // Rate functions. psi(0, c) needs c >= -I0, psi(1, c) needs c <= I1.
  double psi(int i, double c) const;
  // c with psi0(c) / psi1(c) = u.
  double g_inverse(double u) const;
  double h(int i, double alpha, double beta) const;

  double truth_of(Hypothesis hyp) const;
  double truth_min() const;
  double truth_max() const;

  // P(avg LLR over n samples > c) and P(avg LLR <= c) under truth.
  double prob_above(long n, double c, double truth) const;
  double prob_at_most(long n, double c, double truth) const;
  double single_stage_error(Hypothesis hyp, long n, double c) const;

  // Largest S with avg LLR <= c, on the sum scale. Real valued for the
  // Gaussian model, an integer in [-1, n] for the lattice.
  double sum_bound(long n, double c) const;
  // avg LLR value of sum s after n samples.
  double stat_of_sum(long n, double s) const;
  // LLR increment of one observation x.
  double llr(double x) const;

  // Smallest c with P0(stat > c) <= a; largest c with P1(stat <= c) <= b.
  // Both are exact on the Gaussian scale; lattice versions return atoms.
  double min_threshold_type1(long n, double a) const;
  double max_threshold_type2(long n, double b) const;

 private:
  explicit HypothesisModel(std::variant<GaussianMean, BernoulliOneSided> kind);
  double legendre(double c) const;

  std::variant<GaussianMean, BernoulliOneSided> kind_;
  double I0_ = 0.0;
  double I1_ = 0.0;
  // Bernoulli LLR of a success (a > 0) and a failure (b < 0).
  double a_ = 0.0;
  double b_ = 0.0;
};

}  // namespace seqtest
