#pragma once

#include <vector>

#include "seqtest/model.hpp"

namespace seqtest {

struct GridOptions {
  int points = 4001;      // odd, Simpson rule
  double width_sd = 8.0;  // grid spans n*mu +- width_sd*sqrt(n)
};

struct StageMass {
  double accept = 0.0;
  double reject = 0.0;
};

// Sub-density of the running sum S_n over the paths that have not stopped
// yet. Gaussian: values on a Simpson grid. Bernoulli: exact pmf over counts.
// Thresholds passed in are on the average-LLR scale.
class SumDensity {
 public:
  SumDensity(const HypothesisModel& model, double truth, GridOptions opt = {});

  long n() const { return n_; }
  double alive() const;

  // Stopping mass at n_next (> n) for the rule "accept if stat <= lo, reject
  // if stat > hi", without changing the state.
  StageMass probe(long n_next, double lo, double hi) const;
  // As probe, then keep only the continuing paths and move to n_next.
  StageMass step(long n_next, double lo, double hi);

 private:
  enum class State { Origin, Grid, Dead };

  StageMass probe_gauss(long n_next, double lo_s, double hi_s) const;
  StageMass probe_lattice(long n_next, long lo_k, long hi_k) const;
  void advance_gauss(long n_next, double lo_s, double hi_s);
  void advance_lattice(long n_next, long lo_k, long hi_k);

  const HypothesisModel* model_;
  double truth_;
  GridOptions opt_;
  long n_ = 0;
  State state_ = State::Origin;
  // Gaussian grid: s_j = x0_ + j*h_, wg_ holds Simpson weight times density.
  double x0_ = 0.0;
  double h_ = 0.0;
  std::vector<double> wg_;
  // Bernoulli: pmf_[s] for s = 0..n.
  std::vector<double> pmf_;
};

}  // namespace seqtest
