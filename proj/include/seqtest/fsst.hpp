#pragma once

#include "seqtest/model.hpp"

namespace seqtest {

struct FsstDesign {
  long n_star = 0;
  double c_star = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

// Optimal fixed-sample-size test. Gaussian: closed form, with c_star the
// midpoint of the feasible threshold interval unless strict_cstar asks for its
// left end. Bernoulli: linear scan in n.
FsstDesign design_fsst(const HypothesisModel& model, double alpha, double beta, bool strict_cstar = false);

// Generic scan valid for every model: first n admitting a threshold, and the
// smallest such threshold. Throws std::runtime_error past n_max.
FsstDesign design_fsst_scan(const HypothesisModel& model, double alpha, double beta, long n_max = 2'000'000);

inline long n_star(const HypothesisModel& model, double alpha, double beta) {
  return design_fsst(model, alpha, beta).n_star;
}

struct NStarBounds {
  double sharp;     // |log beta| / h1 + 1
  double chernoff;  // |log(min(alpha, beta))| / C + 1
};
NStarBounds n_star_bounds(const HypothesisModel& model, double alpha, double beta);

}  // namespace seqtest
