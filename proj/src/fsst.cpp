#include "seqtest/fsst.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "seqtest/normal.hpp"

namespace seqtest {

namespace {

void check_levels(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("error levels must lie in (0, 1)");
}

}  // namespace

FsstDesign design_fsst(const HypothesisModel& model, double alpha, double beta, bool strict_cstar) {
  check_levels(alpha, beta);
  const auto* g = std::get_if<GaussianMean>(&model.kind());
  if (g == nullptr) return design_fsst_scan(model, alpha, beta);

  const double za = normal_upper_quantile(alpha);
  const double zb = normal_upper_quantile(beta);
  long n = 1;
  if (za + zb > 0.0) {
    const double root = (za + zb) / (2.0 * g->eta);
    n = std::max(1L, static_cast<long>(std::ceil(root * root)));
  }
  const double sn = std::sqrt(static_cast<double>(n));
  const double c = strict_cstar ? model.min_threshold_type1(n, alpha) : g->eta * (za - zb) / sn;
  return {n, c, alpha, beta};
}

FsstDesign design_fsst_scan(const HypothesisModel& model, double alpha, double beta, long n_max) {
  check_levels(alpha, beta);
  const double h1 = model.truth_of(Hypothesis::H1);
  for (long n = 1; n <= n_max; ++n) {
    const double c = model.min_threshold_type1(n, alpha);
    if (model.prob_at_most(n, c, h1) <= beta) return {n, c, alpha, beta};
  }
  throw std::runtime_error("fixed-sample-size scan exceeded n = " + std::to_string(n_max));
}

NStarBounds n_star_bounds(const HypothesisModel& model, double alpha, double beta) {
  check_levels(alpha, beta);
  const double sharp = std::fabs(std::log(beta)) / model.h(1, alpha, beta) + 1.0;
  const double cher = std::fabs(std::log(std::min(alpha, beta))) / model.chernoff() + 1.0;
  return {sharp, cher};
}

}  // namespace seqtest
