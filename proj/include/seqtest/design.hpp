#pragma once

#include "seqtest/evaluate.hpp"
#include "seqtest/fsst.hpp"
#include "seqtest/model.hpp"
#include "seqtest/plan.hpp"
#include "seqtest/recursion.hpp"

namespace seqtest {

enum class GammaRule { OptimizeEssBound, ThetaSqrtLog };
enum class ThreeStageVariant { LordenMarkov, GmtK0 };

struct GmtOptions {
  GammaRule gamma_rule = GammaRule::OptimizeEssBound;
  // Search K_i in {0..K_i hat} jointly with gamma instead of fixing K_i hat.
  bool joint_K = false;
  // Force K0 = K1 = 0 (used by the 3-Stage variant).
  bool force_K0 = false;
  int gamma_grid = 200;
  bool strict_cstar = false;
};

// Maximum numbers of extra accept / reject opportunities.
struct KHat {
  int K0 = 0;
  int K1 = 0;
};
KHat gmt_k_hat(const HypothesisModel& model, double alpha, double beta);

// Upper bound on the H0 (side 0) or H1 (side 1) expected sample size of a GMT
// as a function of its first inactive level gamma.
double gmt_ess_bound(const HypothesisModel& model, double alpha, double beta, int side, int K, double gamma);

TestPlan design_fsst_plan(const HypothesisModel& model, double alpha, double beta, bool strict_cstar = false);
TestPlan design_gmt(const HypothesisModel& model, double alpha, double beta, const GmtOptions& opt = {});
TestPlan design_3st(const HypothesisModel& model, double alpha, double beta,
                    ThreeStageVariant variant = ThreeStageVariant::LordenMarkov);
TestPlan design_st(const HypothesisModel& model, double alpha, double beta, int K);
TestPlan design_mod_st(const HypothesisModel& model, double alpha, double beta, int K, const GridOptions& grid = {});

// Argmin over K in 1..K_max of (1 - pi) E0 + pi E1, ties toward smaller K.
// family is Family::St or Family::ModSt. K values whose design is infeasible
// are skipped.
struct KChoice {
  int K = 1;
  double ess_mixture = 0.0;
  TestPlan plan;
};
KChoice choose_K(const HypothesisModel& model, double alpha, double beta, double pi, int K_max, Family family,
                 const EvalOptions& opt = {});
inline int choose_K_st(const HypothesisModel& model, double alpha, double beta, double pi, int K_max) {
  return choose_K(model, alpha, beta, pi, K_max, Family::St).K;
}

class DesignError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace seqtest
