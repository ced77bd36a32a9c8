#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "seqtest/evaluate.hpp"
#include "seqtest/model.hpp"
#include "seqtest/plan.hpp"

namespace seqtest {

// m streams with between l and u signals. kappa = iota = 1 is classical
// familywise control, larger values the generalized version (at least kappa
// false rejections / iota missed signals).
struct HighDimConfig {
  long m = 1;
  long l = 0;
  long u = 1;
  long kappa = 1;
  long iota = 1;
  double alpha = 0.05;
  double beta = 0.05;

  void validate() const;
};

struct CalibratedLevels {
  double alpha_stream = 0.0;
  double beta_stream = 0.0;
};

CalibratedLevels calibrate_fwe(const HighDimConfig& cfg);

// P(Bin(n, p) >= k). Direct summation up to n = 1e4, regularized incomplete
// beta above.
double binomial_tail(long n, double p, long k);

// Largest p with binomial_tail(m - l, p, kappa) <= alpha, and likewise for
// beta with (u, iota).
CalibratedLevels calibrate_gfwe(const HighDimConfig& cfg);

double asymptotic_optimal_ess(const HighDimConfig& cfg, long s, double I0, double I1);

enum class Scenario { KnownCount, UpperBoundOnly };
std::string to_string(Scenario scenario);

struct HighDimRow {
  long u = 0;
  double u_over_m = 0.0;
  Family family = Family::Fsst;
  int K = 1;
  double alpha_stream = 0.0;
  double beta_stream = 0.0;
  double ess_mixture = 0.0;
  int max_stages = 1;  // 0 for the SPRT, which has no stage limit
  double se = 0.0;     // Monte Carlo standard error (SPRT only)
};

struct HighDimSweepOptions {
  int K_max = 10;
  McConfig mc;
  EvalOptions eval;
};

// One row per (u, family). KnownCount uses l = u and pi = u/m, UpperBoundOnly
// l = 0 and pi = u/(2m).
std::vector<HighDimRow> highdim_sweep(const HypothesisModel& model, const HighDimConfig& base,
                                      const std::vector<long>& u_values, Scenario scenario,
                                      const std::vector<Family>& families, const HighDimSweepOptions& opt = {});

// Desk-scale u grid of 30 points: log-spaced small counts followed by u/m in
// steps of 0.05, ending at m - 1 (KnownCount) or m (UpperBoundOnly).
std::vector<long> desk_u_grid(long m, Scenario scenario);

void write_highdim_csv(std::ostream& os, const std::vector<HighDimRow>& rows);

struct FamilywiseEstimate {
  double type1 = 0.0;  // P(at least kappa false rejections)
  double type2 = 0.0;  // P(at least iota missed signals)
  double se_type1 = 0.0;
  double se_type2 = 0.0;
};

// Runs cfg.m independent streams, s of them signals, trials times.
FamilywiseEstimate simulate_familywise(const Procedure& proc, const HypothesisModel& model, const HighDimConfig& cfg,
                                       long s, long trials, std::uint64_t seed);

}  // namespace seqtest
