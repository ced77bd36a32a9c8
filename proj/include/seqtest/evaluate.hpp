#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "seqtest/model.hpp"
#include "seqtest/plan.hpp"
#include "seqtest/recursion.hpp"
#include "seqtest/rng.hpp"

namespace seqtest {

enum class Method { ExactRecursion, ExactProduct, MonteCarlo };
std::string to_string(Method method);

struct McConfig {
  long reps = 100000;
  std::uint64_t seed = 1;
  bool antithetic = false;
};

// type1 is P(reject H0) and type2 is P(accept H0) under the evaluated truth;
// each is an error probability only on its own side of the problem.
struct EvalReport {
  std::vector<StageMass> stop_mass;
  double type1 = 0.0;
  double type2 = 0.0;
  double ess = 0.0;
  long max_n = 0;
  Method method = Method::ExactRecursion;
  // Monte Carlo only.
  double se_ess = 0.0;
  double se_type1 = 0.0;
  double se_type2 = 0.0;
  long reps = 0;
  std::uint64_t seed = 0;
  // Exact recursion only: ESS at double grid resolution.
  bool converged = true;
  double ess_check = 0.0;
};

struct EvalOptions {
  GridOptions grid;
  bool self_check = true;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double coarse, double fine)
      : std::runtime_error(what), coarse_(coarse), fine_(fine) {}
  double coarse() const { return coarse_; }
  double fine() const { return fine_; }

 private:
  double coarse_;
  double fine_;
};

// Per-stage statistic plans are evaluated as products of independent stage
// probabilities, cumulative plans by the boundary-crossing recursion.
EvalReport eval_exact(const TestPlan& plan, const HypothesisModel& model, double truth, const EvalOptions& opt = {});

using Procedure = std::variant<TestPlan, SprtDesign>;

struct Outcome {
  long n = 0;
  int index = -1;  // checkpoint index, -1 for SPRT
  bool rejected = false;
};

// One replicate; flip replays the stream antithetically.
Outcome simulate_once(const Procedure& proc, const HypothesisModel& model, double truth, SplitMix64& eng,
                      bool flip = false);

EvalReport eval_mc(const Procedure& proc, const HypothesisModel& model, double truth, const McConfig& mc);

double ess_mixture(const EvalReport& h0, const EvalReport& h1, double pi);

struct SweepRow {
  double mu = 0.0;
  double ess = 0.0;
  double ess_over_nstar = 0.0;
  double type1 = 0.0;
  double type2 = 0.0;
  double se_ess = 0.0;
  Method method = Method::ExactRecursion;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::size_t worst = 0;  // argmax ess
};

// lo, hi inclusive, count equally spaced points.
std::vector<double> linear_grid(double lo, double hi, int count);

// exact selects eval_exact for plans; SPRT always goes through Monte Carlo.
SweepResult sweep_mu(const Procedure& proc, const HypothesisModel& model, const std::vector<double>& grid,
                     double n_star, bool exact, const McConfig& mc = {}, const EvalOptions& opt = {});

void write_sweep_csv(std::ostream& os, const SweepResult& sweep);

}  // namespace seqtest
