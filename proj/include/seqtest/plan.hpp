#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace seqtest {

enum class CheckpointKind { Accept, Reject, Both, Final };
enum class Statistic { Cumulative, PerStage };
enum class Family { Fsst, ThreeStage, Gmt, St, ModSt, Sprt };

std::string to_string(CheckpointKind kind);
std::string to_string(Family family);
Family parse_family(const std::string& name);

// Stop and accept H0 when stat <= lo, stop and reject when stat > hi.
// Accept-only checkpoints carry hi = +inf, reject-only ones lo = -inf, and a
// Final checkpoint has lo == hi.
struct Checkpoint {
  long n = 0;
  CheckpointKind kind = CheckpointKind::Final;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static Checkpoint accept(long n, double c);
  static Checkpoint reject(long n, double c);
  static Checkpoint both(long n, double c_acc, double c_rej);
  static Checkpoint final_stage(long n, double c);
};

// Levels that a checkpoint was designed with. Accept checkpoints spend
// type2 from the overall beta, reject checkpoints spend type1 from alpha and
// the final stage spends both; the other level is a design parameter only.
struct BudgetEntry {
  std::string role;  // accept, reject or final
  long n = 0;
  double type1 = 0.0;
  double type2 = 0.0;
};

struct PlanMeta {
  Family family = Family::Fsst;
  std::string model;
  double alpha = 0.0;
  double beta = 0.0;
  int K0 = 0;
  int K1 = 0;
  int K = 1;
  double gamma00 = std::numeric_limits<double>::quiet_NaN();
  double gamma10 = std::numeric_limits<double>::quiet_NaN();
  std::vector<BudgetEntry> budget;
};

struct TestPlan {
  std::vector<Checkpoint> checkpoints;
  Statistic statistic = Statistic::Cumulative;
  PlanMeta meta;

  long max_n() const { return checkpoints.empty() ? 0 : checkpoints.back().n; }
  // Stopping opportunities: a Both checkpoint counts twice.
  int opportunity_count() const;
  // Throws std::invalid_argument describing the first broken invariant.
  void validate() const;
  // Sum of active type1 and type2 budgets recorded in meta.
  double budget_type1() const;
  double budget_type2() const;
};

struct SprtDesign {
  double A = 0.0;
  double B = 0.0;
};

SprtDesign design_sprt(double alpha, double beta);

// Versioned text record, one checkpoint per line with thresholds at 12
// significant digits.
void write_plan(std::ostream& os, const TestPlan& plan);
TestPlan read_plan(std::istream& is);
std::string plan_to_string(const TestPlan& plan);
TestPlan plan_from_string(const std::string& text);

}  // namespace seqtest
