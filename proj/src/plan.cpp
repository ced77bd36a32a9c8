#include "seqtest/plan.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace seqtest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

double parse_double(const std::string& tok) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("plan: bad number '" + tok + "'");
  }
  if (used != tok.size()) throw std::invalid_argument("plan: bad number '" + tok + "'");
  return v;
}

long parse_long(const std::string& tok) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(tok, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("plan: bad integer '" + tok + "'");
  }
  if (used != tok.size()) throw std::invalid_argument("plan: bad integer '" + tok + "'");
  return v;
}

CheckpointKind parse_kind(const std::string& tag) {
  if (tag == "accept") return CheckpointKind::Accept;
  if (tag == "reject") return CheckpointKind::Reject;
  if (tag == "both") return CheckpointKind::Both;
  if (tag == "final") return CheckpointKind::Final;
  throw std::invalid_argument("plan: unknown checkpoint rule '" + tag + "'");
}

}  // namespace

std::string to_string(CheckpointKind kind) {
  switch (kind) {
    case CheckpointKind::Accept: return "accept";
    case CheckpointKind::Reject: return "reject";
    case CheckpointKind::Both: return "both";
    case CheckpointKind::Final: return "final";
  }
  return "?";
}

std::string to_string(Family family) {
  switch (family) {
    case Family::Fsst: return "fsst";
    case Family::ThreeStage: return "3st";
    case Family::Gmt: return "gmt";
    case Family::St: return "st";
    case Family::ModSt: return "modst";
    case Family::Sprt: return "sprt";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "fsst") return Family::Fsst;
  if (name == "3st") return Family::ThreeStage;
  if (name == "gmt") return Family::Gmt;
  if (name == "st") return Family::St;
  if (name == "modst") return Family::ModSt;
  if (name == "sprt") return Family::Sprt;
  throw std::invalid_argument("unknown test family '" + name + "'");
}

Checkpoint Checkpoint::accept(long n, double c) { return {n, CheckpointKind::Accept, c, kInf}; }
Checkpoint Checkpoint::reject(long n, double c) { return {n, CheckpointKind::Reject, -kInf, c}; }
Checkpoint Checkpoint::both(long n, double c_acc, double c_rej) { return {n, CheckpointKind::Both, c_acc, c_rej}; }
Checkpoint Checkpoint::final_stage(long n, double c) { return {n, CheckpointKind::Final, c, c}; }

int TestPlan::opportunity_count() const {
  int count = 0;
  for (const auto& cp : checkpoints) count += cp.kind == CheckpointKind::Both ? 2 : 1;
  return count;
}

void TestPlan::validate() const {
  if (checkpoints.empty()) throw std::invalid_argument("plan has no checkpoints");
  long prev = 0;
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    const auto& cp = checkpoints[i];
    const std::string where = "checkpoint " + std::to_string(i) + " (n=" + std::to_string(cp.n) + ")";
    if (cp.n <= prev) throw std::invalid_argument(where + ": sample sizes must increase strictly from 1");
    prev = cp.n;
    if (std::isnan(cp.lo) || std::isnan(cp.hi)) throw std::invalid_argument(where + ": NaN threshold");
    const bool last = i + 1 == checkpoints.size();
    if ((cp.kind == CheckpointKind::Final) != last)
      throw std::invalid_argument(where + ": exactly one final checkpoint, at the largest n");
    switch (cp.kind) {
      case CheckpointKind::Accept:
        if (cp.hi != kInf) throw std::invalid_argument(where + ": accept-only rule with a reject threshold");
        break;
      case CheckpointKind::Reject:
        if (cp.lo != -kInf) throw std::invalid_argument(where + ": reject-only rule with an accept threshold");
        break;
      case CheckpointKind::Both:
        if (!(cp.lo <= cp.hi)) throw std::invalid_argument(where + ": accept threshold above reject threshold");
        break;
      case CheckpointKind::Final:
        if (cp.lo != cp.hi) throw std::invalid_argument(where + ": final rule needs one threshold");
        break;
    }
  }
  if (statistic == Statistic::PerStage && meta.family != Family::St)
    throw std::invalid_argument("per-stage statistic is reserved for ST plans");
}

double TestPlan::budget_type1() const {
  double s = 0.0;
  for (const auto& b : meta.budget)
    if (b.role != "accept") s += b.type1;
  return s;
}

double TestPlan::budget_type2() const {
  double s = 0.0;
  for (const auto& b : meta.budget)
    if (b.role != "reject") s += b.type2;
  return s;
}

SprtDesign design_sprt(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("error levels must lie in (0, 1)");
  return {std::fabs(std::log(alpha)), std::fabs(std::log(beta))};
}

void write_plan(std::ostream& os, const TestPlan& plan) {
  const auto& m = plan.meta;
  os << "format seqtest-plan 1\n";
  os << "model " << m.model << "\n";
  os << "family " << to_string(m.family) << "\n";
  os << "statistic " << (plan.statistic == Statistic::PerStage ? "per-stage" : "cumulative") << "\n";
  os << "alpha " << fmt(m.alpha, 17) << "\n";
  os << "beta " << fmt(m.beta, 17) << "\n";
  os << "K0 " << m.K0 << "\nK1 " << m.K1 << "\nK " << m.K << "\n";
  os << "gamma00 " << fmt(m.gamma00, 17) << "\n";
  os << "gamma10 " << fmt(m.gamma10, 17) << "\n";
  for (const auto& b : m.budget)
    os << "budget " << b.role << " " << b.n << " " << fmt(b.type1, 17) << " " << fmt(b.type2, 17) << "\n";
  for (const auto& cp : plan.checkpoints) {
    os << "checkpoint " << cp.n << " " << to_string(cp.kind);
    switch (cp.kind) {
      case CheckpointKind::Accept: os << " " << fmt(cp.lo, 12); break;
      case CheckpointKind::Reject: os << " " << fmt(cp.hi, 12); break;
      case CheckpointKind::Both: os << " " << fmt(cp.lo, 12) << " " << fmt(cp.hi, 12); break;
      case CheckpointKind::Final: os << " " << fmt(cp.lo, 12); break;
    }
    os << "\n";
  }
  os << "end\n";
}

TestPlan read_plan(std::istream& is) {
  TestPlan plan;
  std::string line;
  bool header = false, ended = false;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (ended) throw std::invalid_argument("plan: content after 'end' on line " + std::to_string(lineno));
    auto need = [&](std::size_t count) {
      if (tok.size() != count)
        throw std::invalid_argument("plan: line " + std::to_string(lineno) + " expects " + std::to_string(count - 1) +
                                    " value(s) after '" + tok[0] + "'");
    };
    const std::string& key = tok[0];
    if (!header) {
      if (tok.size() != 3 || key != "format" || tok[1] != "seqtest-plan")
        throw std::invalid_argument("plan: missing 'format seqtest-plan' header");
      if (tok[2] != "1") throw std::invalid_argument("plan: unsupported format version " + tok[2]);
      header = true;
      continue;
    }
    if (key == "model") { need(2); plan.meta.model = tok[1]; }
    else if (key == "family") { need(2); plan.meta.family = parse_family(tok[1]); }
    else if (key == "statistic") {
      need(2);
      if (tok[1] == "per-stage") plan.statistic = Statistic::PerStage;
      else if (tok[1] == "cumulative") plan.statistic = Statistic::Cumulative;
      else throw std::invalid_argument("plan: unknown statistic '" + tok[1] + "'");
    }
    else if (key == "alpha") { need(2); plan.meta.alpha = parse_double(tok[1]); }
    else if (key == "beta") { need(2); plan.meta.beta = parse_double(tok[1]); }
    else if (key == "K0") { need(2); plan.meta.K0 = static_cast<int>(parse_long(tok[1])); }
    else if (key == "K1") { need(2); plan.meta.K1 = static_cast<int>(parse_long(tok[1])); }
    else if (key == "K") { need(2); plan.meta.K = static_cast<int>(parse_long(tok[1])); }
    else if (key == "gamma00") { need(2); plan.meta.gamma00 = parse_double(tok[1]); }
    else if (key == "gamma10") { need(2); plan.meta.gamma10 = parse_double(tok[1]); }
    else if (key == "budget") {
      need(5);
      plan.meta.budget.push_back({tok[1], parse_long(tok[2]), parse_double(tok[3]), parse_double(tok[4])});
    }
    else if (key == "checkpoint") {
      if (tok.size() < 4) throw std::invalid_argument("plan: short checkpoint on line " + std::to_string(lineno));
      const long n = parse_long(tok[1]);
      const auto kind = parse_kind(tok[2]);
      if (kind == CheckpointKind::Both) {
        need(5);
        plan.checkpoints.push_back(Checkpoint::both(n, parse_double(tok[3]), parse_double(tok[4])));
      } else {
        need(4);
        const double c = parse_double(tok[3]);
        if (kind == CheckpointKind::Accept) plan.checkpoints.push_back(Checkpoint::accept(n, c));
        else if (kind == CheckpointKind::Reject) plan.checkpoints.push_back(Checkpoint::reject(n, c));
        else plan.checkpoints.push_back(Checkpoint::final_stage(n, c));
      }
    }
    else if (key == "end") { need(1); ended = true; }
    else throw std::invalid_argument("plan: unknown key '" + key + "' on line " + std::to_string(lineno));
  }
  if (!header) throw std::invalid_argument("plan: empty input");
  if (!ended) throw std::invalid_argument("plan: missing 'end'");
  plan.validate();
  return plan;
}

std::string plan_to_string(const TestPlan& plan) {
  std::ostringstream os;
  write_plan(os, plan);
  return os.str();
}

TestPlan plan_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_plan(is);
}

}  // namespace seqtest
