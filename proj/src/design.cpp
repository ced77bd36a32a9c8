#include "seqtest/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace seqtest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_levels(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("error levels must lie in (0, 1)");
}

PlanMeta base_meta(Family family, const HypothesisModel& model, double alpha, double beta) {
  PlanMeta m;
  m.family = family;
  m.model = model.describe();
  m.alpha = alpha;
  m.beta = beta;
  return m;
}

struct Opportunity {
  long n;
  bool accept;
  double c;
};

// Coincident accept thresholds keep the largest, coincident reject thresholds
// the smallest; accept and reject at one n become Both; anything at n = N is
// absorbed into the final stage.
std::vector<Checkpoint> merge(const std::vector<Opportunity>& ops, long N, double C) {
  struct Slot {
    double acc = -kInf;
    double rej = kInf;
    bool has_acc = false;
    bool has_rej = false;
  };
  std::map<long, Slot> slots;
  for (const auto& op : ops) {
    if (op.n > N) throw DesignError("opportunity at n=" + std::to_string(op.n) + " beyond the final stage N=" + std::to_string(N));
    if (op.n == N) continue;
    auto& s = slots[op.n];
    if (op.accept) {
      s.acc = std::max(s.acc, op.c);
      s.has_acc = true;
    } else {
      s.rej = std::min(s.rej, op.c);
      s.has_rej = true;
    }
  }
  std::vector<Checkpoint> out;
  for (const auto& [n, s] : slots) {
    if (s.has_acc && s.has_rej) out.push_back(Checkpoint::both(n, s.acc, s.rej));
    else if (s.has_acc) out.push_back(Checkpoint::accept(n, s.acc));
    else out.push_back(Checkpoint::reject(n, s.rej));
  }
  out.push_back(Checkpoint::final_stage(N, C));
  return out;
}

double pow_level(double base, int j) { return std::pow(base, static_cast<double>(j)); }

double geometric_tail_sum(double base, int K) {
  double s = 0.0;
  for (int j = 1; j <= K; ++j) s += pow_level(base, j);
  return s;
}

struct GammaChoice {
  int K = 0;
  double gamma = 0.0;
  double bound = kInf;
};

GammaChoice pick_gamma(const HypothesisModel& model, double alpha, double beta, int side, int K_hat,
                       const GmtOptions& opt) {
  const double lo = side == 0 ? std::max(3.0 * alpha, beta) / 4.0 : std::max(alpha, 3.0 * beta) / 4.0;
  const double hi = 1.0;
  const int K_first = opt.joint_K ? 0 : K_hat;
  GammaChoice best;
  for (int K = K_hat; K >= K_first; --K) {
    if (opt.gamma_rule == GammaRule::ThetaSqrtLog) {
      const double raw = 1.0 / std::sqrt(std::fabs(std::log(side == 0 ? beta : alpha)));
      const double g = std::clamp(raw, lo * (1.0 + 1e-9), hi * (1.0 - 1e-9));
      const double b = gmt_ess_bound(model, alpha, beta, side, K, g);
      if (b < best.bound) best = {K, g, b};
      continue;
    }
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < opt.gamma_grid; ++i) {
      const double g = std::exp(llo + (lhi - llo) * (i + 0.5) / opt.gamma_grid);
      const double b = gmt_ess_bound(model, alpha, beta, side, K, g);
      if (b < best.bound) best = {K, g, b};
    }
  }
  return best;
}

}  // namespace

KHat gmt_k_hat(const HypothesisModel& model, double alpha, double beta) {
  check_levels(alpha, beta);
  const long N = n_star(model, alpha / 4.0, beta / 4.0);
  KHat k;
  for (int j = 1;; ++j) {
    const double g = pow_level(beta / 4.0, j);
    if (!(g >= 3.0 * alpha / 4.0) || n_star(model, g, g) > N) break;
    k.K0 = j;
  }
  for (int j = 1;; ++j) {
    const double g = pow_level(alpha / 4.0, j);
    if (!(g >= 3.0 * beta / 4.0) || n_star(model, g, g) > N) break;
    k.K1 = j;
  }
  return k;
}

double gmt_ess_bound(const HypothesisModel& model, double alpha, double beta, int side, int K, double gamma) {
  const double N = static_cast<double>(n_star(model, alpha / 4.0, beta / 4.0));
  const double base = side == 0 ? beta / 4.0 : alpha / 4.0;
  const double total = side == 0 ? beta : alpha;
  const double rem = 0.75 * total - geometric_tail_sum(base, K);
  double val = side == 0 ? static_cast<double>(n_star(model, gamma, rem))
                         : static_cast<double>(n_star(model, rem, gamma));
  double prev = gamma;
  for (int j = 1; j <= K; ++j) {
    const double g = pow_level(base, j);
    val += static_cast<double>(n_star(model, g, g)) * prev;
    prev = g;
  }
  return val + N * prev;
}

TestPlan design_fsst_plan(const HypothesisModel& model, double alpha, double beta, bool strict_cstar) {
  const FsstDesign f = design_fsst(model, alpha, beta, strict_cstar);
  TestPlan plan;
  plan.meta = base_meta(Family::Fsst, model, alpha, beta);
  plan.checkpoints.push_back(Checkpoint::final_stage(f.n_star, f.c_star));
  plan.meta.budget.push_back({"final", f.n_star, alpha, beta});
  plan.validate();
  return plan;
}

TestPlan design_gmt(const HypothesisModel& model, double alpha, double beta, const GmtOptions& opt) {
  check_levels(alpha, beta);
  const bool strict = opt.strict_cstar;
  const FsstDesign fin = design_fsst(model, alpha / 4.0, beta / 4.0, strict);
  const KHat khat = opt.force_K0 ? KHat{} : gmt_k_hat(model, alpha, beta);
  const GammaChoice g0 = pick_gamma(model, alpha, beta, 0, khat.K0, opt);
  const GammaChoice g1 = pick_gamma(model, alpha, beta, 1, khat.K1, opt);

  TestPlan plan;
  plan.meta = base_meta(Family::Gmt, model, alpha, beta);
  plan.meta.K0 = g0.K;
  plan.meta.K1 = g1.K;
  plan.meta.gamma00 = g0.gamma;
  plan.meta.gamma10 = g1.gamma;

  std::vector<Opportunity> ops;
  auto& budget = plan.meta.budget;
  const double rem0 = 0.75 * beta - geometric_tail_sum(beta / 4.0, g0.K);
  const FsstDesign a0 = design_fsst(model, g0.gamma, rem0, strict);
  ops.push_back({a0.n_star, true, a0.c_star});
  budget.push_back({"accept", a0.n_star, g0.gamma, rem0});
  for (int j = 1; j <= g0.K; ++j) {
    const double g = pow_level(beta / 4.0, j);
    const FsstDesign f = design_fsst(model, g, g, strict);
    ops.push_back({f.n_star, true, f.c_star});
    budget.push_back({"accept", f.n_star, g, g});
  }
  const double rem1 = 0.75 * alpha - geometric_tail_sum(alpha / 4.0, g1.K);
  const FsstDesign r0 = design_fsst(model, rem1, g1.gamma, strict);
  ops.push_back({r0.n_star, false, r0.c_star});
  budget.push_back({"reject", r0.n_star, rem1, g1.gamma});
  for (int j = 1; j <= g1.K; ++j) {
    const double g = pow_level(alpha / 4.0, j);
    const FsstDesign f = design_fsst(model, g, g, strict);
    ops.push_back({f.n_star, false, f.c_star});
    budget.push_back({"reject", f.n_star, g, g});
  }
  budget.push_back({"final", fin.n_star, alpha / 4.0, beta / 4.0});

  plan.checkpoints = merge(ops, fin.n_star, fin.c_star);
  plan.validate();
  return plan;
}

TestPlan design_3st(const HypothesisModel& model, double alpha, double beta, ThreeStageVariant variant) {
  check_levels(alpha, beta);
  if (variant == ThreeStageVariant::GmtK0) {
    GmtOptions opt;
    opt.force_K0 = true;
    TestPlan plan = design_gmt(model, alpha, beta, opt);
    plan.meta.family = Family::ThreeStage;
    return plan;
  }

  const FsstDesign fin = design_fsst(model, alpha / 2.0, beta / 2.0);
  const long N = fin.n_star;
  const double Nd = static_cast<double>(N);
  const double la = std::fabs(std::log(alpha / 2.0));
  const double lb = std::fabs(std::log(beta / 2.0));
  const double t0 = model.truth_of(Hypothesis::H0);
  const double t1 = model.truth_of(Hypothesis::H1);

  // Markov's inequality gives P1(avg LLR_n <= -|log(beta/2)|/n) <= beta/2 for
  // every n, so n is free and is picked to minimise the ESS bound.
  long n0 = N, n1 = N;
  double best0 = kInf, best1 = kInf;
  for (long n = 1; n <= N; ++n) {
    const double nd = static_cast<double>(n);
    const double v0 = nd + Nd * model.prob_above(n, -lb / nd, t0);
    if (v0 < best0) {
      best0 = v0;
      n0 = n;
    }
    const double v1 = nd + Nd * model.prob_at_most(n, la / nd, t1);
    if (v1 < best1) {
      best1 = v1;
      n1 = n;
    }
  }
  const double c0 = -lb / static_cast<double>(n0);
  const double c1 = la / static_cast<double>(n1);

  TestPlan plan;
  plan.meta = base_meta(Family::ThreeStage, model, alpha, beta);
  plan.meta.budget.push_back({"accept", n0, model.prob_above(n0, c0, t0), beta / 2.0});
  plan.meta.budget.push_back({"reject", n1, alpha / 2.0, model.prob_at_most(n1, c1, t1)});
  plan.meta.budget.push_back({"final", N, alpha / 2.0, beta / 2.0});
  plan.checkpoints = merge({{n0, true, c0}, {n1, false, c1}}, N, fin.c_star);
  plan.validate();
  return plan;
}

namespace {

double stage_one_beta(double beta, int K) {
  double s = 0.0;
  for (int j = 2; j <= K; ++j) s += pow_level(beta / 2.0, j);
  return beta - s;
}

}  // namespace

TestPlan design_st(const HypothesisModel& model, double alpha, double beta, int K) {
  check_levels(alpha, beta);
  if (K < 1) throw std::invalid_argument("K must be at least 1");
  if (K == 1) return design_fsst_plan(model, alpha, beta);

  const double a_stage = std::exp(std::log(alpha) / K);
  TestPlan plan;
  plan.statistic = Statistic::PerStage;
  plan.meta = base_meta(Family::St, model, alpha, beta);
  plan.meta.K = K;
  long M = 0;
  for (int j = 1; j <= K; ++j) {
    const double b = j == 1 ? stage_one_beta(beta, K) : pow_level(beta / 2.0, j);
    const FsstDesign f = design_fsst(model, a_stage, b);
    M += f.n_star;
    if (j < K) plan.checkpoints.push_back(Checkpoint::accept(M, f.c_star));
    else plan.checkpoints.push_back(Checkpoint::final_stage(M, f.c_star));
    plan.meta.budget.push_back({j < K ? "accept" : "final", M, a_stage, b});
  }
  plan.validate();
  return plan;
}

TestPlan design_mod_st(const HypothesisModel& model, double alpha, double beta, int K, const GridOptions& grid) {
  check_levels(alpha, beta);
  if (K < 1) throw std::invalid_argument("K must be at least 1");
  if (K == 1) return design_fsst_plan(model, alpha, beta);

  const double log_alpha = std::log(alpha);
  TestPlan plan;
  plan.meta = base_meta(Family::ModSt, model, alpha, beta);
  plan.meta.K = K;

  const FsstDesign first = design_fsst(model, std::exp(log_alpha / K), stage_one_beta(beta, K));
  long M = first.n_star;
  double b_prev = first.c_star;
  plan.meta.budget.push_back({"accept", M, std::exp(log_alpha / K), stage_one_beta(beta, K)});

  SumDensity dens(model, model.truth_of(Hypothesis::H0), grid);
  const bool lattice = model.is_lattice();
  for (int j = 2; j <= K; ++j) {
    plan.checkpoints.push_back(Checkpoint::accept(M, b_prev));
    dens.step(M, b_prev, kInf);
    const double target = std::exp(log_alpha * j / K);
    const double tb = pow_level(beta / 2.0, j);
    const std::string where = "mod-ST stage " + std::to_string(j) + " of K=" + std::to_string(K);
    if (dens.alive() <= target)
      throw DesignError(where + ": H0 survival " + std::to_string(dens.alive()) +
                        " is already below the joint level; the stage is redundant");
    auto joint = [&](long m_tot, double b) { return dens.probe(m_tot, -kInf, b).reject; };

    const long cap = n_star(model, target, tb) + 1000;
    long Mj = -1;
    double bj = 0.0;
    for (long n = 1; n <= cap; ++n) {
      const long m_tot = M + n;
      const double b_II = model.max_threshold_type2(m_tot, tb);
      if (joint(m_tot, b_II) > target) continue;
      Mj = m_tot;
      if (lattice) {
        // Smallest atom index k with joint <= target; joint falls as k grows.
        long lo = -1, hi = static_cast<long>(model.sum_bound(m_tot, b_II));
        if (joint(m_tot, model.stat_of_sum(m_tot, -1.0)) <= target) hi = -1;
        while (hi - lo > 1) {
          const long mid = lo + (hi - lo) / 2;
          if (joint(m_tot, model.stat_of_sum(m_tot, static_cast<double>(mid))) <= target) hi = mid;
          else lo = mid;
        }
        bj = model.stat_of_sum(m_tot, static_cast<double>(hi));
      } else {
        double hi = b_II, lo = b_II - 1.0, width = 1.0;
        while (joint(m_tot, lo) <= target) {
          width *= 2.0;
          lo = b_II - width;
          if (width > 1e6) throw DesignError(where + ": threshold search diverged");
        }
        while (hi - lo > 1e-10) {
          const double mid = 0.5 * (lo + hi);
          if (joint(m_tot, mid) <= target) hi = mid;
          else lo = mid;
        }
        bj = hi;
      }
      break;
    }
    if (Mj < 0) throw DesignError(where + ": no feasible stage size up to n=" + std::to_string(cap));
    plan.meta.budget.push_back({j < K ? "accept" : "final", Mj, target, tb});
    M = Mj;
    b_prev = bj;
  }
  plan.checkpoints.push_back(Checkpoint::final_stage(M, b_prev));
  plan.validate();
  return plan;
}

KChoice choose_K(const HypothesisModel& model, double alpha, double beta, double pi, int K_max, Family family,
                 const EvalOptions& opt) {
  if (K_max < 1) throw std::invalid_argument("K_max must be at least 1");
  if (family != Family::St && family != Family::ModSt) throw std::invalid_argument("choose_K needs st or modst");
  // Candidates are ranked without the double-resolution check; only the
  // chosen plan is re-evaluated with it.
  EvalOptions rank = opt;
  rank.self_check = false;
  KChoice best;
  bool found = false;
  for (int K = 1; K <= K_max; ++K) {
    TestPlan plan;
    try {
      plan = family == Family::St ? design_st(model, alpha, beta, K) : design_mod_st(model, alpha, beta, K, opt.grid);
    } catch (const DesignError&) {
      continue;
    }
    const EvalReport e0 = eval_exact(plan, model, model.truth_of(Hypothesis::H0), rank);
    const EvalReport e1 = eval_exact(plan, model, model.truth_of(Hypothesis::H1), rank);
    const double mix = ess_mixture(e0, e1, pi);
    if (!found || mix < best.ess_mixture) {
      best = {K, mix, std::move(plan)};
      found = true;
    }
  }
  if (!found) throw DesignError("no feasible K up to " + std::to_string(K_max));
  if (opt.self_check) {
    const EvalReport e0 = eval_exact(best.plan, model, model.truth_of(Hypothesis::H0), opt);
    const EvalReport e1 = eval_exact(best.plan, model, model.truth_of(Hypothesis::H1), opt);
    best.ess_mixture = ess_mixture(e0, e1, pi);
  }
  return best;
}

}  // namespace seqtest
