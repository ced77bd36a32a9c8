#include "seqtest/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <tuple>

#include "seqtest/parallel.hpp"
#include "seqtest/rng.hpp"

namespace seqtest {

namespace {

constexpr long kChunk = 4096;
constexpr long kSprtCap = 100'000'000;

EvalReport finish(std::vector<StageMass> mass, const TestPlan& plan, Method method) {
  EvalReport r;
  r.method = method;
  r.max_n = plan.max_n();
  for (std::size_t k = 0; k < mass.size(); ++k) {
    r.type1 += mass[k].reject;
    r.type2 += mass[k].accept;
    r.ess += static_cast<double>(plan.checkpoints[k].n) * (mass[k].accept + mass[k].reject);
  }
  r.stop_mass = std::move(mass);
  return r;
}

std::vector<StageMass> recursion_mass(const TestPlan& plan, const HypothesisModel& model, double truth,
                                      const GridOptions& grid) {
  SumDensity dens(model, truth, grid);
  std::vector<StageMass> mass;
  mass.reserve(plan.checkpoints.size());
  for (std::size_t k = 0; k < plan.checkpoints.size(); ++k) {
    const auto& cp = plan.checkpoints[k];
    if (k + 1 == plan.checkpoints.size()) mass.push_back(dens.probe(cp.n, cp.lo, cp.hi));
    else mass.push_back(dens.step(cp.n, cp.lo, cp.hi));
  }
  return mass;
}

std::vector<StageMass> product_mass(const TestPlan& plan, const HypothesisModel& model, double truth) {
  std::vector<StageMass> mass;
  double alive = 1.0;
  long prev = 0;
  for (const auto& cp : plan.checkpoints) {
    const long m = cp.n - prev;
    prev = cp.n;
    const double above_lo = model.prob_above(m, cp.lo, truth);
    const double above_hi = model.prob_above(m, cp.hi, truth);
    mass.push_back({alive * model.prob_at_most(m, cp.lo, truth), alive * above_hi});
    alive *= std::max(0.0, above_lo - above_hi);
  }
  return mass;
}

// Running sums for one block of replicates (or replicate pairs).
struct McBlock {
  std::vector<double> accept;
  std::vector<double> reject;
  double ess = 0.0, ess2 = 0.0;
  double rej = 0.0, rej2 = 0.0;
  double acc = 0.0, acc2 = 0.0;
  long max_n = 0;
};

Outcome run_plan(const TestPlan& plan, const HypothesisModel& model, double truth, SplitMix64& eng, bool flip) {
  std::normal_distribution<double> normal;
  const bool lattice = model.is_lattice();
  const bool per_stage = plan.statistic == Statistic::PerStage;
  double sum = 0.0;
  long prev = 0;
  for (std::size_t k = 0; k < plan.checkpoints.size(); ++k) {
    const auto& cp = plan.checkpoints[k];
    const long d = cp.n - prev;
    prev = cp.n;
    double inc = 0.0;
    if (lattice) {
      long succ = 0;
      for (long i = 0; i < d; ++i) {
        const double u = eng.uniform();
        succ += (flip ? 1.0 - u : u) < truth;
      }
      inc = static_cast<double>(succ);
    } else {
      const double z = normal(eng);
      inc = static_cast<double>(d) * truth + std::sqrt(static_cast<double>(d)) * (flip ? -z : z);
    }
    if (per_stage) sum = inc;
    else sum += inc;
    const long n_stat = per_stage ? d : cp.n;
    if (sum <= model.sum_bound(n_stat, cp.lo)) return {cp.n, static_cast<int>(k), false};
    if (sum > model.sum_bound(n_stat, cp.hi)) return {cp.n, static_cast<int>(k), true};
  }
  throw std::logic_error("plan ended without a decision");
}

Outcome run_sprt(const SprtDesign& sprt, const HypothesisModel& model, double truth, SplitMix64& eng, bool flip) {
  std::normal_distribution<double> normal;
  const bool lattice = model.is_lattice();
  double llr = 0.0;
  for (long n = 1; n <= kSprtCap; ++n) {
    if (lattice) {
      const double u = eng.uniform();
      llr += model.llr(((flip ? 1.0 - u : u) < truth) ? 1.0 : 0.0);
    } else {
      const double z = normal(eng);
      llr += model.llr(truth + (flip ? -z : z));
    }
    if (llr >= sprt.A) return {n, -1, true};
    if (llr <= -sprt.B) return {n, -1, false};
  }
  throw std::runtime_error("SPRT replicate exceeded the sample cap");
}

}  // namespace

Outcome simulate_once(const Procedure& proc, const HypothesisModel& model, double truth, SplitMix64& eng, bool flip) {
  if (const auto* plan = std::get_if<TestPlan>(&proc)) return run_plan(*plan, model, truth, eng, flip);
  return run_sprt(std::get<SprtDesign>(proc), model, truth, eng, flip);
}

std::string to_string(Method method) {
  switch (method) {
    case Method::ExactRecursion: return "exact-recursion";
    case Method::ExactProduct: return "exact-product";
    case Method::MonteCarlo: return "monte-carlo";
  }
  return "?";
}

EvalReport eval_exact(const TestPlan& plan, const HypothesisModel& model, double truth, const EvalOptions& opt) {
  plan.validate();
  if (plan.statistic == Statistic::PerStage) return finish(product_mass(plan, model, truth), plan, Method::ExactProduct);

  EvalReport r = finish(recursion_mass(plan, model, truth, opt.grid), plan, Method::ExactRecursion);
  r.ess_check = r.ess;
  if (opt.self_check && !model.is_lattice() && plan.checkpoints.size() > 1) {
    GridOptions fine = opt.grid;
    fine.points = 2 * opt.grid.points - 1;
    const EvalReport rf = finish(recursion_mass(plan, model, truth, fine), plan, Method::ExactRecursion);
    r.ess_check = rf.ess;
    if (!(std::fabs(rf.ess - r.ess) < 1e-6 * r.ess)) {
      r.converged = false;
      char buf[160];
      std::snprintf(buf, sizeof buf, "grid recursion did not converge: ess %.12g at %d points, %.12g at %d points",
                    r.ess, opt.grid.points, rf.ess, fine.points);
      throw NonConvergence(buf, r.ess, rf.ess);
    }
  }
  return r;
}

EvalReport eval_mc(const Procedure& proc, const HypothesisModel& model, double truth, const McConfig& mc) {
  if (mc.reps < 100) throw std::invalid_argument("Monte Carlo needs at least 100 replicates");
  if (mc.antithetic && mc.reps % 2 != 0) throw std::invalid_argument("antithetic Monte Carlo needs an even replicate count");
  const auto* plan = std::get_if<TestPlan>(&proc);
  if (plan) plan->validate();
  const std::size_t ncp = plan ? plan->checkpoints.size() : 0;

  // Units are replicates, or replicate pairs when antithetic.
  const long per_unit = mc.antithetic ? 2 : 1;
  const long units = mc.reps / per_unit;
  const long blocks = (units + kChunk - 1) / kChunk;
  std::vector<McBlock> sums(static_cast<std::size_t>(blocks));

  parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b) {
    McBlock blk;
    blk.accept.assign(ncp, 0.0);
    blk.reject.assign(ncp, 0.0);
    const long u0 = static_cast<long>(b) * kChunk;
    const long u1 = std::min(units, u0 + kChunk);
    for (long u = u0; u < u1; ++u) {
      SplitMix64 base(stream_seed(mc.seed, static_cast<std::uint64_t>(u)));
      double e = 0.0, rj = 0.0, ac = 0.0;
      for (long side = 0; side < per_unit; ++side) {
        SplitMix64 eng = base;  // antithetic twin replays the same stream
        const Outcome o = simulate_once(proc, model, truth, eng, side == 1);
        e += static_cast<double>(o.n);
        (o.rejected ? rj : ac) += 1.0;
        if (o.index >= 0) (o.rejected ? blk.reject : blk.accept)[static_cast<std::size_t>(o.index)] += 1.0;
        blk.max_n = std::max(blk.max_n, o.n);
      }
      e /= static_cast<double>(per_unit);
      rj /= static_cast<double>(per_unit);
      ac /= static_cast<double>(per_unit);
      blk.ess += e;
      blk.ess2 += e * e;
      blk.rej += rj;
      blk.rej2 += rj * rj;
      blk.acc += ac;
      blk.acc2 += ac * ac;
    }
    sums[b] = std::move(blk);
  });

  McBlock tot;
  tot.accept.assign(ncp, 0.0);
  tot.reject.assign(ncp, 0.0);
  for (const auto& blk : sums) {
    for (std::size_t k = 0; k < ncp; ++k) {
      tot.accept[k] += blk.accept[k];
      tot.reject[k] += blk.reject[k];
    }
    tot.ess += blk.ess;
    tot.ess2 += blk.ess2;
    tot.rej += blk.rej;
    tot.rej2 += blk.rej2;
    tot.acc += blk.acc;
    tot.acc2 += blk.acc2;
    tot.max_n = std::max(tot.max_n, blk.max_n);
  }

  const double nu = static_cast<double>(units);
  auto mean_se = [nu](double s, double s2) {
    const double mean = s / nu;
    const double var = std::max(0.0, (s2 - nu * mean * mean) / (nu - 1.0));
    return std::pair<double, double>{mean, std::sqrt(var / nu)};
  };
  EvalReport r;
  r.method = Method::MonteCarlo;
  r.reps = mc.reps;
  r.seed = mc.seed;
  std::tie(r.ess, r.se_ess) = mean_se(tot.ess, tot.ess2);
  std::tie(r.type1, r.se_type1) = mean_se(tot.rej, tot.rej2);
  std::tie(r.type2, r.se_type2) = mean_se(tot.acc, tot.acc2);
  r.max_n = plan ? plan->max_n() : tot.max_n;
  const double reps = static_cast<double>(mc.reps);
  for (std::size_t k = 0; k < ncp; ++k) r.stop_mass.push_back({tot.accept[k] / reps, tot.reject[k] / reps});
  return r;
}

double ess_mixture(const EvalReport& h0, const EvalReport& h1, double pi) {
  if (!(pi >= 0.0 && pi <= 1.0)) throw std::invalid_argument("mixture weight must lie in [0, 1]");
  return (1.0 - pi) * h0.ess + pi * h1.ess;
}

std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("grid needs at least one point");
  if (!(lo <= hi)) throw std::invalid_argument("grid lower end exceeds upper end");
  std::vector<double> g(static_cast<std::size_t>(count));
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  g.back() = hi;
  return g;
}

SweepResult sweep_mu(const Procedure& proc, const HypothesisModel& model, const std::vector<double>& grid,
                     double n_star, bool exact, const McConfig& mc, const EvalOptions& opt) {
  if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
  SweepResult out;
  out.rows.resize(grid.size());
  const auto* plan = std::get_if<TestPlan>(&proc);
  parallel_for(grid.size(), [&](std::size_t i) {
    // Every grid point reuses the same seed (common random numbers).
    const EvalReport r = (exact && plan) ? eval_exact(*plan, model, grid[i], opt) : eval_mc(proc, model, grid[i], mc);
    out.rows[i] = {grid[i], r.ess, r.ess / n_star, r.type1, r.type2, r.se_ess, r.method};
  });
  for (std::size_t i = 1; i < out.rows.size(); ++i)
    if (out.rows[i].ess > out.rows[out.worst].ess) out.worst = i;
  return out;
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
  os << "mu,ess,ess_over_nstar,type1,type2,se_ess,method\n";
  char buf[256];
  for (const auto& r : sweep.rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%s\n", r.mu, r.ess, r.ess_over_nstar, r.type1,
                  r.type2, r.se_ess, to_string(r.method).c_str());
    os << buf;
  }
}

}  // namespace seqtest
