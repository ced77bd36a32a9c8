#include "seqtest/highdim.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "seqtest/binomial.hpp"
#include "seqtest/design.hpp"
#include "seqtest/parallel.hpp"
#include "seqtest/rng.hpp"

namespace seqtest {

namespace {

constexpr long kDirectLimit = 10000;

// Largest p in (0, 1) with binomial_tail(n, p, k) <= level, bisection on log p.
double largest_level(long n, long k, double level) {
  double lo = 1e-300, hi = 1.0;
  if (binomial_tail(n, lo, k) > level) throw std::domain_error("calibration level below representable range");
  for (int it = 0; it < 200 && hi / lo - 1.0 > 1e-14; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (binomial_tail(n, mid, k) <= level) lo = mid;
    else hi = mid;
  }
  return lo;
}

}  // namespace

void HighDimConfig::validate() const {
  if (m < 1) throw std::invalid_argument("m must be positive");
  if (!(0 <= l && l <= u && u <= m)) throw std::invalid_argument("need 0 <= l <= u <= m");
  if (u < 1) throw std::invalid_argument("u must be positive");
  if (l >= m) throw std::invalid_argument("need l < m");
  if (kappa < 1 || kappa > m - l) throw std::invalid_argument("need 1 <= kappa <= m - l");
  if (iota < 1 || iota > u) throw std::invalid_argument("need 1 <= iota <= u");
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("error levels must lie in (0, 1)");
}

CalibratedLevels calibrate_fwe(const HighDimConfig& cfg) {
  cfg.validate();
  return {-std::expm1(std::log1p(-cfg.alpha) / static_cast<double>(cfg.m - cfg.l)),
          -std::expm1(std::log1p(-cfg.beta) / static_cast<double>(cfg.u))};
}

double binomial_tail(long n, double p, long k) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("binomial_tail needs 0 <= k <= n");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial_tail needs p in [0, 1]");
  if (k == 0) return 1.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  if (n <= kDirectLimit) return binomial_upper_tail(n, p, k);
  return boost::math::ibeta(static_cast<double>(k), static_cast<double>(n - k + 1), p);
}

CalibratedLevels calibrate_gfwe(const HighDimConfig& cfg) {
  cfg.validate();
  return {largest_level(cfg.m - cfg.l, cfg.kappa, cfg.alpha), largest_level(cfg.u, cfg.iota, cfg.beta)};
}

double asymptotic_optimal_ess(const HighDimConfig& cfg, long s, double I0, double I1) {
  cfg.validate();
  if (s < cfg.l || s > cfg.u) throw std::invalid_argument("need l <= s <= u");
  const double frac = static_cast<double>(s) / static_cast<double>(cfg.m);
  return (1.0 - frac) * std::log(static_cast<double>(cfg.u) / static_cast<double>(cfg.iota)) / I0 +
         frac * std::log(static_cast<double>(cfg.m - cfg.l) / static_cast<double>(cfg.kappa)) / I1;
}

std::string to_string(Scenario scenario) {
  return scenario == Scenario::KnownCount ? "known-count" : "upper-bound";
}

std::vector<long> desk_u_grid(long m, Scenario scenario) {
  if (m < 100000) throw std::invalid_argument("desk u grid expects m >= 1e5");
  std::vector<long> g = {1, 2, 5, 10, 30, 100, 300, 1000, 3000, 10000};
  for (int i = 1; i <= 19; ++i) g.push_back(static_cast<long>(std::llround(0.05 * i * static_cast<double>(m))));
  g.push_back(scenario == Scenario::KnownCount ? m - 1 : m);
  return g;
}

std::vector<HighDimRow> highdim_sweep(const HypothesisModel& model, const HighDimConfig& base,
                                      const std::vector<long>& u_values, Scenario scenario,
                                      const std::vector<Family>& families, const HighDimSweepOptions& opt) {
  if (u_values.empty()) throw std::invalid_argument("u grid is empty");
  const std::size_t nf = families.size();
  std::vector<HighDimRow> rows(u_values.size() * nf);
  const double t0 = model.truth_of(Hypothesis::H0);
  const double t1 = model.truth_of(Hypothesis::H1);

  parallel_for(rows.size(), [&](std::size_t idx) {
    const long u = u_values[idx / nf];
    const Family fam = families[idx % nf];
    HighDimConfig cfg = base;
    cfg.u = u;
    cfg.l = scenario == Scenario::KnownCount ? u : 0;
    const double pi = scenario == Scenario::KnownCount ? static_cast<double>(u) / static_cast<double>(cfg.m)
                                                       : static_cast<double>(u) / (2.0 * static_cast<double>(cfg.m));
    const CalibratedLevels lv =
        (cfg.kappa == 1 && cfg.iota == 1) ? calibrate_fwe(cfg) : calibrate_gfwe(cfg);

    HighDimRow row;
    row.u = u;
    row.u_over_m = static_cast<double>(u) / static_cast<double>(cfg.m);
    row.family = fam;
    row.alpha_stream = lv.alpha_stream;
    row.beta_stream = lv.beta_stream;
    switch (fam) {
      case Family::St:
      case Family::ModSt: {
        const KChoice ch = choose_K(model, lv.alpha_stream, lv.beta_stream, pi, opt.K_max, fam, opt.eval);
        row.K = ch.K;
        row.max_stages = ch.K;
        row.ess_mixture = ch.ess_mixture;
        break;
      }
      case Family::Sprt: {
        const Procedure proc = design_sprt(lv.alpha_stream, lv.beta_stream);
        const EvalReport e0 = eval_mc(proc, model, t0, opt.mc);
        const EvalReport e1 = eval_mc(proc, model, t1, opt.mc);
        row.K = 0;
        row.max_stages = 0;
        row.ess_mixture = ess_mixture(e0, e1, pi);
        row.se = std::hypot((1.0 - pi) * e0.se_ess, pi * e1.se_ess);
        break;
      }
      default: {
        TestPlan plan;
        if (fam == Family::Fsst) plan = design_fsst_plan(model, lv.alpha_stream, lv.beta_stream);
        else if (fam == Family::Gmt) plan = design_gmt(model, lv.alpha_stream, lv.beta_stream);
        else plan = design_3st(model, lv.alpha_stream, lv.beta_stream);
        const EvalReport e0 = eval_exact(plan, model, t0, opt.eval);
        const EvalReport e1 = eval_exact(plan, model, t1, opt.eval);
        row.K = fam == Family::Fsst ? 1 : 0;
        row.max_stages = fam == Family::Fsst ? 1 : 3 + plan.meta.K0 + plan.meta.K1;
        row.ess_mixture = ess_mixture(e0, e1, pi);
        break;
      }
    }
    rows[idx] = row;
  });
  return rows;
}

void write_highdim_csv(std::ostream& os, const std::vector<HighDimRow>& rows) {
  os << "u,u_over_m,family,K,alpha_stream,beta_stream,ess_mixture,max_stages,se\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%ld,%.12g,%s,%d,%.12g,%.12g,%.12g,%d,%.12g\n", r.u, r.u_over_m,
                  to_string(r.family).c_str(), r.K, r.alpha_stream, r.beta_stream, r.ess_mixture, r.max_stages, r.se);
    os << buf;
  }
}

FamilywiseEstimate simulate_familywise(const Procedure& proc, const HypothesisModel& model, const HighDimConfig& cfg,
                                       long s, long trials, std::uint64_t seed) {
  cfg.validate();
  if (s < 0 || s > cfg.m) throw std::invalid_argument("signal count out of range");
  if (trials < 2) throw std::invalid_argument("need at least two trials");
  const double t0 = model.truth_of(Hypothesis::H0);
  const double t1 = model.truth_of(Hypothesis::H1);
  std::vector<unsigned char> fe1(static_cast<std::size_t>(trials)), fe2(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    long false_rej = 0, missed = 0;
    for (long i = 0; i < cfg.m; ++i) {
      SplitMix64 eng(stream_seed(seed, static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(cfg.m) +
                                           static_cast<std::uint64_t>(i)));
      const bool signal = i < s;
      const Outcome o = simulate_once(proc, model, signal ? t1 : t0, eng);
      if (!signal && o.rejected) ++false_rej;
      if (signal && !o.rejected) ++missed;
    }
    fe1[t] = false_rej >= cfg.kappa;
    fe2[t] = missed >= cfg.iota;
  });
  double c1 = 0.0, c2 = 0.0;
  for (long t = 0; t < trials; ++t) {
    c1 += fe1[static_cast<std::size_t>(t)];
    c2 += fe2[static_cast<std::size_t>(t)];
  }
  const double n = static_cast<double>(trials);
  FamilywiseEstimate est;
  est.type1 = c1 / n;
  est.type2 = c2 / n;
  est.se_type1 = std::sqrt(est.type1 * (1.0 - est.type1) / n);
  est.se_type2 = std::sqrt(est.type2 * (1.0 - est.type2) / n);
  return est;
}

}  // namespace seqtest
