#include "seqtest/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "seqtest/binomial.hpp"
#include "seqtest/normal.hpp"

namespace seqtest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string shortest(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

HypothesisModel::HypothesisModel(std::variant<GaussianMean, BernoulliOneSided> kind) : kind_(kind) {
  if (auto* g = std::get_if<GaussianMean>(&kind_)) {
    if (!(g->eta > 0.0) || !std::isfinite(g->eta)) throw std::invalid_argument("gaussian eta must be positive");
    I0_ = I1_ = 2.0 * g->eta * g->eta;
  } else {
    const auto& b = std::get<BernoulliOneSided>(kind_);
    if (!(b.p0 > 0.0 && b.p0 < b.p1 && b.p1 < 1.0))
      throw std::invalid_argument("bernoulli requires 0 < p0 < p1 < 1");
    a_ = std::log(b.p1 / b.p0);
    b_ = std::log1p(-b.p1) - std::log1p(-b.p0);
    // KL(f_i || f_j) for Bernoulli laws.
    I0_ = -(b.p0 * a_ + (1.0 - b.p0) * b_);
    I1_ = b.p1 * a_ + (1.0 - b.p1) * b_;
  }
}

HypothesisModel HypothesisModel::gaussian(double eta) { return HypothesisModel(GaussianMean{eta}); }

HypothesisModel HypothesisModel::bernoulli(double p0, double p1) {
  return HypothesisModel(BernoulliOneSided{p0, p1});
}

std::string HypothesisModel::describe() const {
  if (auto* g = std::get_if<GaussianMean>(&kind_)) return "gaussian:" + shortest(g->eta);
  const auto& b = std::get<BernoulliOneSided>(kind_);
  return "bernoulli:" + shortest(b.p0) + "," + shortest(b.p1);
}

double HypothesisModel::chernoff() const { return psi(0, 0.0); }

// sup over all real t of t*c - log E0[exp(t * LLR)] for the Bernoulli model.
double HypothesisModel::legendre(double c) const {
  const auto& bm = std::get<BernoulliOneSided>(kind_);
  const double p0 = bm.p0, q0 = 1.0 - bm.p0;
  if (c > a_ || c < b_) return kInf;
  if (c == a_) return -std::log(p0);
  if (c == b_) return -std::log(q0);

  auto cgf = [&](double t) {
    const double m = std::max(t * a_, t * b_);
    return m + std::log(p0 * std::exp(t * a_ - m) + q0 * std::exp(t * b_ - m));
  };
  auto tilted = [&](double t) { return 1.0 / (1.0 + (q0 / p0) * std::exp(t * (b_ - a_))); };
  auto slope = [&](double t) { return b_ + (a_ - b_) * tilted(t); };
  auto f = [&](double t) { return t * c - cgf(t); };

  double lo = -1.0, hi = 1.0;
  while (slope(lo) > c) lo *= 2.0;
  while (slope(hi) < c) hi *= 2.0;

  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-9 * (1.0 + std::fabs(lo)); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    const double p = tilted(t);
    const double curv = (a_ - b_) * (a_ - b_) * p * (1.0 - p);
    if (!(curv > 0.0)) break;
    const double step = (c - slope(t)) / curv;
    t += step;
    if (std::fabs(step) < 1e-14 * (1.0 + std::fabs(t))) break;
  }
  return std::max(0.0, f(t));
}

double HypothesisModel::psi(int i, double c) const {
  if (i != 0 && i != 1) throw std::invalid_argument("psi index must be 0 or 1");
  if (std::isnan(c) || (i == 0 && c < -I0_) || (i == 1 && c > I1_))
    throw std::domain_error("rate function undefined at c");
  if (!is_lattice()) {
    const double I = I0_;
    const double d = i == 0 ? I + c : I - c;
    return d * d / (4.0 * I);
  }
  const double v = legendre(c);
  return i == 0 ? v : v - c;
}

double HypothesisModel::g_inverse(double u) const {
  if (!(u > 0.0) || !std::isfinite(u)) throw std::domain_error("g_inverse needs u > 0");
  if (!is_lattice()) {
    const double r = std::sqrt(u);
    return I0_ * (r - 1.0) / (r + 1.0);
  }
  double lo = -I0_, hi = I1_;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double p1 = psi(1, mid);
    if (psi(0, mid) < u * p1) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double HypothesisModel::h(int i, double alpha, double beta) const {
  const double la = std::fabs(std::log(alpha)), lb = std::fabs(std::log(beta));
  if (!is_lattice()) {
    const double r = i == 0 ? std::sqrt(lb / la) : std::sqrt(la / lb);
    return I0_ / ((1.0 + r) * (1.0 + r));
  }
  return psi(i, g_inverse(la / lb));
}

double HypothesisModel::truth_of(Hypothesis hyp) const {
  if (auto* g = std::get_if<GaussianMean>(&kind_)) return hyp == Hypothesis::H0 ? -g->eta : g->eta;
  const auto& b = std::get<BernoulliOneSided>(kind_);
  return hyp == Hypothesis::H0 ? b.p0 : b.p1;
}

double HypothesisModel::truth_min() const { return is_lattice() ? 0.0 : -kInf; }
double HypothesisModel::truth_max() const { return is_lattice() ? 1.0 : kInf; }

double HypothesisModel::sum_bound(long n, double c) const {
  const double nd = static_cast<double>(n);
  if (auto* g = std::get_if<GaussianMean>(&kind_)) return nd * c / (2.0 * g->eta);
  if (c == kInf) return nd;
  if (c == -kInf) return -1.0;
  const double x = nd * (c - b_) / (a_ - b_);
  const double k = std::floor(x + 1e-7);
  return std::clamp(k, -1.0, nd);
}

double HypothesisModel::stat_of_sum(long n, double s) const {
  const double nd = static_cast<double>(n);
  if (auto* g = std::get_if<GaussianMean>(&kind_)) return 2.0 * g->eta * s / nd;
  return (s * a_ + (nd - s) * b_) / nd;
}

double HypothesisModel::llr(double x) const {
  if (auto* g = std::get_if<GaussianMean>(&kind_)) return 2.0 * g->eta * x;
  return x > 0.5 ? a_ : b_;
}

double HypothesisModel::prob_above(long n, double c, double truth) const {
  if (n < 1) throw std::invalid_argument("sample size must be positive");
  if (c == kInf) return 0.0;
  if (c == -kInf) return 1.0;
  if (auto* g = std::get_if<GaussianMean>(&kind_)) {
    return normal_sf(std::sqrt(static_cast<double>(n)) * (c / (2.0 * g->eta) - truth));
  }
  const long k = static_cast<long>(sum_bound(n, c));
  return binomial_upper_tail(n, truth, k + 1);
}

double HypothesisModel::prob_at_most(long n, double c, double truth) const {
  if (n < 1) throw std::invalid_argument("sample size must be positive");
  if (c == kInf) return 1.0;
  if (c == -kInf) return 0.0;
  if (auto* g = std::get_if<GaussianMean>(&kind_)) {
    return normal_cdf(std::sqrt(static_cast<double>(n)) * (c / (2.0 * g->eta) - truth));
  }
  const long k = static_cast<long>(sum_bound(n, c));
  return binomial_lower_tail(n, truth, k);
}

double HypothesisModel::single_stage_error(Hypothesis hyp, long n, double c) const {
  const double truth = truth_of(hyp);
  return hyp == Hypothesis::H0 ? prob_above(n, c, truth) : prob_at_most(n, c, truth);
}

double HypothesisModel::min_threshold_type1(long n, double a) const {
  if (auto* g = std::get_if<GaussianMean>(&kind_)) {
    return 2.0 * g->eta * (normal_upper_quantile(a) / std::sqrt(static_cast<double>(n)) - g->eta);
  }
  const auto& bm = std::get<BernoulliOneSided>(kind_);
  const auto tails = binomial_tails(n, bm.p0);
  // reject iff S > k, i.e. P0(S >= k + 1) <= a.
  long k = n;
  while (k >= 0 && tails.upper[static_cast<std::size_t>(k)] <= a) --k;
  return stat_of_sum(n, static_cast<double>(k));
}

double HypothesisModel::max_threshold_type2(long n, double b) const {
  if (auto* g = std::get_if<GaussianMean>(&kind_)) {
    return 2.0 * g->eta * (g->eta - normal_upper_quantile(b) / std::sqrt(static_cast<double>(n)));
  }
  const auto& bm = std::get<BernoulliOneSided>(kind_);
  const auto tails = binomial_tails(n, bm.p1);
  long k = -1;
  while (k + 1 <= n && tails.lower[static_cast<std::size_t>(k + 1)] <= b) ++k;
  return stat_of_sum(n, static_cast<double>(k));
}

}  // namespace seqtest
