#include "seqtest/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seqtest/binomial.hpp"
#include "seqtest/normal.hpp"

namespace seqtest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
// Kernel cut at 10 standard deviations of the increment.
constexpr double kBand = 10.0;

}  // namespace

SumDensity::SumDensity(const HypothesisModel& model, double truth, GridOptions opt)
    : model_(&model), truth_(truth), opt_(opt) {
  if (opt_.points < 5 || opt_.points % 2 == 0) throw std::invalid_argument("grid points must be odd and >= 5");
  if (model.is_lattice()) {
    if (!(truth > 0.0 && truth < 1.0)) throw std::invalid_argument("bernoulli truth must lie in (0, 1)");
    pmf_ = {1.0};
  } else if (!std::isfinite(truth)) {
    throw std::invalid_argument("gaussian truth must be finite");
  }
}

double SumDensity::alive() const {
  if (model_->is_lattice()) {
    double s = 0.0;
    for (double p : pmf_) s += p;
    return s;
  }
  if (state_ == State::Origin) return 1.0;
  double s = 0.0;
  for (double v : wg_) s += v;
  return s;
}

StageMass SumDensity::probe(long n_next, double lo, double hi) const {
  if (n_next <= n_) throw std::invalid_argument("checkpoints must increase");
  if (model_->is_lattice()) {
    return probe_lattice(n_next, static_cast<long>(model_->sum_bound(n_next, lo)),
                         static_cast<long>(model_->sum_bound(n_next, hi)));
  }
  return probe_gauss(n_next, model_->sum_bound(n_next, lo), model_->sum_bound(n_next, hi));
}

StageMass SumDensity::step(long n_next, double lo, double hi) {
  const StageMass m = probe(n_next, lo, hi);
  if (model_->is_lattice()) {
    advance_lattice(n_next, static_cast<long>(model_->sum_bound(n_next, lo)),
                    static_cast<long>(model_->sum_bound(n_next, hi)));
  } else {
    advance_gauss(n_next, model_->sum_bound(n_next, lo), model_->sum_bound(n_next, hi));
  }
  return m;
}

StageMass SumDensity::probe_gauss(long n_next, double lo_s, double hi_s) const {
  StageMass m;
  if (state_ == State::Dead) return m;
  const double d = static_cast<double>(n_next - n_);
  const double sd = std::sqrt(d);
  const double shift = d * truth_;
  if (state_ == State::Origin) {
    if (lo_s > -kInf) m.accept = normal_cdf((lo_s - shift) / sd);
    if (hi_s < kInf) m.reject = normal_sf((hi_s - shift) / sd);
    else m.reject = 0.0;
    return m;
  }
  const std::size_t G = wg_.size();
  for (std::size_t j = 0; j < G; ++j) {
    const double s = x0_ + h_ * static_cast<double>(j);
    if (lo_s > -kInf) m.accept += wg_[j] * normal_cdf((lo_s - s - shift) / sd);
    if (hi_s < kInf) m.reject += wg_[j] * normal_sf((hi_s - s - shift) / sd);
  }
  return m;
}

void SumDensity::advance_gauss(long n_next, double lo_s, double hi_s) {
  if (state_ == State::Dead) {
    n_ = n_next;
    return;
  }
  const double nn = static_cast<double>(n_next);
  const double center = nn * truth_;
  const double half = opt_.width_sd * std::sqrt(nn);
  const double a = std::max(lo_s, center - half);
  const double b = std::min(hi_s, center + half);
  if (!(b > a) || (b - a) < 1e-12 * (1.0 + std::fabs(center))) {
    state_ = State::Dead;
    wg_.clear();
    n_ = n_next;
    return;
  }

  const int G = opt_.points;
  const double h = (b - a) / (G - 1);
  std::vector<double> next(static_cast<std::size_t>(G));
  const double d = static_cast<double>(n_next - n_);
  const double sd = std::sqrt(d);
  const double shift = d * truth_;

  if (state_ == State::Origin) {
    for (int i = 0; i < G; ++i) {
      const double t = a + h * i;
      next[static_cast<std::size_t>(i)] = kInvSqrt2Pi / sd * std::exp(-0.5 * ((t - shift) / sd) * ((t - shift) / sd));
    }
  } else {
    // Convolution with the N(shift, d) kernel. Along a row the Gaussian
    // factors at stride L obey e_{j+L} = e_j R_j, R_{j+L} = R_j Q, so only a few
    // exp calls are needed per target point. L independent lanes keep the
    // multiply chains short.
    constexpr int L = 8;
    const int Gs = static_cast<int>(wg_.size());
    const double hs = h_;
    const double band = kBand * sd;
    const double norm = kInvSqrt2Pi / sd;
    const double Lh = L * hs;
    const double Q = std::exp(-Lh * Lh / d);
    // Beyond this the lane factors could overflow; fall back to plain exp.
    const bool recurrence = kBand * Lh / sd < 300.0;
    for (int i = 0; i < G; ++i) {
      const double t = a + h * i;
      int j_lo = static_cast<int>(std::ceil((t - shift - band - x0_) / hs));
      int j_hi = static_cast<int>(std::floor((t - shift + band - x0_) / hs));
      j_lo = std::max(j_lo, 0);
      j_hi = std::min(j_hi, Gs - 1);
      double acc = 0.0;
      if (j_lo <= j_hi && recurrence) {
        double e[L], R[L], part[L];
        for (int k = 0; k < L; ++k) {
          const double x = t - shift - (x0_ + hs * (j_lo + k));
          e[k] = std::exp(-0.5 * x * x / d);
          R[k] = std::exp((2.0 * Lh * x - Lh * Lh) / (2.0 * d));
          part[k] = 0.0;
        }
        int j = j_lo;
        for (; j + L - 1 <= j_hi; j += L) {
          for (int k = 0; k < L; ++k) {
            part[k] += wg_[static_cast<std::size_t>(j + k)] * e[k];
            e[k] *= R[k];
            R[k] *= Q;
          }
        }
        for (int k = 0; j + k <= j_hi; ++k) part[k] += wg_[static_cast<std::size_t>(j + k)] * e[k];
        for (int k = 0; k < L; ++k) acc += part[k];
      } else if (j_lo <= j_hi) {
        for (int j = j_lo; j <= j_hi; ++j) {
          const double x = t - shift - (x0_ + hs * j);
          acc += wg_[static_cast<std::size_t>(j)] * std::exp(-0.5 * x * x / d);
        }
      }
      next[static_cast<std::size_t>(i)] = norm * acc;
    }
  }

  for (int i = 0; i < G; ++i) {
    const double w = (i == 0 || i == G - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    next[static_cast<std::size_t>(i)] *= w * h / 3.0;
  }
  wg_ = std::move(next);
  x0_ = a;
  h_ = h;
  n_ = n_next;
  state_ = State::Grid;
}

StageMass SumDensity::probe_lattice(long n_next, long lo_k, long hi_k) const {
  StageMass m;
  const long d = n_next - n_;
  const auto tails = binomial_tails(d, truth_);
  for (long s = 0; s <= n_; ++s) {
    const double p = pmf_[static_cast<std::size_t>(s)];
    if (p == 0.0) continue;
    // accept: s + X <= lo_k; reject: s + X > hi_k.
    const long acc_upto = lo_k - s;
    if (acc_upto >= 0) m.accept += p * tails.lower[static_cast<std::size_t>(std::min(acc_upto, d))];
    const long rej_from = hi_k - s + 1;
    if (rej_from <= 0) m.reject += p;
    else if (rej_from <= d) m.reject += p * tails.upper[static_cast<std::size_t>(rej_from)];
  }
  return m;
}

void SumDensity::advance_lattice(long n_next, long lo_k, long hi_k) {
  const long d = n_next - n_;
  const auto step = binomial_pmf(d, truth_);
  std::vector<double> next(static_cast<std::size_t>(n_next + 1), 0.0);
  const long keep_lo = std::max(0L, lo_k + 1);
  const long keep_hi = std::min(n_next, hi_k);
  for (long s = 0; s <= n_; ++s) {
    const double p = pmf_[static_cast<std::size_t>(s)];
    if (p == 0.0) continue;
    const long x_lo = std::max(0L, keep_lo - s);
    const long x_hi = std::min(d, keep_hi - s);
    for (long x = x_lo; x <= x_hi; ++x) next[static_cast<std::size_t>(s + x)] += p * step[static_cast<std::size_t>(x)];
  }
  pmf_ = std::move(next);
  n_ = n_next;
}

}  // namespace seqtest
