#include "sngbm/dist_normal.hpp"

#include <algorithm>
#include <cmath>

#include "sngbm/errors.hpp"

namespace sngbm {

namespace {

constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // 0.5 * log(2 pi)
constexpr double kExpLimit = 700.0;

void require_finite(NormalParams p) {
  if (!std::isfinite(p.mu) || !std::isfinite(p.psi)) {
    throw InvalidInput("normal parameters must be finite");
  }
}

void require_finite(NormalParams p, double y) {
  require_finite(p);
  if (!std::isfinite(y)) throw InvalidInput("target must be finite");
}

}  // namespace

double NormalParams::sigma() const { return std::exp(psi); }

double clamp_psi(double psi) { return std::clamp(psi, kPsiMin, kPsiMax); }

NormalParams clamped(NormalParams p) { return {p.mu, clamp_psi(p.psi)}; }

double nll_point(NormalParams p, double y) {
  require_finite(p, y);
  double log_sigma = clamp_psi(p.psi);
  double sigma = std::exp(log_sigma);
  if (sigma < kSigmaFloor) {
    sigma = kSigmaFloor;
    log_sigma = std::log(kSigmaFloor);
  }
  const double z = (y - p.mu) / sigma;
  return kHalfLogTwoPi + log_sigma + 0.5 * z * z;
}

GradientPair ordinary_gradient(NormalParams p, double y) {
  require_finite(p, y);
  const double inv_var = std::exp(-2.0 * p.psi);
  const double r = p.mu - y;
  return {r * inv_var, 1.0 - r * r * inv_var};
}

FisherMatrix fisher(NormalParams p) {
  require_finite(p);
  FisherMatrix f;
  f.m = {{{std::exp(-2.0 * p.psi), 0.0}, {0.0, 2.0}}};
  return f;
}

GradientPair natural_gradient(NormalParams p, double y) {
  require_finite(p, y);
  const double r = p.mu - y;
  return {r, 0.5 * (1.0 - r * r * std::exp(-2.0 * p.psi))};
}

GradientPair natural_gradient_solve(NormalParams p, double y) {
  const auto [a, b] = fisher(p).m;
  const GradientPair g = ordinary_gradient(p, y);

  // Gaussian elimination with partial pivoting on [F | g].
  double m00 = a[0], m01 = a[1], r0 = g.d_mu;
  double m10 = b[0], m11 = b[1], r1 = g.d_psi;
  if (std::abs(m10) > std::abs(m00)) {
    std::swap(m00, m10);
    std::swap(m01, m11);
    std::swap(r0, r1);
  }
  if (m00 == 0.0) throw InternalError("singular Fisher matrix");
  const double factor = m10 / m00;
  m11 -= factor * m01;
  r1 -= factor * r0;
  if (m11 == 0.0) throw InternalError("singular Fisher matrix");
  const double x1 = r1 / m11;
  const double x0 = (r0 - m01 * x1) / m00;
  return {x0, x1};
}

double relative_std(NormalParams p) {
  require_finite(p);
  const double sigma = std::exp(p.psi);
  const double variance = sigma * sigma;
  if (!(variance <= kExpLimit)) {
    throw OverflowError("relative_std: sigma^2 exceeds 700");
  }
  return std::sqrt(std::expm1(variance));
}

double point_prediction(NormalParams p) {
  require_finite(p);
  if (p.mu > kExpLimit) throw OverflowError("point_prediction: mu exceeds 700");
  return std::exp(p.mu);
}

}  // namespace sngbm
