#pragma once

#include <array>

namespace sngbm {

// Bounds on the log standard deviation. exp(-2 psi) overflows long before
// psi leaves a double's range, so predictions and likelihoods clamp here.
inline constexpr double kPsiMin = -15.0;
inline constexpr double kPsiMax = 15.0;
inline constexpr double kSigmaFloor = 1e-6;

/// Parameters of a Normal distribution with psi = log(sigma).
struct NormalParams {
  double mu = 0.0;
  double psi = 0.0;

  double sigma() const;
};

struct GradientPair {
  double d_mu = 0.0;
  double d_psi = 0.0;
};

/// 2x2 symmetric matrix, row/column order (mu, psi).
struct FisherMatrix {
  std::array<std::array<double, 2>, 2> m{};
};

double clamp_psi(double psi);
NormalParams clamped(NormalParams p);

/// Negative log density of y under N(mu, sigma^2). psi is clamped to
/// [kPsiMin, kPsiMax] and sigma floored at kSigmaFloor before evaluation.
/// Throws InvalidInput for non-finite y or parameters.
double nll_point(NormalParams p, double y);

/// Gradient of nll_point with respect to (mu, psi), unclamped.
GradientPair ordinary_gradient(NormalParams p, double y);

/// Fisher information of the Normal in (mu, log sigma) coordinates:
/// diag(1 / sigma^2, 2).
FisherMatrix fisher(NormalParams p);

/// Closed-form natural gradient: [mu - y, 0.5 * (1 - (mu - y)^2 exp(-2 psi))].
/// The mu component is exactly the negative squared-error residual.
GradientPair natural_gradient(NormalParams p, double y);

/// Natural gradient obtained by solving fisher(p) * g = ordinary_gradient(p, y)
/// with a general 2x2 elimination. Slower reference path for the closed form.
GradientPair natural_gradient_solve(NormalParams p, double y);

/// Relative standard deviation of the log-normal exp(N(mu, sigma^2)):
/// sqrt(exp(sigma^2) - 1). Throws OverflowError when sigma^2 > 700.
double relative_std(NormalParams p);

/// exp(mu), the log-normal median. Throws OverflowError when mu > 700.
double point_prediction(NormalParams p);

}  // namespace sngbm
