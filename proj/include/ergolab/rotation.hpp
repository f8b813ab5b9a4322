#pragma once

#include <vector>

#include "ergolab/errors.hpp"

namespace ergolab {

// Real trigonometric polynomial on the circle R/Z:
//   f(x) = sum_t cos_coeff * cos(2 pi n x) + sin_coeff * sin(2 pi n x),
// frequency n >= 0 (n = 0 contributes the constant cos_coeff).
struct TrigTerm {
  int frequency = 0;
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
};

struct TrigPolynomial {
  std::vector<TrigTerm> terms;

  double value(double x) const;
  double lebesgue_integral() const;  // the n = 0 cosine coefficient
  // sum over terms of 2 pi n (|c| + |s|), a Lipschitz bound.
  double lipschitz_bound() const;
};

// How the ball radius shrinks with the time scale: radius(k) = scale / k^exponent.
struct RadiusSchedule {
  double scale = 1.0;
  double exponent = 1.0;

  double radius(long k) const;
};

// Circle rotation x -> x + theta mod 1 with a shrinking-ball schedule.
struct RotationSystem {
  double theta = 0.0;
  RadiusSchedule radii;
};

// Mean of f over [a, b] via closed-form antiderivatives. The interval may
// wrap (b > 1 or a < 0 is fine, arguments are taken on the universal cover).
// Throws DegenerateInterval when b - a < 1e-12.
double interval_average(const TrigPolynomial& f, double a, double b);

// (1/k) sum_{i<k} (mean of f over the ball of radius radius(k) around
// x + i theta). Ball means wrap around the circle seamlessly.
double rotation_ball_stdiff(const RotationSystem& sys, double x, long k,
                            const TrigPolynomial& f);

struct IdentityCounterexample {
  double ball_average;  // mean of |y - x0| over the ball of radius 1/k
  double integral;      // mean of |y - x0| over the whole interval
};

// For the identity map on [0, 1] and f(y) = |y - x0|, the ball averages
// collapse at rate 1/(2k) while the integral stays macroscopic, so shrinking
// spatial-temporal averages do not recover the integral without mixing.
// Requires 1/k < min(x0, 1 - x0), else BallOutOfRange.
IdentityCounterexample identity_counterexample(double x0, long k);

}  // namespace ergolab
