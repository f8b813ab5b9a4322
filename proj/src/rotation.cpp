#include "ergolab/rotation.hpp"

#include <cmath>
#include <numbers>

namespace ergolab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinIntervalLength = 1e-12;

// Antiderivative of f on the universal cover; periodic terms integrate to
// periodic functions plus the linear part from the constant.
double antiderivative(const TrigPolynomial& f, double x) {
  double out = 0.0;
  for (const auto& t : f.terms) {
    if (t.frequency == 0) {
      out += t.cos_coeff * x;
      continue;
    }
    const double w = kTwoPi * t.frequency;
    out += t.cos_coeff * std::sin(w * x) / w;
    out -= t.sin_coeff * std::cos(w * x) / w;
  }
  return out;
}

}  // namespace

double TrigPolynomial::value(double x) const {
  double out = 0.0;
  for (const auto& t : terms) {
    if (t.frequency == 0) {
      out += t.cos_coeff;
      continue;
    }
    const double w = kTwoPi * t.frequency;
    out += t.cos_coeff * std::cos(w * x) + t.sin_coeff * std::sin(w * x);
  }
  return out;
}

double TrigPolynomial::lebesgue_integral() const {
  double out = 0.0;
  for (const auto& t : terms) {
    if (t.frequency == 0) out += t.cos_coeff;
  }
  return out;
}

double TrigPolynomial::lipschitz_bound() const {
  double out = 0.0;
  for (const auto& t : terms) {
    out += kTwoPi * t.frequency * (std::abs(t.cos_coeff) + std::abs(t.sin_coeff));
  }
  return out;
}

double RadiusSchedule::radius(long k) const {
  if (k < 1) throw ValidationError("time scale k must be >= 1");
  if (scale <= 0 || exponent < 0) throw ValidationError("radius schedule must shrink from a positive scale");
  return scale / std::pow(static_cast<double>(k), exponent);
}

double interval_average(const TrigPolynomial& f, double a, double b) {
  if (!(b - a >= kMinIntervalLength)) {
    throw DegenerateInterval("interval shorter than 1e-12");
  }
  return (antiderivative(f, b) - antiderivative(f, a)) / (b - a);
}

double rotation_ball_stdiff(const RotationSystem& sys, double x, long k,
                            const TrigPolynomial& f) {
  if (k < 1) throw ValidationError("time scale k must be >= 1");
  const double r = sys.radii.radius(k);
  if (!(r > 0) || r > 0.5) throw BallOutOfRange("ball radius must lie in (0, 1/2]");
  double acc = 0.0;
  double center = x;
  for (long i = 0; i < k; ++i) {
    // Working on the universal cover makes the wrap seamless: the
    // antiderivatives of the periodic terms are periodic, so only the
    // constant term sees the raw endpoints, and it is linear.
    acc += interval_average(f, center - r, center + r);
    center += sys.theta;
    center -= std::floor(center);  // keep the argument well conditioned
  }
  return acc / static_cast<double>(k);
}

IdentityCounterexample identity_counterexample(double x0, long k) {
  if (!(x0 > 0.0 && x0 < 1.0)) throw ValidationError("center must lie in (0, 1)");
  if (k < 1) throw ValidationError("time scale k must be >= 1");
  const double r = 1.0 / static_cast<double>(k);
  if (!(r < std::min(x0, 1.0 - x0))) {
    throw BallOutOfRange("ball of radius 1/k pokes out of [0, 1]");
  }
  // Orbit of the identity never moves, so the spatial-temporal average is
  // the one-ball mean of |y - x0|: two triangles of mass r^2 / 2 over
  // length 2r. The plain integral splits at x0.
  IdentityCounterexample out;
  out.ball_average = r / 2.0;
  out.integral = (x0 * x0 + (1.0 - x0) * (1.0 - x0)) / 2.0;
  return out;
}

}  // namespace ergolab
