#include "tilecast/special_fn.hpp"

#include <cmath>
#include <limits>

namespace tilecast {

void validate(const Tolerance& tol) {
  if (!(tol.rel > 0.0) || !(tol.abs > 0.0))
    throw std::invalid_argument("Tolerance: rel and abs must be > 0");
  if (tol.max_iter < 1) throw std::invalid_argument("Tolerance: max_iter must be >= 1");
}

ConvergenceError::ConvergenceError(const std::string& what, double residual_)
    : std::runtime_error(what), residual(residual_) {}

namespace {

constexpr double kInvE = 0.36787944117144233;  // 1/e rounded to double

double lambert_w0_seed(double x) {
  if (x < -0.3) {
    // expansion around the branch point in p = sqrt(2 (e x + 1))
    const double q = std::exp(1.0) * x + 1.0;
    if (q <= 0.0) return -1.0;
    const double p = std::sqrt(2.0 * q);
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  }
  if (x < 0.3) {
    return x * (1.0 + x * (-1.0 + x * (1.5 - (8.0 / 3.0) * x)));
  }
  const double l1 = std::log1p(x);
  const double l2 = std::log1p(l1);
  return l1 * (1.0 - l2 / (2.0 + l1));
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x) || x < -kInvE)
    throw std::domain_error("lambert_w0: argument must be >= -1/e");
  if (x == 0.0) return 0.0;

  double w = lambert_w0_seed(x);
  if (w + 1.0 <= 0.0) return -1.0;  // at (or numerically at) the branch point

  double last_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    const double s = std::abs(step);
    if (s <= 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(w) + 0.0625)) break;
    // near the branch point the update bottoms out at the noise floor of f
    if (it > 2 && s >= last_step) break;
    last_step = s;
  }
  return std::max(w, -1.0);
}

double bisect_decreasing(const std::function<double(double)>& f, double target,
                         double bracket_hint, const Tolerance& tol) {
  validate(tol);
  if (!(bracket_hint > 0.0) || !std::isfinite(bracket_hint))
    throw std::invalid_argument("bisect_decreasing: bracket_hint must be positive and finite");

  auto eval = [&](double lambda) {
    const double v = f(lambda);
    if (std::isnan(v))
      throw ContractViolationError("bisect_decreasing: function returned NaN");
    return v;
  };

  // grow a bracket [lo, hi] with f(lo) >= target >= f(hi)
  double lo = bracket_hint, hi = bracket_hint;
  double f_lo = eval(bracket_hint), f_hi = f_lo;
  if (f_lo >= target) {
    int it = 0;
    while (f_hi > target) {
      if (++it > tol.max_iter)
        throw NoRootError("bisect_decreasing: no upper bracket within expansion budget");
      const double next = hi * 2.0;
      const double fn = eval(next);
      if (fn > f_hi + tol.abs)
        throw ContractViolationError("bisect_decreasing: function increased with lambda");
      lo = hi;
      f_lo = f_hi;
      hi = next;
      f_hi = fn;
    }
  } else {
    int it = 0;
    while (f_lo < target) {
      if (++it > tol.max_iter)
        throw NoRootError("bisect_decreasing: no lower bracket within expansion budget");
      const double next = lo * 0.5;
      const double fn = eval(next);
      if (fn + tol.abs < f_lo)
        throw ContractViolationError("bisect_decreasing: function increased with lambda");
      hi = lo;
      f_hi = f_lo;
      lo = next;
      f_lo = fn;
    }
  }

  double mid = 0.5 * (lo + hi);
  double residual = std::abs(f_lo - target);
  for (int it = 0; it < tol.max_iter; ++it) {
    mid = 0.5 * (lo + hi);
    const double fm = eval(mid);
    residual = std::abs(fm - target);
    if (residual <= tol.abs) return mid;
    if (fm >= target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= tol.rel * mid) return 0.5 * (lo + hi);
  }
  throw ConvergenceError("bisect_decreasing: tolerance not reached", residual);
}

}  // namespace tilecast
