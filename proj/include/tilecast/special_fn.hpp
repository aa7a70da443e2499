#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace tilecast {

/// Stopping criteria for the iterative kernels.
struct Tolerance {
  double rel = 1e-12;
  double abs = 1e-12;
  int max_iter = 200;
};

void validate(const Tolerance& tol);

/// No bracket containing the root was found within the expansion budget.
struct NoRootError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A function handed to a kernel violated its stated shape (e.g. it
/// increased where it was required to be decreasing, or returned NaN).
struct ContractViolationError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Iteration exhausted its budget before reaching the requested tolerance.
struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double residual);
  double residual;
};

/// Principal branch of the Lambert W function: the w >= -1 solving
/// w * e^w = x, defined for x >= -1/e. Halley iteration from a piecewise
/// initial guess; the residual |w e^w - x| stays within 1e-12 * max(1, |x|).
/// Throws std::domain_error for x < -1/e.
double lambert_w0(double x);

/// Solves f(lambda) = target for a continuous, strictly decreasing f on
/// (0, inf). The bracket is grown geometrically from bracket_hint, then
/// bisected until |f(lambda) - target| <= tol.abs or the bracket width is
/// at most tol.rel * lambda.
double bisect_decreasing(const std::function<double(double)>& f, double target,
                         double bracket_hint, const Tolerance& tol = {});

}  // namespace tilecast
