#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>

namespace dmec {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  double upper_limit = 0.0;  // truncation point actually used
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult best)
      : std::runtime_error(what), best_(best) {}

  const QuadratureResult& best_estimate() const { return best_; }

 private:
  QuadratureResult best_;
};

// Integrates f over (0, inf) for continuous, nonnegative f with a Gaussian-type
// tail. Panels [0, s], [s, 2s], [2s, 4s], ... are integrated adaptively until
// f is past its peak and x * f(x) drops below 1e-14 of the running total; that
// quantity bounds the discarded tail for envelopes C x exp(-c x^2) beyond the
// mode, and is folded into error_estimate. Throws QuadratureError when the
// requested tolerance max(abs_tol, rel_tol * |value|) cannot be met.
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f, double rel_tol,
                                         double abs_tol, double length_scale = 1.0);

}  // namespace dmec
