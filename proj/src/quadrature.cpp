#include "quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

namespace dmec {

namespace {

constexpr int kMaxPanels = 128;
constexpr unsigned kMaxDepth = 15;
constexpr double kTailFraction = 1e-14;

}  // namespace

QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f, double rel_tol,
                                         double abs_tol, double length_scale) {
  using GaussKronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

  QuadratureResult result;
  auto counted = [&](double x) {
    ++result.evaluations;
    return f(x);
  };

  double lo = 0.0;
  double hi = length_scale > 0.0 ? length_scale : 1.0;
  double f_lo = counted(lo);
  double tail = 0.0;
  bool truncated = false;

  for (int panel = 0; panel < kMaxPanels; ++panel) {
    double panel_error = 0.0;
    result.value += GaussKronrod::integrate(counted, lo, hi, kMaxDepth, rel_tol / 4.0, &panel_error);
    result.error_estimate += panel_error;

    const double f_hi = counted(hi);
    tail = std::abs(f_hi) * hi;
    const bool past_peak = f_hi <= f_lo;
    if (past_peak && (tail <= kTailFraction * std::abs(result.value) || (f_hi == 0.0 && result.value == 0.0))) {
      truncated = true;
      result.upper_limit = hi;
      break;
    }
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
  }

  result.error_estimate += tail;
  if (!truncated) {
    result.upper_limit = hi;
    throw QuadratureError("integrand tail did not decay within the panel budget", result);
  }
  const double allowed = std::max(abs_tol, rel_tol * std::abs(result.value));
  if (result.error_estimate > allowed) {
    std::ostringstream msg;
    msg << "adaptive quadrature exceeded its subdivision budget: error estimate "
        << result.error_estimate << " > tolerance " << allowed;
    throw QuadratureError(msg.str(), result);
  }
  return result;
}

}  // namespace dmec
