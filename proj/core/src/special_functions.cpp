#include "extropy/special_functions.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <sstream>

#include "extropy/errors.hpp"

namespace extropy::special {
namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream msg;
    msg << what << " must be a positive finite number (got " << v << ")";
    throw ValidationError(msg.str());
  }
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma argument");
  // boost::math::lgamma does not touch the global signgam, unlike lgamma(3).
  return boost::math::lgamma(x);
}

double log_beta2(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double beta2(double a, double b) { return std::exp(log_beta2(a, b)); }

double log_beta3(double a, double b, double c) {
  return log_gamma(a) + log_gamma(b) + log_gamma(c) - log_gamma(a + b + c);
}

double beta3(double a, double b, double c) {
  return std::exp(log_beta3(a, b, c));
}

double gamma_p(double a, double x) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(a, x);
}

double gamma_q(double a, double x) {
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(a, x);
}

double gamma_p_inv(double a, double p) {
  return boost::math::gamma_p_inv(a, p);
}

double ibeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

double ibetac(double a, double b, double x) {
  if (x <= 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  return boost::math::ibetac(a, b, x);
}

double ibeta_inv(double a, double b, double p) {
  return boost::math::ibeta_inv(a, b, p);
}

}  // namespace extropy::special
