#pragma once

namespace extropy::special {

// log Γ(x) for x > 0.
double log_gamma(double x);

// Complete beta function B(a, b) = Γ(a)Γ(b)/Γ(a+b).
double beta2(double a, double b);
double log_beta2(double a, double b);

// Bivariate complete beta function B(a, b, c) = Γ(a)Γ(b)Γ(c)/Γ(a+b+c),
// the normalizer of the Dirichlet density on 0 < x < y < 1.
double beta3(double a, double b, double c);
double log_beta3(double a, double b, double c);

// Regularized incomplete gamma P(a, x), its complement Q(a, x), and the
// inverse of P in x.
double gamma_p(double a, double x);
double gamma_q(double a, double x);
double gamma_p_inv(double a, double p);

// Regularized incomplete beta I_x(a, b), its complement, and the inverse
// of I_x in x.
double ibeta(double a, double b, double x);
double ibetac(double a, double b, double x);
double ibeta_inv(double a, double b, double p);

}  // namespace extropy::special
