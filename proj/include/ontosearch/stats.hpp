#pragma once

#include <span>

namespace ontosearch {

/// I_x(a, b), evaluated with the modified Lentz continued fraction and the
/// symmetry I_x(a, b) = 1 - I_{1-x}(b, a) when x > (a + 1) / (a + b + 2).
double regularized_incomplete_beta(double a, double b, double x);

/// Two-sided tail probability P(|T| >= |t|) of Student's t with `dof` degrees
/// of freedom: I_{dof/(dof+t^2)}(dof/2, 1/2).
double student_t_two_sided_p(double t, double dof);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
};

/// Paired two-sided t-test on d_i = a_i - b_i with the sample (n - 1)
/// standard deviation. All-zero differences give (0, 1). Constant non-zero
/// differences give t = +-infinity, p = 0.
/// Throws LengthMismatch for unequal lengths, TooFewPairs for n < 2.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace ontosearch
