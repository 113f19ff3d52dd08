#pragma once

namespace fjssp {

/// Regularized upper incomplete gamma Q(a, x), evaluated by series or
/// continued fraction to ~1e-12 relative accuracy.
double regularized_gamma_q(double a, double x);

/// Upper tail of the chi-squared distribution with df degrees of freedom.
double chi_squared_tail(double x, int df);

/// Critical value q_{0.05} of the Nemenyi test for k treatments at infinite
/// degrees of freedom (studentized range divided by sqrt(2)); k in [2, 20].
double nemenyi_q05(int k);

}  // namespace fjssp
