// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 RetroRank Contributors

#pragma once

namespace retrorank::evalkit {

/// Regularized incomplete beta I_x(a, b), evaluated with Lentz's continued
/// fraction (relative accuracy ~1e-14 for the parameter ranges used here).
double incomplete_beta(double a, double b, double x);

/// Student's t with `df` degrees of freedom.
double student_t_cdf(double t, double df);
/// P(|T| >= |t|).
double student_t_two_tailed_p(double t, double df);
/// Inverse CDF, p in (0, 1).
double student_t_quantile(double p, double df);

/// F distribution with (d1, d2) degrees of freedom.
double f_cdf(double f, double d1, double d2);
/// P(F' >= f).
double f_upper_p(double f, double d1, double d2);
double f_quantile(double p, double d1, double d2);

}  // namespace retrorank::evalkit
