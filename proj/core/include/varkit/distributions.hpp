#pragma once

namespace varkit::dist {

/// Standard normal CDF.
double normal_cdf(double x);

/// Upper-tail probability of a chi-squared variate.
double chi_squared_sf(double x, double df);

/// Lower-tail quantile of a chi-squared distribution.
double chi_squared_quantile(double p, double df);

/// Upper-tail probability of an F variate.
double f_sf(double x, double df1, double df2);

/// Upper-tail probability of a Gamma(shape, scale) variate.
double gamma_sf(double x, double shape, double scale);

/// Lower-tail quantile of a Gamma(shape, scale) distribution.
double gamma_quantile(double p, double shape, double scale);

}  // namespace varkit::dist
