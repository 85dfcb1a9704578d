#include "varkit/distributions.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>

namespace varkit::dist {

namespace bm = boost::math;

double normal_cdf(double x) { return bm::cdf(bm::normal_distribution<double>(), x); }

double chi_squared_sf(double x, double df) {
    if (x <= 0.0) return 1.0;
    return bm::cdf(bm::complement(bm::chi_squared_distribution<double>(df), x));
}

double chi_squared_quantile(double p, double df) {
    return bm::quantile(bm::chi_squared_distribution<double>(df), p);
}

double f_sf(double x, double df1, double df2) {
    if (x <= 0.0) return 1.0;
    return bm::cdf(bm::complement(bm::fisher_f_distribution<double>(df1, df2), x));
}

double gamma_sf(double x, double shape, double scale) {
    if (x <= 0.0) return 1.0;
    return bm::cdf(bm::complement(bm::gamma_distribution<double>(shape, scale), x));
}

double gamma_quantile(double p, double shape, double scale) {
    return bm::quantile(bm::gamma_distribution<double>(shape, scale), p);
}

}  // namespace varkit::dist
