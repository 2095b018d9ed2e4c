#include "daolens/stats/distributions.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace daolens::stats {

namespace bm = boost::math;

double normal_cdf(double z)
{
    return bm::cdf(bm::normal_distribution<double>(), z);
}

double normal_sf(double z)
{
    return bm::cdf(bm::complement(bm::normal_distribution<double>(), z));
}

double normal_quantile(double p)
{
    return bm::quantile(bm::normal_distribution<double>(), p);
}

double chi_squared_sf(double x, double df)
{
    if (x <= 0)
        return 1.0;
    return bm::cdf(bm::complement(bm::chi_squared_distribution<double>(df), x));
}

double f_sf(double x, double df1, double df2)
{
    if (x <= 0)
        return 1.0;
    return bm::cdf(bm::complement(bm::fisher_f_distribution<double>(df1, df2), x));
}

double student_t_sf(double x, double df)
{
    return bm::cdf(bm::complement(bm::students_t_distribution<double>(df), x));
}

} // namespace daolens::stats
