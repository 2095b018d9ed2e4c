// distributions.hpp - the handful of distribution functions the test
// battery needs, backed by boost::math

#pragma once

namespace daolens::stats {

double normal_cdf(double z);
double normal_sf(double z); // upper tail
double normal_quantile(double p);

double chi_squared_sf(double x, double df);
double f_sf(double x, double df1, double df2);
double student_t_sf(double x, double df);

} // namespace daolens::stats
