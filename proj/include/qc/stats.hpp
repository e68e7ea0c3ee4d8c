#ifndef QC_STATS_HPP
#define QC_STATS_HPP

#include <vector>

namespace qc {

// Empirical p-quantile by linear interpolation of order statistics
// (the h = (n-1)p rule). Input need not be sorted.
double empirical_quantile(std::vector<double> values, double p);

// Same, but `sorted` must already be ascending; no copy.
double quantile_of_sorted(const std::vector<double>& sorted, double p);

// Inverse standard normal CDF (Acklam's rational approximation, |rel err| < 1.2e-9).
double normal_quantile(double p);

// Standard normal CDF.
double normal_cdf(double x);

double mean(const std::vector<double>& v);
double stddev(const std::vector<double>& v);  // sample (n-1) denominator

}  // namespace qc

#endif  // QC_STATS_HPP
