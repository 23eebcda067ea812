#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace negdep {

/// Upper-tail p-value of a chi-square statistic.
double chi_square_pvalue(double statistic, int dof);

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double pvalue = 1.0;
};

/// Goodness of fit of observed cell counts against the uniform distribution
/// over the cells.
ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts);

/// Two-sample homogeneity chi-square over matched cell counts.
ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> a,
                                      std::span<const std::uint64_t> b);

/// One-sample Kolmogorov-Smirnov test of a sample against U(0,1), using the
/// asymptotic Kolmogorov distribution with the Stephens small-sample
/// correction. The sample is copied and sorted internally.
struct KsResult {
    double statistic = 0.0;
    double pvalue = 1.0;
};
KsResult ks_uniform(std::span<const double> sample);

double pearson_correlation(std::span<const double> x, std::span<const double> y);

double normal_quantile(double p);
double normal_cdf(double x);

}  // namespace negdep
