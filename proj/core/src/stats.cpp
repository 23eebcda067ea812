#include "negdep/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace negdep {

double chi_square_pvalue(double statistic, int dof) {
    if (dof <= 0) throw std::invalid_argument("chi-square needs dof >= 1");
    if (statistic <= 0.0) return 1.0;
    const boost::math::chi_squared dist(dof);
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts) {
    if (counts.size() < 2) throw std::invalid_argument("need at least two cells");
    std::uint64_t total = 0;
    for (const auto c : counts) total += c;
    if (total == 0) throw std::invalid_argument("empty sample");
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double stat = 0.0;
    for (const auto c : counts) {
        const double diff = static_cast<double>(c) - expected;
        stat += diff * diff / expected;
    }
    const int dof = static_cast<int>(counts.size()) - 1;
    return {stat, dof, chi_square_pvalue(stat, dof)};
}

ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> a,
                                      std::span<const std::uint64_t> b) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("two-sample chi-square needs matched cells");
    double tot_a = 0.0, tot_b = 0.0;
    for (const auto c : a) tot_a += static_cast<double>(c);
    for (const auto c : b) tot_b += static_cast<double>(c);
    if (tot_a == 0.0 || tot_b == 0.0) throw std::invalid_argument("empty sample");
    const double ka = std::sqrt(tot_b / tot_a);
    const double kb = std::sqrt(tot_a / tot_b);
    double stat = 0.0;
    int cells = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ai = static_cast<double>(a[i]);
        const double bi = static_cast<double>(b[i]);
        if (ai + bi == 0.0) continue;  // cell unseen by either sample
        const double diff = ka * ai - kb * bi;
        stat += diff * diff / (ai + bi);
        ++cells;
    }
    const int dof = cells - 1;
    return {stat, dof, chi_square_pvalue(stat, dof)};
}

KsResult ks_uniform(std::span<const double> sample) {
    if (sample.empty()) throw std::invalid_argument("empty KS sample");
    std::vector<double> xs(sample.begin(), sample.end());
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double below = xs[i] - static_cast<double>(i) / n;
        const double above = static_cast<double>(i + 1) / n - xs[i];
        d = std::max({d, below, above});
    }
    const double sqrtn = std::sqrt(n);
    const double lambda = (sqrtn + 0.12 + 0.11 / sqrtn) * d;
    // Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2)
    double p = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        p += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    p = std::clamp(2.0 * p, 0.0, 1.0);
    return {d, p};
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("correlation needs matched samples");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

double normal_quantile(double p) {
    const boost::math::normal dist;
    return boost::math::quantile(dist, p);
}

double normal_cdf(double x) {
    const boost::math::normal dist;
    return boost::math::cdf(dist, x);
}

}  // namespace negdep
