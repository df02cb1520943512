#include "onecircuit/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace onecircuit {

double mean(std::span<const std::int64_t> values) {
    if (values.empty()) throw std::invalid_argument("mean of an empty sample");
    double sum = 0.0;
    for (std::int64_t v : values) sum += static_cast<double>(v);
    return sum / static_cast<double>(values.size());
}

double sample_std(std::span<const std::int64_t> values) {
    if (values.size() < 2) throw std::invalid_argument("std needs at least two values");
    const double m = mean(values);
    double ss = 0.0;
    for (std::int64_t v : values) {
        const double d = static_cast<double>(v) - m;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double chi_square_statistic(std::span<const std::int64_t> counts,
                            std::span<const double> expected) {
    if (counts.size() != expected.size() || counts.empty())
        throw std::invalid_argument("counts and expectations must have equal nonzero size");
    double statistic = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (expected[i] <= 0.0)
            throw std::invalid_argument("expected counts must be positive");
        const double d = static_cast<double>(counts[i]) - expected[i];
        statistic += d * d / expected[i];
    }
    return statistic;
}

double chi_square_pvalue(double statistic, int degrees_of_freedom) {
    if (degrees_of_freedom < 1) throw std::invalid_argument("degrees of freedom must be >= 1");
    const boost::math::chi_squared dist(degrees_of_freedom);
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

bool chi_square_uniform_test(std::span<const std::int64_t> counts, double significance) {
    std::int64_t total = 0;
    for (std::int64_t c : counts) total += c;
    const std::vector<double> expected(
        counts.size(), static_cast<double>(total) / static_cast<double>(counts.size()));
    const double statistic = chi_square_statistic(counts, expected);
    return chi_square_pvalue(statistic, static_cast<int>(counts.size()) - 1) > significance;
}

}  // namespace onecircuit
