#pragma once

#include <cstdint>
#include <span>

namespace onecircuit {

double mean(std::span<const std::int64_t> values);
double sample_std(std::span<const std::int64_t> values);

/// Pearson statistic sum (observed - expected)^2 / expected.
double chi_square_statistic(std::span<const std::int64_t> counts,
                            std::span<const double> expected);

/// Upper-tail p-value of a chi-square statistic with the given degrees of
/// freedom.
double chi_square_pvalue(double statistic, int degrees_of_freedom);

/// Goodness-of-fit of counts against a uniform distribution; true when the
/// p-value exceeds the significance level.
bool chi_square_uniform_test(std::span<const std::int64_t> counts, double significance);

}  // namespace onecircuit
