#pragma once

#include <cstdint>
#include <vector>

namespace zknono {

/// Regularized upper incomplete gamma Q(a, x); the chi-square survival
/// function is Q(df/2, x/2).
double gammq(double a, double x);

struct ChiSquareResult {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
};

/// Goodness-of-fit against the uniform distribution over the categories.
ChiSquareResult chi_square_uniform(const std::vector<std::uint64_t>& counts);

/// Two-sample homogeneity test over shared categories. Categories where both
/// samples are empty are dropped.
ChiSquareResult chi_square_homogeneity(const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b);

}  // namespace zknono
