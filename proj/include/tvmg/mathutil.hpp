#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tvmg {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile (inverse CDF), p in (0,1).
double normal_quantile(double p);

/// Two-sided critical value for a confidence level in (0,1),
/// i.e. normal_quantile((1 + level) / 2).
double normal_critical_value(double level);

/// Two-sided normal p-value for a z statistic.
double normal_two_sided_p(double z);

/// Empirical quantile with linear interpolation between order statistics
/// (R type-7 convention). `sorted` must be ascending and non-empty.
double sample_quantile(const std::vector<double>& sorted, double p);

/// FNV-1a 64-bit hash, used for input digests in output metadata.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64(const std::string& s);

/// Shortest round-trip decimal text for a double, so identical inputs
/// produce byte-identical output files.
std::string fmt_num(double x);

}  // namespace tvmg
