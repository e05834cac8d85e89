#pragma once

#include <span>
#include <vector>

namespace qsom {

/// Hoover inequality index: sum|x_i - mean| / (2 * sum x_i).
///
/// 0 means perfect equality, (n-1)/n is the all-to-one extreme. Defined as 0
/// for an all-zero population. Values must be nonnegative; throws
/// InvalidInput on an empty list or a negative entry.
double hoover(std::span<const double> values);

/// Median; even-sized inputs average the two middle values.
/// Throws InvalidInput on an empty list.
double median(std::span<const double> values);

double mean(std::span<const double> values);

/// Logistic squash 1 / (1 + exp(-x)), maps the reals onto (0, 1).
double logistic(double x);

}  // namespace qsom
