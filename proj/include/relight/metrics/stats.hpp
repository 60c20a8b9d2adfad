#pragma once

#include <span>
#include <vector>

namespace relight {

/// Average ranks (1-based, ascending); tied values share their mean rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation with average-rank ties. Throws ValidationError
/// on length mismatch, fewer than 2 samples, or a constant input.
double spearman_rho(std::span<const double> a, std::span<const double> b);

}  // namespace relight
