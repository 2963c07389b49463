#pragma once

#include <span>

namespace adtrw::oracle {

/// B_{r,n} as an explicit sum over integer partitions of r into exactly n
/// parts, each weighted by its number of orderings n! / prod(m_k!).
/// x[k-1] is the coefficient x_k. Intended for r <= 32.
double partition_bell(std::span<const double> x, int r, int n);

}  // namespace adtrw::oracle
