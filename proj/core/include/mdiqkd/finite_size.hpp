#pragma once

#include "mdiqkd/types.hpp"

namespace mdiqkd {

// Standard-error bound on one observable. With fewer than one expected event
// the Gaussian treatment is meaningless: lower bound drops to 0 and the upper
// bound is capped at (1+gamma^2)/N_ij.
BoundEntry bound_entry(const StatEntry& e, double gamma);

// Bound every entry independently. Entries without a pair count (N_ij == 0)
// collapse to degenerate bounds, so asymptotic statistics pass through.
BoundedStatistics apply_bounds(const ObservedStatistics& st, double gamma);

// Degenerate bounds (upper == lower == observed) for any statistics table.
BoundedStatistics degenerate_bounds(const ObservedStatistics& st);

} // namespace mdiqkd
