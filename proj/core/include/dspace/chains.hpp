#pragma once

#include "dspace/matrix.hpp"
#include "dspace/parallel.hpp"
#include "dspace/space.hpp"
#include "dspace/window.hpp"

namespace dspace {

/// Chain-infimum functional restricted to a window:
///
///   rho_bar(x, y) = inf over chains x = z_0, z_1, ..., z_k = y of
///                   rho(z_0, z_1) + ... + rho(z_{k-1}, z_k)
///
/// with every intermediate point taken from the window. Computed as a
/// directed all-pairs shortest path (Floyd-Warshall) in exact arithmetic.
/// For an infinite domain this is an upper bound on the chain infimum over
/// the whole space; enlarging the window can only lower entries.
///
/// Rows are relaxed in parallel per pivot; the result does not depend on
/// `exec.workers`.
DistanceMatrix associated_functional(const DistanceMatrix& rho, const Exec& exec = {});
DistanceMatrix associated_functional(const DistanceSpace& space, const Window& window, const Exec& exec = {});

/// The space with distance d_s(x, y) = d(x, y) + d(y, x) on the same domain.
DistanceSpace symmetrize(const DistanceSpace& space);

}  // namespace dspace
