#pragma once

#include "b0box/region.hpp"

namespace b0box {

/// Componentwise clip of w to [x - radius, x + radius].
Vector project_box(const Vector& w, const SparseBoxRegion& region);

/// Zeroes every component of w outside `piece`. Indices must be in range;
/// duplicates are harmless.
Vector project_piece(const Vector& w, const IndexSet& piece);

/**
 * One element of the projection of w onto the set of k-sparse vectors: keep
 * the k entries of largest magnitude and zero the rest.
 *
 * Magnitude ties at the cutoff go to the lowest index. The returned support
 * always has exactly k indices even when some selected entries of w are zero,
 * so the point may have fewer than k nonzeros.
 */
ProjectionResult project_sparse(const Vector& w, Index k);

SupportSplit classify_support(const SparseBoxRegion& region);

/**
 * Exact Euclidean projection of w onto the sparse box region.
 *
 * When w lies in the box (boundary included) and the center has no large
 * component, the answer is a plain k-sparse truncation of w. Otherwise every
 * large component of the center is forced into the support, w is clipped to
 * the box, and the remaining
 * k - |large| support slots go to the free coordinates with the largest gain
 * z_i = w_i^2 - (w_i - clip_i)^2. Ties in z go to the lowest index.
 *
 * Runs in O(n) expected time: support selection uses a partition, not a
 * full sort.
 */
ProjectionResult project_intersection(const Vector& w, const SparseBoxRegion& region);

/// ||y||_0 <= k and ||y - x||_inf <= radius + tol. Nonzeros are counted
/// exactly. A length mismatch is reported as non-membership.
bool membership(const Vector& y, const SparseBoxRegion& region, double tol = 0.0);

}  // namespace b0box
