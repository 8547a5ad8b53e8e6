#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "coarseprox/rat.hpp"

namespace coarseprox {

/// Brute-force window deciders. They see the sets only through membership
/// probes and exist to falsify the closed-form decision rules: every shipped
/// rule must agree with them on generated instances kept inside the window
/// regime (structure small against the window).

using ZPred = std::function<bool(long long)>;
using QPred = std::function<bool(const Rat&)>;

/// Closeness probe on Z: a far-out pair within the radius cap.
bool oracle_b_z(const ZPred& a, const ZPred& b, long long window,
                long long radius_cap = 25);

/// A < B probe on Z: no far-out escape of the thickened A past B.
bool oracle_prec_z(const ZPred& a, const ZPred& bsup, long long window,
                   long long radius_cap = 25);

/// Mutual-cover probe on Z; returns the covering radius when related.
std::optional<long long> oracle_lambda_z(const ZPred& a, const ZPred& b,
                                         long long window,
                                         long long radius_cap = 25);

/// All rationals p/q in [0, window] with q <= den_bound, ascending.
std::vector<Rat> q_probes(long long den_bound, long long window);

/// Number of probe points of b reachable from a by the given shift.
long long q_overlap_count(const QPred& a, const QPred& b, const Rat& off,
                          long long den_bound, long long window);

/// Closeness probe on the half line. Bounded means finite here, so an
/// infinite overlap shows up as probe-count growth when the grid is refined
/// (denominator d1 -> d2) and extended (window w1 -> w2); a finite overlap
/// saturates once the coarse grid resolves it.
bool oracle_b_q(const QPred& a, const QPred& b, const std::vector<Rat>& offsets,
                long long d1, long long w1, long long d2, long long w2);

bool oracle_prec_q(const QPred& a, const QPred& bsup,
                   const std::vector<Rat>& offsets, long long d1, long long w1,
                   long long d2, long long w2);

/// Mutual cover with the candidate shift set: uncovered counts must not grow
/// under grid refinement.
bool oracle_lambda_q(const QPred& a, const QPred& b,
                     const std::vector<Rat>& offsets, long long d1,
                     long long w1, long long d2, long long w2);

}  // namespace coarseprox
