#pragma once

#include "rsg/rational.hpp"

namespace rsg {

// Peak thresholds that separate the monotone regimes for a given maximum
// resource degree delta. Over fractions realizable with at most delta agents
// on a resource, utilities are ordered like the fractions themselves once the
// peak is at least L(delta), and in reverse once it is at most U(delta).
// L(delta) = delta(delta-2)/(delta^2-delta-1), reached by the pair
// ((delta-2)/(delta-1), (delta-1)/delta); U(delta) = (delta-1)/(delta^2-delta-1),
// reached by (1/delta, 1/(delta-1)). Degenerate delta = 2 gives L = 0, U = 1.
Rational lower_bound_L(int delta);
Rational upper_bound_U(int delta);

// Exact peak at which p(x) and p(y) tie, for 0 < x < y < 1: x/(1-y+x).
// p(x) < p(y) iff the peak exceeds it, p(x) > p(y) iff the peak is below it.
Rational order_threshold(const Rational& x, const Rational& y);

enum class Regime { Increasing, Decreasing, Mixed };

std::string regime_name(Regime r);

// Increasing iff lambda >= L(delta), Decreasing iff lambda <= U(delta), Mixed
// otherwise. The two regimes are disjoint for delta >= 3 (L > U there); at the
// degenerate delta = 2 both predicates hold and Increasing is reported.
Regime regime(const Rational& lambda, int delta);

}  // namespace rsg
