#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "random_games.hpp"
#include "rsg/bounds.hpp"
#include "rsg/game.hpp"

using namespace rsg;

namespace {

// All fractions a/b with 1 <= a < b <= delta, i.e. every nonempty mixed state
// a resource of degree <= delta can take.
std::vector<Rational> achievable_fractions(int delta) {
    std::vector<Rational> out;
    for (int b = 2; b <= delta; ++b)
        for (int a = 1; a < b; ++a) out.push_back(Rational(a, b));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

TEST_CASE("threshold formulas produce the published values") {
    CHECK(lower_bound_L(3) == Rational(3, 5));
    CHECK(upper_bound_U(3) == Rational(2, 5));
    CHECK(lower_bound_L(4) == Rational(8, 11));
    CHECK(upper_bound_U(4) == Rational(3, 11));
    CHECK(upper_bound_U(5) == Rational(4, 19));
    CHECK(lower_bound_L(2) == Rational(0));
    CHECK(upper_bound_U(2) == Rational(1));
    CHECK_THROWS_AS(lower_bound_L(1), std::invalid_argument);
    CHECK_THROWS_AS(upper_bound_U(0), std::invalid_argument);
}

TEST_CASE("the thresholds separate for every degree of at least three") {
    for (int delta = 3; delta <= 12; ++delta) {
        const Rational l = lower_bound_L(delta);
        const Rational u = upper_bound_U(delta);
        CHECK(l > u);
        CHECK(l > Rational(0));
        CHECK(l < Rational(1));
        CHECK(u > Rational(0));
        CHECK(u < Rational(1));
    }
}

TEST_CASE("order_threshold pins the peak where two payoffs tie") {
    CHECK(order_threshold(Rational(1, 2), Rational(2, 3)) == Rational(3, 5));
    CHECK(order_threshold(Rational(1, 3), Rational(2, 3)) == Rational(1, 2));
    CHECK(order_threshold(Rational(1, 4), Rational(1, 3)) == Rational(3, 11));
    CHECK_THROWS_AS(order_threshold(Rational(2, 3), Rational(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(order_threshold(Rational(0), Rational(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(order_threshold(Rational(1, 2), Rational(1)), std::invalid_argument);
}

TEST_CASE("compare_utility flips exactly at order_threshold") {
    std::mt19937_64 rng(17);
    int equals_seen = 0;
    for (int i = 0; i < 2000; ++i) {
        Rational x = testsupport::sample_fraction(rng, 15);
        Rational y = testsupport::sample_fraction(rng, 15);
        if (x == y) continue;
        if (y < x) std::swap(x, y);
        const Rational thr = order_threshold(x, y);
        for (const Rational& lambda :
             {thr, thr + Rational(1, 1000), thr - Rational(1, 1000), Rational(1, 2)}) {
            if (lambda <= Rational(0) || lambda >= Rational(1)) continue;
            const auto ord = compare_utility(x, y, lambda);
            if (lambda > thr) CHECK(ord == UtilityOrder::Less);
            else if (lambda < thr) CHECK(ord == UtilityOrder::Greater);
            else { CHECK(ord == UtilityOrder::Equal); ++equals_seen; }
        }
    }
    CHECK(equals_seen > 0);  // the boundary case actually fired
}

TEST_CASE("regime names and examples") {
    CHECK(regime(Rational(3, 5), 3) == Regime::Increasing);
    CHECK(regime(Rational(1, 3), 3) == Regime::Decreasing);
    CHECK(regime(Rational(1, 2), 3) == Regime::Mixed);
    CHECK(regime(Rational(1, 2), 2) == Regime::Increasing);  // degenerate degree
    CHECK(regime_name(Regime::Increasing) == "increasing");
    CHECK(regime_name(Regime::Decreasing) == "decreasing");
    CHECK(regime_name(Regime::Mixed) == "mixed");
    CHECK_THROWS_AS(regime(Rational(0), 3), std::invalid_argument);
    CHECK_THROWS_AS(regime(Rational(1), 3), std::invalid_argument);
}

TEST_CASE("regimes order achievable payoffs as promised") {
    // Strictly inside a regime the order is strict; at the boundary peak the
    // extremal pair ties, so the order is weak there.
    for (int delta = 3; delta <= 12; ++delta) {
        const auto fr = achievable_fractions(delta);
        const Rational l = lower_bound_L(delta);
        const Rational u = upper_bound_U(delta);
        const Rational above = l + (Rational(1) - l) / Rational(2);
        const Rational below = u / Rational(2);
        REQUIRE(regime(above, delta) == Regime::Increasing);
        REQUIRE(regime(l, delta) == Regime::Increasing);
        REQUIRE(regime(below, delta) == Regime::Decreasing);
        REQUIRE(regime(u, delta) == Regime::Decreasing);
        bool tie_at_l = false;
        bool tie_at_u = false;
        for (std::size_t i = 0; i < fr.size(); ++i) {
            for (std::size_t j = i + 1; j < fr.size(); ++j) {
                CHECK(compare_utility(fr[i], fr[j], above) == UtilityOrder::Less);
                CHECK(compare_utility(fr[i], fr[j], below) == UtilityOrder::Greater);
                const auto at_l = compare_utility(fr[i], fr[j], l);
                const auto at_u = compare_utility(fr[i], fr[j], u);
                CHECK(at_l != UtilityOrder::Greater);
                CHECK(at_u != UtilityOrder::Less);
                tie_at_l |= at_l == UtilityOrder::Equal;
                tie_at_u |= at_u == UtilityOrder::Equal;
            }
        }
        // The boundary is tight: the extremal pair really ties there.
        CHECK(tie_at_l);
        CHECK(tie_at_u);
        CHECK(compare_utility(Rational(delta - 2, delta - 1), Rational(delta - 1, delta), l) ==
              UtilityOrder::Equal);
        CHECK(compare_utility(Rational(1, delta), Rational(1, delta - 1), u) ==
              UtilityOrder::Equal);
    }
}

TEST_CASE("between the thresholds both orders occur") {
    const int delta = 3;
    const Rational mid(1, 2);  // U(3) = 2/5 < 1/2 < 3/5 = L(3)
    REQUIRE(regime(mid, delta) == Regime::Mixed);
    CHECK(compare_utility(Rational(1, 3), Rational(1, 2), mid) == UtilityOrder::Less);
    CHECK(compare_utility(Rational(1, 2), Rational(2, 3), mid) == UtilityOrder::Greater);
}
