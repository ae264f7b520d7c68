#include "rsg/bounds.hpp"

#include <stdexcept>
#include <string>

namespace rsg {

namespace {

void check_delta(int delta) {
    if (delta < 2)
        throw std::invalid_argument("bounds: maximum degree must be at least 2, got " +
                                    std::to_string(delta));
}

}  // namespace

Rational lower_bound_L(int delta) {
    check_delta(delta);
    const std::int64_t d = delta;
    return Rational(d * (d - 2), d * d - d - 1);
}

Rational upper_bound_U(int delta) {
    check_delta(delta);
    const std::int64_t d = delta;
    return Rational(d - 1, d * d - d - 1);
}

Rational order_threshold(const Rational& x, const Rational& y) {
    if (!(Rational(0) < x && x < y && y < Rational(1)))
        throw std::invalid_argument("order_threshold: need 0 < x < y < 1, got x=" + x.str() +
                                    " y=" + y.str());
    return x / (Rational(1) - y + x);
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::Increasing: return "increasing";
        case Regime::Decreasing: return "decreasing";
        default: return "mixed";
    }
}

Regime regime(const Rational& lambda, int delta) {
    check_delta(delta);
    if (lambda <= Rational(0) || lambda >= Rational(1))
        throw std::invalid_argument("regime: peak must lie strictly inside (0,1), got " +
                                    lambda.str());
    if (lambda >= lower_bound_L(delta)) return Regime::Increasing;
    if (lambda <= upper_bound_U(delta)) return Regime::Decreasing;
    return Regime::Mixed;
}

}  // namespace rsg
