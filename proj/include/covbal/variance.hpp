#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace covbal {

/// Signed information-pressure value. Outputs and sinks count positive,
/// inputs and sources negative.
struct Variance {
    std::int64_t value = 0;

    constexpr Variance() = default;
    constexpr explicit Variance(std::int64_t v) : value(v) {}

    constexpr Variance& operator+=(Variance other) {
        value += other.value;
        return *this;
    }
    constexpr Variance& operator-=(Variance other) {
        value -= other.value;
        return *this;
    }
    friend constexpr Variance operator+(Variance a, Variance b) { return a += b; }
    friend constexpr Variance operator-(Variance a, Variance b) { return a -= b; }
    friend constexpr Variance operator-(Variance a) { return Variance{-a.value}; }
    friend constexpr auto operator<=>(const Variance&, const Variance&) = default;

    constexpr int sign() const { return (value > 0) - (value < 0); }
};

/// "+3", "0", "-2".
std::string format_signed(Variance v);

}  // namespace covbal
