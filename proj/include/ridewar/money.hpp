/*
 * Copyright (C) 2026 The ridewar authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <string>

namespace ridewar {

/// Integer euro cents. Fares, revenues and subsidies are kept in this type so
/// that conservation identities hold exactly and CSV output is reproducible.
class Cents {
public:
    constexpr Cents() = default;
    constexpr explicit Cents(std::int64_t v) : value_(v) {}

    /// Rounds half-up to the nearest cent. The small bias absorbs binary
    /// representation error (1.2 * 3 == 3.5999999999999996).
    static Cents from_euros(double euros)
    {
        return Cents(static_cast<std::int64_t>(std::floor(euros * 100.0 + 0.5 + 1e-9)));
    }

    constexpr std::int64_t value() const { return value_; }
    constexpr double euros() const { return static_cast<double>(value_) / 100.0; }

    constexpr Cents& operator+=(Cents o)
    {
        value_ += o.value_;
        return *this;
    }
    constexpr Cents& operator-=(Cents o)
    {
        value_ -= o.value_;
        return *this;
    }
    friend constexpr Cents operator+(Cents a, Cents b) { return Cents(a.value_ + b.value_); }
    friend constexpr Cents operator-(Cents a, Cents b) { return Cents(a.value_ - b.value_); }
    friend constexpr auto operator<=>(Cents, Cents) = default;

    /// Formats as euros with exactly two decimals, e.g. "-3.05".
    std::string to_string() const
    {
        const std::int64_t mag = value_ < 0 ? -value_ : value_;
        std::string out = value_ < 0 ? "-" : "";
        out += std::to_string(mag / 100);
        out += '.';
        const auto frac = mag % 100;
        if (frac < 10) out += '0';
        out += std::to_string(frac);
        return out;
    }

private:
    std::int64_t value_ = 0;
};

/// Multiplies by a fraction and rounds half-up to a whole cent.
inline Cents scale(Cents amount, double fraction)
{
    return Cents::from_euros(amount.euros() * fraction);
}

} // namespace ridewar
