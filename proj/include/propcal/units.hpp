/*
 * Copyright 2026 The propcal Authors
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

#ifndef PROPCAL_UNITS_HPP
#define PROPCAL_UNITS_HPP

#include <compare>

namespace propcal {

/// A double tagged with its physical unit. Construction is explicit so that
/// meters cannot silently stand in for megahertz.
template <typename Tag>
struct Quantity
{
    double value{};

    constexpr Quantity() = default;
    constexpr explicit Quantity(double v) : value(v) {}

    friend constexpr auto operator<=>(Quantity, Quantity) = default;
};

using FrequencyMhz = Quantity<struct FrequencyMhzTag>;
using DistanceMeters = Quantity<struct DistanceMetersTag>;
using PathLossDb = Quantity<struct PathLossDbTag>;
using RssDbm = Quantity<struct RssDbmTag>;

} // namespace propcal

#endif // PROPCAL_UNITS_HPP
