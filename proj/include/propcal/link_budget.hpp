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

#ifndef PROPCAL_LINK_BUDGET_HPP
#define PROPCAL_LINK_BUDGET_HPP

#include "propcal/units.hpp"

#include <string>

namespace propcal {

/// Transmit/receive budget of a single base-station site.
struct SiteConfig
{
    double tx_power_dbm = 30.0;
    double tx_gain_dbi = 20.0;
    double rx_gain_dbi = 18.0;
    double feeder_loss_db = 1.2;
    double polarization_loss_db = 3.0;
    double freq_mhz = 2530.0;
    double tx_height_m = 40.0;
    double rx_height_m = 3.0;

    /// The reference WiMAX site: 30 dBm, 20 dBi, 18 dBi, 1.2 dB feeder and
    /// 3 dB polarization loss at 2530 MHz, 40 m / 3 m antennas.
    static SiteConfig table3();

    /// P_t + G_t + G_r - feeder - polarization. 63.8 dB for table3().
    double budget_db() const;

    /// Throws ValidationError on negative losses, non-finite gains or
    /// non-positive frequency / heights.
    void validate() const;
};

/// P_r = P_t + G_t + G_r - PL - feeder - polarization. A receive gain of zero
/// gives the budget without receive-antenna compensation.
RssDbm predict_rss(const SiteConfig& site, PathLossDb pl);

/// Exact inverse of predict_rss.
PathLossDb path_loss_from_rss(const SiteConfig& site, RssDbm rss);

/// JSON document with exactly the SiteConfig field names. Unknown or missing
/// fields raise FormatError; invalid values raise ValidationError.
SiteConfig site_from_json(const std::string& text);
std::string site_to_json(const SiteConfig& site);

} // namespace propcal

#endif // PROPCAL_LINK_BUDGET_HPP
