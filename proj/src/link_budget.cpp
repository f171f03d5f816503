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

#include "propcal/link_budget.hpp"

#include "propcal/error.hpp"

#include <json.hpp>

#include <array>
#include <cmath>
#include <string_view>

namespace propcal {

namespace {

using Field = double SiteConfig::*;

struct NamedField
{
    std::string_view name;
    Field field;
};

constexpr std::array<NamedField, 8> kFields{{
    {"tx_power_dbm", &SiteConfig::tx_power_dbm},
    {"tx_gain_dbi", &SiteConfig::tx_gain_dbi},
    {"rx_gain_dbi", &SiteConfig::rx_gain_dbi},
    {"feeder_loss_db", &SiteConfig::feeder_loss_db},
    {"polarization_loss_db", &SiteConfig::polarization_loss_db},
    {"freq_mhz", &SiteConfig::freq_mhz},
    {"tx_height_m", &SiteConfig::tx_height_m},
    {"rx_height_m", &SiteConfig::rx_height_m},
}};

} // namespace

SiteConfig SiteConfig::table3()
{
    return SiteConfig{};
}

double SiteConfig::budget_db() const
{
    return tx_power_dbm + tx_gain_dbi + rx_gain_dbi - feeder_loss_db - polarization_loss_db;
}

void SiteConfig::validate() const
{
    for (const auto& f : kFields)
    {
        if (!std::isfinite(this->*f.field))
        {
            throw ValidationError("site: " + std::string(f.name) + " must be finite");
        }
    }
    if (feeder_loss_db < 0.0 || polarization_loss_db < 0.0)
    {
        throw ValidationError("site: losses must be non-negative");
    }
    if (freq_mhz <= 0.0 || tx_height_m <= 0.0 || rx_height_m <= 0.0)
    {
        throw ValidationError("site: frequency and antenna heights must be positive");
    }
}

RssDbm predict_rss(const SiteConfig& site, PathLossDb pl)
{
    return RssDbm{site.budget_db() - pl.value};
}

PathLossDb path_loss_from_rss(const SiteConfig& site, RssDbm rss)
{
    return PathLossDb{site.budget_db() - rss.value};
}

SiteConfig site_from_json(const std::string& text)
{
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw FormatError(std::string("site: invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
    {
        throw FormatError("site: top-level JSON value must be an object");
    }

    for (const auto& [key, value] : doc.items())
    {
        bool known = false;
        for (const auto& f : kFields)
        {
            known = known || f.name == key;
        }
        if (!known)
        {
            throw FormatError("site: unknown field '" + key + "'");
        }
    }

    SiteConfig site;
    for (const auto& f : kFields)
    {
        const auto it = doc.find(std::string(f.name));
        if (it == doc.end())
        {
            throw FormatError("site: missing field '" + std::string(f.name) + "'");
        }
        if (!it->is_number())
        {
            throw FormatError("site: field '" + std::string(f.name) + "' must be a number");
        }
        site.*f.field = it->get<double>();
    }
    site.validate();
    return site;
}

std::string site_to_json(const SiteConfig& site)
{
    nlohmann::ordered_json doc;
    for (const auto& f : kFields)
    {
        doc[std::string(f.name)] = site.*f.field;
    }
    return doc.dump(2);
}

} // namespace propcal
