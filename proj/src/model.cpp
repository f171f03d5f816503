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

#include "propcal/model.hpp"

#include "propcal/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace propcal::model {

namespace {

constexpr double kSpeedOfLightMegaMetersPerSecond = 299.792458;

void require_positive(double v, std::string_view what)
{
    if (!std::isfinite(v) || v <= 0.0)
    {
        std::ostringstream os;
        os << what << " must be positive and finite (got " << v << ")";
        throw DomainError(os.str());
    }
}

double square(double x)
{
    return x * x;
}

} // namespace

std::string_view to_string(ModelId id)
{
    switch (id)
    {
    case ModelId::fspl:
        return "fspl";
    case ModelId::cost231_hata:
        return "cost231_hata";
    case ModelId::extended_cost231:
        return "extended_cost231";
    case ModelId::sui:
        return "sui";
    case ModelId::ericsson:
        return "ericsson";
    }
    return "unknown";
}

std::optional<ModelId> parse_model_id(std::string_view name)
{
    for (ModelId id : kAllModels)
    {
        if (to_string(id) == name)
        {
            return id;
        }
    }
    return std::nullopt;
}

double clutter_constant_db(Environment env)
{
    return env == Environment::metropolitan ? 3.0 : 0.0;
}

TerrainCategory TerrainCategory::of(Terrain t)
{
    switch (t)
    {
    case Terrain::A:
        return {Terrain::A, 4.6, 0.0075, 12.6};
    case Terrain::B:
        return {Terrain::B, 4.0, 0.0065, 17.1};
    case Terrain::C:
        return {Terrain::C, 3.6, 0.005, 20.0};
    }
    return {Terrain::B, 4.0, 0.0065, 17.1};
}

PathLossDb fspl(FrequencyMhz f, double d_km, double gt_linear)
{
    require_positive(f.value, "frequency");
    require_positive(d_km, "distance");
    require_positive(gt_linear, "transmit gain");

    return PathLossDb{32.45 - 10.0 * std::log10(gt_linear) + 20.0 * std::log10(f.value) +
                      20.0 * std::log10(d_km)};
}

double mobile_station_correction(double rx_height_m)
{
    require_positive(rx_height_m, "receiver height");
    return 3.2 * square(std::log10(11.75 * rx_height_m)) - 4.97;
}

PathLossDb cost231_hata(FrequencyMhz f, AntennaHeights h, DistanceMeters d, Environment env)
{
    require_positive(f.value, "frequency");
    require_positive(h.tx_height_m, "transmitter height");
    require_positive(h.rx_height_m, "receiver height");
    require_positive(d.value, "distance");

    const double log_f = std::log10(f.value);
    const double log_hb = std::log10(h.tx_height_m);
    const double log_d_km = std::log10(d.value / 1000.0);

    return PathLossDb{46.3 + 33.9 * log_f - 13.82 * log_hb - mobile_station_correction(h.rx_height_m) +
                      (44.9 - 6.55 * log_hb) * log_d_km + clutter_constant_db(env)};
}

ExtendedCost231Breakdown extended_cost231(FrequencyMhz f,
                                          AntennaHeights h,
                                          DistanceMeters d,
                                          ExtendedRxGain rx_gain)
{
    require_positive(f.value, "frequency");
    require_positive(h.tx_height_m, "transmitter height");
    require_positive(h.rx_height_m, "receiver height");
    require_positive(d.value, "distance");

    const double log_f_ghz = std::log10(f.value / 1000.0);
    const double log_d_km = std::log10(d.value / 1000.0);

    ExtendedCost231Breakdown out;
    out.free_space_db = 92.4 + 20.0 * log_d_km + 20.0 * log_f_ghz;
    out.basic_median_db = 20.41 + 9.83 * log_d_km + 7.894 * log_f_ghz + 9.56 * square(log_f_ghz);
    out.tx_height_gain_db = std::log10(h.tx_height_m / 200.0) * (13.958 + 5.8 * square(log_d_km));
    if (rx_gain == ExtendedRxGain::large_city)
    {
        out.rx_height_gain_db = 0.759 * h.rx_height_m - 1.862;
    }
    else
    {
        out.rx_height_gain_db = (42.57 + 13.7 * log_f_ghz) * (std::log10(h.rx_height_m) - 0.585);
    }
    out.total = PathLossDb{out.free_space_db + out.basic_median_db - out.tx_height_gain_db -
                           out.rx_height_gain_db};
    return out;
}

double sui_gamma(double tx_height_m, const TerrainCategory& terrain)
{
    require_positive(tx_height_m, "transmitter height");
    return terrain.a - terrain.b * tx_height_m + terrain.c / tx_height_m;
}

SuiCorrections sui_corrections(FrequencyMhz f, double rx_height_m, const SuiParams& p)
{
    require_positive(f.value, "frequency");
    require_positive(rx_height_m, "receiver height");
    if (p.xh_denominator_m != 2.0 && p.xh_denominator_m != 2000.0)
    {
        throw DomainError("SUI receiver-height denominator must be 2 or 2000");
    }

    const double xh_coefficient = p.terrain.terrain == Terrain::C ? -20.0 : -10.8;
    return {6.0 * std::log10(f.value / 2000.0),
            xh_coefficient * std::log10(rx_height_m / p.xh_denominator_m)};
}

double sui_intercept_db(FrequencyMhz f, double d0_m)
{
    require_positive(f.value, "frequency");
    require_positive(d0_m, "SUI reference distance");
    const double lambda_m = kSpeedOfLightMegaMetersPerSecond / f.value;
    return 20.0 * std::log10(4.0 * std::numbers::pi * d0_m / lambda_m);
}

PathLossDb sui_path_loss(FrequencyMhz f, AntennaHeights h, DistanceMeters d, const SuiParams& p)
{
    require_positive(d.value, "distance");
    require_positive(p.d0_m, "SUI reference distance");
    if (!std::isfinite(p.shadow_s_db) || p.shadow_s_db < 0.0)
    {
        throw DomainError("SUI shadowing term must be non-negative");
    }
    if (d.value <= p.d0_m)
    {
        std::ostringstream os;
        os << "SUI path loss requires d > d0 (d=" << d.value << " m, d0=" << p.d0_m << " m)";
        throw DomainError(os.str());
    }

    const double gamma = sui_gamma(h.tx_height_m, p.terrain);
    const SuiCorrections corr = sui_corrections(f, h.rx_height_m, p);
    return PathLossDb{sui_intercept_db(f, p.d0_m) + 10.0 * gamma * std::log10(d.value / p.d0_m) +
                      corr.frequency_db + corr.rx_height_db + p.shadow_s_db};
}

double ericsson_gf(FrequencyMhz f)
{
    require_positive(f.value, "frequency");
    const double log_f = std::log10(f.value);
    return 44.49 * log_f - 4.78 * square(log_f);
}

PathLossDb ericsson_path_loss(FrequencyMhz f,
                              AntennaHeights h,
                              DistanceMeters d,
                              const EricssonParams& p)
{
    require_positive(h.tx_height_m, "transmitter height");
    require_positive(h.rx_height_m, "receiver height");
    require_positive(d.value, "distance");
    for (double a : {p.a0, p.a1, p.a2, p.a3})
    {
        if (!std::isfinite(a))
        {
            throw DomainError("Ericsson coefficients must be finite");
        }
    }

    const double log_d_km = std::log10(d.value / 1000.0);
    const double log_hb = std::log10(h.tx_height_m);
    return PathLossDb{p.a0 + p.a1 * log_d_km + p.a2 * log_hb + p.a3 * log_hb * log_d_km -
                      3.2 * square(std::log10(11.75 * h.rx_height_m)) + ericsson_gf(f)};
}

PathLossDb evaluate(const ModelSpec& spec, DistanceMeters d)
{
    double raw = 0.0;
    switch (spec.id)
    {
    case ModelId::fspl:
        raw = fspl(spec.frequency, d.value / 1000.0, spec.tx_gain_linear).value;
        break;
    case ModelId::cost231_hata:
        raw = cost231_hata(spec.frequency, spec.heights, d, spec.environment).value;
        break;
    case ModelId::extended_cost231:
        raw = extended_cost231(spec.frequency, spec.heights, d, spec.extended_rx_gain).total.value;
        break;
    case ModelId::sui:
        raw = sui_path_loss(spec.frequency, spec.heights, d, spec.sui).value;
        break;
    case ModelId::ericsson:
        raw = ericsson_path_loss(spec.frequency, spec.heights, d, spec.ericsson).value;
        break;
    }
    return PathLossDb{raw - spec.correction_db};
}

std::vector<std::string> range_warnings(const ModelSpec& spec, DistanceMeters d)
{
    std::vector<std::string> out;
    const auto check = [&out](double v, double lo, double hi, std::string_view what) {
        if (v < lo || v > hi)
        {
            std::ostringstream os;
            os << what << " " << v << " outside documented range [" << lo << ", " << hi << "]";
            out.push_back(os.str());
        }
    };

    const std::string_view name = to_string(spec.id);
    switch (spec.id)
    {
    case ModelId::fspl:
        break;
    case ModelId::cost231_hata:
        check(spec.frequency.value, 150.0, 2000.0, std::string(name) + " frequency (MHz)");
        check(spec.heights.tx_height_m, 10.0, 200.0, std::string(name) + " tx height (m)");
        check(spec.heights.rx_height_m, 1.0, 10.0, std::string(name) + " rx height (m)");
        break;
    case ModelId::extended_cost231:
        check(spec.frequency.value, 150.0, 3500.0, std::string(name) + " frequency (MHz)");
        check(spec.heights.tx_height_m, 10.0, 200.0, std::string(name) + " tx height (m)");
        check(spec.heights.rx_height_m, 1.0, 10.0, std::string(name) + " rx height (m)");
        break;
    case ModelId::sui:
        check(spec.frequency.value, 0.0, 11000.0, std::string(name) + " frequency (MHz)");
        if (spec.sui.shadow_s_db != 0.0)
        {
            check(spec.sui.shadow_s_db, 8.2, 10.6, std::string(name) + " shadowing (dB)");
        }
        break;
    case ModelId::ericsson:
        break;
    }
    if (d.value > 0.0 && spec.id != ModelId::fspl && spec.id != ModelId::sui)
    {
        check(d.value, 1.0, 20000.0, std::string(name) + " distance (m)");
    }
    return out;
}

bool is_parameter(std::string_view name)
{
    static constexpr std::array<std::string_view, 11> kNames{
        "freq_mhz",      "tx_height_m", "rx_height_m", "tx_gain_linear", "sui_d0_m",      "sui_shadow_db",
        "ericsson_a0",   "ericsson_a1", "ericsson_a2", "ericsson_a3",    "correction_db",
    };
    for (auto n : kNames)
    {
        if (n == name)
        {
            return true;
        }
    }
    return false;
}

namespace {

template <typename Spec>
auto* parameter_slot(Spec& spec, std::string_view name)
{
    if (name == "freq_mhz")
        return &spec.frequency.value;
    if (name == "tx_height_m")
        return &spec.heights.tx_height_m;
    if (name == "rx_height_m")
        return &spec.heights.rx_height_m;
    if (name == "tx_gain_linear")
        return &spec.tx_gain_linear;
    if (name == "sui_d0_m")
        return &spec.sui.d0_m;
    if (name == "sui_shadow_db")
        return &spec.sui.shadow_s_db;
    if (name == "ericsson_a0")
        return &spec.ericsson.a0;
    if (name == "ericsson_a1")
        return &spec.ericsson.a1;
    if (name == "ericsson_a2")
        return &spec.ericsson.a2;
    if (name == "ericsson_a3")
        return &spec.ericsson.a3;
    if (name == "correction_db")
        return &spec.correction_db;
    throw DomainError("unknown model parameter '" + std::string(name) + "'");
}

} // namespace

double get_parameter(const ModelSpec& spec, std::string_view name)
{
    return *parameter_slot(spec, name);
}

void set_parameter(ModelSpec& spec, std::string_view name, double value)
{
    *parameter_slot(spec, name) = value;
}

} // namespace propcal::model
