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

#ifndef PROPCAL_MODEL_HPP
#define PROPCAL_MODEL_HPP

#include "propcal/units.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

/// Empirical path-loss models. All functions are pure; every public entry
/// point takes meters and megahertz and converts internally. Logarithms are
/// base 10 throughout.
namespace propcal::model {

enum class ModelId
{
    fspl,
    cost231_hata,
    extended_cost231,
    sui,
    ericsson,
};

inline constexpr std::array<ModelId, 5> kAllModels{ModelId::fspl,
                                                   ModelId::cost231_hata,
                                                   ModelId::extended_cost231,
                                                   ModelId::sui,
                                                   ModelId::ericsson};

std::string_view to_string(ModelId id);
std::optional<ModelId> parse_model_id(std::string_view name);

struct AntennaHeights
{
    double tx_height_m{};
    double rx_height_m{};
};

enum class Environment
{
    medium_suburban,
    metropolitan,
};

/// C_m of COST-231 Hata: 0 dB medium city / suburban, 3 dB metropolitan.
double clutter_constant_db(Environment env);

enum class Terrain
{
    A,
    B,
    C,
};

/// SUI terrain constants (a dimensionless, b in 1/m, c in m).
struct TerrainCategory
{
    Terrain terrain{Terrain::B};
    double a{};
    double b{};
    double c{};

    static TerrainCategory of(Terrain t);
};

struct SuiParams
{
    TerrainCategory terrain = TerrainCategory::of(Terrain::B);
    double d0_m = 100.0;
    // Fixed shadowing term, not sampled. Field values are typically 8.2-10.6 dB.
    double shadow_s_db = 0.0;
    // Receiver-height normalizer of X_h. 2 is the usual SUI value; 2000 is kept
    // for compatibility with the as-printed correction.
    double xh_denominator_m = 2.0;
};

struct EricssonParams
{
    double a0 = 36.2;
    double a1 = 30.2;
    double a2 = -12.0;
    double a3 = 0.1;
};

/// Which receiver height gain the extended COST-231 model uses.
enum class ExtendedRxGain
{
    medium_city, // (42.57 + 13.7 log f_GHz)(log h_r - 0.585)
    large_city,  // 0.759 h_r - 1.862
};

// ---------------------------------------------------------------------------
// Individual models

/// Free-space loss with the transmit gain folded in:
/// 32.45 - 10 log(G_t) + 20 log(f_MHz) + 20 log(d_km). gt_linear = 1 gives the
/// textbook form.
PathLossDb fspl(FrequencyMhz f, double d_km, double gt_linear);

/// Large-city mobile antenna correction a(h_m) = 3.2 (log(11.75 h_r))^2 - 4.97.
double mobile_station_correction(double rx_height_m);

PathLossDb cost231_hata(FrequencyMhz f, AntennaHeights h, DistanceMeters d, Environment env);

struct ExtendedCost231Breakdown
{
    double free_space_db{};     // A_fs
    double basic_median_db{};   // A_bm
    double tx_height_gain_db{}; // G_b
    double rx_height_gain_db{}; // G_r
    PathLossDb total{};         // A_fs + A_bm - G_b - G_r
};

ExtendedCost231Breakdown extended_cost231(FrequencyMhz f,
                                          AntennaHeights h,
                                          DistanceMeters d,
                                          ExtendedRxGain rx_gain = ExtendedRxGain::medium_city);

/// Path-loss exponent a - b h_b + c / h_b.
double sui_gamma(double tx_height_m, const TerrainCategory& terrain);

struct SuiCorrections
{
    double frequency_db{}; // X_f
    double rx_height_db{}; // X_h
};

SuiCorrections sui_corrections(FrequencyMhz f, double rx_height_m, const SuiParams& p);

/// Free-space loss at the reference distance, 20 log(4 pi d0 / lambda).
double sui_intercept_db(FrequencyMhz f, double d0_m);

/// Only defined for d > d0; throws DomainError otherwise.
PathLossDb sui_path_loss(FrequencyMhz f, AntennaHeights h, DistanceMeters d, const SuiParams& p);

/// g(f) = 44.49 log f - 4.78 (log f)^2.
double ericsson_gf(FrequencyMhz f);

PathLossDb ericsson_path_loss(FrequencyMhz f,
                              AntennaHeights h,
                              DistanceMeters d,
                              const EricssonParams& p);

// ---------------------------------------------------------------------------
// Uniform dispatch

/// A model together with every input it needs except distance. Fields not
/// used by the selected model are ignored.
struct ModelSpec
{
    ModelId id{ModelId::cost231_hata};
    FrequencyMhz frequency{2530.0};
    AntennaHeights heights{40.0, 3.0};
    Environment environment{Environment::metropolitan};
    double tx_gain_linear = 1.0;
    ExtendedRxGain extended_rx_gain{ExtendedRxGain::medium_city};
    SuiParams sui{};
    EricssonParams ericsson{};
    // Additive correction in dB, subtracted from the raw path loss.
    double correction_db = 0.0;
};

PathLossDb evaluate(const ModelSpec& spec, DistanceMeters d);

/// Inputs that are evaluated anyway but lie outside a model's documented
/// validity range. Empty when everything is in range.
std::vector<std::string> range_warnings(const ModelSpec& spec, DistanceMeters d);

// ---------------------------------------------------------------------------
// Named scalar parameters, used by the grid search.
//
// freq_mhz, tx_height_m, rx_height_m, tx_gain_linear, sui_d0_m, sui_shadow_db,
// ericsson_a0 .. ericsson_a3, correction_db

bool is_parameter(std::string_view name);
double get_parameter(const ModelSpec& spec, std::string_view name);
void set_parameter(ModelSpec& spec, std::string_view name, double value);

} // namespace propcal::model

#endif // PROPCAL_MODEL_HPP
