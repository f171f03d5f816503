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

#ifndef PROPCAL_CALIBRATION_HPP
#define PROPCAL_CALIBRATION_HPP

#include "propcal/link_budget.hpp"
#include "propcal/model.hpp"
#include "propcal/units.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace propcal::calibration {

struct DriveTestSample
{
    DistanceMeters distance;
    RssDbm measured;
};

struct PredictedPoint
{
    DistanceMeters distance;
    RssDbm predicted;
};

/// Predictions aligned index-by-index with a list of samples.
using PredictionSeries = std::vector<PredictedPoint>;

struct ModelSeries
{
    model::ModelId id;
    PredictionSeries predictions;
};

/// Mean of measured - predicted, in dB. Positive means the model
/// over-predicts path loss.
struct CorrectionFactor
{
    double cf_db{};
};

struct ModelMetrics
{
    double mse_db2{};
    double rmse_db{};
    double pearson_r{};
    std::size_t n{};
};

// ---------------------------------------------------------------------------
// Series statistics. All functions throw AlignmentError when the two series
// differ in length or distances, DegenerateSeriesError on empty input.

/// measured_i - predicted_i, in order.
std::vector<double> residuals(std::span<const DriveTestSample> samples,
                              std::span<const PredictedPoint> predictions);

CorrectionFactor correction_factor(std::span<const DriveTestSample> samples,
                                   std::span<const PredictedPoint> predictions);

/// (1/N) sum (predicted - measured)^2, in dB^2.
double mse(std::span<const DriveTestSample> samples, std::span<const PredictedPoint> predictions);

/// Product-moment correlation. Needs n >= 2 and non-zero variance in both
/// series.
double pearson_r(std::span<const DriveTestSample> samples,
                 std::span<const PredictedPoint> predictions);

/// Mean-centered correlation of two plain series.
double pearson_r(std::span<const double> x, std::span<const double> y);

ModelMetrics metrics(std::span<const DriveTestSample> samples,
                     std::span<const PredictedPoint> predictions);

// ---------------------------------------------------------------------------
// Corrections

/// Path loss of the result is the original minus cf (so RSS rises by cf).
model::ModelSpec apply_correction(model::ModelSpec spec, CorrectionFactor cf);

/// Adds cf to every predicted RSS value.
PredictionSeries apply_correction(std::span<const PredictedPoint> predictions, CorrectionFactor cf);

/// Model RSS at every sample distance under the given budget.
PredictionSeries predict_series(const model::ModelSpec& spec,
                                const SiteConfig& site,
                                std::span<const DriveTestSample> samples);

/// Model inputs taken from a site: frequency and antenna heights.
model::ModelSpec spec_for_site(model::ModelId id, const SiteConfig& site);

// ---------------------------------------------------------------------------
// Calibration and ranking

struct ModelCalibration
{
    model::ModelId id{};
    CorrectionFactor cf;
    ModelMetrics before;
    ModelMetrics after;
};

struct CalibrateOptions
{
    // Annotate each model with whether its corrected MSE is at or below this.
    std::optional<double> mse_threshold_db2;
};

struct CalibrationReport
{
    std::vector<ModelCalibration> models; // input order
    model::ModelId best_model{};
    std::string selection_rule;
    std::optional<double> mse_threshold_db2;

    const ModelCalibration& at(model::ModelId id) const;
};

inline constexpr const char* kSelectionRule =
    "minimum mse_after_db2; ties broken by maximum pearson_r, then by model id";

/// Correction factor, metrics before and after correction, and the best model
/// by corrected MSE. Needs at least two samples and one model.
CalibrationReport calibrate(std::span<const DriveTestSample> samples,
                            std::span<const ModelSeries> series,
                            const CalibrateOptions& options = {});

/// {"models": {id: {...}}, "best_model": ..., "selection_rule": ...}
std::string report_to_json(const CalibrationReport& report);

// ---------------------------------------------------------------------------
// Site-parameter inference

struct PathLossPoint
{
    DistanceMeters distance;
    PathLossDb loss;
};

std::vector<PathLossPoint> lift_to_path_loss(const SiteConfig& site,
                                             std::span<const PredictedPoint> predictions);

/// Ordinary least squares of path loss on log10(d / 1 m).
struct LogDistanceFit
{
    double slope_db_per_decade{};
    double intercept_db{};
};

LogDistanceFit fit_log_distance(std::span<const PathLossPoint> column);

/// Transmitter height implied by a COST-231 Hata decade slope,
/// 10^((44.9 - slope) / 6.55).
double cost231_tx_height_from_slope(double slope_db_per_decade);

/// One searched parameter, named as in model::set_parameter. The grid holds
/// lo, lo + step, ... up to hi inclusive.
struct GridAxis
{
    std::string parameter;
    double lo{};
    double hi{};
    double step{};
};

struct InferenceOptions
{
    // Each level re-grids +-1 step around the incumbent at a tenth of the
    // step, clamped to the original bounds.
    int refine_levels = 0;
};

struct InferenceResult
{
    model::ModelSpec best;
    std::vector<std::pair<std::string, double>> parameters;
    // Infinite when no grid point could be evaluated.
    double fit_mse_db2{};
    LogDistanceFit column_fit;
    std::size_t evaluations{};
};

/// Exhaustive grid search for the parameters of `base` that minimize the MSE
/// between model path loss and `column`. Grid points where the model is out of
/// domain count as infinitely bad.
InferenceResult infer_site_parameters(std::span<const PathLossPoint> column,
                                      const model::ModelSpec& base,
                                      std::span<const GridAxis> axes,
                                      const InferenceOptions& options = {});

/// Search space used when none is given.
std::vector<GridAxis> default_search_grid(model::ModelId id);

struct RefittedColumn
{
    ModelSeries series;
    InferenceResult fit;
};

/// Fits `id` to a predicted RSS column over the default grid and returns the
/// fitted model's RSS at the same distances.
RefittedColumn refit_prediction_column(model::ModelId id,
                                       std::span<const PredictedPoint> column,
                                       const SiteConfig& site,
                                       const InferenceOptions& options = {.refine_levels = 4});

} // namespace propcal::calibration

#endif // PROPCAL_CALIBRATION_HPP
