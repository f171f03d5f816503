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

#ifndef PROPCAL_DATASET_HPP
#define PROPCAL_DATASET_HPP

#include "propcal/calibration.hpp"
#include "propcal/link_budget.hpp"
#include "propcal/model.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace propcal::dataset {

/// Accepted range for any RSS value read from a file, in dBm.
inline constexpr double kMinRssDbm = -150.0;
inline constexpr double kMaxRssDbm = 40.0;

struct PredictionColumn
{
    model::ModelId id;
    std::vector<double> rss_dbm; // one per row
};

/// Drive-test rows in file order, optionally with predicted RSS columns.
struct DriveTestTable
{
    std::vector<calibration::DriveTestSample> samples;
    std::vector<PredictionColumn> predictions;

    bool has_predictions(model::ModelId id) const;
    /// Throws Error when the column is absent.
    calibration::PredictionSeries series(model::ModelId id) const;
    std::vector<calibration::ModelSeries> all_series() const;
};

/// CSV with header `distance_m,rssi_dbm[,pred_<model_id>...]`.
///
/// Header problems raise FormatError with the line number. Bad cells raise
/// ValidationError naming the data row (1-based) and column. No row is ever
/// dropped.
DriveTestTable parse_drive_test_csv(std::string_view text);

/// Inverse of parse_drive_test_csv; numbers use the shortest form that reads
/// back to the same double.
std::string serialize_drive_test_csv(const DriveTestTable& table);

/// The 45-row field reference corpus: measured RSS and the COST-231 Hata,
/// extended COST-231, SUI and Ericsson predictions at each distance.
const DriveTestTable& reference_dataset();

enum class PlotQuantity
{
    path_loss,
    rss,
};

/// Distance-sorted CSV: distance, measured value, then for every model its
/// prediction and its mean-offset corrected prediction. Path loss is obtained
/// from RSS through the site budget.
std::string emit_plot_series(const DriveTestTable& table,
                             std::span<const calibration::ModelSeries> models,
                             const SiteConfig& site,
                             PlotQuantity quantity);

/// Fixed six-decimal rendering with trailing zeros removed ("136.8", "-84.0249").
std::string format_number(double v);

/// Shortest round-trip rendering.
std::string format_exact(double v);

} // namespace propcal::dataset

#endif // PROPCAL_DATASET_HPP
