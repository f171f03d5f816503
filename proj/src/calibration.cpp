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

#include "propcal/calibration.hpp"

#include "propcal/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace propcal::calibration {

namespace {

void require_aligned(std::span<const DriveTestSample> samples, std::span<const PredictedPoint> predictions)
{
    if (samples.size() != predictions.size())
    {
        std::ostringstream os;
        os << "series length mismatch: " << samples.size() << " samples vs " << predictions.size()
           << " predictions";
        throw AlignmentError(os.str());
    }
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        if (samples[i].distance != predictions[i].distance)
        {
            std::ostringstream os;
            os << "series distance mismatch at index " << i << ": " << samples[i].distance.value
               << " m vs " << predictions[i].distance.value << " m";
            throw AlignmentError(os.str());
        }
    }
    if (samples.empty())
    {
        throw DegenerateSeriesError("empty series");
    }
}

double mean(std::span<const double> v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

} // namespace

std::vector<double> residuals(std::span<const DriveTestSample> samples,
                              std::span<const PredictedPoint> predictions)
{
    require_aligned(samples, predictions);
    std::vector<double> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        out[i] = samples[i].measured.value - predictions[i].predicted.value;
    }
    return out;
}

CorrectionFactor correction_factor(std::span<const DriveTestSample> samples,
                                   std::span<const PredictedPoint> predictions)
{
    const auto r = residuals(samples, predictions);
    return CorrectionFactor{mean(r)};
}

double mse(std::span<const DriveTestSample> samples, std::span<const PredictedPoint> predictions)
{
    const auto r = residuals(samples, predictions);
    double acc = 0.0;
    for (double e : r)
    {
        acc += e * e;
    }
    return acc / static_cast<double>(r.size());
}

double pearson_r(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
    {
        throw AlignmentError("pearson_r: series length mismatch");
    }
    if (x.size() < 2)
    {
        throw DegenerateSeriesError("pearson_r needs at least two points");
    }

    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
    {
        throw DegenerateSeriesError("pearson_r: zero variance series");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double pearson_r(std::span<const DriveTestSample> samples, std::span<const PredictedPoint> predictions)
{
    require_aligned(samples, predictions);
    std::vector<double> measured(samples.size());
    std::vector<double> predicted(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        measured[i] = samples[i].measured.value;
        predicted[i] = predictions[i].predicted.value;
    }
    return pearson_r(measured, predicted);
}

ModelMetrics metrics(std::span<const DriveTestSample> samples, std::span<const PredictedPoint> predictions)
{
    ModelMetrics m;
    m.mse_db2 = mse(samples, predictions);
    m.rmse_db = std::sqrt(m.mse_db2);
    m.pearson_r = pearson_r(samples, predictions);
    m.n = samples.size();
    return m;
}

model::ModelSpec apply_correction(model::ModelSpec spec, CorrectionFactor cf)
{
    spec.correction_db += cf.cf_db;
    return spec;
}

PredictionSeries apply_correction(std::span<const PredictedPoint> predictions, CorrectionFactor cf)
{
    PredictionSeries out(predictions.begin(), predictions.end());
    for (auto& p : out)
    {
        p.predicted = RssDbm{p.predicted.value + cf.cf_db};
    }
    return out;
}

PredictionSeries predict_series(const model::ModelSpec& spec,
                                const SiteConfig& site,
                                std::span<const DriveTestSample> samples)
{
    PredictionSeries out;
    out.reserve(samples.size());
    for (const auto& s : samples)
    {
        out.push_back({s.distance, predict_rss(site, model::evaluate(spec, s.distance))});
    }
    return out;
}

model::ModelSpec spec_for_site(model::ModelId id, const SiteConfig& site)
{
    model::ModelSpec spec;
    spec.id = id;
    spec.frequency = FrequencyMhz{site.freq_mhz};
    spec.heights = {site.tx_height_m, site.rx_height_m};
    return spec;
}

const ModelCalibration& CalibrationReport::at(model::ModelId id) const
{
    for (const auto& m : models)
    {
        if (m.id == id)
        {
            return m;
        }
    }
    throw Error("report has no entry for model " + std::string(model::to_string(id)));
}

CalibrationReport calibrate(std::span<const DriveTestSample> samples,
                            std::span<const ModelSeries> series,
                            const CalibrateOptions& options)
{
    if (samples.size() < 2)
    {
        throw DegenerateSeriesError("calibration needs at least two samples");
    }
    if (series.empty())
    {
        throw DegenerateSeriesError("calibration needs at least one model series");
    }

    CalibrationReport report;
    report.selection_rule = kSelectionRule;
    report.mse_threshold_db2 = options.mse_threshold_db2;
    for (const auto& s : series)
    {
        for (const auto& existing : report.models)
        {
            if (existing.id == s.id)
            {
                throw Error("duplicate model series " + std::string(model::to_string(s.id)));
            }
        }
        ModelCalibration c;
        c.id = s.id;
        c.cf = correction_factor(samples, s.predictions);
        c.before = metrics(samples, s.predictions);
        c.after = metrics(samples, apply_correction(s.predictions, c.cf));
        report.models.push_back(c);
    }

    const auto better = [](const ModelCalibration& a, const ModelCalibration& b) {
        if (a.after.mse_db2 != b.after.mse_db2)
        {
            return a.after.mse_db2 < b.after.mse_db2;
        }
        if (a.after.pearson_r != b.after.pearson_r)
        {
            return a.after.pearson_r > b.after.pearson_r;
        }
        return model::to_string(a.id) < model::to_string(b.id);
    };
    report.best_model = std::min_element(report.models.begin(), report.models.end(), better)->id;
    return report;
}

std::string report_to_json(const CalibrationReport& report)
{
    nlohmann::ordered_json models = nlohmann::ordered_json::object();
    for (const auto& m : report.models)
    {
        nlohmann::ordered_json entry;
        entry["cf_db"] = m.cf.cf_db;
        entry["mse_before_db2"] = m.before.mse_db2;
        entry["mse_after_db2"] = m.after.mse_db2;
        entry["rmse_before_db"] = m.before.rmse_db;
        entry["rmse_after_db"] = m.after.rmse_db;
        entry["pearson_r"] = m.before.pearson_r;
        entry["n"] = m.before.n;
        if (report.mse_threshold_db2)
        {
            entry["meets_mse_threshold"] = m.after.mse_db2 <= *report.mse_threshold_db2;
        }
        models[std::string(model::to_string(m.id))] = std::move(entry);
    }

    nlohmann::ordered_json doc;
    doc["models"] = std::move(models);
    doc["best_model"] = std::string(model::to_string(report.best_model));
    doc["selection_rule"] = report.selection_rule;
    if (report.mse_threshold_db2)
    {
        doc["mse_threshold_db2"] = *report.mse_threshold_db2;
    }
    return doc.dump(2) + "\n";
}

} // namespace propcal::calibration
