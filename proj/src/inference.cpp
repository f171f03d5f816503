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

#include <algorithm>
#include <cmath>
#include <limits>

namespace propcal::calibration {

namespace {

struct Axis
{
    std::string parameter;
    double lo;
    double step;
    std::size_t count;

    double at(std::size_t i) const { return lo + step * static_cast<double>(i); }
};

Axis make_axis(const std::string& parameter, double lo, double hi, double step)
{
    return {parameter, lo, step, static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1};
}

// Sum of squared errors, abandoned as soon as it reaches `bound`: such a point
// can never become the strict minimizer, so the search result is unchanged.
double column_sse(const model::ModelSpec& spec, std::span<const PathLossPoint> column, double bound)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    double acc = 0.0;
    try
    {
        for (const auto& p : column)
        {
            const double e = model::evaluate(spec, p.distance).value - p.loss.value;
            acc += e * e;
            if (acc >= bound)
            {
                return inf;
            }
        }
    }
    catch (const DomainError&)
    {
        return inf;
    }
    return acc;
}

struct Incumbent
{
    model::ModelSpec spec;
    std::vector<double> values;
    double sse = std::numeric_limits<double>::infinity();
};

// Visits every grid point in odometer order (last axis fastest) and keeps the
// first strict minimizer.
std::size_t search(std::span<const PathLossPoint> column, const std::vector<Axis>& axes, Incumbent& best)
{
    std::vector<std::size_t> index(axes.size(), 0);
    std::vector<double> values(axes.size());
    model::ModelSpec spec = best.spec;
    std::size_t evaluations = 0;
    for (;;)
    {
        for (std::size_t a = 0; a < axes.size(); ++a)
        {
            values[a] = axes[a].at(index[a]);
            model::set_parameter(spec, axes[a].parameter, values[a]);
        }
        const double e = column_sse(spec, column, best.sse);
        ++evaluations;
        if (e < best.sse)
        {
            best.sse = e;
            best.values = values;
            best.spec = spec;
        }

        std::size_t a = axes.size();
        while (a > 0)
        {
            --a;
            if (++index[a] < axes[a].count)
            {
                break;
            }
            index[a] = 0;
            if (a == 0)
            {
                return evaluations;
            }
        }
    }
}

} // namespace

std::vector<PathLossPoint> lift_to_path_loss(const SiteConfig& site, std::span<const PredictedPoint> predictions)
{
    std::vector<PathLossPoint> out;
    out.reserve(predictions.size());
    for (const auto& p : predictions)
    {
        out.push_back({p.distance, path_loss_from_rss(site, p.predicted)});
    }
    return out;
}

LogDistanceFit fit_log_distance(std::span<const PathLossPoint> column)
{
    if (column.size() < 2)
    {
        throw DegenerateSeriesError("slope fit needs at least two points");
    }
    const double n = static_cast<double>(column.size());
    double mx = 0.0;
    double my = 0.0;
    for (const auto& p : column)
    {
        if (p.distance.value <= 0.0)
        {
            throw DomainError("slope fit: distances must be positive");
        }
        mx += std::log10(p.distance.value);
        my += p.loss.value;
    }
    mx /= n;
    my /= n;

    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& p : column)
    {
        const double dx = std::log10(p.distance.value) - mx;
        sxy += dx * (p.loss.value - my);
        sxx += dx * dx;
    }
    if (sxx == 0.0)
    {
        throw DegenerateSeriesError("slope fit: all distances are equal");
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

double cost231_tx_height_from_slope(double slope_db_per_decade)
{
    return std::pow(10.0, (44.9 - slope_db_per_decade) / 6.55);
}

InferenceResult infer_site_parameters(std::span<const PathLossPoint> column,
                                      const model::ModelSpec& base,
                                      std::span<const GridAxis> axes,
                                      const InferenceOptions& options)
{
    if (axes.empty())
    {
        throw DomainError("parameter grid is empty");
    }
    if (column.empty())
    {
        throw DegenerateSeriesError("cannot fit an empty column");
    }

    std::vector<Axis> grid;
    for (const auto& a : axes)
    {
        if (!model::is_parameter(a.parameter))
        {
            throw DomainError("unknown grid parameter '" + a.parameter + "'");
        }
        if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || !(a.step > 0.0) || a.hi < a.lo)
        {
            throw DomainError("grid axis '" + a.parameter + "' is empty (need lo <= hi and step > 0)");
        }
        for (const auto& g : grid)
        {
            if (g.parameter == a.parameter)
            {
                throw DomainError("grid parameter '" + a.parameter + "' given twice");
            }
        }
        grid.push_back(make_axis(a.parameter, a.lo, a.hi, a.step));
    }

    Incumbent best;
    best.spec = base;
    InferenceResult result;
    result.evaluations = search(column, grid, best);

    for (int level = 0; level < options.refine_levels && std::isfinite(best.sse); ++level)
    {
        std::vector<Axis> zoomed;
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            const double step = grid[i].step / 10.0;
            const double lo = std::max(axes[i].lo, best.values[i] - grid[i].step);
            const double hi = std::min(axes[i].hi, best.values[i] + grid[i].step);
            zoomed.push_back(make_axis(grid[i].parameter, lo, hi, step));
        }
        grid = std::move(zoomed);
        result.evaluations += search(column, grid, best);
    }

    result.best = best.spec;
    result.fit_mse_db2 = best.sse / static_cast<double>(column.size());
    for (std::size_t i = 0; i < axes.size(); ++i)
    {
        result.parameters.emplace_back(axes[i].parameter,
                                       best.values.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                           : best.values[i]);
    }
    result.column_fit = fit_log_distance(column);
    return result;
}

std::vector<GridAxis> default_search_grid(model::ModelId id)
{
    switch (id)
    {
    case model::ModelId::fspl:
        return {{"freq_mhz", 100.0, 6000.0, 10.0}};
    case model::ModelId::cost231_hata:
    case model::ModelId::extended_cost231:
        return {{"freq_mhz", 1500.0, 3000.0, 50.0},
                {"tx_height_m", 10.0, 100.0, 1.0},
                {"rx_height_m", 1.0, 10.0, 0.25}};
    case model::ModelId::sui:
        return {{"freq_mhz", 100.0, 3000.0, 50.0},
                {"tx_height_m", 10.0, 100.0, 1.0},
                {"rx_height_m", 1.0, 10.0, 0.25}};
    case model::ModelId::ericsson:
        return {{"tx_height_m", 10.0, 100.0, 1.0}, {"ericsson_a0", 0.0, 150.0, 0.05}};
    }
    return {};
}

RefittedColumn refit_prediction_column(model::ModelId id,
                                       std::span<const PredictedPoint> column,
                                       const SiteConfig& site,
                                       const InferenceOptions& options)
{
    const auto lifted = lift_to_path_loss(site, column);
    const auto grid = default_search_grid(id);
    RefittedColumn out;
    out.fit = infer_site_parameters(lifted, spec_for_site(id, site), grid, options);
    out.series.id = id;
    out.series.predictions.reserve(column.size());
    for (const auto& p : column)
    {
        out.series.predictions.push_back(
            {p.distance, predict_rss(site, model::evaluate(out.fit.best, p.distance))});
    }
    return out;
}

} // namespace propcal::calibration
