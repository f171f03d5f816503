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

#include "propcal/dataset.hpp"

#include "propcal/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace propcal::dataset {

namespace {

constexpr std::string_view kPredictionPrefix = "pred_";

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos)
    {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_cells(std::string_view line)
{
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (;;)
    {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos)
        {
            return cells;
        }
        start = comma + 1;
    }
}

std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size())
    {
        const auto nl = text.find('\n', start);
        auto line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        if (!line.empty() && line.back() == '\r')
        {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        if (nl == std::string_view::npos)
        {
            break;
        }
        start = nl + 1;
    }
    while (!lines.empty() && trim(lines.back()).empty())
    {
        lines.pop_back();
    }
    return lines;
}

[[noreturn]] void invalid_cell(std::size_t row, std::string_view column, const std::string& what)
{
    std::ostringstream os;
    os << "row " << row << ", column " << column << ": " << what;
    throw ValidationError(os.str());
}

double parse_cell(std::string_view cell, std::size_t row, std::string_view column)
{
    double v = 0.0;
    const auto* begin = cell.data();
    const auto* end = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (cell.empty() || ec != std::errc() || ptr != end)
    {
        invalid_cell(row, column, "not a number: '" + std::string(cell) + "'");
    }
    if (!std::isfinite(v))
    {
        invalid_cell(row, column, "value must be finite");
    }
    return v;
}

void check_rss(double v, std::size_t row, std::string_view column)
{
    if (v < kMinRssDbm || v > kMaxRssDbm)
    {
        std::ostringstream os;
        os << "RSS " << v << " dBm outside [" << kMinRssDbm << ", " << kMaxRssDbm << "]";
        invalid_cell(row, column, os.str());
    }
}

} // namespace

bool DriveTestTable::has_predictions(model::ModelId id) const
{
    return std::any_of(predictions.begin(), predictions.end(), [id](const auto& c) { return c.id == id; });
}

calibration::PredictionSeries DriveTestTable::series(model::ModelId id) const
{
    for (const auto& c : predictions)
    {
        if (c.id == id)
        {
            calibration::PredictionSeries out;
            out.reserve(samples.size());
            for (std::size_t i = 0; i < samples.size(); ++i)
            {
                out.push_back({samples[i].distance, RssDbm{c.rss_dbm.at(i)}});
            }
            return out;
        }
    }
    throw Error("table has no prediction column for " + std::string(model::to_string(id)));
}

std::vector<calibration::ModelSeries> DriveTestTable::all_series() const
{
    std::vector<calibration::ModelSeries> out;
    for (const auto& c : predictions)
    {
        out.push_back({c.id, series(c.id)});
    }
    return out;
}

DriveTestTable parse_drive_test_csv(std::string_view text)
{
    const auto lines = split_lines(text);
    if (lines.empty() || trim(lines.front()).empty())
    {
        throw FormatError("line 1: missing header (expected distance_m,rssi_dbm)");
    }

    const auto header = split_cells(lines.front());
    if (header.size() < 2 || header[0] != "distance_m" || header[1] != "rssi_dbm")
    {
        throw FormatError("line 1: header must begin with distance_m,rssi_dbm");
    }

    DriveTestTable table;
    for (std::size_t c = 2; c < header.size(); ++c)
    {
        const auto name = header[c];
        std::optional<model::ModelId> id;
        if (name.starts_with(kPredictionPrefix))
        {
            id = model::parse_model_id(name.substr(kPredictionPrefix.size()));
        }
        if (!id)
        {
            throw FormatError("line 1: unknown column '" + std::string(name) + "'");
        }
        if (table.has_predictions(*id))
        {
            throw FormatError("line 1: duplicate column '" + std::string(name) + "'");
        }
        table.predictions.push_back({*id, {}});
    }

    for (std::size_t li = 1; li < lines.size(); ++li)
    {
        const std::size_t row = li;
        const auto cells = split_cells(lines[li]);
        if (cells.size() != header.size())
        {
            std::ostringstream os;
            os << "line " << li + 1 << " (row " << row << "): expected " << header.size() << " cells, got "
               << cells.size();
            throw FormatError(os.str());
        }

        const double distance = parse_cell(cells[0], row, "distance_m");
        if (distance <= 0.0)
        {
            invalid_cell(row, "distance_m", "distance must be positive");
        }
        const double rss = parse_cell(cells[1], row, "rssi_dbm");
        check_rss(rss, row, "rssi_dbm");
        table.samples.push_back({DistanceMeters{distance}, RssDbm{rss}});

        for (std::size_t c = 2; c < cells.size(); ++c)
        {
            const double p = parse_cell(cells[c], row, header[c]);
            check_rss(p, row, header[c]);
            table.predictions[c - 2].rss_dbm.push_back(p);
        }
    }
    return table;
}

std::string format_exact(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s(buf);
    while (s.back() == '0')
    {
        s.pop_back();
    }
    if (s.back() == '.')
    {
        s.pop_back();
    }
    if (s == "-0")
    {
        s = "0";
    }
    return s;
}

std::string serialize_drive_test_csv(const DriveTestTable& table)
{
    std::string out = "distance_m,rssi_dbm";
    for (const auto& c : table.predictions)
    {
        out += ",";
        out += kPredictionPrefix;
        out += model::to_string(c.id);
    }
    out += "\n";
    for (std::size_t i = 0; i < table.samples.size(); ++i)
    {
        out += format_exact(table.samples[i].distance.value);
        out += ",";
        out += format_exact(table.samples[i].measured.value);
        for (const auto& c : table.predictions)
        {
            out += ",";
            out += format_exact(c.rss_dbm.at(i));
        }
        out += "\n";
    }
    return out;
}

std::string emit_plot_series(const DriveTestTable& table,
                             std::span<const calibration::ModelSeries> models,
                             const SiteConfig& site,
                             PlotQuantity quantity)
{
    site.validate();
    const bool as_loss = quantity == PlotQuantity::path_loss;
    const std::string suffix = as_loss ? "_pl_db" : "_rss_dbm";
    const auto value = [&](double rss) {
        return as_loss ? path_loss_from_rss(site, RssDbm{rss}).value : rss;
    };

    std::vector<calibration::PredictionSeries> corrected;
    for (const auto& m : models)
    {
        const auto cf = calibration::correction_factor(table.samples, m.predictions);
        corrected.push_back(calibration::apply_correction(m.predictions, cf));
    }

    std::string out = "distance_m,measured" + suffix;
    for (const auto& m : models)
    {
        const std::string name(model::to_string(m.id));
        out += "," + name + suffix + "," + name + "_corrected" + suffix;
    }
    out += "\n";

    std::vector<std::size_t> order(table.samples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return table.samples[a].distance < table.samples[b].distance;
    });

    for (std::size_t i : order)
    {
        out += format_number(table.samples[i].distance.value);
        out += "," + format_number(value(table.samples[i].measured.value));
        for (std::size_t m = 0; m < models.size(); ++m)
        {
            out += "," + format_number(value(models[m].predictions[i].predicted.value));
            out += "," + format_number(value(corrected[m][i].predicted.value));
        }
        out += "\n";
    }
    return out;
}

} // namespace propcal::dataset
