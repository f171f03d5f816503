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

#include "cli.hpp"

#include "propcal/calibration.hpp"
#include "propcal/dataset.hpp"
#include "propcal/error.hpp"
#include "propcal/link_budget.hpp"
#include "propcal/model.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace propcal::cli {

namespace {

constexpr std::string_view kEmbeddedReference = "embedded:reference";
constexpr std::string_view kTable3 = "table3";

class UsageError : public Error
{
public:
    using Error::Error;
};

struct Options
{
    std::string data = "-";
    std::string site = std::string(kTable3);
    std::string model;
    bool all_models = false;
    std::optional<double> freq_mhz;
    std::optional<double> tx_height_m;
    std::optional<double> rx_height_m;
    std::optional<double> tx_gain_linear;
    std::string env = "metro";
    std::string terrain = "B";
    std::string sui_xh_denom = "2";
    double sui_shadow_db = 0.0;
    std::string ext_rx_gain = "medium";
    std::optional<double> distance_m;
    std::string distances;
    std::string format;
    std::string out;
    bool dump = false;
    std::string quantity = "pl";
    std::string source = "table";
    std::vector<std::string> grid;
    int refine = 4;
    std::optional<double> mse_threshold;
};

std::string read_all(std::istream& in)
{
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string read_file(const std::string& path, std::istream& in)
{
    if (path == "-")
    {
        return read_all(in);
    }
    std::ifstream f(path, std::ios::binary);
    if (!f)
    {
        throw FormatError("cannot open '" + path + "'");
    }
    return read_all(f);
}

dataset::DriveTestTable load_table(const Options& o, std::istream& in)
{
    if (o.data == kEmbeddedReference)
    {
        return dataset::reference_dataset();
    }
    return dataset::parse_drive_test_csv(read_file(o.data, in));
}

SiteConfig load_site(const Options& o, std::istream& in)
{
    if (o.site == kTable3)
    {
        return SiteConfig::table3();
    }
    return site_from_json(read_file(o.site, in));
}

double parse_number(std::string_view s, std::string_view what)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    {
        throw UsageError(std::string(what) + ": not a number: '" + std::string(s) + "'");
    }
    return v;
}

std::vector<double> split_range(std::string_view text, std::string_view what)
{
    std::vector<double> parts;
    std::size_t start = 0;
    for (;;)
    {
        const auto colon = text.find(':', start);
        parts.push_back(parse_number(text.substr(start, colon - start), what));
        if (colon == std::string_view::npos)
        {
            break;
        }
        start = colon + 1;
    }
    if (parts.size() != 3)
    {
        throw UsageError(std::string(what) + " must be START:STOP:STEP");
    }
    return parts;
}

std::vector<DistanceMeters> distances(const Options& o)
{
    if (o.distance_m)
    {
        return {DistanceMeters{*o.distance_m}};
    }
    if (o.distances.empty())
    {
        throw UsageError("predict needs --distance-m or --distances");
    }
    const auto r = split_range(o.distances, "--distances");
    if (!(r[2] > 0.0) || r[1] < r[0])
    {
        throw UsageError("--distances needs START <= STOP and STEP > 0");
    }
    std::vector<DistanceMeters> out;
    const auto n = static_cast<std::size_t>(std::floor((r[1] - r[0]) / r[2] + 1e-9)) + 1;
    for (std::size_t i = 0; i < n; ++i)
    {
        out.emplace_back(r[0] + r[2] * static_cast<double>(i));
    }
    return out;
}

std::vector<model::ModelId> selected_models(const Options& o, bool required)
{
    if (o.all_models)
    {
        return {model::kAllModels.begin(), model::kAllModels.end()};
    }
    if (o.model.empty())
    {
        if (required)
        {
            throw UsageError("--model ID or --all is required");
        }
        return {};
    }
    const auto id = model::parse_model_id(o.model);
    if (!id)
    {
        throw UsageError("unknown model '" + o.model + "'");
    }
    return {*id};
}

model::ModelSpec build_spec(model::ModelId id, const Options& o, const SiteConfig& site)
{
    auto spec = calibration::spec_for_site(id, site);
    if (o.freq_mhz)
        spec.frequency = FrequencyMhz{*o.freq_mhz};
    if (o.tx_height_m)
        spec.heights.tx_height_m = *o.tx_height_m;
    if (o.rx_height_m)
        spec.heights.rx_height_m = *o.rx_height_m;
    if (o.tx_gain_linear)
        spec.tx_gain_linear = *o.tx_gain_linear;
    spec.environment = o.env == "medium" ? model::Environment::medium_suburban : model::Environment::metropolitan;
    spec.sui.terrain = model::TerrainCategory::of(o.terrain == "A"   ? model::Terrain::A
                                                  : o.terrain == "C" ? model::Terrain::C
                                                                     : model::Terrain::B);
    spec.sui.xh_denominator_m = o.sui_xh_denom == "2000" ? 2000.0 : 2.0;
    spec.sui.shadow_s_db = o.sui_shadow_db;
    spec.extended_rx_gain =
        o.ext_rx_gain == "large" ? model::ExtendedRxGain::large_city : model::ExtendedRxGain::medium_city;
    return spec;
}

std::string calibration_csv(const calibration::CalibrationReport& report)
{
    std::string out = "model,cf_db,mse_before_db2,mse_after_db2,rmse_before_db,rmse_after_db,pearson_r,n,best\n";
    for (const auto& m : report.models)
    {
        out += std::string(model::to_string(m.id));
        for (double v : {m.cf.cf_db, m.before.mse_db2, m.after.mse_db2, m.before.rmse_db, m.after.rmse_db,
                         m.before.pearson_r})
        {
            out += "," + dataset::format_exact(v);
        }
        out += "," + std::to_string(m.before.n);
        out += m.id == report.best_model ? ",1\n" : ",0\n";
    }
    return out;
}

std::string emit_report(const calibration::CalibrationReport& report, const Options& o)
{
    return o.format == "csv" ? calibration_csv(report) : calibration::report_to_json(report);
}

calibration::CalibrateOptions calibrate_options(const Options& o)
{
    return {.mse_threshold_db2 = o.mse_threshold};
}

std::string cmd_predict(const Options& o, std::istream& in, std::ostream& err)
{
    const auto site = load_site(o, in);
    const auto ids = selected_models(o, true);
    const auto ds = distances(o);

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::string csv = "distance_m,model,path_loss_db,rss_dbm\n";
    for (auto id : ids)
    {
        const auto spec = build_spec(id, o, site);
        for (const auto d : ds)
        {
            for (const auto& w : model::range_warnings(spec, d))
            {
                err << "propcal: warning: " << w << "\n";
            }
            const auto pl = model::evaluate(spec, d);
            const auto rss = predict_rss(site, pl);
            csv += dataset::format_number(d.value) + "," + std::string(model::to_string(id)) + "," +
                   dataset::format_number(pl.value) + "," + dataset::format_number(rss.value) + "\n";
            rows.push_back({{"distance_m", d.value},
                            {"model", std::string(model::to_string(id))},
                            {"path_loss_db", pl.value},
                            {"rss_dbm", rss.value}});
        }
    }
    if (o.format == "json")
    {
        return rows.dump(2) + "\n";
    }
    return csv;
}

std::string cmd_calibrate(const Options& o, std::istream& in)
{
    const auto table = load_table(o, in);
    const auto site = load_site(o, in);
    std::vector<calibration::ModelSeries> series;
    for (auto id : selected_models(o, true))
    {
        series.push_back({id, calibration::predict_series(build_spec(id, o, site), site, table.samples)});
    }
    return emit_report(calibration::calibrate(table.samples, series, calibrate_options(o)), o);
}

std::string cmd_compare(const Options& o, std::istream& in)
{
    const auto table = load_table(o, in);
    const auto site = load_site(o, in);
    if (table.predictions.empty())
    {
        throw FormatError("compare needs pred_<model> columns in the data");
    }
    auto series = table.all_series();
    if (o.source == "fitted")
    {
        for (auto& s : series)
        {
            s = calibration::refit_prediction_column(s.id, s.predictions, site, {.refine_levels = o.refine})
                    .series;
        }
    }
    return emit_report(calibration::calibrate(table.samples, series, calibrate_options(o)), o);
}

std::string cmd_reference(const Options& o)
{
    const auto& table = dataset::reference_dataset();
    if (o.dump || o.format == "csv")
    {
        return dataset::serialize_drive_test_csv(table);
    }
    nlohmann::ordered_json doc;
    doc["rows"] = table.samples.size();
    nlohmann::ordered_json cols = nlohmann::ordered_json::array({"distance_m", "rssi_dbm"});
    for (const auto& c : table.predictions)
    {
        cols.push_back("pred_" + std::string(model::to_string(c.id)));
    }
    doc["columns"] = cols;
    return doc.dump(2) + "\n";
}

std::vector<calibration::GridAxis> parse_grid(const std::vector<std::string>& specs)
{
    std::vector<calibration::GridAxis> axes;
    for (const auto& s : specs)
    {
        const auto eq = s.find('=');
        if (eq == std::string::npos)
        {
            throw UsageError("--grid must be NAME=LO:HI:STEP (got '" + s + "')");
        }
        const auto r = split_range(std::string_view(s).substr(eq + 1), "--grid");
        axes.push_back({s.substr(0, eq), r[0], r[1], r[2]});
    }
    return axes;
}

std::string cmd_infer(const Options& o, std::istream& in)
{
    const auto table = load_table(o, in);
    const auto site = load_site(o, in);
    auto ids = selected_models(o, true);
    if (o.all_models)
    {
        std::erase_if(ids, [&](auto id) { return !table.has_predictions(id); });
    }
    const auto custom = parse_grid(o.grid);

    nlohmann::ordered_json fits = nlohmann::ordered_json::array();
    for (auto id : ids)
    {
        const auto column = calibration::lift_to_path_loss(site, table.series(id));
        const auto grid = custom.empty() ? calibration::default_search_grid(id) : custom;
        const auto result =
            calibration::infer_site_parameters(column, build_spec(id, o, site), grid, {.refine_levels = o.refine});

        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        for (const auto& [name, value] : result.parameters)
        {
            // Refined grid points carry accumulated step error; report 6 decimals.
            params[name] = std::round(value * 1e6) / 1e6;
        }
        nlohmann::ordered_json fit;
        fit["model"] = std::string(model::to_string(id));
        fit["parameters"] = params;
        fit["fit_mse_db2"] = std::isfinite(result.fit_mse_db2) ? nlohmann::ordered_json(result.fit_mse_db2)
                                                                : nlohmann::ordered_json(nullptr);
        fit["slope_db_per_decade"] = result.column_fit.slope_db_per_decade;
        fit["intercept_db"] = result.column_fit.intercept_db;
        if (id == model::ModelId::cost231_hata)
        {
            fit["slope_implied_tx_height_m"] =
                calibration::cost231_tx_height_from_slope(result.column_fit.slope_db_per_decade);
        }
        fit["evaluations"] = result.evaluations;
        fits.push_back(std::move(fit));
    }
    nlohmann::ordered_json doc;
    doc["fits"] = std::move(fits);
    return doc.dump(2) + "\n";
}

std::string cmd_plot(const Options& o, std::istream& in)
{
    const auto table = load_table(o, in);
    const auto site = load_site(o, in);
    std::vector<calibration::ModelSeries> series;
    const auto ids = selected_models(o, false);
    if (ids.empty())
    {
        series = table.all_series();
    }
    for (auto id : ids)
    {
        series.push_back({id, calibration::predict_series(build_spec(id, o, site), site, table.samples)});
    }
    const auto q = o.quantity == "rss" ? dataset::PlotQuantity::rss : dataset::PlotQuantity::path_loss;
    return dataset::emit_plot_series(table, series, site, q);
}

void add_io(CLI::App* cmd, Options& o, bool with_data)
{
    if (with_data)
    {
        cmd->add_option("--data", o.data, "Drive-test CSV path, '-' for stdin, or embedded:reference");
    }
    cmd->add_option("--site", o.site, "Site JSON path or table3");
    cmd->add_option("--out", o.out, "Write output to PATH instead of stdout");
}

void add_format(CLI::App* cmd, Options& o)
{
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

void add_model_flags(CLI::App* cmd, Options& o)
{
    auto* model = cmd->add_option("--model", o.model, "Model id");
    auto* all = cmd->add_flag("--all", o.all_models, "Use every model");
    model->excludes(all);
    cmd->add_option("--freq-mhz", o.freq_mhz, "Carrier frequency (MHz)");
    cmd->add_option("--tx-height", o.tx_height_m, "Base-station antenna height (m)");
    cmd->add_option("--rx-height", o.rx_height_m, "Receiver antenna height (m)");
    cmd->add_option("--tx-gain-linear", o.tx_gain_linear, "FSPL transmit gain (linear ratio)");
    cmd->add_option("--env", o.env, "COST-231 environment")->check(CLI::IsMember({"medium", "metro"}));
    cmd->add_option("--terrain", o.terrain, "SUI terrain category")->check(CLI::IsMember({"A", "B", "C"}));
    cmd->add_option("--sui-xh-denom", o.sui_xh_denom, "SUI receiver-height normalizer")
        ->check(CLI::IsMember({"2", "2000"}));
    cmd->add_option("--sui-shadow", o.sui_shadow_db, "SUI shadowing term (dB)");
    cmd->add_option("--ext-rx-gain", o.ext_rx_gain, "Extended COST-231 receiver gain variant")
        ->check(CLI::IsMember({"medium", "large"}));
}

void write_output(const Options& o, const std::string& text, std::ostream& out)
{
    if (o.out.empty() || o.out == "-")
    {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f)
    {
        throw FormatError("cannot open '" + o.out + "' for writing");
    }
    f << text;
}

int fail(std::ostream& err, int code, std::string_view kind, const std::string& what)
{
    std::string line = what;
    std::replace(line.begin(), line.end(), '\n', ' ');
    err << "propcal: error: " << kind << ": " << line << "\n";
    return code;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Empirical path-loss prediction and drive-test calibration", "propcal"};
    app.require_subcommand(1, 1);

    auto* predict = app.add_subcommand("predict", "Path loss and RSS of one or more models");
    add_io(predict, o, false);
    add_format(predict, o);
    add_model_flags(predict, o);
    auto* dist = predict->add_option("--distance-m", o.distance_m, "Single distance (m)");
    auto* dists = predict->add_option("--distances", o.distances, "Distance sweep START:STOP:STEP (m)");
    dist->excludes(dists);

    auto* calibrate = app.add_subcommand("calibrate", "Calibrate models evaluated at the drive-test distances");
    add_io(calibrate, o, true);
    add_format(calibrate, o);
    add_model_flags(calibrate, o);
    calibrate->add_option("--mse-threshold", o.mse_threshold, "Annotate models with corrected MSE <= this");

    auto* compare = app.add_subcommand("compare", "Calibrate and rank the prediction columns of a data set");
    add_io(compare, o, true);
    add_format(compare, o);
    compare->add_option("--source", o.source, "Use the columns as given or refit each model to its column")
        ->check(CLI::IsMember({"table", "fitted"}));
    compare->add_option("--refine", o.refine, "Zoom levels for --source fitted")->check(CLI::Range(0, 8));
    compare->add_option("--mse-threshold", o.mse_threshold, "Annotate models with corrected MSE <= this");

    auto* reference = app.add_subcommand("reference", "The embedded reference corpus");
    add_format(reference, o);
    reference->add_option("--out", o.out, "Write output to PATH instead of stdout");
    reference->add_flag("--dump", o.dump, "Print the corpus as drive-test CSV");

    auto* infer = app.add_subcommand("infer", "Grid-search model inputs that reproduce a prediction column");
    add_io(infer, o, true);
    add_model_flags(infer, o);
    infer->add_option("--grid", o.grid, "Search axis NAME=LO:HI:STEP (repeatable)");
    infer->add_option("--refine", o.refine, "Zoom levels after the coarse grid")->check(CLI::Range(0, 8));

    auto* plot = app.add_subcommand("plot", "Plot-ready CSV of measured, predicted and corrected series");
    add_io(plot, o, true);
    add_model_flags(plot, o);
    plot->add_option("--quantity", o.quantity, "pl or rss")->check(CLI::IsMember({"pl", "rss"}));

    std::vector<const char*> argv{"propcal"};
    for (const auto& a : args)
    {
        argv.push_back(a.c_str());
    }

    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return kOk;
    }
    catch (const CLI::CallForAllHelp&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    }
    catch (const CLI::ParseError& e)
    {
        return fail(err, kUsage, "usage", e.what());
    }

    try
    {
        std::string text;
        if (predict->parsed())
            text = cmd_predict(o, in, err);
        else if (calibrate->parsed())
            text = cmd_calibrate(o, in);
        else if (compare->parsed())
            text = cmd_compare(o, in);
        else if (reference->parsed())
            text = cmd_reference(o);
        else if (infer->parsed())
            text = cmd_infer(o, in);
        else if (plot->parsed())
            text = cmd_plot(o, in);
        write_output(o, text, out);
    }
    catch (const UsageError& e)
    {
        return fail(err, kUsage, "usage", e.what());
    }
    catch (const DomainError& e)
    {
        return fail(err, kDomain, "domain", e.what());
    }
    catch (const Error& e)
    {
        return fail(err, kData, "data", e.what());
    }
    return kOk;
}

} // namespace propcal::cli
