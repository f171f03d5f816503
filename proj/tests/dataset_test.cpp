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

#include <doctest.h>

#include <algorithm>
#include <string>

using namespace propcal;
using namespace propcal::dataset;
using model::ModelId;

namespace {

std::string error_of(std::string_view csv)
{
    try
    {
        parse_drive_test_csv(csv);
    }
    catch (const Error& e)
    {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("parse minimal csv")
{
    const auto t = parse_drive_test_csv("distance_m,rssi_dbm\n4200,-73\n");
    REQUIRE(t.samples.size() == 1);
    CHECK(t.samples[0].distance.value == 4200.0);
    CHECK(t.samples[0].measured.value == -73.0);
    CHECK(t.predictions.empty());
}

TEST_CASE("parse prediction columns")
{
    const auto t = parse_drive_test_csv("distance_m,rssi_dbm,pred_sui\n400,-61,-24.3\n");
    REQUIRE(t.has_predictions(ModelId::sui));
    const auto s = t.series(ModelId::sui);
    REQUIRE(s.size() == 1);
    CHECK(s[0].predicted.value == -24.3);
    CHECK_THROWS_AS(t.series(ModelId::ericsson), Error);
}

TEST_CASE("parse tolerates CRLF, spaces and duplicate distances")
{
    const auto t = parse_drive_test_csv("distance_m, rssi_dbm\r\n3500, -79\r\n3500,-78\r\n\r\n");
    CHECK(t.samples.size() == 2);
}

TEST_CASE("parse errors name line, row and column")
{
    CHECK_THROWS_AS(parse_drive_test_csv(""), FormatError);
    CHECK_THROWS_AS(parse_drive_test_csv("d,rssi\n1,2\n"), FormatError);
    CHECK(error_of("d,rssi\n1,2\n").find("line 1") != std::string::npos);
    CHECK(error_of("distance_m,rssi_dbm,pred_okumura\n1,-70,-71\n").find("pred_okumura") != std::string::npos);
    CHECK_THROWS_AS(parse_drive_test_csv("distance_m,rssi_dbm,pred_sui,pred_sui\n"), FormatError);
    CHECK_THROWS_AS(parse_drive_test_csv("distance_m,rssi_dbm\n100,-70,3\n"), FormatError);

    CHECK_THROWS_AS(parse_drive_test_csv("distance_m,rssi_dbm\n-5,-70\n"), ValidationError);
    const auto neg = error_of("distance_m,rssi_dbm\n-5,-70\n");
    CHECK(neg.find("row 1") != std::string::npos);
    CHECK(neg.find("distance") != std::string::npos);

    const auto nan = error_of("distance_m,rssi_dbm\n100,-70\n200,abc\n");
    CHECK(nan.find("row 2") != std::string::npos);
    CHECK(nan.find("rssi_dbm") != std::string::npos);

    // Watts instead of dBm, or a decimal comma.
    CHECK_THROWS_AS(parse_drive_test_csv("distance_m,rssi_dbm\n100,-170\n"), ValidationError);
    CHECK_THROWS_AS(parse_drive_test_csv("distance_m,rssi_dbm,pred_sui\n100,-70,55\n"), ValidationError);
    CHECK_THROWS_AS(parse_drive_test_csv("distance_m,rssi_dbm\n100,\"-70,5\"\n"), FormatError);
    CHECK_THROWS_AS(parse_drive_test_csv("distance_m,rssi_dbm\n100,inf\n"), ValidationError);
}

TEST_CASE("reference corpus")
{
    const auto& t = reference_dataset();
    REQUIRE(t.samples.size() == 45);
    REQUIRE(t.predictions.size() == 4);
    CHECK(&t == &reference_dataset());

    const auto first = t.samples.front();
    CHECK(first.distance.value == 4200);
    CHECK(first.measured.value == -73);
    CHECK(t.series(ModelId::cost231_hata).front().predicted.value == -97.94);
    CHECK(t.series(ModelId::extended_cost231).front().predicted.value == -91.87);
    CHECK(t.series(ModelId::sui).front().predicted.value == -66.86);
    CHECK(t.series(ModelId::ericsson).front().predicted.value == -100.58);

    CHECK(t.samples.back().distance.value == 400);
    CHECK(t.samples.back().measured.value == -61);
    CHECK(t.series(ModelId::cost231_hata).back().predicted.value == -62.81);
    CHECK(t.series(ModelId::extended_cost231).back().predicted.value == -60.48);
    CHECK(t.series(ModelId::sui).back().predicted.value == -24.3);
    CHECK(t.series(ModelId::ericsson).back().predicted.value == -69.57);

    std::vector<double> at3500;
    for (const auto& s : t.samples)
        if (s.distance.value == 3500)
            at3500.push_back(s.measured.value);
    CHECK(at3500 == std::vector<double>{-79, -78, -80});

    const auto [lo, hi] = std::minmax_element(t.samples.begin(), t.samples.end(), [](auto a, auto b) {
        return a.measured < b.measured;
    });
    CHECK(hi->measured.value == -50);
    CHECK(hi->distance.value == 415);
    CHECK(lo->measured.value == -92);
    CHECK(lo->distance.value == 3800);
}

TEST_CASE("reference dump re-parses to the corpus")
{
    const auto& t = reference_dataset();
    const auto text = serialize_drive_test_csv(t);
    CHECK(text.starts_with(
        "distance_m,rssi_dbm,pred_cost231_hata,pred_extended_cost231,pred_sui,pred_ericsson\n4200,-73,-97.94,-91.87,"
        "-66.86,-100.58\n"));
    const auto back = parse_drive_test_csv(text);
    REQUIRE(back.samples.size() == t.samples.size());
    for (std::size_t i = 0; i < t.samples.size(); ++i)
    {
        CHECK(back.samples[i].distance == t.samples[i].distance);
        CHECK(back.samples[i].measured == t.samples[i].measured);
        for (std::size_t c = 0; c < t.predictions.size(); ++c)
            CHECK(back.predictions[c].rss_dbm[i] == t.predictions[c].rss_dbm[i]);
    }
    CHECK(serialize_drive_test_csv(back) == text);
}

TEST_CASE("plot series")
{
    const auto& t = reference_dataset();
    const auto site = SiteConfig::table3();

    SUBCASE("no models")
    {
        const auto csv = emit_plot_series(t, {}, site, PlotQuantity::path_loss);
        CHECK(csv.starts_with("distance_m,measured_pl_db\n400,124.8\n"));
        // Sorted; the d=4200 row is last.
        CHECK(csv.ends_with("4200,136.8\n"));
    }
    SUBCASE("corrected columns")
    {
        const std::vector<calibration::ModelSeries> models{
            {ModelId::extended_cost231, t.series(ModelId::extended_cost231)}};
        const auto csv = emit_plot_series(t, models, site, PlotQuantity::rss);
        CHECK(csv.starts_with("distance_m,measured_rss_dbm,extended_cost231_rss_dbm,extended_cost231_corrected_rss_dbm\n"));
        const auto last = csv.substr(csv.rfind('\n', csv.size() - 2) + 1);
        CHECK(last.starts_with("4200,-73,-91.87,-84.02"));
    }
    SUBCASE("duplicate distances keep file order")
    {
        const auto csv = emit_plot_series(t, {}, site, PlotQuantity::rss);
        CHECK(csv.find("3500,-79\n3500,-78\n3500,-80\n") != std::string::npos);
    }
}

TEST_CASE("number formatting")
{
    CHECK(format_number(136.8) == "136.8");
    CHECK(format_number(63.8 + 73.0) == "136.8");
    CHECK(format_number(-0.0000001) == "0");
    CHECK(format_number(32.45) == "32.45");
    CHECK(format_number(100.0) == "100");
    CHECK(format_exact(-97.94) == "-97.94");
}
