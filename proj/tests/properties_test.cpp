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

// Randomized invariants. Every generator is seeded so failures reproduce.
#include "oracle.hpp"

#include "propcal/calibration.hpp"
#include "propcal/dataset.hpp"
#include "propcal/link_budget.hpp"
#include "propcal/model.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace propcal;
using namespace propcal::model;
using namespace propcal::calibration;

namespace {

constexpr int kTrials = 300;

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

ModelSpec random_spec(std::mt19937_64& rng, ModelId id)
{
    ModelSpec s;
    s.id = id;
    s.frequency = FrequencyMhz{uniform(rng, 150.0, 3500.0)};
    s.heights = {uniform(rng, 10.0, 200.0), uniform(rng, 1.0, 10.0)};
    s.environment = uniform(rng, 0, 1) < 0.5 ? Environment::metropolitan : Environment::medium_suburban;
    s.tx_gain_linear = uniform(rng, 0.5, 100.0);
    s.extended_rx_gain = uniform(rng, 0, 1) < 0.5 ? ExtendedRxGain::medium_city : ExtendedRxGain::large_city;
    const int t = static_cast<int>(uniform(rng, 0, 3));
    s.sui.terrain = TerrainCategory::of(t == 0 ? Terrain::A : t == 1 ? Terrain::B : Terrain::C);
    s.sui.shadow_s_db = uniform(rng, 0, 1) < 0.5 ? 0.0 : uniform(rng, 8.2, 10.6);
    s.sui.xh_denominator_m = uniform(rng, 0, 1) < 0.5 ? 2.0 : 2000.0;
    return s;
}

double pl(const ModelSpec& s, double d)
{
    return evaluate(s, DistanceMeters{d}).value;
}

} // namespace

TEST_CASE("path loss increases with distance")
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < kTrials; ++i)
    {
        for (auto id : kAllModels)
        {
            const auto spec = random_spec(rng, id);
            const double lo = id == ModelId::sui ? spec.sui.d0_m * 1.001 : 50.0;
            double d1 = uniform(rng, lo, 30000.0);
            double d2 = uniform(rng, lo, 30000.0);
            if (d1 > d2)
                std::swap(d1, d2);
            if (d1 == d2)
                continue;
            CHECK_MESSAGE(pl(spec, d1) < pl(spec, d2), to_string(id), " d1=", d1, " d2=", d2);
        }
    }
}

TEST_CASE("fspl doubling laws")
{
    std::mt19937_64 rng(2);
    for (int i = 0; i < kTrials; ++i)
    {
        const FrequencyMhz f{uniform(rng, 1.0, 10000.0)};
        const double d = uniform(rng, 0.01, 100.0);
        const double gt = uniform(rng, 0.1, 1000.0);
        const double six = 20.0 * std::log10(2.0);
        CHECK(std::abs(fspl(f, 2 * d, gt).value - fspl(f, d, gt).value - six) < 1e-9);
        CHECK(std::abs(fspl(FrequencyMhz{2 * f.value}, d, gt).value - fspl(f, d, gt).value - six) < 1e-9);
    }
}

TEST_CASE("decade slopes")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < kTrials; ++i)
    {
        const double d = uniform(rng, 150.0, 3000.0);
        const auto cost = random_spec(rng, ModelId::cost231_hata);
        CHECK(std::abs(pl(cost, 10 * d) - pl(cost, d) - (44.9 - 6.55 * std::log10(cost.heights.tx_height_m))) <
              1e-9);

        auto eric = random_spec(rng, ModelId::ericsson);
        eric.ericsson = {uniform(rng, 0, 80), uniform(rng, 10, 50), uniform(rng, -20, 0), uniform(rng, -1, 1)};
        CHECK(std::abs(pl(eric, 10 * d) - pl(eric, d) -
                       (eric.ericsson.a1 + eric.ericsson.a3 * std::log10(eric.heights.tx_height_m))) < 1e-9);

        const auto sui = random_spec(rng, ModelId::sui);
        CHECK(std::abs(pl(sui, 10 * d) - pl(sui, d) - 10 * sui_gamma(sui.heights.tx_height_m, sui.sui.terrain)) <
              1e-9);
    }
}

TEST_CASE("sui and extended sub-expressions")
{
    std::mt19937_64 rng(4);
    for (int i = 0; i < kTrials; ++i)
    {
        const auto s = random_spec(rng, ModelId::sui);
        CHECK(sui_corrections(FrequencyMhz{2000.0}, s.heights.rx_height_m, s.sui).frequency_db == 0.0);
        CHECK(sui_corrections(s.frequency, s.heights.rx_height_m, s.sui).rx_height_db ==
              sui_corrections(FrequencyMhz{uniform(rng, 100, 9000)}, s.heights.rx_height_m, s.sui).rx_height_db);

        const auto e = random_spec(rng, ModelId::extended_cost231);
        const auto b = extended_cost231(e.frequency, e.heights, DistanceMeters{uniform(rng, 20, 20000)},
                                        e.extended_rx_gain);
        const double recombined = b.free_space_db + b.basic_median_db - b.tx_height_gain_db - b.rx_height_gain_db;
        CHECK(std::abs(recombined - b.total.value) < 1e-12);
    }
}

TEST_CASE("link budget roundtrip and linearity")
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < kTrials; ++i)
    {
        SiteConfig site;
        site.tx_power_dbm = uniform(rng, 0, 50);
        site.tx_gain_dbi = uniform(rng, 0, 25);
        site.rx_gain_dbi = uniform(rng, 0, 25);
        site.feeder_loss_db = uniform(rng, 0, 5);
        site.polarization_loss_db = uniform(rng, 0, 5);
        const PathLossDb loss{uniform(rng, 40, 200)};
        const RssDbm rss{uniform(rng, -140, 0)};
        CHECK(std::abs(path_loss_from_rss(site, predict_rss(site, loss)).value - loss.value) < 1e-12);
        CHECK(std::abs(predict_rss(site, path_loss_from_rss(site, rss)).value - rss.value) < 1e-12);
        const double delta = uniform(rng, -20, 20);
        CHECK(std::abs(predict_rss(site, PathLossDb{loss.value + delta}).value -
                       (predict_rss(site, loss).value - delta)) < 1e-12);
    }
}

TEST_CASE("correction identity and optimality")
{
    std::mt19937_64 rng(6);
    for (int i = 0; i < kTrials; ++i)
    {
        const auto s = oracle::random_series(rng, 2 + static_cast<std::size_t>(uniform(rng, 0, 60)));
        const auto cf = correction_factor(s.samples, s.predictions);
        const double before = mse(s.samples, s.predictions);
        const double after = mse(s.samples, apply_correction(s.predictions, cf));
        CHECK(std::abs(after - (before - cf.cf_db * cf.cf_db)) <= 1e-9 * std::max(1.0, before));
        CHECK(after <= before);

        for (double delta : {1e-3, -1e-3, 0.5, -2.0, uniform(rng, -10, 10)})
        {
            CHECK(oracle::mse_with_offset(s.measured, s.predicted, cf.cf_db + delta) > after);
        }

        // Calibrating the corrected series changes nothing.
        const auto corrected = apply_correction(s.predictions, cf);
        CHECK(std::abs(correction_factor(s.samples, corrected).cf_db) < 1e-9);
    }
}

TEST_CASE("pearson invariances")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < kTrials; ++i)
    {
        const auto s = oracle::random_series(rng, 3 + static_cast<std::size_t>(uniform(rng, 0, 60)));
        const double r = pearson_r(s.samples, s.predictions);
        CHECK(r >= -1.0);
        CHECK(r <= 1.0);
        CHECK(std::abs(r - oracle::pearson_raw_moments(s.measured, s.predicted)) < 1e-9);

        const auto shifted = apply_correction(s.predictions, CorrectionFactor{uniform(rng, -40, 40)});
        CHECK(std::abs(pearson_r(s.samples, shifted) - r) < 1e-12);

        const double a = uniform(rng, 0.1, 10);
        const double c = uniform(rng, -50, 50);
        std::vector<double> affine;
        for (double p : s.predicted)
            affine.push_back(a * p + c);
        CHECK(std::abs(pearson_r(s.measured, affine) - r) < 1e-12);
    }
}

TEST_CASE("metrics ignore the order of aligned pairs")
{
    std::mt19937_64 rng(8);
    for (int i = 0; i < 50; ++i)
    {
        auto s = oracle::random_series(rng, 20);
        const double m0 = mse(s.samples, s.predictions);
        const double r0 = pearson_r(s.samples, s.predictions);
        std::vector<std::size_t> perm(s.samples.size());
        for (std::size_t k = 0; k < perm.size(); ++k)
            perm[k] = k;
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<DriveTestSample> ps;
        PredictionSeries pp;
        for (auto k : perm)
        {
            ps.push_back(s.samples[k]);
            pp.push_back(s.predictions[k]);
        }
        CHECK(mse(ps, pp) == doctest::Approx(m0).epsilon(1e-12));
        CHECK(pearson_r(ps, pp) == doctest::Approx(r0).epsilon(1e-12));
    }
}

TEST_CASE("models affine in log distance share one correlation")
{
    std::mt19937_64 rng(9);
    const auto site = SiteConfig::table3();
    for (int i = 0; i < 50; ++i)
    {
        const auto s = oracle::random_series(rng, 30);
        std::vector<double> rs;
        for (auto id : {ModelId::fspl, ModelId::cost231_hata, ModelId::sui, ModelId::ericsson})
        {
            const auto spec = random_spec(rng, id);
            rs.push_back(pearson_r(s.samples, predict_series(spec, site, s.samples)));
        }
        for (double r : rs)
            CHECK(std::abs(r - rs.front()) < 1e-12);
    }
}

TEST_CASE("csv parse and serialize roundtrip")
{
    std::mt19937_64 rng(10);
    for (int i = 0; i < 50; ++i)
    {
        dataset::DriveTestTable t;
        const auto n = static_cast<std::size_t>(uniform(rng, 0, 40));
        for (auto id : kAllModels)
            if (uniform(rng, 0, 1) < 0.5)
                t.predictions.push_back({id, {}});
        for (std::size_t k = 0; k < n; ++k)
        {
            t.samples.push_back({DistanceMeters{uniform(rng, 1e-3, 1e5)}, RssDbm{uniform(rng, -150, 40)}});
            for (auto& c : t.predictions)
                c.rss_dbm.push_back(uniform(rng, -150, 40));
        }
        const auto back = dataset::parse_drive_test_csv(dataset::serialize_drive_test_csv(t));
        REQUIRE(back.samples.size() == t.samples.size());
        REQUIRE(back.predictions.size() == t.predictions.size());
        for (std::size_t c = 0; c < t.predictions.size(); ++c)
            CHECK(back.predictions[c].id == t.predictions[c].id);
        for (std::size_t k = 0; k < n; ++k)
        {
            CHECK(std::abs(back.samples[k].distance.value - t.samples[k].distance.value) < 1e-9);
            CHECK(std::abs(back.samples[k].measured.value - t.samples[k].measured.value) < 1e-9);
            for (std::size_t c = 0; c < t.predictions.size(); ++c)
                CHECK(std::abs(back.predictions[c].rss_dbm[k] - t.predictions[c].rss_dbm[k]) < 1e-9);
        }
    }
}
