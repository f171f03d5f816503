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

#include <array>

namespace propcal::dataset {

namespace {

struct ReferenceRow
{
    double distance_m;
    double measured_dbm;
    double cost231_hata_dbm;
    double extended_cost231_dbm;
    double sui_dbm;
    double ericsson_dbm;
};

// Field measurements and model predictions, listed in survey order.
constexpr std::array<ReferenceRow, 45> kRows{{
    {4200, -73, -97.94, -91.87, -66.86, -100.58},
    {4000, -83, -97.21, -91.14, -65.98, -99.93},
    {3900, -87, -96.84, -90.76, -65.52, -99.6},
    {3800, -92, -96.45, -90.37, -65.05, -99.26},
    {3600, -81, -95.64, -89.56, -64.07, -98.55},
    {3600, -87, -95.64, -89.56, -64.07, -98.55},
    {3500, -79, -95.22, -89.14, -63.56, -98.17},
    {3500, -78, -95.22, -89.14, -63.56, -98.17},
    {3500, -80, -95.22, -89.14, -63.56, -98.17},
    {3300, -77, -94.34, -88.27, -62.5, -97.4},
    {3200, -75, -93.88, -87.81, -61.94, -96.99},
    {3000, -75, -92.92, -86.86, -60.77, -96.14},
    {2800, -73, -91.89, -85.86, -59.52, -95.23},
    {2700, -74, -91.34, -85.33, -58.87, -94.75},
    {2700, -72, -91.34, -85.33, -58.87, -94.75},
    {2000, -71, -86.86, -81.06, -53.43, -90.8},
    {1900, -70, -86.09, -80.34, -52.51, -90.12},
    {1800, -68, -85.28, -79.59, -51.53, -89.41},
    {1600, -67, -83.52, -77.97, -49.39, -87.85},
    {1500, -67, -82.56, -77.09, -48.23, -87},
    {1400, -65, -81.53, -76.15, -46.98, -86.09},
    {1300, -69, -80.42, -75.16, -45.64, -85.12},
    {1200, -70, -79.22, -74.1, -44.19, -84.06},
    {1200, -65, -79.22, -74.1, -44.19, -84.06},
    {1100, -64, -77.92, -72.95, -42.61, -82.91},
    {900, -65, -74.93, -70.35, -38.98, -80.27},
    {800, -63, -73.17, -68.86, -36.85, -78.71},
    {800, -63, -73.17, -68.86, -36.85, -78.71},
    {700, -60, -71.17, -67.18, -34.43, -76.95},
    {700, -62, -71.17, -67.18, -34.43, -76.95},
    {600, -55, -68.87, -65.29, -31.64, -74.92},
    {570, -61, -68.1, -64.67, -30.71, -74.24},
    {560, -57, -67.84, -64.45, -30.39, -74.01},
    {550, -59, -67.57, -64.24, -30.07, -73.77},
    {530, -57, -67.01, -63.79, -29.4, -73.28},
    {520, -52, -66.73, -63.56, -29.05, -73.03},
    {500, -61, -66.14, -63.1, -28.34, -72.52},
    {500, -58, -66.14, -63.1, -28.34, -72.52},
    {500, -62, -66.14, -63.1, -28.34, -72.52},
    {470, -51, -65.22, -62.36, -27.22, -71.7},
    {450, -59, -64.57, -61.85, -26.44, -71.13},
    {420, -62, -63.54, -61.05, -25.19, -70.22},
    {420, -51, -63.54, -61.05, -25.19, -70.22},
    {415, -50, -63.36, -60.91, -24.97, -70.06},
    {400, -61, -62.81, -60.48, -24.3, -69.57},
}};

DriveTestTable build()
{
    DriveTestTable t;
    t.predictions = {{model::ModelId::cost231_hata, {}},
                     {model::ModelId::extended_cost231, {}},
                     {model::ModelId::sui, {}},
                     {model::ModelId::ericsson, {}}};
    for (const auto& r : kRows)
    {
        t.samples.push_back({DistanceMeters{r.distance_m}, RssDbm{r.measured_dbm}});
        t.predictions[0].rss_dbm.push_back(r.cost231_hata_dbm);
        t.predictions[1].rss_dbm.push_back(r.extended_cost231_dbm);
        t.predictions[2].rss_dbm.push_back(r.sui_dbm);
        t.predictions[3].rss_dbm.push_back(r.ericsson_dbm);
    }
    return t;
}

} // namespace

const DriveTestTable& reference_dataset()
{
    static const DriveTestTable table = build();
    return table;
}

} // namespace propcal::dataset
