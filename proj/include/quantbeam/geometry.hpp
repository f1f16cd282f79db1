// SPDX-License-Identifier: Apache-2.0
//
// quantbeam — link- and system-level simulation of low-resolution ADC receivers
// Copyright (C) 2026 The quantbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "quantbeam/rng.hpp"

namespace quantbeam {

/// Uniform planar array, element spacing in wavelengths.
struct ArrayGeometry {
    int rows = 1;
    int cols = 1;
    double element_spacing = 0.5;

    int size() const { return rows * cols; }
    void validate() const {
        if (rows < 1 || cols < 1) throw std::invalid_argument("array dimensions must be >= 1");
        if (!(element_spacing > 0.0)) throw std::invalid_argument("element spacing must be positive");
    }
};

/// Unit-norm UPA response. Columns span azimuth (about the boresight normal),
/// rows span elevation. Boresight (0, 0) gives the all-equal-phase vector.
inline std::vector<std::complex<double>> steering_vector(const ArrayGeometry& geom, double azimuth,
                                                         double elevation) {
    geom.validate();
    if (!(azimuth >= -M_PI && azimuth <= M_PI) || !(elevation >= -M_PI_2 && elevation <= M_PI_2))
        throw std::invalid_argument("steering angles out of range");
    const double ph_col = 2.0 * M_PI * geom.element_spacing * std::cos(elevation) * std::sin(azimuth);
    const double ph_row = 2.0 * M_PI * geom.element_spacing * std::sin(elevation);
    const double norm = 1.0 / std::sqrt(static_cast<double>(geom.size()));
    std::vector<std::complex<double>> v(geom.size());
    for (int r = 0; r < geom.rows; ++r) {
        for (int c = 0; c < geom.cols; ++c) {
            const double ang = ph_row * r + ph_col * c;
            v[r * geom.cols + c] = {norm * std::cos(ang), norm * std::sin(ang)};
        }
    }
    return v;
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct LayoutConfig {
    double area_m = 2000.0;
    double cell_radius_m = 100.0;
    double origin_x_m = 0.0;  // lattice shift, for wraparound-invariance checks
    double origin_y_m = 0.0;
};

/// Hexagonal site grid fitted onto the square wraparound area: alternating
/// offset rows, column pitch ~ sqrt(3) R and row pitch ~ 1.5 R rounded to
/// integer counts so the lattice tiles the torus exactly (row count forced
/// even so the offset pattern closes across the seam).
struct SiteLayout {
    double area_m = 0.0;
    double cell_radius_m = 0.0;
    int n_cols = 0;
    int n_rows = 0;
    std::vector<Vec2> sites;
    static constexpr int sectors_per_site = 3;

    int site_count() const { return static_cast<int>(sites.size()); }
    int sector_count() const { return site_count() * sectors_per_site; }

    double wrap_delta(double a, double b) const {
        double d = std::fmod(a - b, area_m);
        if (d > area_m / 2) d -= area_m;
        if (d < -area_m / 2) d += area_m;
        return d;
    }
    double distance(const Vec2& a, const Vec2& b) const {
        return std::hypot(wrap_delta(a.x, b.x), wrap_delta(a.y, b.y));
    }
    /// Azimuth of the direction site -> point, wraparound-aware.
    double azimuth_from_site(int site, const Vec2& p) const {
        return std::atan2(wrap_delta(p.y, sites[site].y), wrap_delta(p.x, sites[site].x));
    }
    /// Sector of the given site whose 120 degree wedge covers the point.
    /// Boresights at 0, 120, 240 degrees.
    int covering_sector(int site, const Vec2& p) const {
        const double az = azimuth_from_site(site, p);
        double t = std::fmod(az + M_PI / 3.0 + 2.0 * M_PI, 2.0 * M_PI);
        int s = static_cast<int>(t / (2.0 * M_PI / 3.0));
        return s > 2 ? 2 : s;
    }
    static double sector_boresight(int sector_index) { return (sector_index % 3) * 2.0 * M_PI / 3.0; }

    int nearest_site(const Vec2& p) const {
        int best = 0;
        double bd = distance(p, sites[0]);
        for (int i = 1; i < site_count(); ++i) {
            const double d = distance(p, sites[i]);
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        return best;
    }
};

inline SiteLayout generate_layout(const LayoutConfig& cfg) {
    if (!(cfg.area_m > 0.0) || !(cfg.cell_radius_m > 0.0))
        throw std::invalid_argument("area and cell radius must be positive");
    if (cfg.cell_radius_m * 2.0 > cfg.area_m)
        throw std::invalid_argument("cell radius too large for the area");

    SiteLayout lay;
    lay.area_m = cfg.area_m;
    lay.cell_radius_m = cfg.cell_radius_m;
    const double target_dx = std::sqrt(3.0) * cfg.cell_radius_m;
    const double target_dy = 1.5 * cfg.cell_radius_m;
    lay.n_cols = std::max(1, static_cast<int>(std::floor(cfg.area_m / target_dx + 0.5)));
    int rows = std::max(2, static_cast<int>(std::floor(cfg.area_m / target_dy + 0.5)));
    if (rows % 2) ++rows;  // offset pattern must close on the torus
    lay.n_rows = rows;

    const double dx = cfg.area_m / lay.n_cols;
    const double dy = cfg.area_m / lay.n_rows;
    lay.sites.reserve(static_cast<std::size_t>(lay.n_cols) * lay.n_rows);
    for (int r = 0; r < lay.n_rows; ++r) {
        const double off = (r % 2) ? dx / 2.0 : 0.0;
        for (int c = 0; c < lay.n_cols; ++c) {
            lay.sites.push_back({std::fmod(c * dx + off + cfg.origin_x_m + cfg.area_m, cfg.area_m),
                                 std::fmod(r * dy + cfg.origin_y_m + cfg.area_m, cfg.area_m)});
        }
    }
    return lay;
}

/// A dropped user position; site/sector record where it was dropped (serving
/// assignment happens later, against sampled path losses).
struct UeDrop {
    Vec2 pos;
    int drop_site = 0;
    int drop_sector = 0;  // global sector index = site * 3 + local
};

/// Per-sector Poisson(mean) user counts, positions uniform over each sector's
/// area (the intersection of the site's wraparound Voronoi cell with the
/// sector wedge), by rejection from a disk that covers it.
inline std::vector<UeDrop> drop_ues(const SiteLayout& lay, double mean_ues_per_sector,
                                    std::uint64_t rng_seed) {
    if (!(mean_ues_per_sector >= 1.0)) throw std::invalid_argument("mean UEs per sector must be >= 1");
    Rng rng(rng_seed);
    std::vector<UeDrop> out;
    const double rmax = 2.0 * lay.cell_radius_m;  // covers the Voronoi cell with margin
    for (int s = 0; s < lay.site_count(); ++s) {
        for (int sec = 0; sec < SiteLayout::sectors_per_site; ++sec) {
            const int count = rng.poisson(mean_ues_per_sector);
            const double bore = SiteLayout::sector_boresight(sec);
            int got = 0;
            while (got < count) {
                const double ang = bore + rng.uniform(-M_PI / 3.0, M_PI / 3.0);
                const double rad = rmax * std::sqrt(rng.uniform());
                Vec2 p{std::fmod(lay.sites[s].x + rad * std::cos(ang) + lay.area_m, lay.area_m),
                       std::fmod(lay.sites[s].y + rad * std::sin(ang) + lay.area_m, lay.area_m)};
                if (lay.nearest_site(p) != s) continue;
                out.push_back({p, s, s * SiteLayout::sectors_per_site + sec});
                ++got;
            }
        }
    }
    return out;
}

}  // namespace quantbeam
