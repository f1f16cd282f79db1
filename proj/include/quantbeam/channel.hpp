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
#include <limits>
#include <stdexcept>
#include <vector>

#include "quantbeam/geometry.hpp"
#include "quantbeam/rng.hpp"

namespace quantbeam {

enum class LosClass { los, nlos, outage };

enum class InterferenceMode { array_factor, fixed_gain };

/// Propagation and cluster-model parameters (28 GHz urban defaults).
struct ChannelParams {
    double carrier_ghz = 28.0;
    double los_pl_db = 61.4;
    double los_pl_exp = 20.0;   // dB per decade
    double los_shadow_db = 5.8;
    double nlos_pl_db = 72.0;
    double nlos_pl_exp = 29.2;
    double nlos_shadow_db = 8.7;
    double los_decay_m = 67.1;     // P_LOS = (1 - p_out) exp(-d / los_decay_m)
    double outage_decay_m = 30.0;  // p_out = max(0, 1 - exp(-d/decay + offset))
    double outage_offset = 5.2;
    int cluster_min = 1;
    int cluster_max = 4;
    double cluster_power_sd_db = 4.0;   // lognormal relative cluster powers
    double elevation_range_deg = 10.0;  // clusters drawn in +- this range
    InterferenceMode interference_mode = InterferenceMode::array_factor;

    void validate() const {
        if (cluster_min < 1 || cluster_max < cluster_min)
            throw std::invalid_argument("invalid cluster count range");
        if (los_shadow_db < 0 || nlos_shadow_db < 0) throw std::invalid_argument("negative shadowing");
    }

    double outage_probability(double d) const {
        return std::max(0.0, 1.0 - std::exp(-d / outage_decay_m + outage_offset));
    }
    double los_probability(double d) const {
        return (1.0 - outage_probability(d)) * std::exp(-d / los_decay_m);
    }
};

/// One specular cluster: relative power plus departure/arrival angles.
struct Cluster {
    double power = 1.0;  // relative, cluster powers sum to 1
    double bs_az = 0.0, bs_el = 0.0;
    double ue_az = 0.0, ue_el = 0.0;
};

struct LinkState {
    double distance_m = 0.0;
    LosClass los_class = LosClass::outage;
    double pathloss_db = std::numeric_limits<double>::infinity();
    double shadowing_db = 0.0;
    double aod_az = 0.0, aod_el = 0.0;  // strongest cluster, BS side
    double aoa_az = 0.0, aoa_el = 0.0;  // strongest cluster, UE side
    std::vector<Cluster> clusters;

    bool in_outage() const { return los_class == LosClass::outage; }
    double path_gain_lin() const {
        return in_outage() ? 0.0 : std::pow(10.0, -pathloss_db / 10.0);
    }
};

namespace detail {

inline LosClass draw_class(double d, const ChannelParams& p, Rng& rng) {
    const double u = rng.uniform();
    const double pout = p.outage_probability(d);
    if (u < pout) return LosClass::outage;
    if (u < pout + p.los_probability(d)) return LosClass::los;
    return LosClass::nlos;
}

}  // namespace detail

/// Draws the long-term state of one BS-sector-to-UE link: LOS/NLOS/outage
/// class, distance power law plus lognormal shadowing, and the cluster set.
/// Cluster departure azimuths are uniform over the sector's 120 degree
/// coverage around the given boresight; arrivals are uniform in azimuth.
inline LinkState sample_link(double distance_m, double sector_boresight, const ChannelParams& p,
                             Rng& rng) {
    if (!(distance_m > 0.0)) throw std::invalid_argument("distance must be positive");
    p.validate();
    LinkState link;
    link.distance_m = distance_m;
    link.los_class = detail::draw_class(distance_m, p, rng);
    if (link.in_outage()) return link;

    const bool los = link.los_class == LosClass::los;
    const double sd = los ? p.los_shadow_db : p.nlos_shadow_db;
    link.shadowing_db = sd * rng.normal();
    const double base = los ? p.los_pl_db : p.nlos_pl_db;
    const double expn = los ? p.los_pl_exp : p.nlos_pl_exp;
    link.pathloss_db = base + expn * std::log10(std::max(distance_m, 1.0)) + link.shadowing_db;

    const int k = p.cluster_min + static_cast<int>(rng.uniform_int(p.cluster_max - p.cluster_min + 1));
    const double el = p.elevation_range_deg * M_PI / 180.0;
    link.clusters.resize(k);
    double psum = 0.0;
    for (auto& c : link.clusters) {
        c.power = std::pow(10.0, p.cluster_power_sd_db * rng.normal() / 10.0);
        psum += c.power;
        double az = sector_boresight + rng.uniform(-M_PI / 3.0, M_PI / 3.0);
        if (az > M_PI) az -= 2.0 * M_PI;
        if (az < -M_PI) az += 2.0 * M_PI;
        c.bs_az = az;
        c.bs_el = rng.uniform(-el, el);
        c.ue_az = rng.uniform(-M_PI, M_PI);
        c.ue_el = rng.uniform(-el, el);
    }
    int strongest = 0;
    for (int i = 0; i < k; ++i) {
        link.clusters[i].power /= psum;
        if (link.clusters[i].power > link.clusters[strongest].power) strongest = i;
    }
    link.aod_az = link.clusters[strongest].bs_az;
    link.aod_el = link.clusters[strongest].bs_el;
    link.aoa_az = link.clusters[strongest].ue_az;
    link.aoa_el = link.clusters[strongest].ue_el;
    return link;
}

namespace detail {

using CVec = std::vector<std::complex<double>>;

inline std::complex<double> dot(const CVec& a, const CVec& b) {
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline void normalize(CVec& v) {
    double n = 0.0;
    for (const auto& x : v) n += std::norm(x);
    n = 1.0 / std::sqrt(n);
    for (auto& x : v) x *= n;
}

/// Dominant eigenvector of R = sum_k p_k v_k v_k^* by power iteration in the
/// cluster subspace (R is never formed). The power-weighted start vector
/// makes degenerate ties resolve to the balanced combination.
inline CVec dominant_eigvec(const std::vector<CVec>& vecs, const std::vector<double>& p, int iters = 150) {
    const std::size_t n = vecs.front().size();
    CVec w(n, {0.0, 0.0});
    for (std::size_t k = 0; k < vecs.size(); ++k) {
        const double s = std::sqrt(p[k]);
        for (std::size_t i = 0; i < n; ++i) w[i] += s * vecs[k][i];
    }
    normalize(w);
    CVec next(n);
    for (int it = 0; it < iters; ++it) {
        std::fill(next.begin(), next.end(), std::complex<double>{0.0, 0.0});
        for (std::size_t k = 0; k < vecs.size(); ++k) {
            const std::complex<double> c = p[k] * dot(vecs[k], w);
            for (std::size_t i = 0; i < n; ++i) next[i] += c * vecs[k][i];
        }
        normalize(next);
        std::swap(w, next);
    }
    return w;
}

}  // namespace detail

/// Long-term beamforming pair for a link plus the resulting gains.
struct BfPair {
    std::vector<std::complex<double>> w_bs;
    std::vector<std::complex<double>> w_ue;
    double g_bs = 0.0;  // N_BS * sum_k p_k |v_k^* w_bs|^2, in [1, N_BS]
    double g_ue = 0.0;  // post-combining over per-antenna signal energy, in [1, N_UE]
};

/// w_bs is the dominant eigenvector of the transmit-side long-term covariance
/// sum_k p_k v_k v_k^*; w_ue that of the receive covariance the UE actually
/// observes given w_bs, i.e. sum_k p_k |v_k^* w_bs|^2 u_k u_k^*.
inline BfPair longterm_bf_pair(const LinkState& link, const ArrayGeometry& bs_geom,
                               const ArrayGeometry& ue_geom) {
    if (link.in_outage()) throw std::runtime_error("longterm_bf_pair: link in outage, no beam");
    const std::size_t k = link.clusters.size();
    std::vector<detail::CVec> vb(k), vu(k);
    std::vector<double> p(k);
    for (std::size_t i = 0; i < k; ++i) {
        vb[i] = steering_vector(bs_geom, link.clusters[i].bs_az, link.clusters[i].bs_el);
        vu[i] = steering_vector(ue_geom, link.clusters[i].ue_az, link.clusters[i].ue_el);
        p[i] = link.clusters[i].power;
    }
    BfPair bf;
    bf.w_bs = detail::dominant_eigvec(vb, p);
    std::vector<double> q(k);
    double psum = 0.0, qsum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        q[i] = p[i] * std::norm(detail::dot(vb[i], bf.w_bs));
        psum += p[i];
        qsum += q[i];
    }
    bf.w_ue = detail::dominant_eigvec(vu, q);
    bf.g_bs = bs_geom.size() * qsum / psum;
    double num = 0.0;
    for (std::size_t i = 0; i < k; ++i) num += q[i] * std::norm(detail::dot(vu[i], bf.w_ue));
    bf.g_ue = ue_geom.size() * num / qsum;
    return bf;
}

/// Transmit-side array gain of beam w through the link's cluster set:
/// N_BS * sum_k p_k |v_k^* w|^2. For the serving link with w = w_bs this is
/// g_bs; for an interfering beam it is the leakage gain toward the victim.
inline double bs_gain_toward(const LinkState& link, const std::vector<std::complex<double>>& w,
                             const ArrayGeometry& bs_geom) {
    if (link.in_outage()) return 0.0;
    double s = 0.0;
    for (const auto& c : link.clusters) {
        const auto v = steering_vector(bs_geom, c.bs_az, c.bs_el);
        s += c.power * std::norm(detail::dot(v, w));
    }
    return bs_geom.size() * s;
}

/// Per-receive-antenna power of a transmission through the link:
/// serving signal E_s when w is the link's own beam, or one interference
/// contribution to sigma_z^2 when w is another sector's serving beam.
inline double rx_power_per_antenna(double tx_power_lin, const LinkState& link,
                                   const std::vector<std::complex<double>>& w,
                                   const ArrayGeometry& bs_geom,
                                   InterferenceMode mode = InterferenceMode::array_factor) {
    if (link.in_outage()) return 0.0;
    const double gain =
        mode == InterferenceMode::array_factor ? bs_gain_toward(link, w, bs_geom) : 1.0;
    return tx_power_lin * link.path_gain_lin() * gain;
}

}  // namespace quantbeam
