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
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "quantbeam/quantizer.hpp"

namespace quantbeam {

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Per-antenna link energies feeding the effective-SINR expression:
/// average received symbol energy es, thermal noise variance sigma_n2,
/// interference variance sigma_z2 (all linear power, same units), and the
/// receive beamforming gain g_ue (linear, 1 <= g_ue <= N_UE).
struct LinkBudget {
    double es = 0.0;
    double sigma_n2 = 0.0;
    double sigma_z2 = 0.0;
    double g_ue = 1.0;
};

namespace detail {
inline void check_alpha(double alpha) {
    if (!(alpha >= 0.0) || alpha >= 1.0) throw std::invalid_argument("alpha must be in [0, 1)");
}
inline void check_budget(const LinkBudget& lb) {
    if (lb.es < 0.0 || lb.sigma_n2 < 0.0 || lb.sigma_z2 < 0.0 || lb.g_ue < 1.0)
        throw std::invalid_argument("invalid link budget");
}
}  // namespace detail

/// Post-beamforming SINR without quantization: g_ue * es / (sigma_n2 + sigma_z2).
inline double pre_quantization_sinr(const LinkBudget& lb) {
    detail::check_budget(lb);
    const double denom = lb.sigma_n2 + lb.sigma_z2;
    if (denom <= 0.0) throw std::overflow_error("infinite pre-quantization SINR (zero noise and interference)");
    return lb.g_ue * lb.es / denom;
}

/// Quantization noise variance per antenna: alpha (1-alpha) (es + sigma_z2 + sigma_n2).
inline double quantization_noise_variance(const LinkBudget& lb, double alpha) {
    detail::check_alpha(alpha);
    detail::check_budget(lb);
    return alpha * (1.0 - alpha) * (lb.es + lb.sigma_z2 + lb.sigma_n2);
}

/// Saturation SINR in the high-SNR regime: g_ue (1-alpha) / alpha.
inline double high_snr_limit(double alpha, double g_ue) {
    if (!(alpha > 0.0) || alpha >= 1.0) throw std::invalid_argument("high_snr_limit requires alpha in (0, 1)");
    if (g_ue < 1.0) throw std::invalid_argument("g_ue must be >= 1");
    return g_ue * (1.0 - alpha) / alpha;
}

/// Low-SINR approximation: (1-alpha) * gamma_bf.
inline double low_snr_approx(double gamma_bf, double alpha) {
    detail::check_alpha(alpha);
    if (gamma_bf < 0.0) throw std::invalid_argument("gamma_bf must be >= 0");
    return (1.0 - alpha) * gamma_bf;
}

/// Effective post-beamforming SINR under quantization:
/// (1-alpha) gamma_bf / (1 + (alpha / g_ue) gamma_bf).
inline double effective_sinr_from_gamma(double gamma_bf, double alpha, double g_ue) {
    detail::check_alpha(alpha);
    if (g_ue < 1.0) throw std::invalid_argument("g_ue must be >= 1");
    if (gamma_bf < 0.0) throw std::invalid_argument("gamma_bf must be >= 0");
    return (1.0 - alpha) * gamma_bf / (1.0 + (alpha / g_ue) * gamma_bf);
}

inline double effective_sinr(const LinkBudget& lb, double alpha) {
    detail::check_alpha(alpha);
    detail::check_budget(lb);
    const double denom = lb.sigma_n2 + lb.sigma_z2;
    if (denom <= 0.0) {
        if (alpha == 0.0)
            throw std::overflow_error("infinite effective SINR (zero noise and interference, alpha = 0)");
        return high_snr_limit(alpha, lb.g_ue);
    }
    return effective_sinr_from_gamma(lb.g_ue * lb.es / denom, alpha, lb.g_ue);
}

/// One (input SNR, measured output SNR) point, both in dB.
using SnrPair = std::pair<double, double>;

/// Fits alpha to measured output SNRs by minimizing the sum of squared
/// dB-domain errors of the effective-SINR prediction. The objective is
/// one-dimensional; a coarse log-spaced grid brackets the minimum and
/// golden-section refines it.
inline double fit_alpha(const std::vector<SnrPair>& pairs, double g_ue) {
    if (pairs.size() < 3) throw std::invalid_argument("fit_alpha: need at least 3 pairs");
    double lo = pairs.front().first, hi = pairs.front().first;
    bool degenerate = true;
    for (const auto& p : pairs) {
        lo = std::min(lo, p.first);
        hi = std::max(hi, p.first);
        if (p.first != pairs.front().first || p.second != pairs.front().second) degenerate = false;
    }
    if (degenerate) throw std::runtime_error("fit_alpha: degenerate measurement set");
    if (hi - lo < 10.0) throw std::invalid_argument("fit_alpha: input SNRs must span at least 10 dB");

    auto objective = [&](double alpha) {
        double s = 0.0;
        for (const auto& p : pairs) {
            const double pred = lin_to_db(effective_sinr_from_gamma(db_to_lin(p.first), alpha, g_ue));
            const double e = pred - p.second;
            s += e * e;
        }
        return s;
    };

    constexpr int kGrid = 240;
    const double lmin = std::log(1e-7), lmax = std::log(0.999);
    int best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
        const double a = std::exp(lmin + (lmax - lmin) * i / (kGrid - 1));
        const double v = objective(a);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    const double a_lo = std::exp(lmin + (lmax - lmin) * std::max(0, best - 1) / (kGrid - 1));
    const double a_hi = std::exp(lmin + (lmax - lmin) * std::min(kGrid - 1, best + 1) / (kGrid - 1));
    return detail::golden_minimize(objective, a_lo, a_hi, 120);
}

}  // namespace quantbeam
