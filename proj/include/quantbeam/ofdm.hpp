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
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "quantbeam/aqnm.hpp"
#include "quantbeam/fft.hpp"
#include "quantbeam/quantizer.hpp"
#include "quantbeam/rng.hpp"

namespace quantbeam {

enum class CpType { type0, type1 };

/// OFDM numerology. Defaults: 90 MHz used bandwidth, FFT 2048, 75 kHz
/// subcarrier spacing, 1200 used subcarriers, 100 us slot. Cyclic prefixes of
/// 160 (type0) and 144 (type1) samples at the 153.6 MHz sample rate give the
/// 14.3750 / 14.2708 us symbol durations.
struct OfdmNumerology {
    double used_bandwidth_hz = 90e6;
    int fft_size = 2048;
    double subcarrier_spacing_hz = 75e3;
    int used_subcarriers = 1200;
    CpType cp_type = CpType::type0;
    double slot_duration_us = 100.0;

    double sample_rate_hz() const { return subcarrier_spacing_hz * fft_size; }
    int cp_samples() const {
        return cp_type == CpType::type0 ? (fft_size * 5) / 64 : (fft_size * 9) / 128;
    }
    int symbol_samples() const { return fft_size + cp_samples(); }
    double symbol_duration_us() const { return symbol_samples() / sample_rate_hz() * 1e6; }
    int slot_samples() const {
        return static_cast<int>(std::floor(slot_duration_us * 1e-6 * sample_rate_hz() + 0.5));
    }
    int symbols_per_slot() const { return slot_samples() / symbol_samples(); }

    void validate() const {
        if (fft_size < 2 || used_subcarriers < 1) throw std::invalid_argument("invalid numerology sizes");
        if (used_subcarriers > fft_size)
            throw std::invalid_argument("used_subcarriers must not exceed fft_size");
        if (subcarrier_spacing_hz * fft_size < used_bandwidth_hz)
            throw std::invalid_argument("sample rate below used bandwidth");
        if (symbols_per_slot() < 2) throw std::invalid_argument("slot too short for reference + data");
    }

    /// Subcarrier offsets run over a contiguous block [-used/2, used/2) around
    /// DC. FFT bin of offset f.
    int fft_bin(int offset) const { return (offset + fft_size) % fft_size; }
    int first_offset() const { return -used_subcarriers / 2; }
};

/// One slot of time-domain samples plus the transmitted constellation grid
/// retained for channel estimation and EVM scoring.
struct Slot {
    ComplexBlock samples;                       // time domain, CPs included
    std::vector<ComplexBlock> tx_grid;          // [symbol][used subcarrier]
    int ref_symbol = 0;                         // index of the reference symbol
    std::uint64_t seed = 0;
};

/// Builds one slot: every used subcarrier of every symbol carries a
/// unit-power QPSK point (the reference symbol's points double as pilots),
/// zero-padded to the FFT size, inverse transformed and CP-prepended.
inline Slot build_slot(const OfdmNumerology& num, std::uint64_t rng_seed) {
    num.validate();
    Rng rng(rng_seed);
    const int n_sym = num.symbols_per_slot();
    const int n_used = num.used_subcarriers;
    const int nfft = num.fft_size;
    const int cp = num.cp_samples();
    const double unitary = std::sqrt(static_cast<double>(nfft));
    Fft fft(static_cast<std::size_t>(nfft));

    Slot slot;
    slot.seed = rng_seed;
    slot.ref_symbol = 0;
    slot.tx_grid.resize(n_sym);
    slot.samples.reserve(static_cast<std::size_t>(n_sym) * num.symbol_samples());

    std::vector<cdouble> spec(static_cast<std::size_t>(nfft));
    for (int s = 0; s < n_sym; ++s) {
        auto& grid = slot.tx_grid[s];
        grid.resize(n_used);
        std::fill(spec.begin(), spec.end(), cdouble{0.0, 0.0});
        for (int i = 0; i < n_used; ++i) {
            const double ang = M_PI_4 + M_PI_2 * static_cast<double>(rng.uniform_int(4));
            grid[i] = {std::cos(ang), std::sin(ang)};
            spec[num.fft_bin(num.first_offset() + i)] = grid[i];
        }
        fft.inverse(spec);
        for (auto& v : spec) v *= unitary;
        for (int t = nfft - cp; t < nfft; ++t) slot.samples.push_back(spec[t]);
        for (int t = 0; t < nfft; ++t) slot.samples.push_back(spec[t]);
    }
    return slot;
}

/// Adds circularly-symmetric complex Gaussian noise such that
/// (signal power over the occupied band) / (noise power in that band) equals
/// snr_db. used_fraction is the occupied fraction of the sampling bandwidth
/// (1 for full-band signals). A +inf snr_db returns the input unchanged.
inline ComplexBlock awgn(const ComplexBlock& block, double snr_db, std::uint64_t rng_seed,
                         double used_fraction = 1.0) {
    if (block.empty()) throw std::invalid_argument("awgn: empty block");
    if (!(used_fraction > 0.0) || used_fraction > 1.0)
        throw std::invalid_argument("awgn: used_fraction must be in (0, 1]");
    if (std::isinf(snr_db) && snr_db > 0.0) return block;
    double p = 0.0;
    for (const auto& v : block) p += std::norm(v);
    p /= static_cast<double>(block.size());
    const double sigma2 = p / (db_to_lin(snr_db) * used_fraction);
    Rng rng(rng_seed);
    ComplexBlock out(block.size());
    const double s = std::sqrt(sigma2);
    for (std::size_t i = 0; i < block.size(); ++i) out[i] = block[i] + s * rng.cnormal();
    return out;
}

/// Post-equalization measurement for one grid point.
struct LinkMeasurement {
    double input_snr_db = 0.0;
    int bits = 0;  // 0 marks infinite resolution (quantizer bypassed)
    double post_eq_snr_db = 0.0;
    double evm_rms = 0.0;
    std::uint64_t seed = 0;
};

struct EqualizerOptions {
    // 0: average the per-subcarrier LS estimates over the whole band (the
    //    channel is flat by construction); 1: raw per-subcarrier estimates;
    // w>1: centered moving average of width w.
    int smoothing = 0;
};

namespace detail {

/// Per-subcarrier LS estimates from the reference symbol, optionally smoothed.
inline std::vector<cdouble> estimate_channel(const ComplexBlock& ref_rx, const ComplexBlock& ref_tx,
                                             int smoothing) {
    const int n = static_cast<int>(ref_rx.size());
    std::vector<cdouble> h(n);
    for (int i = 0; i < n; ++i) h[i] = ref_rx[i] / ref_tx[i];
    if (smoothing == 1) return h;
    if (smoothing == 0) {
        cdouble mean{0.0, 0.0};
        for (const auto& v : h) mean += v;
        mean /= static_cast<double>(n);
        return std::vector<cdouble>(n, mean);
    }
    std::vector<cdouble> out(n);
    const int half = smoothing / 2;
    for (int i = 0; i < n; ++i) {
        cdouble acc{0.0, 0.0};
        int cnt = 0;
        for (int j = std::max(0, i - half); j <= std::min(n - 1, i + half); ++j, ++cnt) acc += h[j];
        out[i] = acc / static_cast<double>(cnt);
    }
    return out;
}

}  // namespace detail

/// Receiver chain: CP removal, DFT, brick-wall selection of the used band,
/// resampling to the critical rate where the ADC operates (ideal-AGC
/// quantization, bypassed when quant is null), least-squares channel
/// estimation from the reference symbol and one-tap equalization. The
/// post-equalization SNR is -20 log10(EVM_rms) measured on data symbols
/// against the transmitted constellation.
inline LinkMeasurement receive_and_equalize(const Slot& slot, const OfdmNumerology& num,
                                            const QuantizerSpec* quant,
                                            const EqualizerOptions& opts = {}) {
    num.validate();
    const int n_sym = num.symbols_per_slot();
    const int n_used = num.used_subcarriers;
    const int nfft = num.fft_size;
    const int cp = num.cp_samples();
    if (slot.ref_symbol < 0 || slot.ref_symbol >= n_sym ||
        static_cast<int>(slot.tx_grid.size()) != n_sym)
        throw std::runtime_error("receive_and_equalize: reference symbol missing");
    if (slot.samples.size() < static_cast<std::size_t>(n_sym) * num.symbol_samples())
        throw std::invalid_argument("receive_and_equalize: slot too short");

    Fft fft_full(static_cast<std::size_t>(nfft));
    Fft fft_crit(static_cast<std::size_t>(n_used));
    const double inv_unitary = 1.0 / std::sqrt(static_cast<double>(nfft));
    const double crit_unitary = std::sqrt(static_cast<double>(n_used));

    // Per symbol: FFT, pick used bins, map them onto the critical-rate grid
    // (offset f -> bin (f + n_used) mod n_used; the contiguous block around DC
    // makes this collision-free), then back to time at the critical rate.
    std::vector<std::vector<cdouble>> crit_time(n_sym);
    std::vector<cdouble> spec(static_cast<std::size_t>(nfft));
    double power_acc = 0.0;
    for (int s = 0; s < n_sym; ++s) {
        const std::size_t base = static_cast<std::size_t>(s) * num.symbol_samples() + cp;
        for (int t = 0; t < nfft; ++t) spec[t] = slot.samples[base + t];
        fft_full.forward(spec);
        std::vector<cdouble> crit(static_cast<std::size_t>(n_used), cdouble{0.0, 0.0});
        for (int i = 0; i < n_used; ++i) {
            const int f = num.first_offset() + i;
            crit[(f + n_used) % n_used] = spec[num.fft_bin(f)] * inv_unitary;
        }
        fft_crit.inverse(crit);
        for (auto& v : crit) v *= crit_unitary;
        for (const auto& v : crit) power_acc += std::norm(v);
        crit_time[s] = std::move(crit);
    }

    // Ideal AGC over the slot, then the ADC
    if (quant != nullptr) {
        const double rms =
            std::sqrt(power_acc / (static_cast<double>(n_sym) * static_cast<double>(n_used)));
        for (int s = 0; s < n_sym; ++s) crit_time[s] = quantize(*quant, crit_time[s], rms);
    }

    // Back to the subcarrier domain in transmit order
    std::vector<ComplexBlock> rx_grid(n_sym);
    for (int s = 0; s < n_sym; ++s) {
        auto& c = crit_time[s];
        fft_crit.forward(c);
        const double inv_crit = 1.0 / crit_unitary;
        rx_grid[s].resize(n_used);
        for (int i = 0; i < n_used; ++i) {
            const int f = num.first_offset() + i;
            rx_grid[s][i] = c[(f + n_used) % n_used] * inv_crit;
        }
    }

    const auto h = detail::estimate_channel(rx_grid[slot.ref_symbol], slot.tx_grid[slot.ref_symbol],
                                            opts.smoothing);

    double err = 0.0, ref_pw = 0.0;
    for (int s = 0; s < n_sym; ++s) {
        if (s == slot.ref_symbol) continue;
        for (int i = 0; i < n_used; ++i) {
            const cdouble eq = rx_grid[s][i] / h[i];
            err += std::norm(eq - slot.tx_grid[s][i]);
            ref_pw += std::norm(slot.tx_grid[s][i]);
        }
    }
    LinkMeasurement m;
    m.bits = quant ? quant->bits : 0;
    m.evm_rms = std::sqrt(err / ref_pw);
    m.post_eq_snr_db = -20.0 * std::log10(m.evm_rms);
    m.seed = slot.seed;
    return m;
}

/// Measurement grid sweep. Deterministic given the seed; per grid point the
/// EVM is averaged in power across slots. The slot/noise substream is keyed
/// by (snr index, slot) only, so different resolutions see identical
/// realizations and compare pairwise.
inline std::vector<LinkMeasurement> sweep(const OfdmNumerology& num, const std::vector<int>& bits_list,
                                          const std::vector<double>& snr_grid_db, int slots_per_point,
                                          std::uint64_t seed, const EqualizerOptions& opts = {}) {
    num.validate();
    if (bits_list.empty() || snr_grid_db.empty()) throw std::invalid_argument("sweep: empty grid");
    if (slots_per_point < 1) throw std::invalid_argument("sweep: slots_per_point must be >= 1");

    std::vector<QuantizerSpec> specs;
    specs.reserve(bits_list.size());
    for (int b : bits_list) specs.push_back(b == 0 ? QuantizerSpec{} : design_uniform_quantizer(b));

    const double used_fraction = static_cast<double>(num.used_subcarriers) / num.fft_size;
    std::vector<LinkMeasurement> out;
    out.reserve(bits_list.size() * snr_grid_db.size());
    for (std::size_t bi = 0; bi < bits_list.size(); ++bi) {
        for (std::size_t si = 0; si < snr_grid_db.size(); ++si) {
            double evm2 = 0.0;
            std::uint64_t point_seed = 0;
            for (int sl = 0; sl < slots_per_point; ++sl) {
                const std::uint64_t slot_seed = Rng::mix(seed, (static_cast<std::uint64_t>(si) << 20) | sl);
                if (sl == 0) point_seed = slot_seed;
                Slot slot = build_slot(num, slot_seed);
                slot.samples = awgn(slot.samples, snr_grid_db[si], Rng::mix(slot_seed, 0x6e01),
                                    used_fraction);
                const QuantizerSpec* q = bits_list[bi] == 0 ? nullptr : &specs[bi];
                const LinkMeasurement m = receive_and_equalize(slot, num, q, opts);
                evm2 += m.evm_rms * m.evm_rms;
            }
            evm2 /= slots_per_point;
            LinkMeasurement m;
            m.input_snr_db = snr_grid_db[si];
            m.bits = bits_list[bi];
            m.evm_rms = std::sqrt(evm2);
            m.post_eq_snr_db = -10.0 * std::log10(evm2);
            m.seed = point_seed;
            out.push_back(m);
        }
    }
    return out;
}

/// Eq.-(10) prediction of the post-equalization SNR for a single-antenna
/// link (g_ue = 1) at the given analytic or fitted alpha.
inline double model_snr_db(double input_snr_db, double alpha) {
    if (alpha <= 0.0) return input_snr_db;
    return lin_to_db(effective_sinr_from_gamma(db_to_lin(input_snr_db), alpha, 1.0));
}

}  // namespace quantbeam
