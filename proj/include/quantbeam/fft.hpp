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

namespace quantbeam {

using cdouble = std::complex<double>;

/// Complex DFT plan for a fixed length. Power-of-two lengths run an iterative
/// radix-2 transform; other lengths go through Bluestein's chirp-z algorithm
/// (which only needs the radix-2 kernel internally). Plans are immutable after
/// construction and safe to share across threads.
///
/// Conventions: forward() computes X_k = sum_n x_n e^{-2pi i nk/N} (no
/// scaling); inverse() includes the 1/N factor.
class Fft {
  public:
    explicit Fft(std::size_t n) : n_(n) {
        if (n == 0) throw std::invalid_argument("Fft: length must be positive");
        if (is_pow2(n)) {
            init_pow2_tables(n);
        } else {
            m_ = 1;
            while (m_ < 2 * n - 1) m_ <<= 1;
            init_pow2_tables(m_);
            // chirp w_k = e^{-i pi k^2 / n}; k^2 reduced mod 2n keeps the
            // argument small and exact
            chirp_.resize(n);
            for (std::size_t k = 0; k < n; ++k) {
                std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % (2 * n);
                double ang = -M_PI * static_cast<double>(k2) / static_cast<double>(n);
                chirp_[k] = {std::cos(ang), std::sin(ang)};
            }
            bfilter_.assign(m_, cdouble{0.0, 0.0});
            bfilter_[0] = {1.0, 0.0};
            for (std::size_t k = 1; k < n; ++k) {
                cdouble b = std::conj(chirp_[k]);
                bfilter_[k] = b;
                bfilter_[m_ - k] = b;
            }
            radix2(bfilter_);
        }
    }

    std::size_t size() const { return n_; }

    void forward(std::vector<cdouble>& x) const {
        if (x.size() != n_) throw std::invalid_argument("Fft: length mismatch");
        if (m_ == 0) {
            radix2(x);
        } else {
            bluestein(x);
        }
    }

    void inverse(std::vector<cdouble>& x) const {
        for (auto& v : x) v = std::conj(v);
        forward(x);
        double s = 1.0 / static_cast<double>(n_);
        for (auto& v : x) v = std::conj(v) * s;
    }

    static bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

  private:
    void init_pow2_tables(std::size_t n) {
        tw_.resize(n / 2);
        for (std::size_t k = 0; k < n / 2; ++k) {
            double ang = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
            tw_[k] = {std::cos(ang), std::sin(ang)};
        }
        rev_.resize(n);
        std::size_t bits = 0;
        while ((std::size_t(1) << bits) < n) ++bits;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (std::size_t b = 0; b < bits; ++b)
                if (i & (std::size_t(1) << b)) r |= std::size_t(1) << (bits - 1 - b);
            rev_[i] = r;
        }
    }

    // in-place iterative radix-2 over the table length (n_ or m_)
    void radix2(std::vector<cdouble>& x) const {
        const std::size_t n = x.size();
        for (std::size_t i = 0; i < n; ++i)
            if (rev_[i] > i) std::swap(x[i], x[rev_[i]]);
        for (std::size_t len = 2; len <= n; len <<= 1) {
            const std::size_t half = len >> 1;
            const std::size_t stride = n / len;
            for (std::size_t base = 0; base < n; base += len) {
                for (std::size_t j = 0; j < half; ++j) {
                    cdouble w = tw_[j * stride];
                    cdouble u = x[base + j];
                    cdouble v = x[base + j + half] * w;
                    x[base + j] = u + v;
                    x[base + j + half] = u - v;
                }
            }
        }
    }

    void bluestein(std::vector<cdouble>& x) const {
        std::vector<cdouble> a(m_, cdouble{0.0, 0.0});
        for (std::size_t k = 0; k < n_; ++k) a[k] = x[k] * chirp_[k];
        radix2(a);
        for (std::size_t k = 0; k < m_; ++k) a[k] *= bfilter_[k];
        // inverse radix-2 via conjugation
        for (auto& v : a) v = std::conj(v);
        radix2(a);
        double s = 1.0 / static_cast<double>(m_);
        for (std::size_t k = 0; k < n_; ++k) x[k] = std::conj(a[k]) * s * chirp_[k];
    }

    std::size_t n_;
    std::size_t m_ = 0;  // 0 for the pure power-of-two path
    std::vector<cdouble> tw_;
    std::vector<std::size_t> rev_;
    std::vector<cdouble> chirp_;
    std::vector<cdouble> bfilter_;
};

}  // namespace quantbeam
