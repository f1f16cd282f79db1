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

namespace quantbeam {

using ComplexBlock = std::vector<std::complex<double>>;

/// An n-bit mid-rise uniform scalar quantizer for unit-variance input per
/// real dimension. Reconstruction levels sit at odd multiples of step/2; the
/// saturation (clip) level is 2^(bits-1) * step. alpha is the inverse coding
/// gain: the fraction of input energy lost to quantization distortion,
/// alpha = 1 - E[Q(y) y] / E[y^2] for unit-variance Gaussian y.
struct QuantizerSpec {
    int bits = 0;
    double step = 0.0;
    double clip = 0.0;
    double alpha = 0.0;
};

namespace detail {

inline double norm_pdf(double x) { return std::exp(-0.5 * x * x) * 0.3989422804014326779; }
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

/// Exact E[(Q(x)-x)^2] for the mid-rise quantizer on N(0,1), summed over the
/// quantizer cells with closed-form Gaussian interval moments.
inline double midrise_mse(int bits, double step) {
    const long half = 1L << (bits - 1);
    double mse = 0.0;
    double cdf_a = 0.5, pdf_a = norm_pdf(0.0);  // a = 0 for k = 0
    for (long k = 0; k < half; ++k) {
        const double a = static_cast<double>(k) * step;
        const bool last = (k == half - 1);
        const double b = static_cast<double>(k + 1) * step;
        const double level = (static_cast<double>(k) + 0.5) * step;
        const double cdf_b = last ? 1.0 : norm_cdf(b);
        const double pdf_b = last ? 0.0 : norm_pdf(b);
        const double i0 = cdf_b - cdf_a;
        const double i1 = pdf_a - pdf_b;
        const double i2 = i0 + a * pdf_a - (last ? 0.0 : b * pdf_b);
        mse += level * level * i0 - 2.0 * level * i1 + i2;
        cdf_a = cdf_b;
        pdf_a = pdf_b;
    }
    return 2.0 * mse;  // symmetric halves
}

/// Exact E[Q(x) x] for the mid-rise quantizer on N(0,1).
inline double midrise_corr(int bits, double step) {
    const long half = 1L << (bits - 1);
    double corr = 0.0;
    double pdf_a = norm_pdf(0.0);
    for (long k = 0; k < half; ++k) {
        const bool last = (k == half - 1);
        const double b = static_cast<double>(k + 1) * step;
        const double level = (static_cast<double>(k) + 0.5) * step;
        const double pdf_b = last ? 0.0 : norm_pdf(b);
        corr += level * (pdf_a - pdf_b);
        pdf_a = pdf_b;
    }
    return 2.0 * corr;
}

template <typename F>
double golden_minimize(F f, double lo, double hi, int iters) {
    constexpr double inv_phi = 0.6180339887498948482;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

inline void check_bits(int bits) {
    if (bits < 1 || bits > 16) throw std::invalid_argument("quantizer bits must be in [1, 16]");
}

/// One real dimension, unit-variance domain.
inline double midrise_apply(double x, double step, long half) {
    double idx = std::floor(x / step);
    if (idx < static_cast<double>(-half)) idx = static_cast<double>(-half);
    if (idx > static_cast<double>(half - 1)) idx = static_cast<double>(half - 1);
    return (idx + 0.5) * step;
}

}  // namespace detail

/// Inverse coding gain of an n-bit mid-rise quantizer with the given step,
/// for unit-variance Gaussian input per real dimension:
/// alpha = 1 - E[Q(y) y] / E[y^2], by deterministic closed-form integration.
inline double estimate_alpha(int bits, double step) {
    detail::check_bits(bits);
    if (!(step > 0.0)) throw std::invalid_argument("quantizer step must be positive");
    double a = 1.0 - detail::midrise_corr(bits, step);
    if (a < 0.0) a = 0.0;
    if (a >= 1.0) a = std::nextafter(1.0, 0.0);
    return a;
}

inline double estimate_alpha(const QuantizerSpec& spec) { return estimate_alpha(spec.bits, spec.step); }

/// Designs the n-bit mid-rise uniform quantizer whose step minimizes the MSE
/// for zero-mean unit-variance Gaussian input (applied independently per real
/// dimension of a complex sample).
inline QuantizerSpec design_uniform_quantizer(int bits) {
    detail::check_bits(bits);
    const double step = detail::golden_minimize(
        [bits](double s) { return detail::midrise_mse(bits, s); }, 1e-6, 4.0, 180);
    QuantizerSpec spec;
    spec.bits = bits;
    spec.step = step;
    spec.clip = static_cast<double>(1L << (bits - 1)) * step;
    spec.alpha = estimate_alpha(bits, step);
    return spec;
}

/// Applies the quantizer to a block of complex samples under ideal AGC: each
/// real dimension is scaled to unit variance using the supplied block RMS
/// (per complex sample), quantized to the nearest reconstruction level, and
/// rescaled. Outputs are bounded by clip * input_rms / sqrt(2) per real
/// dimension.
inline ComplexBlock quantize(const QuantizerSpec& spec, const ComplexBlock& block, double input_rms) {
    detail::check_bits(spec.bits);
    if (!(spec.step > 0.0)) throw std::invalid_argument("quantizer step must be positive");
    if (!(input_rms > 0.0)) throw std::invalid_argument("input_rms must be positive");
    const double scale = input_rms * M_SQRT1_2;  // per-real-dimension sigma
    const double inv = 1.0 / scale;
    const long half = 1L << (spec.bits - 1);
    ComplexBlock out(block.size());
    for (std::size_t i = 0; i < block.size(); ++i) {
        const double re = block[i].real();
        const double im = block[i].imag();
        if (!std::isfinite(re) || !std::isfinite(im))
            throw std::invalid_argument("quantize: non-finite sample");
        out[i] = {detail::midrise_apply(re * inv, spec.step, half) * scale,
                  detail::midrise_apply(im * inv, spec.step, half) * scale};
    }
    return out;
}

}  // namespace quantbeam
