// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

/// \file analytics.hpp
/// \brief Closed-form operation counts and noise for every scheme. These are
/// written from the complexity formulas alone and never execute a scheme, so
/// the meters can be checked against them.

#pragma once

#include <cstdint>

#include "helinear/cost.hpp"
#include "helinear/he_mock.hpp"
#include "helinear/layout.hpp"

namespace helinear {

/// Matrix-vector counts in the table2 view.
///
/// Packed schemes use the padded row count n_o' = max(n_o, n / n_i), which
/// clamps T = n_i n_o' / n at one.
inline OpCounts count_mv(MvScheme scheme, std::size_t n_i, std::size_t n_o, std::size_t n) {
    const MvDims d{n_o, n_i, n};
    d.validate();
    const std::uint64_t t = d.groups();
    OpCounts c;
    switch (scheme) {
        case MvScheme::naive: {
            const std::uint64_t lg = log2_exact(n_i);
            c.perm = n_o * lg;
            c.sc_mult = n_o;
            c.add = n_o * lg;
            break;
        }
        case MvScheme::diagonal:
            c.hst_perm = n_i - 1;
            c.dec_perm = n_i > 1 ? 1 : 0;
            c.sc_mult = n_i;
            c.add = n_i - 1;
            break;
        case MvScheme::gazelle: {
            const std::uint64_t lg = log2_exact(n / d.padded_rows());
            c.perm = lg;
            c.hst_perm = t - 1;
            c.dec_perm = t > 1 ? 1 : 0;
            c.sc_mult = t;
            c.add = lg + t - 1;
            break;
        }
        case MvScheme::gala:
            c.perm = t - 1;
            c.sc_mult = t;
            c.add = t - 1;
            break;
    }
    return c;
}

inline OpCounts count_mv(MvScheme scheme, const MvDims &d) { return count_mv(scheme, d.n_i, d.n_o, d.n); }

/// Convolution counts in the table2 view, on channel counts padded to
/// multiples of c_n. Input rotations share one DecPerm per input ciphertext,
/// booked only when the kernel has more than one tap.
inline OpCounts count_conv(ConvScheme scheme, const ConvShape &shape, std::size_t n) {
    shape.validate(n);
    const ConvShape s = shape.padded(n);
    const std::uint64_t cn = s.channels_per_ct(n);
    const std::uint64_t in_blocks = s.c_i / cn;
    const std::uint64_t out_blocks = s.c_o / cn;
    const std::uint64_t taps = s.kernel_size();
    OpCounts c;
    c.perm = scheme == ConvScheme::gazelle ? in_blocks * out_blocks * (cn - 1) : out_blocks * (cn - 1);
    c.hst_perm = in_blocks * (taps - 1);
    c.dec_perm = taps > 1 ? in_blocks : 0;
    c.sc_mult = taps * s.c_i * out_blocks;
    c.add = out_blocks * (s.c_i * taps - 1);
    return c;
}

inline OpCounts count_conv(ConvScheme scheme, std::size_t u_w, std::size_t u_h, std::size_t c_i, std::size_t c_o,
                           std::size_t k_w, std::size_t k_h, std::size_t n) {
    return count_conv(scheme, ConvShape{u_w, u_h, c_i, c_o, k_w, k_h}, n);
}

/// Noise of the to-be-shared ciphertext after a matrix-vector product.
///
///   naive    n_i eta0 eta_mult + (n_i - 1) eta_rot
///   gazelle  n_i eta0 eta_mult + [(n_i n_o - n)/n_o eta_mult + (n - n_o)/n_o] eta_rot
///   gala     T eta0 eta_mult + (T - 1) eta_rot
///   diagonal n_i eta0 eta_mult + (n_i - 1) eta_rot eta_mult
inline double predict_mv_noise(MvScheme scheme, std::size_t n_i, std::size_t n_o, const HEParams &params) {
    const MvDims d{n_o, n_i, params.n};
    d.validate();
    const double e0 = params.eta0;
    const double em = params.eta_mult;
    const double er = params.eta_rot;
    const auto ni = static_cast<double>(n_i);
    switch (scheme) {
        case MvScheme::naive:
            return ni * e0 * em + (ni - 1) * er;
        case MvScheme::diagonal:
            return ni * e0 * em + (ni - 1) * er * em;
        case MvScheme::gazelle: {
            const auto no = static_cast<double>(d.padded_rows());
            const auto n = static_cast<double>(params.n);
            return ni * e0 * em + ((ni * no - n) / no * em + (n - no) / no) * er;
        }
        case MvScheme::gala: {
            const auto t = static_cast<double>(d.groups());
            return t * e0 * em + (t - 1) * er;
        }
    }
    return 0;
}

/// Per-output-channel noise of one SISO-style convolution:
/// k eta_mult eta0 + (k - 1) eta_rot eta_mult.
inline double conv_tap_noise(const ConvShape &s, const HEParams &params) {
    const auto k = static_cast<double>(s.kernel_size());
    return k * params.eta_mult * params.eta0 + (k - 1) * params.eta_rot * params.eta_mult;
}

///   gazelle  c_i eta_delta + (c_i / c_n)(c_n - 1) eta_rot
///   gala     c_i eta_delta + (c_n - 1) eta_rot
inline double predict_conv_noise(ConvScheme scheme, const ConvShape &shape, const HEParams &params) {
    shape.validate(params.n);
    const ConvShape s = shape.padded(params.n);
    const auto cn = static_cast<double>(s.channels_per_ct(params.n));
    const auto ci = static_cast<double>(s.c_i);
    const double base = ci * conv_tap_noise(s, params);
    if (scheme == ConvScheme::gazelle) return base + ci / cn * (cn - 1) * params.eta_rot;
    return base + (cn - 1) * params.eta_rot;
}

}  // namespace helinear
