// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

/// \file layout.hpp
/// \brief Layer dimensions and the derived packing quantities shared by the
/// schemes and by the closed-form analytics.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "helinear/errors.hpp"
#include "helinear/ring.hpp"

namespace helinear {

enum class MvScheme { naive, diagonal, gazelle, gala };
enum class ConvScheme { gazelle, gala };

inline std::string_view to_string(MvScheme s) {
    switch (s) {
        case MvScheme::naive:
            return "naive";
        case MvScheme::diagonal:
            return "diagonal";
        case MvScheme::gazelle:
            return "gazelle";
        case MvScheme::gala:
            return "gala";
    }
    return "?";
}

inline std::string_view to_string(ConvScheme s) { return s == ConvScheme::gazelle ? "gazelle" : "gala"; }

/// n_o x n_i product on n slots.
struct MvDims {
    std::size_t n_o = 1;
    std::size_t n_i = 1;
    std::size_t n = 2048;

    void validate() const {
        if (!is_power_of_two(n) || !is_power_of_two(n_i) || !is_power_of_two(n_o)) {
            throw DimensionError("n, n_i and n_o must be powers of two");
        }
        if (n_o > n_i || n_i > n) {
            throw DimensionError("need n_o <= n_i <= n, got " + std::to_string(n_o) + "x" + std::to_string(n_i) +
                                 " on " + std::to_string(n) + " slots");
        }
    }

    /// Copies of x that fit in one ciphertext.
    std::size_t copies() const { return n / n_i; }

    /// Output rows after zero-padding so the packed ciphertext is full.
    std::size_t padded_rows() const { return std::max(n_o, copies()); }

    /// Diagonal groups (products) of the packed schemes, never below one.
    std::size_t groups() const { return n_i * padded_rows() / n; }
};

/// One convolution layer: u_w x u_h @ c_i input, k_w x k_h @ c_o kernels,
/// stride 1, same-size output.
struct ConvShape {
    std::size_t u_w = 1;
    std::size_t u_h = 1;
    std::size_t c_i = 1;
    std::size_t c_o = 1;
    std::size_t k_w = 1;
    std::size_t k_h = 1;

    std::size_t image_size() const { return u_w * u_h; }
    std::size_t kernel_size() const { return k_w * k_h; }

    void validate_kernel() const {
        if (k_w % 2 == 0 || k_h % 2 == 0) throw DimensionError("kernel dimensions must be odd");
        if (k_w > u_w || k_h > u_h) throw DimensionError("kernel larger than image");
        if (u_w == 0 || u_h == 0 || c_i == 0 || c_o == 0) throw DimensionError("empty convolution");
    }

    /// Channels that share one ciphertext; requires u_w*u_h to tile n exactly.
    std::size_t channels_per_ct(std::size_t n) const {
        const std::size_t img = image_size();
        if (img > n) throw DimensionError("image of " + std::to_string(img) + " pixels exceeds " + std::to_string(n) + " slots");
        if (n % img != 0 || !is_power_of_two(n / img)) {
            throw DimensionError("u_w*u_h must divide n into a power-of-two channel count");
        }
        return n / img;
    }

    void validate(std::size_t n) const {
        validate_kernel();
        if (!is_power_of_two(n)) throw DimensionError("n must be a power of two");
        (void)channels_per_ct(n);
    }

    /// Same layer with c_i and c_o rounded up to multiples of c_n.
    ConvShape padded(std::size_t n) const {
        const std::size_t cn = channels_per_ct(n);
        ConvShape out = *this;
        out.c_i = (c_i + cn - 1) / cn * cn;
        out.c_o = (c_o + cn - 1) / cn * cn;
        return out;
    }

    bool operator==(const ConvShape &) const = default;
};

}  // namespace helinear
