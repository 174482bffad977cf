// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

/// \file oracle.hpp
/// \brief Brute-force plaintext ground truth. Deliberately naive and
/// self-contained: nothing here calls into the packed schemes or ring helpers.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "helinear/errors.hpp"

namespace helinear::oracle {

using Value = std::uint64_t;

class DenseMatrix {
  public:
    DenseMatrix(std::vector<std::vector<Value>> rows, Value modulus) : rows_(std::move(rows)), p_(modulus) {
        cols_ = rows_.empty() ? 0 : rows_.front().size();
        for (const auto &r : rows_) {
            if (r.size() != cols_) throw DimensionError("ragged matrix");
            for (Value v : r) {
                if (v >= p_) throw ParameterError("matrix entry not below modulus");
            }
        }
    }

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    Value modulus() const { return p_; }
    Value at(std::size_t i, std::size_t j) const { return rows_[i][j]; }

  private:
    std::vector<std::vector<Value>> rows_;
    std::size_t cols_ = 0;
    Value p_;
};

/// out[i] = sum_j w[i][j] * x[j] mod p.
inline std::vector<Value> dot_mod_p(const DenseMatrix &w, const std::vector<Value> &x) {
    if (x.size() != w.cols()) {
        throw DimensionError("vector length " + std::to_string(x.size()) + " != matrix columns " +
                             std::to_string(w.cols()));
    }
    const Value p = w.modulus();
    std::vector<Value> out(w.rows(), 0);
    for (std::size_t i = 0; i < w.rows(); ++i) {
        unsigned __int128 acc = 0;
        for (std::size_t j = 0; j < w.cols(); ++j) {
            acc += static_cast<unsigned __int128>(w.at(i, j)) * (x[j] % p);
            acc %= p;
        }
        out[i] = static_cast<Value>(acc);
    }
    return out;
}

/// Dimensions for the convolution oracle.
struct ConvDims {
    std::size_t u_w, u_h, c_i, c_o, k_w, k_h;
};

/// Same-padded stride-1 multi-channel correlation mod p.
///
/// inputs[ci] is a u_h x u_w row-major grid; kernels[co][ci] is a k_h x k_w
/// row-major grid. out[co][y][x] = sum over ci, dy, dx of
/// kernels[co][ci][dy][dx] * inputs[ci][y + dy - k_h/2][x + dx - k_w/2],
/// with out-of-image pixels read as zero.
inline std::vector<std::vector<Value>> conv2d_mod_p(const ConvDims &d,
                                                    const std::vector<std::vector<std::vector<Value>>> &kernels,
                                                    const std::vector<std::vector<Value>> &inputs, Value p) {
    if (d.k_w % 2 == 0 || d.k_h % 2 == 0) throw DimensionError("kernel dimensions must be odd");
    if (inputs.size() != d.c_i || kernels.size() != d.c_o) throw DimensionError("channel count mismatch");
    for (const auto &img : inputs) {
        if (img.size() != d.u_w * d.u_h) throw DimensionError("image size mismatch");
    }
    for (const auto &bank : kernels) {
        if (bank.size() != d.c_i) throw DimensionError("kernel input-channel mismatch");
        for (const auto &k : bank) {
            if (k.size() != d.k_w * d.k_h) throw DimensionError("kernel size mismatch");
        }
    }
    const long hw = static_cast<long>(d.k_w / 2);
    const long hh = static_cast<long>(d.k_h / 2);
    const long w = static_cast<long>(d.u_w);
    const long h = static_cast<long>(d.u_h);
    std::vector<std::vector<Value>> out(d.c_o, std::vector<Value>(d.u_w * d.u_h, 0));
    std::vector<unsigned __int128> acc(d.u_w * d.u_h);
    for (std::size_t co = 0; co < d.c_o; ++co) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t ci = 0; ci < d.c_i; ++ci) {
            const auto &img = inputs[ci];
            for (long ky = 0; ky < static_cast<long>(d.k_h); ++ky) {
                for (long kx = 0; kx < static_cast<long>(d.k_w); ++kx) {
                    const Value k = kernels[co][ci][static_cast<std::size_t>(ky) * d.k_w + static_cast<std::size_t>(kx)];
                    const long dy = ky - hh;
                    const long dx = kx - hw;
                    // Output pixels whose source (x + dx, y + dy) is inside the image.
                    for (long y = std::max(0L, -dy); y < std::min(h, h - dy); ++y) {
                        for (long x = std::max(0L, -dx); x < std::min(w, w - dx); ++x) {
                            acc[static_cast<std::size_t>(y * w + x)] +=
                                static_cast<unsigned __int128>(k) * img[static_cast<std::size_t>((y + dy) * w + x + dx)];
                        }
                    }
                }
            }
            for (auto &a : acc) a %= p;
        }
        for (std::size_t i = 0; i < acc.size(); ++i) out[co][i] = static_cast<Value>(acc[i]);
    }
    return out;
}

}  // namespace helinear::oracle
