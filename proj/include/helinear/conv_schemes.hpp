// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

/// \file conv_schemes.hpp
/// \brief Encrypted same-padded convolution: single-channel raster rotation,
/// output-rotation MIMO (GAZELLE) and kernel-grouping MIMO (GALA).
///
/// A ciphertext holds c_n = n / (u_w u_h) channels back to back, each row-major
/// in its own band. Input block b carries channels [b c_n, (b+1) c_n). For a
/// kernel offset (dw, dh) the input is rotated left by dh*u_w + dw; the
/// coefficient vector zeroes every pixel whose source falls outside the image,
/// which also cancels anything dragged in from a neighbouring band.
///
/// Diagonal l of an (output block, input block) pair pairs input band ch with
/// output channel (ch - l) mod c_n; rotating its convolution left by l bands
/// lines every partial sum up with its output channel.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "helinear/cost.hpp"
#include "helinear/errors.hpp"
#include "helinear/he_mock.hpp"
#include "helinear/layout.hpp"
#include "helinear/ring.hpp"

namespace helinear {

/// kernels[co][ci] is a k_h x k_w row-major grid.
using KernelBank = std::vector<std::vector<std::vector<Residue>>>;
/// images[c] is a u_h x u_w row-major grid.
using ChannelImages = std::vector<std::vector<Residue>>;

class ConvTask {
  public:
    ConvTask(ConvShape shape, KernelBank kernels, std::size_t n, Residue p)
        : shape_(shape), kernels_(std::move(kernels)), n_(n), p_(p) {
        shape_.validate_kernel();
        if (!is_power_of_two(n_)) throw DimensionError("n must be a power of two");
        if (shape_.image_size() > n_) throw DimensionError("image exceeds slot count");
        if (kernels_.size() != shape_.c_o) throw DimensionError("kernel bank must have c_o entries");
        for (const auto &bank : kernels_) {
            if (bank.size() != shape_.c_i) throw DimensionError("kernel bank must have c_i filters per kernel");
            for (const auto &k : bank) {
                if (k.size() != shape_.kernel_size()) throw DimensionError("filter size mismatch");
                for (Residue v : k) {
                    if (v >= p_) throw ParameterError("kernel coefficient not below modulus");
                }
            }
        }
    }

    const ConvShape &shape() const { return shape_; }
    const KernelBank &kernels() const { return kernels_; }
    std::size_t n() const { return n_; }
    Residue modulus() const { return p_; }

    /// Channels per ciphertext for the MIMO layout.
    std::size_t channels_per_ct() const { return shape_.channels_per_ct(n_); }

    /// Shape with channel counts padded to multiples of c_n.
    ConvShape padded_shape() const { return shape_.padded(n_); }

    /// Coefficient of the zero-padded kernel bank.
    Residue coefficient(std::size_t co, std::size_t ci, std::size_t idx) const {
        return (co < shape_.c_o && ci < shape_.c_i) ? kernels_[co][ci][idx] : 0;
    }

  private:
    ConvShape shape_;
    KernelBank kernels_;
    std::size_t n_;
    Residue p_;
};

/// One kernel tap: offset from the output pixel to its source pixel.
struct KernelOffset {
    long dw = 0;
    long dh = 0;
    std::size_t index = 0;  // position in the k_h x k_w row-major grid

    /// Signed left-rotation amount that brings the source pixel into place.
    long rotation(std::size_t u_w) const { return dh * static_cast<long>(u_w) + dw; }
};

/// Taps in raster order; the centre tap has offset (0, 0).
inline std::vector<KernelOffset> kernel_offsets(std::size_t k_w, std::size_t k_h) {
    std::vector<KernelOffset> out;
    const long hw = static_cast<long>(k_w / 2);
    const long hh = static_cast<long>(k_h / 2);
    for (std::size_t ky = 0; ky < k_h; ++ky) {
        for (std::size_t kx = 0; kx < k_w; ++kx) {
            out.push_back({static_cast<long>(kx) - hw, static_cast<long>(ky) - hh, ky * k_w + kx});
        }
    }
    return out;
}

/// Per-pixel validity of a tap: true when (x + dw, y + dh) lies in the image.
inline std::vector<bool> offset_validity(std::size_t u_w, std::size_t u_h, const KernelOffset &off) {
    std::vector<bool> valid(u_w * u_h);
    for (std::size_t y = 0; y < u_h; ++y) {
        for (std::size_t x = 0; x < u_w; ++x) {
            const long sx = static_cast<long>(x) + off.dw;
            const long sy = static_cast<long>(y) + off.dh;
            valid[y * u_w + x] = sx >= 0 && sy >= 0 && sx < static_cast<long>(u_w) && sy < static_cast<long>(u_h);
        }
    }
    return valid;
}

/// Boundary mask and rotation for one tap.
struct OffsetMask {
    KernelOffset offset;
    std::uint64_t rotation = 0;  // left rotation mod n
    SlotVector mask;             // 1 at valid pixel slots of every band, else 0
};

/// Number of whole image bands that fit in n slots.
inline std::size_t band_count(std::size_t u_w, std::size_t u_h, std::size_t n) { return n / (u_w * u_h); }

inline std::vector<OffsetMask> offset_masks(std::size_t u_w, std::size_t u_h, std::size_t k_w, std::size_t k_h,
                                            std::size_t n, Residue p) {
    const std::size_t img = u_w * u_h;
    const std::size_t bands = band_count(u_w, u_h, n);
    std::vector<OffsetMask> out;
    for (const KernelOffset &off : kernel_offsets(k_w, k_h)) {
        const auto valid = offset_validity(u_w, u_h, off);
        std::vector<Residue> m(n, 0);
        for (std::size_t b = 0; b < bands; ++b) {
            for (std::size_t px = 0; px < img; ++px) m[b * img + px] = valid[px] ? 1 : 0;
        }
        out.push_back({off, normalize_rotation(off.rotation(u_w), n), SlotVector(std::move(m), p)});
    }
    return out;
}

/// One masked coefficient vector per tap of a single k_h x k_w kernel,
/// replicated into every band.
inline std::vector<SlotVector> build_offset_masks(std::size_t u_w, std::size_t u_h, std::size_t k_w, std::size_t k_h,
                                                  const std::vector<Residue> &kernel2d, std::size_t n, Residue p) {
    if (k_w % 2 == 0 || k_h % 2 == 0) throw DimensionError("kernel dimensions must be odd");
    if (kernel2d.size() != k_w * k_h) throw DimensionError("kernel grid size mismatch");
    if (u_w * u_h > n) throw DimensionError("image exceeds slot count");
    std::vector<SlotVector> out;
    for (const OffsetMask &om : offset_masks(u_w, u_h, k_w, k_h, n, p)) {
        out.push_back(om.mask * SlotVector::filled(n, kernel2d[om.offset.index], p));
    }
    return out;
}

/// Packs channels into ceil(c / c_n) ciphertext payloads (zero-padded).
inline std::vector<SlotVector> pack_channels(const ChannelImages &images, std::size_t u_w, std::size_t u_h,
                                             std::size_t n, Residue p) {
    const std::size_t img = u_w * u_h;
    const std::size_t cn = band_count(u_w, u_h, n);
    if (cn == 0) throw DimensionError("image exceeds slot count");
    const std::size_t blocks = (images.size() + cn - 1) / cn;
    std::vector<SlotVector> out;
    for (std::size_t b = 0; b < blocks; ++b) {
        std::vector<Residue> v(n, 0);
        for (std::size_t ch = 0; ch < cn && b * cn + ch < images.size(); ++ch) {
            const auto &src = images[b * cn + ch];
            if (src.size() != img) throw DimensionError("image size mismatch");
            for (std::size_t px = 0; px < img; ++px) v[ch * img + px] = src[px] % p;
        }
        out.emplace_back(std::move(v), p);
    }
    return out;
}

/// Inverse of pack_channels, returning the first `channels` channels.
inline ChannelImages unpack_channels(const std::vector<SlotVector> &payloads, std::size_t channels, std::size_t u_w,
                                     std::size_t u_h) {
    const std::size_t img = u_w * u_h;
    ChannelImages out;
    if (payloads.empty()) return out;
    const std::size_t cn = band_count(u_w, u_h, payloads.front().size());
    for (std::size_t c = 0; c < channels; ++c) {
        const SlotVector &src = payloads.at(c / cn);
        const std::size_t base = (c % cn) * img;
        out.emplace_back(src.values().begin() + static_cast<std::ptrdiff_t>(base),
                         src.values().begin() + static_cast<std::ptrdiff_t>(base + img));
    }
    return out;
}

/// Single-channel convolution: one DecPerm, k_w k_h - 1 hoisted rotations,
/// k_w k_h products. Expects the image row-major in slots [0, u_w u_h).
template <HeBackend Backend>
typename Backend::Ciphertext siso_conv(const Backend &be, const ConvTask &task, const typename Backend::Ciphertext &ct_x,
                                       CostMeter &meter) {
    const ConvShape &s = task.shape();
    if (s.c_i != 1 || s.c_o != 1) throw DimensionError("siso_conv needs c_i = c_o = 1");
    if (task.n() != be.slot_count() || task.modulus() != be.modulus()) {
        throw DimensionError("task parameters differ from backend");
    }
    const auto coeffs = build_offset_masks(s.u_w, s.u_h, s.k_w, s.k_h, task.kernels()[0][0], task.n(), task.modulus());
    const auto offsets = kernel_offsets(s.k_w, s.k_h);
    std::optional<typename Backend::RotationGroup> group;
    if (offsets.size() > 1) group.emplace(be.dec_perm(ct_x, meter));
    std::optional<typename Backend::Ciphertext> acc;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        auto rotated = group ? be.hst_perm(*group, offsets[i].rotation(s.u_w), meter) : ct_x;
        auto term = be.sc_mult(rotated, coeffs[i], meter);
        acc = acc ? be.add(*acc, term, meter) : std::move(term);
    }
    return *acc;
}

namespace detail {

/// Hoisted raster rotations of every input block, one DecPerm each.
template <HeBackend Backend>
std::vector<std::vector<typename Backend::Ciphertext>> rotate_inputs(const Backend &be, const ConvTask &task,
                                                                     const std::vector<typename Backend::Ciphertext> &cts,
                                                                     CostMeter &meter) {
    const ConvShape &s = task.shape();
    const auto offsets = kernel_offsets(s.k_w, s.k_h);
    std::vector<std::vector<typename Backend::Ciphertext>> out;
    out.reserve(cts.size());
    for (const auto &ct : cts) {
        std::vector<typename Backend::Ciphertext> rots;
        rots.reserve(offsets.size());
        if (offsets.size() == 1) {
            rots.push_back(ct);
        } else {
            const auto group = be.dec_perm(ct, meter);
            for (const auto &off : offsets) rots.push_back(be.hst_perm(group, off.rotation(s.u_w), meter));
        }
        out.push_back(std::move(rots));
    }
    return out;
}

/// Validity pattern per tap, tiled over all bands (1 = keep).
inline std::vector<std::vector<unsigned char>> tiled_validity(const ConvShape &s, std::size_t n) {
    const std::size_t img = s.image_size();
    const std::size_t cn = n / img;
    std::vector<std::vector<unsigned char>> out;
    for (const auto &off : kernel_offsets(s.k_w, s.k_h)) {
        const auto valid = offset_validity(s.u_w, s.u_h, off);
        std::vector<unsigned char> tiled(n, 0);
        for (std::size_t b = 0; b < cn; ++b) {
            for (std::size_t px = 0; px < img; ++px) tiled[b * img + px] = valid[px] ? 1 : 0;
        }
        out.push_back(std::move(tiled));
    }
    return out;
}

/// Convolves input block ib against diagonal l of output block ob:
/// band ch uses kernel[ob c_n + (ch - l) mod c_n][ib c_n + ch].
template <HeBackend Backend>
typename Backend::Ciphertext convolve_diagonal(const Backend &be, const ConvTask &task,
                                               const std::vector<typename Backend::Ciphertext> &rots,
                                               const std::vector<std::vector<unsigned char>> &validity,
                                               std::size_t ob, std::size_t ib, std::size_t diag, CostMeter &meter) {
    const ConvShape &s = task.shape();
    const std::size_t n = task.n();
    const std::size_t img = s.image_size();
    const std::size_t cn = n / img;
    const auto offsets = kernel_offsets(s.k_w, s.k_h);
    std::optional<typename Backend::Ciphertext> acc;
    std::vector<Residue> coeff(n);
    for (std::size_t t = 0; t < offsets.size(); ++t) {
        for (std::size_t ch = 0; ch < cn; ++ch) {
            const std::size_t co = ob * cn + (ch + cn - diag) % cn;
            const std::size_t ci = ib * cn + ch;
            const Residue k = task.coefficient(co, ci, offsets[t].index);
            for (std::size_t px = 0; px < img; ++px) {
                const std::size_t slot = ch * img + px;
                coeff[slot] = validity[t][slot] ? k : 0;
            }
        }
        auto term = be.sc_mult(rots[t], SlotVector(coeff, task.modulus()), meter);
        acc = acc ? be.add(*acc, term, meter) : std::move(term);
    }
    return *acc;
}

template <HeBackend Backend>
void check_mimo(const Backend &be, const ConvTask &task, const std::vector<typename Backend::Ciphertext> &cts) {
    if (task.n() != be.slot_count() || task.modulus() != be.modulus()) {
        throw DimensionError("task parameters differ from backend");
    }
    const ConvShape padded = task.padded_shape();
    if (cts.size() != padded.c_i / task.channels_per_ct()) {
        throw DimensionError("expected " + std::to_string(padded.c_i / task.channels_per_ct()) +
                             " input ciphertexts, got " + std::to_string(cts.size()));
    }
}

}  // namespace detail

/// Output-rotation MIMO: every (output block, input block) pair rotates its
/// c_n diagonal convolutions into place before blocks are summed.
template <HeBackend Backend>
std::vector<typename Backend::Ciphertext> mimo_output_rotation(const Backend &be, const ConvTask &task,
                                                               const std::vector<typename Backend::Ciphertext> &cts,
                                                               CostMeter &meter) {
    detail::check_mimo(be, task, cts);
    const ConvShape padded = task.padded_shape();
    const std::size_t cn = task.channels_per_ct();
    const std::size_t img = padded.image_size();
    const auto rots = detail::rotate_inputs(be, task, cts, meter);
    const auto validity = detail::tiled_validity(padded, task.n());
    std::vector<typename Backend::Ciphertext> out;
    for (std::size_t ob = 0; ob < padded.c_o / cn; ++ob) {
        std::optional<typename Backend::Ciphertext> total;
        for (std::size_t ib = 0; ib < padded.c_i / cn; ++ib) {
            std::optional<typename Backend::Ciphertext> block;
            for (std::size_t l = 0; l < cn; ++l) {
                auto v = detail::convolve_diagonal(be, task, rots[ib], validity, ob, ib, l, meter);
                v = be.perm(v, static_cast<std::int64_t>(l * img), meter);
                block = block ? be.add(*block, v, meter) : std::move(v);
            }
            total = total ? be.add(*total, *block, meter) : std::move(*block);
        }
        out.push_back(std::move(*total));
    }
    return out;
}

/// Kernel-grouping MIMO: for each output block, add the diagonal-l
/// convolutions of all input blocks first, then rotate once per diagonal.
template <HeBackend Backend>
std::vector<typename Backend::Ciphertext> mimo_kernel_grouping(const Backend &be, const ConvTask &task,
                                                               const std::vector<typename Backend::Ciphertext> &cts,
                                                               CostMeter &meter) {
    detail::check_mimo(be, task, cts);
    const ConvShape padded = task.padded_shape();
    const std::size_t cn = task.channels_per_ct();
    const std::size_t img = padded.image_size();
    const auto rots = detail::rotate_inputs(be, task, cts, meter);
    const auto validity = detail::tiled_validity(padded, task.n());
    std::vector<typename Backend::Ciphertext> out;
    for (std::size_t ob = 0; ob < padded.c_o / cn; ++ob) {
        std::optional<typename Backend::Ciphertext> total;
        for (std::size_t l = 0; l < cn; ++l) {
            std::optional<typename Backend::Ciphertext> grouped;
            for (std::size_t ib = 0; ib < padded.c_i / cn; ++ib) {
                auto v = detail::convolve_diagonal(be, task, rots[ib], validity, ob, ib, l, meter);
                grouped = grouped ? be.add(*grouped, v, meter) : std::move(v);
            }
            auto rotated = be.perm(*grouped, static_cast<std::int64_t>(l * img), meter);
            total = total ? be.add(*total, rotated, meter) : std::move(rotated);
        }
        out.push_back(std::move(*total));
    }
    return out;
}

/// Encrypts the c_i input channels block by block.
template <HeBackend Backend>
std::vector<typename Backend::Ciphertext> encrypt_channels(const Backend &be, const ConvTask &task,
                                                           const ChannelImages &images) {
    const ConvShape &s = task.shape();
    if (images.size() != s.c_i) throw DimensionError("expected c_i input channels");
    ChannelImages padded_images = images;
    padded_images.resize(task.padded_shape().c_i, std::vector<Residue>(s.image_size(), 0));
    std::vector<typename Backend::Ciphertext> out;
    for (const auto &payload : pack_channels(padded_images, s.u_w, s.u_h, task.n(), task.modulus())) {
        out.push_back(be.encrypt(payload));
    }
    return out;
}

/// Runs one MIMO scheme end to end and returns the c_o output channels
/// together with the output ciphertexts.
template <HeBackend Backend>
struct ConvOutcome {
    std::vector<typename Backend::Ciphertext> output;
    ChannelImages channels;
    OpCounts counts;

    double noise() const {
        double worst = 0;
        for (const auto &ct : output) worst = std::max(worst, ct.noise());
        return worst;
    }
};

template <HeBackend Backend>
ConvOutcome<Backend> run_conv(const Backend &be, ConvScheme scheme, const ConvTask &task, const ChannelImages &images,
                              CostMeter &meter) {
    const auto cts = encrypt_channels(be, task, images);
    CostMeter local(meter.model());
    ConvOutcome<Backend> out;
    out.output = scheme == ConvScheme::gazelle ? mimo_output_rotation(be, task, cts, local)
                                               : mimo_kernel_grouping(be, task, cts, local);
    out.counts = local.counts();
    meter.absorb(out.counts);
    std::vector<SlotVector> plains;
    for (const auto &ct : out.output) plains.push_back(be.decrypt(ct));
    out.channels = unpack_channels(plains, task.shape().c_o, task.shape().u_w, task.shape().u_h);
    return out;
}

}  // namespace helinear
