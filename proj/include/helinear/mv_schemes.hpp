// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

/// \file mv_schemes.hpp
/// \brief Encrypted matrix-vector products: naive row RaS, diagonal, hybrid
/// (GAZELLE) and row-encoding share-RaS (GALA).
///
/// Packed layout used by the hybrid and GALA schemes
/// --------------------------------------------------
/// The client packs kappa = n / n_i copies of x. With T diagonal groups the
/// row of slot j is r(j) = floor(j / n_i) * T + (j mod T), and plaintext t is
///
///     p_t[j] = w[r(j - t)][j mod n_i].
///
/// Then m = sum_t rotate_left(p_t (.) x_pack, t) holds in slot j the partial
/// sum of row r(j) over columns j .. j+T-1 (mod n_i). Folding span n_i down to
/// T collects all n_i columns of row c*T + o into slot c*n_i + o. GALA leaves
/// that fold to the two plaintext shares; the hybrid scheme does it with
/// ciphertext rotations.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "helinear/cost.hpp"
#include "helinear/errors.hpp"
#include "helinear/he_mock.hpp"
#include "helinear/layout.hpp"
#include "helinear/ring.hpp"
#include "helinear/sharing.hpp"

namespace helinear {

/// n_o x n_i weight matrix with entries mod p.
class MvTask {
  public:
    MvTask(std::vector<std::vector<Residue>> w, std::size_t n, Residue p) : w_(std::move(w)), p_(p) {
        dims_.n = n;
        dims_.n_o = w_.size();
        dims_.n_i = w_.empty() ? 0 : w_.front().size();
        dims_.validate();
        for (const auto &row : w_) {
            if (row.size() != dims_.n_i) throw DimensionError("ragged weight matrix");
            for (Residue v : row) {
                if (v >= p_) throw ParameterError("weight not below modulus");
            }
        }
    }

    const MvDims &dims() const { return dims_; }
    std::size_t n_i() const { return dims_.n_i; }
    std::size_t n_o() const { return dims_.n_o; }
    std::size_t n() const { return dims_.n; }
    Residue modulus() const { return p_; }
    const std::vector<std::vector<Residue>> &weights() const { return w_; }

    /// Entry of the zero-padded matrix; rows at or beyond n_o read as zero.
    Residue weight(std::size_t row, std::size_t col) const { return row < dims_.n_o ? w_[row][col] : 0; }

  private:
    std::vector<std::vector<Residue>> w_;
    MvDims dims_;
    Residue p_;
};

/// Result of one scheme run: the to-be-shared ciphertext(s), the two shares,
/// and where each output row sits.
template <typename Ciphertext>
struct MvOutcome {
    std::vector<Ciphertext> output;
    SharePair shares;
    std::vector<std::size_t> slot_map;  // row -> slot (in ciphertext `row` for naive)
    FoldSpec fold;                      // fold still pending on the plaintext shares
    OpCounts counts;                    // homomorphic work up to the to-be-shared ciphertext
    OpCounts share_counts;              // masking work
    std::uint64_t seed = 0;

    std::vector<Residue> reconstruct() const { return shares.reconstruct(); }

    /// Noise of the to-be-shared ciphertext (largest one for naive).
    double noise() const {
        double worst = 0;
        for (const auto &ct : output) worst = std::max(worst, ct.noise());
        return worst;
    }
};

/// x in slots [0, n_i), zero elsewhere.
inline SlotVector place_input(const std::vector<Residue> &x, std::size_t n, Residue p) {
    if (x.size() > n) throw DimensionError("input longer than slot count");
    std::vector<Residue> v(n, 0);
    std::copy(x.begin(), x.end(), v.begin());
    return SlotVector::reduced(std::move(v), p);
}

/// n / |x| back-to-back copies of x.
inline SlotVector pack_input(const std::vector<Residue> &x, std::size_t n, Residue p) {
    if (x.empty() || n % x.size() != 0) throw DimensionError("input length must divide slot count");
    std::vector<Residue> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = x[j % x.size()];
    return SlotVector::reduced(std::move(v), p);
}

/// Output row carried by slot j of the packed product.
inline std::size_t gala_row_class(std::size_t j, std::size_t n_i, std::size_t groups) {
    return (j / n_i) * groups + (j % groups);
}

/// Slot of output row j0 = c*T + o after the n_i -> T fold: c*n_i + o.
inline std::vector<std::size_t> packed_slot_map(const MvDims &d) {
    const std::size_t t = d.groups();
    std::vector<std::size_t> map(d.n_o);
    for (std::size_t row = 0; row < d.n_o; ++row) map[row] = (row / t) * d.n_i + (row % t);
    return map;
}

inline FoldSpec packed_fold(const MvDims &d) { return {d.n_i, d.groups()}; }

/// The T row-encoded plaintexts p_t.
inline std::vector<SlotVector> encode_gala_weights(const MvTask &task) {
    const MvDims &d = task.dims();
    const std::size_t n = d.n;
    const std::size_t t_count = d.groups();
    std::vector<SlotVector> out;
    out.reserve(t_count);
    for (std::size_t t = 0; t < t_count; ++t) {
        std::vector<Residue> v(n);
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t src = (j + n - t) % n;
            v[j] = task.weight(gala_row_class(src, d.n_i, t_count), j % d.n_i);
        }
        out.emplace_back(std::move(v), task.modulus());
    }
    return out;
}

namespace detail {

template <HeBackend Backend>
void check_task(const Backend &be, const MvTask &task, const typename Backend::Ciphertext &ct) {
    if (task.n() != be.slot_count()) throw DimensionError("task slot count differs from backend");
    if (task.modulus() != be.modulus()) throw DimensionError("task modulus differs from backend");
    (void)ct;
}

/// Masks each output ciphertext, lets the client decrypt, and finishes the fold.
template <HeBackend Backend>
void share_outputs(const Backend &be, MvOutcome<typename Backend::Ciphertext> &out,
                   const std::vector<std::vector<std::size_t>> &slots_per_ct, ShareRng &rng) {
    CostMeter share_meter;
    out.shares.modulus = be.modulus();
    for (std::size_t c = 0; c < out.output.size(); ++c) {
        auto masked = gen_additive_share(be, out.output[c], rng, share_meter);
        const SlotVector client_plain = be.decrypt(masked.masked);
        SharePair part = finalize_shares(client_plain, masked.mask, out.fold, slots_per_ct[c]);
        out.shares.server_share.insert(out.shares.server_share.end(), part.server_share.begin(),
                                       part.server_share.end());
        out.shares.client_share.insert(out.shares.client_share.end(), part.client_share.begin(),
                                       part.client_share.end());
    }
    out.share_counts = share_meter.counts();
    out.seed = rng.seed();
}

}  // namespace detail

/// One ciphertext per row: ScMult by the row, then log2(n_i) rotate-and-sum
/// steps leave the dot product in slot 0. Expects x in slots [0, n_i).
template <HeBackend Backend>
MvOutcome<typename Backend::Ciphertext> mv_naive(const Backend &be, const MvTask &task,
                                                 const typename Backend::Ciphertext &ct_x, ShareRng &rng,
                                                 CostMeter &meter) {
    detail::check_task(be, task, ct_x);
    const std::size_t n = task.n();
    CostMeter local(meter.model());
    MvOutcome<typename Backend::Ciphertext> out;
    const FoldSpec ras{task.n_i(), 1};
    for (std::size_t row = 0; row < task.n_o(); ++row) {
        std::vector<Residue> wrow(n, 0);
        std::copy(task.weights()[row].begin(), task.weights()[row].end(), wrow.begin());
        auto u = be.sc_mult(ct_x, SlotVector(std::move(wrow), task.modulus()), local);
        for (std::size_t s : ras.steps()) u = be.add(u, be.perm(u, static_cast<std::int64_t>(s), local), local);
        out.output.push_back(std::move(u));
    }
    out.counts = local.counts();
    meter.absorb(out.counts);
    out.fold = {1, 1};
    out.slot_map.assign(task.n_o(), 0);
    detail::share_outputs(be, out, std::vector<std::vector<std::size_t>>(task.n_o(), {0}), rng);
    return out;
}

/// Diagonal method: d_k[j] = w[j mod n_o][(j + k) mod n_i] for j < n_i, and
/// sum_k d_k (.) rotate_left(x, k) over one DecPerm and n_i - 1 hoisted
/// rotations. Row i lands in slot i. Expects packed copies of x so that
/// rotations wrap within n_i.
template <HeBackend Backend>
MvOutcome<typename Backend::Ciphertext> mv_diagonal(const Backend &be, const MvTask &task,
                                                    const typename Backend::Ciphertext &ct_xpack, ShareRng &rng,
                                                    CostMeter &meter) {
    detail::check_task(be, task, ct_xpack);
    const std::size_t n = task.n();
    const std::size_t n_i = task.n_i();
    const std::size_t n_o = task.n_o();
    CostMeter local(meter.model());
    auto diagonal = [&](std::size_t k) {
        std::vector<Residue> v(n, 0);
        for (std::size_t j = 0; j < n_i; ++j) v[j] = task.weights()[j % n_o][(j + k) % n_i];
        return SlotVector(std::move(v), task.modulus());
    };
    auto acc = be.sc_mult(ct_xpack, diagonal(0), local);
    if (n_i > 1) {
        const auto group = be.dec_perm(ct_xpack, local);
        for (std::size_t k = 1; k < n_i; ++k) {
            auto rotated = be.hst_perm(group, static_cast<std::int64_t>(k), local);
            acc = be.add(acc, be.sc_mult(rotated, diagonal(k), local), local);
        }
    }
    MvOutcome<typename Backend::Ciphertext> out;
    out.output.push_back(std::move(acc));
    out.counts = local.counts();
    meter.absorb(out.counts);
    out.fold = {1, 1};
    out.slot_map.resize(n_o);
    for (std::size_t i = 0; i < n_o; ++i) out.slot_map[i] = i;
    detail::share_outputs(be, out, {out.slot_map}, rng);
    return out;
}

/// Hybrid method: T products of pre-rotated plaintexts with hoisted input
/// rotations, then log2(n_i / T) ciphertext rotate-and-sum steps.
template <HeBackend Backend>
MvOutcome<typename Backend::Ciphertext> mv_hybrid_gazelle(const Backend &be, const MvTask &task,
                                                          const typename Backend::Ciphertext &ct_xpack,
                                                          ShareRng &rng, CostMeter &meter) {
    detail::check_task(be, task, ct_xpack);
    const MvDims &d = task.dims();
    const std::size_t t_count = d.groups();
    const std::vector<SlotVector> plains = encode_gala_weights(task);
    CostMeter local(meter.model());
    auto acc = be.sc_mult(ct_xpack, plains[0], local);
    if (t_count > 1) {
        const auto group = be.dec_perm(ct_xpack, local);
        for (std::size_t t = 1; t < t_count; ++t) {
            auto rotated = be.hst_perm(group, static_cast<std::int64_t>(t), local);
            acc = be.add(acc, be.sc_mult(rotated, rotate_left(plains[t], t), local), local);
        }
    }
    for (std::size_t s : packed_fold(d).steps()) {
        acc = be.add(acc, be.perm(acc, static_cast<std::int64_t>(s), local), local);
    }
    MvOutcome<typename Backend::Ciphertext> out;
    out.output.push_back(std::move(acc));
    out.counts = local.counts();
    meter.absorb(out.counts);
    out.fold = {1, 1};
    out.slot_map = packed_slot_map(d);
    detail::share_outputs(be, out, {out.slot_map}, rng);
    return out;
}

/// Row-encoding share-RaS: T products against the unrotated input, T - 1
/// output rotations, and the n_i -> T fold deferred to the plaintext shares.
template <HeBackend Backend>
MvOutcome<typename Backend::Ciphertext> mv_gala(const Backend &be, const MvTask &task,
                                                const typename Backend::Ciphertext &ct_xpack, ShareRng &rng,
                                                CostMeter &meter) {
    detail::check_task(be, task, ct_xpack);
    const MvDims &d = task.dims();
    const std::vector<SlotVector> plains = encode_gala_weights(task);
    CostMeter local(meter.model());
    auto acc = be.sc_mult(ct_xpack, plains[0], local);
    for (std::size_t t = 1; t < plains.size(); ++t) {
        auto product = be.sc_mult(ct_xpack, plains[t], local);
        acc = be.add(acc, be.perm(product, static_cast<std::int64_t>(t), local), local);
    }
    MvOutcome<typename Backend::Ciphertext> out;
    out.output.push_back(std::move(acc));
    out.counts = local.counts();
    meter.absorb(out.counts);
    out.fold = packed_fold(d);
    out.slot_map = packed_slot_map(d);
    detail::share_outputs(be, out, {out.slot_map}, rng);
    return out;
}

/// Encrypts x in the layout the given scheme expects.
template <HeBackend Backend>
typename Backend::Ciphertext encrypt_input(const Backend &be, MvScheme scheme, const std::vector<Residue> &x) {
    return scheme == MvScheme::naive ? be.encrypt(place_input(x, be.slot_count(), be.modulus()))
                                     : be.encrypt(pack_input(x, be.slot_count(), be.modulus()));
}

/// Runs one scheme on plaintext input x (encrypting it first).
template <HeBackend Backend>
MvOutcome<typename Backend::Ciphertext> run_mv(const Backend &be, MvScheme scheme, const MvTask &task,
                                               const std::vector<Residue> &x, ShareRng &rng, CostMeter &meter) {
    if (x.size() != task.n_i()) throw DimensionError("input length must equal n_i");
    const auto ct = encrypt_input(be, scheme, x);
    switch (scheme) {
        case MvScheme::naive:
            return mv_naive(be, task, ct, rng, meter);
        case MvScheme::diagonal:
            return mv_diagonal(be, task, ct, rng, meter);
        case MvScheme::gazelle:
            return mv_hybrid_gazelle(be, task, ct, rng, meter);
        case MvScheme::gala:
            return mv_gala(be, task, ct, rng, meter);
    }
    throw ParameterError("unknown scheme");
}

}  // namespace helinear
