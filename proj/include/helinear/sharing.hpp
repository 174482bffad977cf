// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

/// \file sharing.hpp
/// \brief Additive secret sharing of encrypted linear outputs over Z_p.
///
/// The server masks the to-be-shared ciphertext with a uniform vector r and
/// keeps r; the client decrypts the masked ciphertext. When the producing
/// scheme left a rotate-and-sum pending, both parties finish it on their
/// plaintext share. The fold is linear, so the shares still add up.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "helinear/cost.hpp"
#include "helinear/errors.hpp"
#include "helinear/he_mock.hpp"
#include "helinear/ring.hpp"

namespace helinear {

/// Seeded generator for share masks. Remembers its seed for reproducibility.
class ShareRng {
  public:
    explicit ShareRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    Residue uniform(Residue p) { return std::uniform_int_distribution<Residue>(0, p - 1)(engine_); }

    SlotVector uniform_vector(std::size_t n, Residue p) {
        std::vector<Residue> v(n);
        for (auto &x : v) x = uniform(p);
        return {std::move(v), p};
    }

    std::mt19937_64 &engine() { return engine_; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

struct SharePair {
    std::vector<Residue> server_share;
    std::vector<Residue> client_share;
    Residue modulus = 2;

    /// server + client, mod p.
    std::vector<Residue> reconstruct() const {
        if (server_share.size() != client_share.size()) throw DimensionError("share length mismatch");
        std::vector<Residue> out(server_share.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = add_mod(server_share[i], client_share[i], modulus);
        return out;
    }
};

template <HeBackend Backend>
struct MaskedCiphertext {
    SlotVector mask;
    typename Backend::Ciphertext masked;
};

/// Draws r uniform over Z_p^n and returns (r, ct - r).
template <HeBackend Backend>
MaskedCiphertext<Backend> gen_additive_share(const Backend &be, const typename Backend::Ciphertext &ct,
                                             ShareRng &rng, CostMeter &meter) {
    SlotVector r = rng.uniform_vector(be.slot_count(), be.modulus());
    auto masked = be.sub_plain(ct, r, meter);
    return {std::move(r), std::move(masked)};
}

/// Applies the pending fold to both plaintext shares and reads the output slots.
inline SharePair finalize_shares(const SlotVector &masked_plain, const SlotVector &r, const FoldSpec &fold,
                                 const std::vector<std::size_t> &slot_map) {
    if (masked_plain.size() != r.size() || masked_plain.modulus() != r.modulus()) {
        throw DimensionError("masked payload and mask differ in shape");
    }
    fold.validate();
    if (fold.start_span > r.size()) throw DimensionError("fold span exceeds slot count");
    for (std::size_t slot : slot_map) {
        if (slot >= r.size() || slot % fold.start_span >= fold.end_span) {
            throw DimensionError("slot " + std::to_string(slot) + " is not a fold output position");
        }
    }
    const SlotVector client_full = fold_ras(masked_plain, fold);
    const SlotVector server_full = fold_ras(r, fold);
    SharePair out;
    out.modulus = r.modulus();
    out.server_share.reserve(slot_map.size());
    out.client_share.reserve(slot_map.size());
    for (std::size_t slot : slot_map) {
        out.server_share.push_back(server_full[slot]);
        out.client_share.push_back(client_full[slot]);
    }
    return out;
}

}  // namespace helinear
