// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

/// \file ring.hpp
/// \brief Slot vectors over Z_p and the rotations and folds used by every scheme.
///
/// A SlotVector is the common payload for plaintexts, mock ciphertexts and
/// secret shares. Values are kept fully reduced after every operation.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "helinear/errors.hpp"

namespace helinear {

using Residue = std::uint64_t;

constexpr bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

/// log2 of a power of two; throws ParameterError otherwise.
inline unsigned log2_exact(std::uint64_t v) {
    if (!is_power_of_two(v)) {
        throw ParameterError("expected a power of two, got " + std::to_string(v));
    }
    return static_cast<unsigned>(std::countr_zero(v));
}

constexpr std::uint64_t next_power_of_two(std::uint64_t v) { return v <= 1 ? 1 : std::bit_ceil(v); }

inline Residue add_mod(Residue a, Residue b, Residue p) {
    Residue s = a + b;
    return s >= p ? s - p : s;
}

inline Residue sub_mod(Residue a, Residue b, Residue p) { return a >= b ? a - b : a + p - b; }

inline Residue mul_mod(Residue a, Residue b, Residue p) {
    if (p <= (std::uint64_t{1} << 32)) {
        return (a * b) % p;
    }
    return static_cast<Residue>((static_cast<unsigned __int128>(a) * b) % p);
}

namespace detail {

inline Residue pow_mod(Residue base, std::uint64_t exp, Residue m) {
    Residue result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = static_cast<Residue>((static_cast<unsigned __int128>(result) * base) % m);
        base = static_cast<Residue>((static_cast<unsigned __int128>(base) * base) % m);
        exp >>= 1;
    }
    return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (v % small == 0) return v == small;
    }
    std::uint64_t d = v - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        Residue x = detail::pow_mod(a, d, v);
        if (x == 1 || x == v - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = static_cast<Residue>((static_cast<unsigned __int128>(x) * x) % v);
            if (x == v - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Length-n vector of residues mod p, n a power of two. Immutable once built.
class SlotVector {
  public:
    SlotVector(std::vector<Residue> slots, Residue modulus) : slots_(std::move(slots)), p_(modulus) {
        if (p_ < 2) throw ParameterError("modulus must be at least 2");
        if (!is_power_of_two(slots_.size())) {
            throw DimensionError("slot count must be a power of two, got " + std::to_string(slots_.size()));
        }
        for (Residue v : slots_) {
            if (v >= p_) throw ParameterError("slot value " + std::to_string(v) + " not below modulus");
        }
    }

    static SlotVector zeros(std::size_t n, Residue modulus) { return {std::vector<Residue>(n, 0), modulus}; }

    static SlotVector filled(std::size_t n, Residue value, Residue modulus) {
        return {std::vector<Residue>(n, value % modulus), modulus};
    }

    /// Builds from arbitrary integers, reducing each mod p.
    static SlotVector reduced(std::vector<Residue> values, Residue modulus) {
        for (auto &v : values) v %= modulus;
        return {std::move(values), modulus};
    }

    std::size_t size() const { return slots_.size(); }
    Residue modulus() const { return p_; }
    Residue operator[](std::size_t i) const { return slots_[i]; }
    std::span<const Residue> slots() const { return slots_; }
    const std::vector<Residue> &values() const { return slots_; }

    bool operator==(const SlotVector &) const = default;

  private:
    struct Unchecked {};
    SlotVector(Unchecked, std::vector<Residue> slots, Residue modulus) : slots_(std::move(slots)), p_(modulus) {}

    std::vector<Residue> slots_;
    Residue p_;

    friend SlotVector rotate_left(const SlotVector &, std::uint64_t);
    template <typename Op>
    friend SlotVector detail_zip(const SlotVector &, const SlotVector &, Op);
};

/// Reduces a signed rotation amount into [0, n).
inline std::uint64_t normalize_rotation(std::int64_t k, std::size_t n) {
    auto m = static_cast<std::int64_t>(n);
    auto r = k % m;
    return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

/// result[j] = v[(j + k) mod n].
inline SlotVector rotate_left(const SlotVector &v, std::uint64_t k) {
    const std::size_t n = v.size();
    k %= n;
    std::vector<Residue> out(n);
    std::rotate_copy(v.slots_.begin(), v.slots_.begin() + static_cast<std::ptrdiff_t>(k), v.slots_.end(), out.begin());
    return {SlotVector::Unchecked{}, std::move(out), v.p_};
}

enum class PointwiseOp { add, sub, mul };

template <typename Op>
SlotVector detail_zip(const SlotVector &a, const SlotVector &b, Op op) {
    if (a.size() != b.size()) {
        throw DimensionError("slot count mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    if (a.modulus() != b.modulus()) throw DimensionError("modulus mismatch");
    const Residue p = a.modulus();
    std::vector<Residue> out(a.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = op(a.slots_[j], b.slots_[j], p);
    return {SlotVector::Unchecked{}, std::move(out), p};
}

inline SlotVector pointwise(const SlotVector &a, const SlotVector &b, PointwiseOp op) {
    switch (op) {
        case PointwiseOp::add:
            return detail_zip(a, b, [](Residue x, Residue y, Residue m) { return add_mod(x, y, m); });
        case PointwiseOp::sub:
            return detail_zip(a, b, [](Residue x, Residue y, Residue m) { return sub_mod(x, y, m); });
        case PointwiseOp::mul:
            if (a.modulus() <= (std::uint64_t{1} << 32)) {
                // Barrett reduction: products stay below 2^64.
                const Residue p = a.modulus();
                const auto mu = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) / p);
                return detail_zip(a, b, [p, mu](Residue x, Residue y, Residue) {
                    const std::uint64_t prod = x * y;
                    const auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(prod) * mu) >> 64);
                    std::uint64_t r = prod - q * p;
                    return r >= p ? r - p : r;
                });
            }
            return detail_zip(a, b, [](Residue x, Residue y, Residue m) { return mul_mod(x, y, m); });
    }
    throw ParameterError("unknown pointwise op");
}

inline SlotVector operator+(const SlotVector &a, const SlotVector &b) { return pointwise(a, b, PointwiseOp::add); }
inline SlotVector operator-(const SlotVector &a, const SlotVector &b) { return pointwise(a, b, PointwiseOp::sub); }
inline SlotVector operator*(const SlotVector &a, const SlotVector &b) { return pointwise(a, b, PointwiseOp::mul); }

/// Span pair for a rotate-and-sum fold from start_span down to end_span.
struct FoldSpec {
    std::size_t start_span = 1;
    std::size_t end_span = 1;

    unsigned iterations() const { return log2_exact(start_span) - log2_exact(end_span); }

    /// Rotation amounts in application order: start/2, start/4, ..., end.
    std::vector<std::size_t> steps() const {
        validate();
        std::vector<std::size_t> out;
        for (std::size_t s = start_span / 2; s >= end_span && s > 0; s /= 2) out.push_back(s);
        return out;
    }

    void validate() const {
        if (!is_power_of_two(start_span) || !is_power_of_two(end_span)) {
            throw ParameterError("fold spans must be powers of two");
        }
        if (end_span > start_span) throw ParameterError("fold end span exceeds start span");
    }

    bool operator==(const FoldSpec &) const = default;
};

/// Plaintext rotate-and-sum: v <- v + rotate_left(v, s) for s = start/2, ..., end.
inline SlotVector fold_ras(const SlotVector &v, std::size_t start_span, std::size_t end_span) {
    FoldSpec spec{start_span, end_span};
    spec.validate();
    if (start_span > v.size()) throw ParameterError("fold span exceeds slot count");
    SlotVector acc = v;
    for (std::size_t s : spec.steps()) acc = acc + rotate_left(acc, s);
    return acc;
}

inline SlotVector fold_ras(const SlotVector &v, const FoldSpec &spec) { return fold_ras(v, spec.start_span, spec.end_span); }

}  // namespace helinear
