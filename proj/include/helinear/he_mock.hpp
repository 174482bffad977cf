// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

/// \file he_mock.hpp
/// \brief Functional stand-in for a packed BFV backend.
///
/// Ciphertexts carry their plaintext payload in the clear together with a
/// scalar noise estimate. Every homomorphic call updates the noise with the
/// usual BFV growth rules and books the event on a CostMeter:
///
///   Add      noise = a + b
///   ScMult   noise = a * eta_mult
///   Perm     noise = a + eta_rot      (also HstPerm)
///
/// Decryption fails once the noise reaches the budget. Schemes are written
/// against the HeBackend concept so that a real library can be dropped in.

#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>

#include "helinear/cost.hpp"
#include "helinear/errors.hpp"
#include "helinear/ring.hpp"

namespace helinear {

struct HEParams {
    std::size_t n = 2048;
    Residue p = 1048573;
    unsigned q_bits = 60;
    double sigma = 3.2;  // carried as metadata; the mock draws no noise
    double eta0 = 8.0;
    double eta_mult = 1024.0;
    double eta_rot = 2048.0;
    double noise_budget = default_noise_budget(60, 1048573);

    static double default_noise_budget(unsigned q_bits, Residue p) {
        return std::ldexp(1.0, static_cast<int>(q_bits) - 1) / static_cast<double>(p);
    }

    void validate() const {
        if (!is_power_of_two(n)) throw ParameterError("slot count n must be a power of two");
        if (q_bits < 2 || q_bits > 64) throw ParameterError("q_bits must lie in [2, 64]");
        if (!is_prime(p)) throw ParameterError("plaintext modulus " + std::to_string(p) + " is not prime");
        if (q_bits < 64 && p >= (std::uint64_t{1} << q_bits)) {
            throw ParameterError("plaintext modulus must be below 2^q_bits");
        }
        if (!(eta_rot > eta_mult && eta_mult > eta0 && eta0 > 1.0)) {
            throw ParameterError("noise parameters must satisfy eta_rot > eta_mult > eta0 > 1");
        }
        if (!(noise_budget > eta0)) throw ParameterError("noise budget must exceed eta0");
    }

    bool operator==(const HEParams &) const = default;
};

class MockBackend;

/// Payload, tracked noise, and the parameter set it was produced under.
class MockCiphertext {
  public:
    MockCiphertext(SlotVector payload, double noise, std::shared_ptr<const HEParams> params)
        : payload_(std::move(payload)), noise_(noise), params_(std::move(params)) {
        if (payload_.size() != params_->n) throw DimensionError("payload length must equal n");
        if (noise_ < 0) throw ParameterError("noise must be non-negative");
    }

    const SlotVector &payload() const { return payload_; }
    double noise() const { return noise_; }
    const HEParams &params() const { return *params_; }
    const std::shared_ptr<const HEParams> &params_ptr() const { return params_; }

  private:
    SlotVector payload_;
    double noise_;
    std::shared_ptr<const HEParams> params_;
};

/// Result of one DecPerm; hoisted rotations are taken from it.
class MockRotationGroup {
  public:
    const MockCiphertext &source() const { return source_; }

  private:
    friend class MockBackend;
    explicit MockRotationGroup(MockCiphertext source) : source_(std::move(source)) {}
    MockCiphertext source_;
};

/// Surface every scheme relies on.
template <typename B>
concept HeBackend = requires(const B &be, const typename B::Ciphertext &ct, const typename B::RotationGroup &g,
                             const SlotVector &pt, std::int64_t k, CostMeter &meter) {
    typename B::Ciphertext;
    typename B::RotationGroup;
    { be.slot_count() } -> std::convertible_to<std::size_t>;
    { be.modulus() } -> std::convertible_to<Residue>;
    { be.encrypt(pt) } -> std::same_as<typename B::Ciphertext>;
    { be.decrypt(ct) } -> std::same_as<SlotVector>;
    { be.add(ct, ct, meter) } -> std::same_as<typename B::Ciphertext>;
    { be.sub_plain(ct, pt, meter) } -> std::same_as<typename B::Ciphertext>;
    { be.sc_mult(ct, pt, meter) } -> std::same_as<typename B::Ciphertext>;
    { be.perm(ct, k, meter) } -> std::same_as<typename B::Ciphertext>;
    { be.dec_perm(ct, meter) } -> std::same_as<typename B::RotationGroup>;
    { be.hst_perm(g, k, meter) } -> std::same_as<typename B::Ciphertext>;
};

class MockBackend {
  public:
    using Ciphertext = MockCiphertext;
    using RotationGroup = MockRotationGroup;

    explicit MockBackend(HEParams params = {}) : params_(std::make_shared<const HEParams>(std::move(params))) {
        params_->validate();
    }

    const HEParams &params() const { return *params_; }
    std::size_t slot_count() const { return params_->n; }
    Residue modulus() const { return params_->p; }

    MockCiphertext encrypt(const SlotVector &x) const {
        check_plain(x);
        return {x, params_->eta0, params_};
    }

    SlotVector decrypt(const MockCiphertext &c) const {
        if (c.noise() >= c.params().noise_budget) throw NoiseOverflowError(c.noise(), c.params().noise_budget);
        return c.payload();
    }

    MockCiphertext add(const MockCiphertext &a, const MockCiphertext &b, CostMeter &meter) const {
        check_same(a, b);
        meter.record_add();
        return {a.payload() + b.payload(), a.noise() + b.noise(), a.params_ptr()};
    }

    /// Ciphertext minus plaintext. Booked as one Add; the plaintext operand
    /// contributes eta0 of noise, like a fresh encryption would.
    MockCiphertext sub_plain(const MockCiphertext &a, const SlotVector &r, CostMeter &meter) const {
        check_plain(r);
        meter.record_add();
        return {a.payload() - r, a.noise() + a.params().eta0, a.params_ptr()};
    }

    MockCiphertext sc_mult(const MockCiphertext &a, const SlotVector &s, CostMeter &meter) const {
        check_plain(s);
        meter.record_sc_mult();
        return {a.payload() * s, a.noise() * a.params().eta_mult, a.params_ptr()};
    }

    /// Full rotation by k slots to the left. k == 0 (mod n) is free.
    MockCiphertext perm(const MockCiphertext &a, std::int64_t k, CostMeter &meter) const {
        const std::uint64_t amount = normalize_rotation(k, a.params().n);
        if (amount == 0) return a;
        meter.record_perm();
        return {rotate_left(a.payload(), amount), a.noise() + a.params().eta_rot, a.params_ptr()};
    }

    /// Always books a DecPerm; groups are not cached.
    MockRotationGroup dec_perm(const MockCiphertext &a, CostMeter &meter) const {
        meter.record_dec_perm();
        return MockRotationGroup(a);
    }

    MockCiphertext hst_perm(const MockRotationGroup &g, std::int64_t k, CostMeter &meter) const {
        const MockCiphertext &src = g.source();
        const std::uint64_t amount = normalize_rotation(k, src.params().n);
        if (amount == 0) return src;
        meter.record_hst_perm();
        return {rotate_left(src.payload(), amount), src.noise() + src.params().eta_rot, src.params_ptr()};
    }

  private:
    void check_plain(const SlotVector &x) const {
        if (x.size() != params_->n) {
            throw DimensionError("plaintext length " + std::to_string(x.size()) + " != n = " +
                                 std::to_string(params_->n));
        }
        if (x.modulus() != params_->p) throw DimensionError("plaintext modulus differs from backend modulus");
    }

    static void check_same(const MockCiphertext &a, const MockCiphertext &b) {
        if (a.params_ptr() != b.params_ptr() && !(a.params() == b.params())) {
            throw ParameterError("ciphertexts were produced under different parameters");
        }
    }

    std::shared_ptr<const HEParams> params_;
};

static_assert(HeBackend<MockBackend>);

}  // namespace helinear
