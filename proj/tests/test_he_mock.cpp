// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "helinear/he_mock.hpp"

using namespace helinear;

namespace {

HEParams small_params(std::size_t n = 16) {
    HEParams p;
    p.n = n;
    return p;
}

SlotVector random_plain(std::mt19937_64 &rng, const HEParams &p) {
    std::vector<Residue> v(p.n);
    for (auto &x : v) x = rng() % p.p;
    return {v, p.p};
}

}  // namespace

TEST(HeMock, DefaultParametersAreValid) {
    HEParams p;
    EXPECT_NO_THROW(p.validate());
    EXPECT_EQ(p.n, 2048u);
    EXPECT_EQ(p.p, 1048573u);
    EXPECT_DOUBLE_EQ(p.noise_budget, std::ldexp(1.0, 59) / 1048573.0);
}

TEST(HeMock, ParameterValidation) {
    HEParams p;
    p.n = 100;
    EXPECT_THROW(p.validate(), ParameterError);
    p = {};
    p.p = 1048575;
    EXPECT_THROW(p.validate(), ParameterError);
    p = {};
    p.eta_mult = 4096;  // above eta_rot
    EXPECT_THROW(p.validate(), ParameterError);
    p = {};
    p.noise_budget = 4;
    EXPECT_THROW(p.validate(), ParameterError);
    p = {};
    p.q_bits = 19;  // p no longer below 2^q_bits
    p.noise_budget = 100;
    EXPECT_THROW(p.validate(), ParameterError);
}

TEST(HeMock, EncryptFreshNoise) {
    MockBackend be(small_params());
    const auto ct = be.encrypt(SlotVector::zeros(16, be.modulus()));
    EXPECT_EQ(ct.payload(), SlotVector::zeros(16, be.modulus()));
    EXPECT_DOUBLE_EQ(ct.noise(), 8.0);
    EXPECT_LT(ct.noise(), be.params().noise_budget);
}

TEST(HeMock, EncryptRejectsWrongLength) {
    MockBackend be(small_params());
    EXPECT_THROW(be.encrypt(SlotVector::zeros(8, be.modulus())), DimensionError);
}

TEST(HeMock, RoundTrip) {
    MockBackend be(small_params());
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const auto x = random_plain(rng, be.params());
        EXPECT_EQ(be.decrypt(be.encrypt(x)), x);
    }
}

TEST(HeMock, DecryptFailsAtBudget) {
    MockBackend be(small_params());
    MockCiphertext forced(SlotVector::zeros(16, be.modulus()), be.params().noise_budget,
                          std::make_shared<const HEParams>(be.params()));
    EXPECT_THROW(be.decrypt(forced), NoiseOverflowError);
    MockCiphertext below(SlotVector::zeros(16, be.modulus()), std::nextafter(be.params().noise_budget, 0.0),
                         std::make_shared<const HEParams>(be.params()));
    EXPECT_NO_THROW(be.decrypt(below));
}

TEST(HeMock, ChainedRotateAndSumOverflowsTinyBudget) {
    HEParams params = small_params();
    params.noise_budget = 1.0e6;
    MockBackend be(params);
    CostMeter meter;
    // Independent recurrence: one RaS step maps noise a to 2a + eta_rot.
    std::vector<double> expected{params.eta0};
    for (int k = 1; k <= 40; ++k) expected.push_back(2 * expected.back() + params.eta_rot);

    auto ct = be.encrypt(SlotVector::filled(16, 1, be.modulus()));
    bool overflowed = false;
    for (int k = 1; k <= 40; ++k) {
        ct = be.add(ct, be.perm(ct, 1 + (k % 15), meter), meter);
        ASSERT_DOUBLE_EQ(ct.noise(), expected[k]);
        if (expected[k] >= params.noise_budget) {
            EXPECT_THROW(be.decrypt(ct), NoiseOverflowError) << "step " << k;
            overflowed = true;
            break;
        }
        EXPECT_NO_THROW(be.decrypt(ct)) << "step " << k;
    }
    EXPECT_TRUE(overflowed);
}

TEST(HeMock, AddNoiseAndPayload) {
    MockBackend be(small_params());
    CostMeter meter;
    std::mt19937_64 rng(12);
    const auto a = be.encrypt(random_plain(rng, be.params()));
    const auto sum0 = be.add(a, be.encrypt(SlotVector::zeros(16, be.modulus())), meter);
    EXPECT_EQ(sum0.payload(), a.payload());
    EXPECT_DOUBLE_EQ(sum0.noise(), a.noise() + 8.0);
    const auto twice = be.add(sum0, sum0, meter);
    EXPECT_DOUBLE_EQ(twice.noise(), 2 * sum0.noise());
    EXPECT_EQ(meter.counts().add, 2u);
}

TEST(HeMock, Homomorphism) {
    MockBackend be(small_params(32));
    CostMeter meter;
    std::mt19937_64 rng(13);
    const Residue p = be.modulus();
    for (int i = 0; i < 100; ++i) {
        const auto x = random_plain(rng, be.params());
        const auto y = random_plain(rng, be.params());
        const auto k = static_cast<std::int64_t>(rng() % 64);
        const auto sum = be.decrypt(be.add(be.encrypt(x), be.encrypt(y), meter));
        const auto prod = be.decrypt(be.sc_mult(be.encrypt(x), y, meter));
        const auto rot = be.decrypt(be.perm(be.encrypt(x), k, meter));
        for (std::size_t j = 0; j < 32; ++j) {
            EXPECT_EQ(sum[j], (x[j] + y[j]) % p);
            EXPECT_EQ(prod[j], static_cast<Residue>((static_cast<unsigned __int128>(x[j]) * y[j]) % p));
            EXPECT_EQ(rot[j], x[(j + static_cast<std::size_t>(k)) % 32]);
        }
    }
}

TEST(HeMock, ScMultNoise) {
    MockBackend be(small_params());
    CostMeter meter;
    std::mt19937_64 rng(14);
    const auto x = random_plain(rng, be.params());
    const auto out = be.sc_mult(be.encrypt(x), SlotVector::filled(16, 1, be.modulus()), meter);
    EXPECT_EQ(out.payload(), x);
    EXPECT_DOUBLE_EQ(out.noise(), 1024.0 * 8.0);
    EXPECT_EQ(meter.counts().sc_mult, 1u);
    EXPECT_THROW(be.sc_mult(be.encrypt(x), SlotVector::zeros(8, be.modulus()), meter), DimensionError);
}

TEST(HeMock, PermNoiseAndTrivialRotation) {
    MockBackend be(small_params());
    CostMeter meter;
    std::mt19937_64 rng(15);
    const auto ct = be.encrypt(random_plain(rng, be.params()));
    const auto same = be.perm(ct, 0, meter);
    EXPECT_EQ(same.payload(), ct.payload());
    EXPECT_DOUBLE_EQ(same.noise(), ct.noise());
    EXPECT_EQ(meter.counts(), OpCounts{});
    const auto wrapped = be.perm(ct, 16, meter);
    EXPECT_EQ(meter.counts(), OpCounts{});
    EXPECT_DOUBLE_EQ(wrapped.noise(), ct.noise());

    const auto rot = be.perm(ct, 3, meter);
    EXPECT_DOUBLE_EQ(rot.noise(), 8.0 + 2048.0);
    EXPECT_EQ(rot.payload(), rotate_left(ct.payload(), 3));
    EXPECT_EQ(meter.counts().perm, 1u);
}

TEST(HeMock, HoistedRotations) {
    MockBackend be(small_params());
    CostMeter meter;
    std::mt19937_64 rng(16);
    const auto ct = be.encrypt(random_plain(rng, be.params()));
    const auto group = be.dec_perm(ct, meter);
    EXPECT_EQ(group.source().payload(), ct.payload());
    for (std::int64_t k : {1, 2, 3}) {
        CostMeter scratch;
        const auto hoisted = be.hst_perm(group, k, meter);
        const auto full = be.perm(ct, k, scratch);
        EXPECT_EQ(hoisted.payload(), full.payload());
        EXPECT_DOUBLE_EQ(hoisted.noise(), full.noise());
    }
    EXPECT_EQ(meter.counts().dec_perm, 1u);
    EXPECT_EQ(meter.counts().hst_perm, 3u);
    EXPECT_EQ(meter.counts().perm, 0u);

    const auto unchanged = be.hst_perm(group, 0, meter);
    EXPECT_EQ(unchanged.payload(), ct.payload());
    EXPECT_EQ(meter.counts().hst_perm, 3u);

    (void)be.dec_perm(ct, meter);
    EXPECT_EQ(meter.counts().dec_perm, 2u);
}

TEST(HeMock, ParamsMismatchRejected) {
    MockBackend a(small_params());
    HEParams other = small_params();
    other.eta0 = 9.0;
    MockBackend b(other);
    CostMeter meter;
    const auto x = SlotVector::zeros(16, a.modulus());
    EXPECT_THROW(a.add(a.encrypt(x), b.encrypt(x), meter), ParameterError);
}

TEST(HeMock, SubtractPlainIsOneAdd) {
    MockBackend be(small_params());
    CostMeter meter;
    const auto ct = be.encrypt(SlotVector::filled(16, 5, be.modulus()));
    const auto out = be.sub_plain(ct, SlotVector::filled(16, 7, be.modulus()), meter);
    EXPECT_EQ(out.payload()[0], be.modulus() - 2);
    EXPECT_DOUBLE_EQ(out.noise(), 16.0);
    EXPECT_EQ(meter.counts().add, 1u);
}

TEST(CostMeter, ViewsAndEstimate) {
    CostMeter meter;
    meter.record_perm(2);
    meter.record_dec_perm();
    meter.record_hst_perm(3);
    meter.record_sc_mult(4);
    meter.record_add(5);
    const OpCounts t2 = meter.counts();
    EXPECT_EQ(t2, (OpCounts{2, 1, 3, 4, 5, ReportView::table2}));
    const OpCounts t7 = meter.counts(ReportView::table7);
    EXPECT_EQ(t7, (OpCounts{2, 3, 5, 4, 5, ReportView::table7}));
    EXPECT_EQ(t7.in_view(ReportView::table2), t2);
    const CostModel m;
    EXPECT_DOUBLE_EQ(meter.estimated_ms(), 2 * m.t_perm + m.t_decperm + 3 * m.t_hstperm + 4 * m.t_scmult + 5 * m.t_add);
    EXPECT_DOUBLE_EQ(estimate_time(t7, m), estimate_time(t2, m));
}

TEST(CostMeter, CopyKeepsCounts) {
    CostMeter meter;
    meter.record_add(7);
    CostMeter copy(meter);
    copy.record_add();
    EXPECT_EQ(meter.counts().add, 7u);
    EXPECT_EQ(copy.counts().add, 8u);
}

TEST(CostModel, DefaultRatiosMatchMeasuredCosts) {
    const CostModel m;
    EXPECT_GE(m.t_perm / m.t_add, 50.0);
    EXPECT_LE(m.t_perm / m.t_add, 60.0);
    EXPECT_GE(m.t_perm / m.t_scmult, 30.0);
    EXPECT_LE(m.t_perm / m.t_scmult, 38.0);
    EXPECT_NEAR(m.t_decperm + m.t_hstperm, m.t_perm, 1e-12);
    CostModel bad;
    bad.t_add = -1;
    EXPECT_THROW(bad.validate(), ParameterError);
}
