// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "helinear/mv_schemes.hpp"
#include "helinear/sharing.hpp"
#include "test_util.hpp"

using namespace helinear;
using namespace helinear::testing;

TEST(Sharing, MaskReconstructsPayload) {
    MockBackend be{HEParams{}};
    std::mt19937_64 rng(51);
    const SlotVector m(random_values(rng, be.slot_count(), be.modulus()), be.modulus());
    const auto ct = be.encrypt(m);
    ShareRng srng(7);
    CostMeter meter;
    const auto masked = gen_additive_share(be, ct, srng, meter);
    EXPECT_EQ(be.decrypt(masked.masked) + masked.mask, m);
    EXPECT_EQ(meter.counts(), (OpCounts{0, 0, 0, 0, 1}));
    EXPECT_DOUBLE_EQ(masked.masked.noise(), ct.noise() + be.params().eta0);
}

TEST(Sharing, SameSeedSameMask) {
    MockBackend be{HEParams{}};
    const auto ct = be.encrypt(SlotVector::zeros(be.slot_count(), be.modulus()));
    ShareRng a(11), b(11);
    CostMeter meter;
    EXPECT_EQ(gen_additive_share(be, ct, a, meter).mask, gen_additive_share(be, ct, b, meter).mask);
}

TEST(Sharing, MaskedPayloadLooksUniform) {
    // 16 buckets over 16384 slots; chi-square critical value 30.578 at p = 0.01.
    HEParams params;
    params.n = 16384;
    MockBackend be(params);
    const auto ct = be.encrypt(SlotVector::filled(params.n, 5, be.modulus()));
    ShareRng srng(12);
    CostMeter meter;
    const SlotVector client = be.decrypt(gen_additive_share(be, ct, srng, meter).masked);
    std::vector<double> buckets(16, 0);
    for (Residue v : client.values()) buckets[static_cast<std::size_t>((static_cast<unsigned __int128>(v) * 16) / be.modulus())] += 1;
    const double expected = static_cast<double>(params.n) / 16;
    double chi2 = 0;
    for (double b : buckets) chi2 += (b - expected) * (b - expected) / expected;
    EXPECT_LT(chi2, 30.578);
}

TEST(Sharing, IdentityFoldReadsSlots) {
    const SlotVector masked({5, 6, 7, 8}, 97);
    const SlotVector r({1, 2, 3, 4}, 97);
    const auto pair = finalize_shares(masked, r, {1, 1}, {3, 0});
    EXPECT_EQ(pair.client_share, (std::vector<Residue>{8, 5}));
    EXPECT_EQ(pair.server_share, (std::vector<Residue>{4, 1}));
    EXPECT_EQ(pair.reconstruct(), (std::vector<Residue>{12, 6}));
}

TEST(Sharing, ZeroSecretGivesNegatedShares) {
    const SlotVector r({1, 50, 96, 0}, 97);
    const SlotVector masked = SlotVector::zeros(4, 97) - r;
    const auto pair = finalize_shares(masked, r, {4, 1}, {0});
    EXPECT_EQ(pair.reconstruct(), (std::vector<Residue>{0}));
    EXPECT_EQ((pair.client_share[0] + pair.server_share[0]) % 97, 0u);
}

TEST(Sharing, FoldIsLinear) {
    std::mt19937_64 rng(52);
    const Residue p = 1048573;
    for (int trial = 0; trial < 20; ++trial) {
        const SlotVector m(random_values(rng, 256, p), p);
        const SlotVector r(random_values(rng, 256, p), p);
        EXPECT_EQ(fold_ras(m - r, 128, 8) + fold_ras(r, 128, 8), fold_ras(m, 128, 8));
    }
}

TEST(Sharing, GalaSharesSumToProduct) {
    HEParams params;
    params.n = 2048;
    MockBackend be(params);
    std::mt19937_64 rng(53);
    const auto w = random_matrix(rng, 16, 128, be.modulus());
    const auto x = random_values(rng, 128, be.modulus());
    ShareRng srng(54);
    CostMeter meter;
    const auto out = run_mv(be, MvScheme::gala, MvTask(w, 2048, be.modulus()), x, srng, meter);
    EXPECT_EQ(out.reconstruct(), oracle_product(w, x, be.modulus()));
    EXPECT_EQ(out.share_counts, (OpCounts{0, 0, 0, 0, 1}));
}

TEST(Sharing, SlotMapMismatchThrows) {
    const SlotVector v = SlotVector::zeros(16, 97);
    // After a 16 -> 4 fold only slots with index mod 16 < 4 carry results.
    EXPECT_THROW(finalize_shares(v, v, {16, 4}, {5}), DimensionError);
    EXPECT_THROW(finalize_shares(v, SlotVector::zeros(8, 97), {1, 1}, {0}), DimensionError);
}
