// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "helinear/analytics.hpp"

using namespace helinear;

namespace {

struct Row {
    std::uint64_t dec_perm, hst_perm, sc_mult, add;
};

void expect_row(const OpCounts &c, const Row &r) {
    const OpCounts v = c.in_view(ReportView::table7);
    EXPECT_EQ(v.dec_perm, r.dec_perm);
    EXPECT_EQ(v.hst_perm, r.hst_perm);
    EXPECT_EQ(v.sc_mult, r.sc_mult);
    EXPECT_EQ(v.add, r.add);
}

}  // namespace

TEST(CountMv, NaiveSmall) { EXPECT_EQ(count_mv(MvScheme::naive, 4, 2, 16), (OpCounts{4, 0, 0, 2, 4})); }

TEST(CountMv, GalaRotationsDependOnlyOnGroups) {
    // Fixed T = 4 on n = 2048: n_i n_o = 8192.
    for (auto [n_o, n_i] : {std::pair<std::size_t, std::size_t>{4, 2048}, {8, 1024}, {16, 512}, {32, 256}}) {
        EXPECT_EQ(count_mv(MvScheme::gala, n_i, n_o, 2048).perm, 3u) << n_o << "x" << n_i;
    }
    // Clamped below one group.
    EXPECT_EQ(count_mv(MvScheme::gala, 16, 4, 2048).perm, 0u);
}

TEST(CountMv, CostTableTwoByTwoK) {
    const CostModel m;
    const double gz = estimate_time(count_mv(MvScheme::gazelle, 2048, 2, 2048), m);
    const double ga = estimate_time(count_mv(MvScheme::gala, 2048, 2, 2048), m);
    // 10 Perm + 1 HstPerm + 1 DecPerm + 2 ScMult + 11 Add.
    EXPECT_NEAR(gz, 10 * 0.178 + 0.0712 + 0.1068 + 2 * 0.005 + 11 * 0.0034, 1e-12);
    EXPECT_NEAR(ga, 0.178 + 2 * 0.005 + 0.0034, 1e-12);
    EXPECT_GE(gz, 1.8);
    EXPECT_LE(gz, 2.2);
    EXPECT_GE(ga, 0.18);
    EXPECT_LE(ga, 0.22);
}

TEST(CountConv, TableSevenRows) {
    const ConvShape r1{16, 16, 128, 128, 1, 1};
    expect_row(count_conv(ConvScheme::gazelle, r1, 2048), {1792, 1792, 2048, 2032});
    expect_row(count_conv(ConvScheme::gala, r1, 2048), {112, 112, 2048, 2032});
    const ConvShape r3{16, 16, 128, 128, 3, 3};
    expect_row(count_conv(ConvScheme::gazelle, r3, 2048), {1808, 1920, 18432, 18416});
    expect_row(count_conv(ConvScheme::gala, r3, 2048), {128, 240, 18432, 18416});
    const ConvShape r4{16, 16, 2048, 64, 5, 5};
    expect_row(count_conv(ConvScheme::gazelle, r4, 2048), {14592, 20480, 409600, 409592});
    expect_row(count_conv(ConvScheme::gala, r4, 2048), {312, 6200, 409600, 409592});
}

TEST(CountConv, PaddedChannels) {
    // 5 channels on c_n = 4 pad to 8.
    EXPECT_EQ(count_conv(ConvScheme::gala, ConvShape{4, 4, 5, 5, 1, 1}, 64),
              count_conv(ConvScheme::gala, ConvShape{4, 4, 8, 8, 1, 1}, 64));
}

TEST(PredictNoise, GalaBelowGazelleWhenGroupsAreFew) {
    const HEParams p;
    for (auto [n_o, n_i] : {std::pair<std::size_t, std::size_t>{1, 2048}, {2, 1024}, {16, 128}, {8, 256}}) {
        EXPECT_LT(predict_mv_noise(MvScheme::gala, n_i, n_o, p), predict_mv_noise(MvScheme::gazelle, n_i, n_o, p));
    }
    const ConvShape s{16, 16, 128, 128, 3, 3};
    EXPECT_LT(predict_conv_noise(ConvScheme::gala, s, p), predict_conv_noise(ConvScheme::gazelle, s, p));
}

TEST(PredictNoise, ClosedFormsByHand) {
    HEParams p;
    p.n = 16;
    p.eta0 = 2;
    p.eta_mult = 3;
    p.eta_rot = 5;
    // naive n_i = 8: 8*2*3 + 7*5.
    EXPECT_DOUBLE_EQ(predict_mv_noise(MvScheme::naive, 8, 2, p), 48 + 35);
    // gala 4x8 on 16: T = 2.
    EXPECT_DOUBLE_EQ(predict_mv_noise(MvScheme::gala, 8, 4, p), 2 * 6 + 5);
    // gazelle 4x8 on 16: 8*6 + ((32 - 16)/4 * 3 + 12/4) * 5.
    EXPECT_DOUBLE_EQ(predict_mv_noise(MvScheme::gazelle, 8, 4, p), 48 + (12 + 3) * 5);
    // 3x3 taps: 9*3*2 + 8*5*3 per channel.
    EXPECT_DOUBLE_EQ(conv_tap_noise(ConvShape{4, 4, 1, 1, 3, 3}, p), 54 + 120);
}

TEST(CountMv, RejectsBadDims) {
    EXPECT_THROW(count_mv(MvScheme::gala, 4096, 1, 2048), DimensionError);
    EXPECT_THROW(count_mv(MvScheme::gala, 12, 1, 2048), DimensionError);
    EXPECT_THROW(count_conv(ConvScheme::gala, ConvShape{3, 3, 1, 1, 3, 3}, 2048), DimensionError);
}
