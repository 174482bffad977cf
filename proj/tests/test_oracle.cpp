// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "helinear/oracle.hpp"

using namespace helinear;
using namespace helinear::oracle;

TEST(Oracle, SmallDotProduct) {
    // 2*5 + 3*7 = 31.
    EXPECT_EQ(dot_mod_p(DenseMatrix({{2, 3}}, 97), {5, 7}), (std::vector<Value>{31}));
    // 10*10 = 100 = 3 mod 97.
    EXPECT_EQ(dot_mod_p(DenseMatrix({{10}}, 97), {10}), (std::vector<Value>{3}));
}

TEST(Oracle, LargeResiduesDoNotOverflow) {
    const Value p = 1048573;
    const Value a = p - 1;
    // (p-1)^2 * 2 = 2 mod p.
    EXPECT_EQ(dot_mod_p(DenseMatrix({{a, a}}, p), {a, a}), (std::vector<Value>{2}));
}

TEST(Oracle, DotShapeErrors) {
    EXPECT_THROW(DenseMatrix({{1, 2}, {3}}, 97), DimensionError);
    EXPECT_THROW(dot_mod_p(DenseMatrix({{1, 2}}, 97), {1}), DimensionError);
    EXPECT_THROW(DenseMatrix({{97}}, 97), ParameterError);
}

TEST(Oracle, ConvCornerAndCentre) {
    const ConvDims d{3, 3, 1, 1, 3, 3};
    const std::vector<std::vector<Value>> img{{1, 2, 3, 4, 5, 6, 7, 8, 9}};
    const std::vector<std::vector<std::vector<Value>>> k{{{1, 1, 1, 1, 1, 1, 1, 1, 1}}};
    const auto out = conv2d_mod_p(d, k, img, 1000);
    EXPECT_EQ(out[0][0], 1u + 2 + 4 + 5);
    EXPECT_EQ(out[0][4], 45u);
    EXPECT_EQ(out[0][8], 5u + 6 + 8 + 9);
}

TEST(Oracle, ConvIsCorrelationNotConvolution) {
    // Kernel picks the right neighbour only.
    const ConvDims d{3, 1, 1, 1, 3, 1};
    const auto out = conv2d_mod_p(d, {{{0, 0, 1}}}, {{4, 5, 6}}, 97);
    EXPECT_EQ(out[0], (std::vector<Value>{5, 6, 0}));
}

TEST(Oracle, ConvSumsInputChannels) {
    const ConvDims d{1, 1, 2, 1, 1, 1};
    EXPECT_EQ(conv2d_mod_p(d, {{{3}, {4}}}, {{5}, {6}}, 97)[0][0], 39u);
    EXPECT_THROW(conv2d_mod_p({2, 2, 1, 1, 2, 1}, {{{1, 1}}}, {{1, 2, 3, 4}}, 97), DimensionError);
}
