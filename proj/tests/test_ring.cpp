// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "helinear/ring.hpp"

using namespace helinear;

namespace {

SlotVector random_vector(std::mt19937_64 &rng, std::size_t n, Residue p) {
    std::vector<Residue> v(n);
    for (auto &x : v) x = rng() % p;
    return {v, p};
}

}  // namespace

TEST(Ring, RotateByZeroIsIdentity) {
    SlotVector v({10, 11, 12, 13}, 97);
    EXPECT_EQ(rotate_left(v, 0), v);
}

TEST(Ring, RotateLeftOneStep) {
    SlotVector v({10, 11, 12, 13}, 97);
    EXPECT_EQ(rotate_left(v, 1), SlotVector({11, 12, 13, 10}, 97));
    EXPECT_EQ(rotate_left(v, 5), rotate_left(v, 1));
}

TEST(Ring, RotateInverseProperty) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = std::size_t{1} << (1 + rng() % 8);
        const SlotVector v = random_vector(rng, n, 65537);
        const std::uint64_t k = rng() % n;
        EXPECT_EQ(rotate_left(rotate_left(v, k), n - k), v);
    }
}

TEST(Ring, RotateComposition) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 64;
        const SlotVector v = random_vector(rng, n, 1048573);
        const std::uint64_t a = rng() % 200, b = rng() % 200;
        EXPECT_EQ(rotate_left(rotate_left(v, a), b), rotate_left(v, (a + b) % n));
    }
}

TEST(Ring, NormalizeRotationHandlesNegatives) {
    EXPECT_EQ(normalize_rotation(-1, 16), 15u);
    EXPECT_EQ(normalize_rotation(-16, 16), 0u);
    EXPECT_EQ(normalize_rotation(35, 16), 3u);
}

TEST(Ring, PointwiseIdentities) {
    std::mt19937_64 rng(3);
    const SlotVector v = random_vector(rng, 32, 1048573);
    EXPECT_EQ(pointwise(v, SlotVector::zeros(32, 1048573), PointwiseOp::add), v);
    EXPECT_EQ(pointwise(v, SlotVector::filled(32, 1, 1048573), PointwiseOp::mul), v);
}

TEST(Ring, PointwiseHandComputed) {
    // (6 + 2) mod 7 = 1, (2 + 3) mod 7 = 5
    EXPECT_EQ(pointwise(SlotVector({6, 2}, 7), SlotVector({2, 3}, 7), PointwiseOp::add), SlotVector({1, 5}, 7));
    EXPECT_EQ(pointwise(SlotVector({6, 2}, 7), SlotVector({2, 3}, 7), PointwiseOp::mul), SlotVector({5, 6}, 7));
    EXPECT_EQ(pointwise(SlotVector({1, 2}, 7), SlotVector({2, 3}, 7), PointwiseOp::sub), SlotVector({6, 6}, 7));
}

TEST(Ring, PointwiseCommutativeAssociative) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const Residue p = 1048573;
        const auto a = random_vector(rng, 16, p), b = random_vector(rng, 16, p), c = random_vector(rng, 16, p);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
    }
}

TEST(Ring, MultiplicationMatchesWideReference) {
    std::mt19937_64 rng(5);
    for (Residue p : {Residue{7}, Residue{1048573}, Residue{4294967291ull}, Residue{4294967296ull},
                      Residue{1152921504606846883ull}}) {
        for (int trial = 0; trial < 200; ++trial) {
            const Residue a = rng() % p, b = rng() % p;
            const auto expected = static_cast<Residue>((static_cast<unsigned __int128>(a) * b) % p);
            EXPECT_EQ((SlotVector({a, 0}, p) * SlotVector({b, 0}, p))[0], expected) << "p=" << p;
        }
        const Residue top = p - 1;
        const auto expected = static_cast<Residue>((static_cast<unsigned __int128>(top) * top) % p);
        EXPECT_EQ((SlotVector({top, 0}, p) * SlotVector({top, 0}, p))[0], expected);
    }
}

TEST(Ring, ShapeErrors) {
    EXPECT_THROW(SlotVector({1, 2, 3}, 7), DimensionError);
    EXPECT_THROW(SlotVector({1, 9}, 7), ParameterError);
    EXPECT_THROW(SlotVector({1, 2}, 7) + SlotVector({1, 2, 3, 4}, 7), DimensionError);
    EXPECT_THROW(SlotVector({1, 2}, 7) + SlotVector({1, 2}, 11), DimensionError);
}

TEST(Ring, FoldZeroIterations) {
    SlotVector v({1, 2, 3, 4}, 97);
    EXPECT_EQ(fold_ras(v, 4, 4), v);
    EXPECT_EQ(FoldSpec({4, 4}).iterations(), 0u);
}

TEST(Ring, FoldHandComputed) {
    SlotVector v({1, 2, 3, 4}, 97);
    EXPECT_EQ(fold_ras(v, 4, 1)[0], 10u);
    const auto half = fold_ras(v, 4, 2);
    EXPECT_EQ(half[0], 4u);
    EXPECT_EQ(half[1], 6u);
    EXPECT_EQ(FoldSpec({4, 1}).iterations(), 2u);
}

TEST(Ring, FoldMatchesBruteForceBlockSum) {
    std::mt19937_64 rng(6);
    const Residue p = 1048573;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 128;
        const std::size_t start = std::size_t{1} << (rng() % 8);
        const std::size_t end = std::size_t{1} << (rng() % (log2_exact(start) + 1));
        std::vector<Residue> raw(n, 0);
        for (std::size_t j = 0; j < start; ++j) raw[j] = rng() % p;
        const auto folded = fold_ras(SlotVector(raw, p), start, end);
        for (std::size_t j = 0; j < end; ++j) {
            Residue expected = 0;
            for (std::size_t k = 0; k < start / end; ++k) expected = (expected + raw[j + k * end]) % p;
            EXPECT_EQ(folded[j], expected);
        }
    }
}

TEST(Ring, FoldRejectsBadSpans) {
    SlotVector v({1, 2, 3, 4}, 97);
    EXPECT_THROW(fold_ras(v, 3, 1), ParameterError);
    EXPECT_THROW(fold_ras(v, 2, 4), ParameterError);
    EXPECT_THROW(fold_ras(v, 8, 1), ParameterError);
}

TEST(Ring, PrimalityOfDefaultModulus) {
    EXPECT_TRUE(is_prime(1048573));
    EXPECT_FALSE(is_prime(1048575));
    EXPECT_TRUE(is_prime(1152921504606846883ull));
    EXPECT_FALSE(is_prime(1));
    EXPECT_TRUE(is_prime(2));
}
