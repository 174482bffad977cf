// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

/// \file verify.hpp
/// \brief Seeded end-to-end check of every scheme against the plaintext
/// oracle, the closed-form counts and the closed-form noise.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "helinear/analytics.hpp"
#include "helinear/conv_schemes.hpp"
#include "helinear/mv_schemes.hpp"
#include "helinear/oracle.hpp"

namespace helinear {

/// Matrix shapes (n_o, n_i) and slot counts swept by the matrix-vector suite.
inline const std::vector<std::pair<std::size_t, std::size_t>> &mv_grid() {
    static const std::vector<std::pair<std::size_t, std::size_t>> g{{1, 2048}, {2, 1024}, {16, 128}, {8, 256}, {4, 16}};
    return g;
}
inline const std::vector<std::size_t> &mv_grid_slots() {
    static const std::vector<std::size_t> s{256, 2048};
    return s;
}

struct VerifyOptions {
    std::uint64_t seed = 7;
    Residue p = 1048573;
    std::size_t mv_tasks_per_cell = 13;   // 8 valid cells -> 104 tasks per scheme
    std::size_t conv_tasks_per_cell = 4;  // 16 cells -> 64 tasks
};

/// One (suite, scheme, shape, n) cell.
struct VerifyCell {
    std::string suite;
    std::string scheme;
    std::string shape;
    std::size_t n = 0;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;

    bool ok() const { return failures == 0; }
};

struct VerifyReport {
    std::vector<VerifyCell> cells;

    bool ok() const {
        for (const auto &c : cells) {
            if (!c.ok()) return false;
        }
        return true;
    }

    std::size_t cases(const std::string &suite, const std::string &scheme) const {
        std::size_t k = 0;
        for (const auto &c : cells) {
            if (c.suite == suite && c.scheme == scheme) k += c.cases;
        }
        return k;
    }
};

namespace detail {

inline void record(VerifyCell &cell, bool ok, const std::string &why) {
    ++cell.cases;
    if (ok) return;
    if (cell.failures++ == 0) cell.first_failure = why;
}

inline std::vector<Residue> draw(std::mt19937_64 &rng, std::size_t count, Residue p) {
    std::uniform_int_distribution<Residue> dist(0, p - 1);
    std::vector<Residue> v(count);
    for (auto &x : v) x = dist(rng);
    return v;
}

inline void verify_mv(const VerifyOptions &opt, VerifyReport &rep) {
    std::mt19937_64 rng(opt.seed);
    for (std::size_t n : mv_grid_slots()) {
        HEParams params;
        params.n = n;
        params.p = opt.p;
        params.noise_budget = HEParams::default_noise_budget(params.q_bits, params.p);
        const MockBackend be(params);
        for (auto [n_o, n_i] : mv_grid()) {
            if (n_i > n) continue;
            for (MvScheme scheme : {MvScheme::naive, MvScheme::diagonal, MvScheme::gazelle, MvScheme::gala}) {
                VerifyCell cell{"mv", std::string(to_string(scheme)), std::to_string(n_o) + "x" + std::to_string(n_i), n};
                const OpCounts want_counts = count_mv(scheme, n_i, n_o, n);
                const double want_noise = predict_mv_noise(scheme, n_i, n_o, params);
                for (std::size_t t = 0; t < opt.mv_tasks_per_cell; ++t) {
                    std::vector<std::vector<Residue>> w(n_o);
                    for (auto &row : w) row = draw(rng, n_i, opt.p);
                    const auto x = draw(rng, n_i, opt.p);
                    ShareRng share_rng(rng());
                    CostMeter meter;
                    try {
                        const auto out = run_mv(be, scheme, MvTask(w, n, opt.p), x, share_rng, meter);
                        if (out.reconstruct() != oracle::dot_mod_p(oracle::DenseMatrix(w, opt.p), x)) {
                            record(cell, false, "output differs from oracle");
                        } else if (!(out.counts == want_counts)) {
                            record(cell, false, "counts differ from closed form");
                        } else if (out.noise() != want_noise) {
                            record(cell, false, "noise differs from closed form");
                        } else {
                            record(cell, true, "");
                        }
                    } catch (const Error &e) {
                        record(cell, false, e.what());
                    }
                }
                rep.cells.push_back(std::move(cell));
            }
        }
    }
}

inline void verify_conv(const VerifyOptions &opt, VerifyReport &rep) {
    std::mt19937_64 rng(opt.seed + 1);
    for (std::size_t n : {std::size_t{64}, std::size_t{128}}) {
        HEParams params;
        params.n = n;
        params.p = opt.p;
        params.noise_budget = HEParams::default_noise_budget(params.q_bits, params.p);
        const MockBackend be(params);
        for (std::size_t c_i : {4u, 8u}) {
            for (std::size_t c_o : {4u, 8u}) {
                for (std::size_t k : {1u, 3u}) {
                    const ConvShape s{4, 4, c_i, c_o, k, k};
                    const std::string shape = "4x4@" + std::to_string(c_i) + "," + std::to_string(k) + "x" +
                                              std::to_string(k) + "@" + std::to_string(c_o);
                    VerifyCell cells[2] = {{"conv", "gazelle", shape, n}, {"conv", "gala", shape, n}};
                    for (std::size_t t = 0; t < opt.conv_tasks_per_cell; ++t) {
                        KernelBank bank(c_o, std::vector<std::vector<Residue>>(c_i));
                        for (auto &b : bank) {
                            for (auto &f : b) f = draw(rng, s.kernel_size(), opt.p);
                        }
                        ChannelImages images(c_i);
                        for (auto &img : images) img = draw(rng, s.image_size(), opt.p);
                        const auto want = oracle::conv2d_mod_p({4, 4, c_i, c_o, k, k}, bank, images, opt.p);
                        const ConvTask task(s, bank, n, opt.p);
                        ChannelImages first;
                        int idx = 0;
                        for (ConvScheme scheme : {ConvScheme::gazelle, ConvScheme::gala}) {
                            VerifyCell &cell = cells[idx++];
                            CostMeter meter;
                            try {
                                const auto out = run_conv(be, scheme, task, images, meter);
                                if (out.channels != want) {
                                    record(cell, false, "output differs from oracle");
                                } else if (scheme == ConvScheme::gala && out.channels != first) {
                                    record(cell, false, "output differs from the baseline scheme");
                                } else if (!(out.counts == count_conv(scheme, s, n))) {
                                    record(cell, false, "counts differ from closed form");
                                } else if (out.noise() != predict_conv_noise(scheme, s, params)) {
                                    record(cell, false, "noise differs from closed form");
                                } else {
                                    record(cell, true, "");
                                }
                                if (scheme == ConvScheme::gazelle) first = out.channels;
                            } catch (const Error &e) {
                                record(cell, false, e.what());
                            }
                        }
                    }
                    rep.cells.push_back(std::move(cells[0]));
                    rep.cells.push_back(std::move(cells[1]));
                }
            }
        }
    }
}

}  // namespace detail

/// Every matrix-vector scheme on the dimension grid.
inline VerifyReport run_mv_suite(const VerifyOptions &opt) {
    VerifyReport rep;
    detail::verify_mv(opt, rep);
    return rep;
}

/// Both MIMO convolution schemes on small 4x4 layers.
inline VerifyReport run_conv_suite(const VerifyOptions &opt) {
    VerifyReport rep;
    detail::verify_conv(opt, rep);
    return rep;
}

/// Both suites. Deterministic in opt.seed.
inline VerifyReport run_verification(const VerifyOptions &opt) {
    VerifyReport rep = run_mv_suite(opt);
    const VerifyReport conv = run_conv_suite(opt);
    rep.cells.insert(rep.cells.end(), conv.cells.begin(), conv.cells.end());
    return rep;
}

}  // namespace helinear
