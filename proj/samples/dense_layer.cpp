// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

// A 16x128 dense layer on 2048 slots: the server multiplies the encrypted
// input, masks the result, and both sides finish the fold on their shares.

#include <iostream>
#include <random>

#include "helinear/helinear.hpp"

int main() {
    using namespace helinear;
    const MockBackend be{HEParams{}};
    const Residue p = be.modulus();

    std::mt19937_64 rng(42);
    std::vector<std::vector<Residue>> w(16, std::vector<Residue>(128));
    for (auto &row : w) {
        for (auto &v : row) v = rng() % p;
    }
    std::vector<Residue> x(128);
    for (auto &v : x) v = rng() % p;

    const MvTask task(w, be.slot_count(), p);
    ShareRng share_rng(7);
    for (MvScheme s : {MvScheme::gazelle, MvScheme::gala}) {
        CostMeter meter;
        const auto out = run_mv(be, s, task, x, share_rng, meter);
        const bool ok = out.reconstruct() == oracle::dot_mod_p(oracle::DenseMatrix(w, p), x);
        const OpCounts c = out.counts;
        std::cout << to_string(s) << ": perm " << c.perm << ", hst_perm " << c.hst_perm << ", sc_mult " << c.sc_mult
                  << ", add " << c.add << ", ~" << meter.estimated_ms() << " ms, noise " << out.noise()
                  << (ok ? ", shares reconstruct w.x\n" : ", MISMATCH\n");
    }
}
