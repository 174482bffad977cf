// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

// Compares the two MIMO convolution schemes on one 8x8@64 -> 64 layer.

#include <iostream>
#include <random>

#include "helinear/helinear.hpp"

int main() {
    using namespace helinear;
    HEParams params;
    params.n = 1024;
    const MockBackend be(params);
    const Residue p = be.modulus();
    const ConvShape shape{8, 8, 64, 64, 3, 3};

    std::mt19937_64 rng(3);
    KernelBank kernels(shape.c_o, std::vector<std::vector<Residue>>(shape.c_i, std::vector<Residue>(9)));
    for (auto &bank : kernels) {
        for (auto &k : bank) {
            for (auto &v : k) v = rng() % p;
        }
    }
    ChannelImages images(shape.c_i, std::vector<Residue>(shape.image_size()));
    for (auto &img : images) {
        for (auto &v : img) v = rng() % p;
    }

    const ConvTask task(shape, kernels, params.n, p);
    for (ConvScheme s : {ConvScheme::gazelle, ConvScheme::gala}) {
        CostMeter meter;
        const auto out = run_conv(be, s, task, images, meter);
        const OpCounts c = out.counts.in_view(ReportView::table7);
        std::cout << to_string(s) << ": dec_perm " << c.dec_perm << ", hst_perm " << c.hst_perm << ", sc_mult "
                  << c.sc_mult << ", ~" << meter.estimated_ms() << " ms\n";
    }
}
