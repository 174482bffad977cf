// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

/// \file network.hpp
/// \brief Layer-list parsing and per-layer profiling of a whole network under
/// both packed scheme families.
///
/// Network files hold one layer per line:
///
///     conv u_w u_h c_i k_w k_h c_o
///     fc n_i n_o
///     nonlinear <label>
///
/// '#' starts a comment. Linear layers are padded before profiling: conv images
/// to power-of-two sides, channels to multiples of c_n, and fc sizes to powers
/// of two. An fc layer wider than n is split into n-column blocks whose
/// partial products are added together.

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "helinear/analytics.hpp"
#include "helinear/conv_schemes.hpp"
#include "helinear/cost.hpp"
#include "helinear/errors.hpp"
#include "helinear/he_mock.hpp"
#include "helinear/layout.hpp"
#include "helinear/mv_schemes.hpp"
#include "helinear/oracle.hpp"
#include "helinear/sharing.hpp"

namespace helinear {

enum class LayerKind { conv, fc, nonlinear };

inline std::string_view to_string(LayerKind k) {
    switch (k) {
        case LayerKind::conv:
            return "conv";
        case LayerKind::fc:
            return "fc";
        case LayerKind::nonlinear:
            return "nonlinear";
    }
    return "?";
}

struct LayerSpec {
    LayerKind kind = LayerKind::nonlinear;
    ConvShape conv;        // conv only
    std::size_t n_i = 0;   // fc only
    std::size_t n_o = 0;   // fc only
    std::string label;     // nonlinear only
    std::size_t line = 0;  // source line, 0 when built in code

    bool is_linear() const { return kind != LayerKind::nonlinear; }

    static LayerSpec make_conv(const ConvShape &s) {
        LayerSpec l;
        l.kind = LayerKind::conv;
        l.conv = s;
        return l;
    }
    static LayerSpec make_fc(std::size_t n_i, std::size_t n_o) {
        LayerSpec l;
        l.kind = LayerKind::fc;
        l.n_i = n_i;
        l.n_o = n_o;
        return l;
    }
    static LayerSpec make_nonlinear(std::string label) {
        LayerSpec l;
        l.label = std::move(label);
        return l;
    }
};

namespace detail {

inline std::size_t parse_dim(const std::string &tok, std::size_t line) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError(line, "expected a positive integer, got '" + tok + "'");
    }
    std::size_t v = 0;
    try {
        v = std::stoul(tok);
    } catch (const std::exception &) {
        throw ParseError(line, "integer out of range: '" + tok + "'");
    }
    if (v == 0) throw ParseError(line, "dimensions must be positive");
    return v;
}

}  // namespace detail

inline std::vector<LayerSpec> parse_network(std::string_view text) {
    std::vector<LayerSpec> out;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream fields(raw);
        std::vector<std::string> tok;
        for (std::string t; fields >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        LayerSpec spec;
        spec.line = line;
        if (tok[0] == "conv") {
            if (tok.size() != 7) throw ParseError(line, "conv needs 6 fields: u_w u_h c_i k_w k_h c_o");
            spec.kind = LayerKind::conv;
            spec.conv = {detail::parse_dim(tok[1], line), detail::parse_dim(tok[2], line),
                         detail::parse_dim(tok[3], line), detail::parse_dim(tok[6], line),
                         detail::parse_dim(tok[4], line), detail::parse_dim(tok[5], line)};
            try {
                spec.conv.validate_kernel();
            } catch (const DimensionError &e) {
                throw ParseError(line, e.what());
            }
        } else if (tok[0] == "fc") {
            if (tok.size() != 3) throw ParseError(line, "fc needs 2 fields: n_i n_o");
            spec.kind = LayerKind::fc;
            spec.n_i = detail::parse_dim(tok[1], line);
            spec.n_o = detail::parse_dim(tok[2], line);
        } else if (tok[0] == "nonlinear") {
            if (tok.size() != 2) throw ParseError(line, "nonlinear needs exactly one label");
            spec.label = tok[1];
        } else {
            throw ParseError(line, "unknown layer kind '" + tok[0] + "'");
        }
        out.push_back(std::move(spec));
    }
    return out;
}

inline std::vector<LayerSpec> load_network(const std::string &path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open network file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_network(ss.str());
}

/// Conv layer with image sides rounded up to powers of two.
inline ConvShape padded_conv_shape(const ConvShape &s) {
    ConvShape out = s;
    out.u_w = next_power_of_two(s.u_w);
    out.u_h = next_power_of_two(s.u_h);
    return out;
}

/// Block decomposition of an fc layer: rb x cb blocks of bo x bi.
struct FcPlan {
    std::size_t bo = 1;
    std::size_t bi = 1;
    std::size_t rb = 1;
    std::size_t cb = 1;

    std::size_t padded_inputs() const { return bi * cb; }
    std::size_t padded_outputs() const { return bo * rb; }
};

inline FcPlan plan_fc(std::size_t n_i, std::size_t n_o, std::size_t n) {
    const std::size_t ni = next_power_of_two(n_i);
    const std::size_t no = next_power_of_two(n_o);
    FcPlan p;
    p.bi = std::min(ni, n);
    p.bo = std::min(no, p.bi);
    p.cb = ni / p.bi;
    p.rb = no / p.bo;
    return p;
}

/// Counts of one layer under the baseline and under GALA.
struct LayerCounts {
    OpCounts gazelle;
    OpCounts gala;
};

/// Closed-form counts of one layer under one scheme family.
inline OpCounts count_layer(const LayerSpec &l, bool gala, std::size_t n) {
    switch (l.kind) {
        case LayerKind::conv:
            return count_conv(gala ? ConvScheme::gala : ConvScheme::gazelle, padded_conv_shape(l.conv), n);
        case LayerKind::fc: {
            const FcPlan p = plan_fc(l.n_i, l.n_o, n);
            OpCounts c = count_mv(gala ? MvScheme::gala : MvScheme::gazelle, p.bi, p.bo, n) * (p.rb * p.cb);
            c.add += p.rb * (p.cb - 1);
            return c;
        }
        case LayerKind::nonlinear:
            break;
    }
    return {};
}

inline LayerCounts count_layer(const LayerSpec &l, std::size_t n) {
    return {count_layer(l, false, n), count_layer(l, true, n)};
}

enum class ProfileMode { analytic, executed };

/// Thrown when an executed layer disagrees with the plaintext oracle.
class VerificationError : public Error {
  public:
    using Error::Error;
};

namespace detail {

inline std::vector<Residue> random_residues(std::mt19937_64 &rng, std::size_t count, Residue p) {
    std::uniform_int_distribution<Residue> dist(0, p - 1);
    std::vector<Residue> v(count);
    for (auto &x : v) x = dist(rng);
    return v;
}

/// Runs one fc layer block by block under both schemes on the same data,
/// summing the column blocks of each row block homomorphically, and checks
/// every row block against the oracle.
inline LayerCounts execute_fc(const MockBackend &be, const LayerSpec &l, std::mt19937_64 &rng) {
    const std::size_t n = be.slot_count();
    const Residue p = be.modulus();
    const FcPlan plan = plan_fc(l.n_i, l.n_o, n);
    const MvScheme schemes[2] = {MvScheme::gazelle, MvScheme::gala};
    CostMeter meters[2];
    ShareRng share_rng(rng());
    const auto x = random_residues(rng, plan.padded_inputs(), p);
    for (std::size_t r = 0; r < plan.rb; ++r) {
        std::vector<MockCiphertext> partials[2];
        MvOutcome<MockCiphertext> last[2];
        std::vector<Residue> expected(plan.bo, 0);
        for (std::size_t c = 0; c < plan.cb; ++c) {
            std::vector<std::vector<Residue>> w(plan.bo);
            for (auto &row : w) row = random_residues(rng, plan.bi, p);
            const std::vector<Residue> xb(x.begin() + static_cast<std::ptrdiff_t>(c * plan.bi),
                                          x.begin() + static_cast<std::ptrdiff_t>((c + 1) * plan.bi));
            const MvTask task(w, n, p);
            const auto want = oracle::dot_mod_p(oracle::DenseMatrix(w, p), xb);
            for (std::size_t i = 0; i < plan.bo; ++i) expected[i] = add_mod(expected[i], want[i], p);
            for (int s = 0; s < 2; ++s) {
                last[s] = run_mv(be, schemes[s], task, xb, share_rng, meters[s]);
                if (last[s].reconstruct() != want) {
                    throw VerificationError(std::string(to_string(schemes[s])) + " fc block disagrees with oracle");
                }
                partials[s].push_back(last[s].output.front());
            }
        }
        if (plan.cb == 1) continue;
        for (int s = 0; s < 2; ++s) {
            MockCiphertext sum = partials[s].front();
            for (std::size_t c = 1; c < partials[s].size(); ++c) sum = be.add(sum, partials[s][c], meters[s]);
            const SlotVector folded = fold_ras(be.decrypt(sum), last[s].fold);
            for (std::size_t i = 0; i < plan.bo; ++i) {
                if (folded[last[s].slot_map[i]] != expected[i]) {
                    throw VerificationError(std::string(to_string(schemes[s])) + " fc row block sum disagrees");
                }
            }
        }
    }
    return {meters[0].counts(), meters[1].counts()};
}

inline LayerCounts execute_conv(const MockBackend &be, const LayerSpec &l, std::mt19937_64 &rng) {
    const std::size_t n = be.slot_count();
    const Residue p = be.modulus();
    const ConvShape s = padded_conv_shape(l.conv);
    KernelBank k(s.c_o, std::vector<std::vector<Residue>>(s.c_i));
    for (auto &bank : k) {
        for (auto &f : bank) f = random_residues(rng, s.kernel_size(), p);
    }
    ChannelImages images(s.c_i);
    for (auto &img : images) img = random_residues(rng, s.image_size(), p);
    const ConvTask task(s, k, n, p);
    const auto want = oracle::conv2d_mod_p({s.u_w, s.u_h, s.c_i, s.c_o, s.k_w, s.k_h}, k, images, p);
    LayerCounts out;
    for (ConvScheme scheme : {ConvScheme::gazelle, ConvScheme::gala}) {
        CostMeter meter;
        if (run_conv(be, scheme, task, images, meter).channels != want) {
            throw VerificationError(std::string(to_string(scheme)) + " conv layer disagrees with oracle");
        }
        (scheme == ConvScheme::gazelle ? out.gazelle : out.gala) = meter.counts();
    }
    return out;
}

}  // namespace detail

/// Runs one layer on random data under both schemes and returns the metered counts.
inline LayerCounts execute_layer(const MockBackend &be, const LayerSpec &l, std::mt19937_64 &rng) {
    switch (l.kind) {
        case LayerKind::conv:
            return detail::execute_conv(be, l, rng);
        case LayerKind::fc:
            return detail::execute_fc(be, l, rng);
        case LayerKind::nonlinear:
            break;
    }
    return {};
}

struct LayerProfile {
    std::size_t index = 0;
    LayerSpec spec;
    OpCounts gazelle;
    OpCounts gala;
    double gazelle_ms = 0;
    double gala_ms = 0;
    double gazelle_cum_ms = 0;
    double gala_cum_ms = 0;

    /// Baseline over GALA time; 1 for layers without HE work.
    double speedup() const { return gala_ms > 0 ? gazelle_ms / gala_ms : 1.0; }
};

struct ProfileReport {
    std::vector<LayerProfile> layers;
    OpCounts total_gazelle;
    OpCounts total_gala;

    double gazelle_ms() const { return layers.empty() ? 0 : layers.back().gazelle_cum_ms; }
    double gala_ms() const { return layers.empty() ? 0 : layers.back().gala_cum_ms; }
    double speedup() const { return gala_ms() > 0 ? gazelle_ms() / gala_ms() : 1.0; }

    /// Total Perm of the baseline over total Perm of GALA (table2 view).
    double perm_reduction() const {
        return total_gala.perm > 0 ? static_cast<double>(total_gazelle.perm) / static_cast<double>(total_gala.perm)
                                   : 0.0;
    }
};

/// Profiles every layer under both schemes. Executed mode runs each linear
/// layer on random data drawn from `seed` and throws VerificationError on any
/// oracle mismatch.
inline ProfileReport profile_network(const std::vector<LayerSpec> &specs, const HEParams &params,
                                     const CostModel &model, ProfileMode mode, std::uint64_t seed = 1) {
    params.validate();
    model.validate();
    const MockBackend be(params);
    std::mt19937_64 rng(seed);
    ProfileReport rep;
    double cum_gz = 0;
    double cum_ga = 0;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        LayerProfile lp;
        lp.index = i;
        lp.spec = specs[i];
        try {
            const LayerCounts c = mode == ProfileMode::analytic ? count_layer(specs[i], params.n)
                                                                : execute_layer(be, specs[i], rng);
            lp.gazelle = c.gazelle;
            lp.gala = c.gala;
        } catch (const DimensionError &e) {
            if (specs[i].line == 0) throw;
            throw ParseError(specs[i].line, e.what());
        }
        lp.gazelle_ms = estimate_time(lp.gazelle, model);
        lp.gala_ms = estimate_time(lp.gala, model);
        cum_gz += lp.gazelle_ms;
        cum_ga += lp.gala_ms;
        lp.gazelle_cum_ms = cum_gz;
        lp.gala_cum_ms = cum_ga;
        rep.total_gazelle += lp.gazelle;
        rep.total_gala += lp.gala;
        rep.layers.push_back(std::move(lp));
    }
    return rep;
}

}  // namespace helinear
