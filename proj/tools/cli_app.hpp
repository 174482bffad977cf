// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage, parse or parameter error.

#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "helinear/analytics.hpp"
#include "helinear/conv_schemes.hpp"
#include "helinear/mv_schemes.hpp"
#include "helinear/network.hpp"
#include "helinear/oracle.hpp"
#include "helinear/verify.hpp"
#include "report.hpp"

#ifndef HELINEAR_NETWORK_DIR
#define HELINEAR_NETWORK_DIR "networks"
#endif

namespace helinear::cli {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

struct CommonOptions {
    std::uint64_t seed = 7;
    std::optional<std::size_t> n;
    std::optional<Residue> p;
    std::string format = "csv";
    std::string out;
    std::string config;
};

inline void add_common(CLI::App *cmd, CommonOptions &o) {
    cmd->add_option("--seed", o.seed, "RNG seed for data and share masks")->capture_default_str();
    cmd->add_option("--n", o.n, "slot count (power of two)");
    cmd->add_option("--p", o.p, "plaintext modulus (prime)");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json", "markdown"}))
        ->capture_default_str();
    cmd->add_option("--out", o.out, "write the report to this file instead of stdout");
    cmd->add_option("--config", o.config, "JSON calibration file (falls back to $GALA_COST_CONFIG)");
}

/// Config file, then command-line overrides.
inline Calibration resolve_calibration(const CommonOptions &o, std::string *source = nullptr) {
    std::string path = o.config;
    if (path.empty()) {
        if (const char *env = std::getenv("GALA_COST_CONFIG"); env != nullptr) path = env;
    }
    Calibration c = path.empty() ? Calibration{} : load_calibration(path);
    if (source != nullptr) *source = path.empty() ? "defaults" : path;
    if (o.n) c.params.n = *o.n;
    if (o.p) c.params.p = *o.p;
    c.refresh_budget();
    c.validate();
    return c;
}

inline Format parse_format(const std::string &s) {
    if (s == "json") return Format::json;
    if (s == "markdown") return Format::markdown;
    return Format::csv;
}

inline MvDims parse_dims(const std::string &s, std::size_t n) {
    static const std::regex re(R"(^(\d+)x(\d+)$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw ParameterError("--dims expects n_oxn_i, e.g. 16x128; got '" + s + "'");
    MvDims d{std::stoul(m[1]), std::stoul(m[2]), n};
    d.validate();
    return d;
}

/// "16x16@128,3x3@64": image u_w x u_h with c_i channels, k_w x k_h kernels with c_o outputs.
inline ConvShape parse_conv(const std::string &s) {
    static const std::regex re(R"(^(\d+)x(\d+)@(\d+),(\d+)x(\d+)@(\d+)$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) {
        throw ParameterError("--conv expects u_wxu_h@c_i,k_wxk_h@c_o, e.g. 16x16@128,3x3@128; got '" + s + "'");
    }
    ConvShape c{std::stoul(m[1]), std::stoul(m[2]), std::stoul(m[3]), std::stoul(m[6]), std::stoul(m[4]),
                std::stoul(m[5])};
    c.validate_kernel();
    return c;
}

inline std::string conv_label(const ConvShape &s) {
    return std::to_string(s.u_w) + "x" + std::to_string(s.u_h) + "@" + std::to_string(s.c_i) + "," +
           std::to_string(s.k_w) + "x" + std::to_string(s.k_h) + "@" + std::to_string(s.c_o);
}

inline std::vector<Residue> draw(std::mt19937_64 &rng, std::size_t count, Residue p) {
    std::uniform_int_distribution<Residue> dist(0, p - 1);
    std::vector<Residue> v(count);
    for (auto &x : v) x = dist(rng);
    return v;
}

inline void emit(const Table &t, const CommonOptions &o, std::ostream &out) {
    const std::string text = t.render(parse_format(o.format));
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ParameterError("cannot write " + o.out);
    f << text;
}

inline void append_counts(std::vector<nlohmann::json> &row, const OpCounts &c) {
    row.insert(row.end(), {c.dec_perm, c.hst_perm, c.perm, c.sc_mult, c.add});
}

// mv-bench -------------------------------------------------------------------

inline int cmd_mv_bench(const CommonOptions &o, const std::vector<std::string> &dims_arg, std::ostream &out) {
    const Calibration cal = resolve_calibration(o);
    const std::size_t n = cal.params.n;
    std::vector<MvDims> dims;
    for (const auto &s : dims_arg.empty() ? std::vector<std::string>{"1x2048", "2x1024", "16x128"} : dims_arg) {
        dims.push_back(parse_dims(s, n));
    }
    const MockBackend be(cal.params);
    std::mt19937_64 rng(o.seed);
    Table t({"n_o", "n_i", "n", "scheme", "dec_perm", "hst_perm", "perm", "sc_mult", "add", "est_ms", "noise",
             "matches"});
    bool ok = true;
    for (const MvDims &d : dims) {
        std::vector<std::vector<Residue>> w(d.n_o);
        for (auto &row : w) row = draw(rng, d.n_i, be.modulus());
        const auto x = draw(rng, d.n_i, be.modulus());
        const MvTask task(w, n, be.modulus());
        const auto want = oracle::dot_mod_p(oracle::DenseMatrix(w, be.modulus()), x);
        for (MvScheme s : {MvScheme::naive, MvScheme::diagonal, MvScheme::gazelle, MvScheme::gala}) {
            ShareRng share_rng(rng());
            CostMeter meter(cal.cost);
            const auto res = run_mv(be, s, task, x, share_rng, meter);
            const bool match = res.reconstruct() == want && res.counts == count_mv(s, d) &&
                               res.noise() == predict_mv_noise(s, d.n_i, d.n_o, cal.params);
            ok = ok && match;
            std::vector<nlohmann::json> row{d.n_o, d.n_i, n, std::string(to_string(s))};
            append_counts(row, res.counts);
            row.insert(row.end(), {estimate_time(res.counts, cal.cost), res.noise(), match ? "yes" : "no"});
            t.add_row(std::move(row));
        }
    }
    emit(t, o, out);
    return ok ? kOk : kVerifyFailed;
}

// conv-bench -----------------------------------------------------------------

inline int cmd_conv_bench(const CommonOptions &o, const std::vector<std::string> &conv_arg, bool execute,
                          const std::string &view, std::ostream &out) {
    const Calibration cal = resolve_calibration(o);
    const std::size_t n = cal.params.n;
    std::vector<ConvShape> shapes;
    for (const auto &s : conv_arg.empty() ? std::vector<std::string>{"16x16@128,1x1@128", "16x16@2048,1x1@512",
                                                                     "16x16@128,3x3@128", "16x16@2048,5x5@64"}
                                          : conv_arg) {
        shapes.push_back(parse_conv(s));
    }
    const ReportView rv = view == "table2" ? ReportView::table2 : ReportView::table7;
    const MockBackend be(cal.params);
    std::mt19937_64 rng(o.seed);
    Table t({"layer", "n", "scheme", "dec_perm", "hst_perm", "perm", "sc_mult", "add", "est_ms", "mode"});
    bool ok = true;
    for (const ConvShape &s : shapes) {
        s.validate(n);
        std::optional<ConvTask> task;
        ChannelImages images;
        oracle::ConvDims od{s.u_w, s.u_h, s.c_i, s.c_o, s.k_w, s.k_h};
        std::vector<std::vector<Residue>> want;
        if (execute) {
            KernelBank bank(s.c_o, std::vector<std::vector<Residue>>(s.c_i));
            for (auto &b : bank) {
                for (auto &f : b) f = draw(rng, s.kernel_size(), be.modulus());
            }
            images.resize(s.c_i);
            for (auto &img : images) img = draw(rng, s.image_size(), be.modulus());
            want = oracle::conv2d_mod_p(od, bank, images, be.modulus());
            task.emplace(s, std::move(bank), n, be.modulus());
        }
        for (ConvScheme scheme : {ConvScheme::gazelle, ConvScheme::gala}) {
            OpCounts c = count_conv(scheme, s, n);
            if (execute) {
                CostMeter meter(cal.cost);
                const auto res = run_conv(be, scheme, *task, images, meter);
                ok = ok && res.channels == want && res.counts == c;
                c = res.counts;
            }
            std::vector<nlohmann::json> row{conv_label(s), n, std::string(to_string(scheme))};
            append_counts(row, c.in_view(rv));
            row.insert(row.end(), {estimate_time(c, cal.cost), execute ? "executed" : "analytic"});
            t.add_row(std::move(row));
        }
    }
    emit(t, o, out);
    return ok ? kOk : kVerifyFailed;
}

// noise ----------------------------------------------------------------------

inline int cmd_noise(const CommonOptions &o, std::ostream &out) {
    const Calibration cal = resolve_calibration(o);
    const std::size_t n = cal.params.n;
    const MockBackend be(cal.params);
    std::mt19937_64 rng(o.seed);
    Table t({"kind", "shape", "n", "scheme", "predicted", "measured", "budget_bits_left", "matches"});
    bool ok = true;
    auto add_row = [&](const char *kind, const std::string &shape, const std::string &scheme, double predicted,
                       double measured) {
        const bool match = predicted == measured;
        ok = ok && match;
        t.add_row({kind, shape, n, scheme, predicted, measured, std::log2(cal.params.noise_budget / measured),
                   match ? "yes" : "no"});
    };
    for (auto [n_o, n_i] : mv_grid()) {
        if (n_i > n) continue;
        std::vector<std::vector<Residue>> w(n_o);
        for (auto &row : w) row = draw(rng, n_i, be.modulus());
        const auto x = draw(rng, n_i, be.modulus());
        const MvTask task(w, n, be.modulus());
        for (MvScheme s : {MvScheme::naive, MvScheme::diagonal, MvScheme::gazelle, MvScheme::gala}) {
            ShareRng share_rng(rng());
            CostMeter meter(cal.cost);
            const auto res = run_mv(be, s, task, x, share_rng, meter);
            add_row("mv", std::to_string(n_o) + "x" + std::to_string(n_i), std::string(to_string(s)),
                    predict_mv_noise(s, n_i, n_o, cal.params), res.noise());
        }
    }
    for (const ConvShape &s : {ConvShape{16, 16, 128, 128, 1, 1}, ConvShape{16, 16, 128, 128, 3, 3}}) {
        if (s.image_size() > n) continue;
        KernelBank bank(s.c_o, std::vector<std::vector<Residue>>(s.c_i));
        for (auto &b : bank) {
            for (auto &f : b) f = draw(rng, s.kernel_size(), be.modulus());
        }
        ChannelImages images(s.c_i);
        for (auto &img : images) img = draw(rng, s.image_size(), be.modulus());
        const ConvTask task(s, std::move(bank), n, be.modulus());
        for (ConvScheme scheme : {ConvScheme::gazelle, ConvScheme::gala}) {
            CostMeter meter(cal.cost);
            const auto res = run_conv(be, scheme, task, images, meter);
            add_row("conv", conv_label(s), std::string(to_string(scheme)), predict_conv_noise(scheme, s, cal.params),
                    res.noise());
        }
    }
    emit(t, o, out);
    return ok ? kOk : kVerifyFailed;
}

// verify ---------------------------------------------------------------------

inline int cmd_verify(const CommonOptions &o, std::ostream &out) {
    const Calibration cal = resolve_calibration(o);
    VerifyOptions opt;
    opt.seed = o.seed;
    opt.p = cal.params.p;
    const VerifyReport rep = run_verification(opt);
    Table t({"suite", "scheme", "shape", "n", "cases", "failures", "status", "note"});
    for (const auto &c : rep.cells) {
        t.add_row({c.suite, c.scheme, c.shape, c.n, c.cases, c.failures, c.ok() ? "pass" : "FAIL", c.first_failure});
    }
    emit(t, o, out);
    return rep.ok() ? kOk : kVerifyFailed;
}

// profile --------------------------------------------------------------------

inline std::string find_network(const std::string &name) {
    namespace fs = std::filesystem;
    if (fs::exists(name)) return name;
    const fs::path shipped = fs::path(HELINEAR_NETWORK_DIR) / name;
    if (fs::exists(shipped)) return shipped.string();
    if (fs::exists(shipped.string() + ".net")) return shipped.string() + ".net";
    throw ParameterError("network file not found: " + name);
}

inline int cmd_profile(const CommonOptions &o, const std::string &network, const std::string &mode,
                       std::ostream &out) {
    const Calibration cal = resolve_calibration(o);
    const auto specs = load_network(find_network(network));
    const ProfileReport rep = profile_network(specs, cal.params, cal.cost,
                                              mode == "executed" ? ProfileMode::executed : ProfileMode::analytic,
                                              o.seed);
    Table t({"layer_index", "kind", "scheme", "dec_perm", "hst_perm", "perm", "sc_mult", "add", "est_ms", "cum_ms",
             "speedup"});
    for (const auto &l : rep.layers) {
        const std::string kind(to_string(l.spec.kind));
        std::vector<nlohmann::json> gz{l.index, kind, "gazelle"};
        append_counts(gz, l.gazelle);
        gz.insert(gz.end(), {l.gazelle_ms, l.gazelle_cum_ms, 1.0});
        t.add_row(std::move(gz));
        std::vector<nlohmann::json> ga{l.index, kind, "gala"};
        append_counts(ga, l.gala);
        ga.insert(ga.end(), {l.gala_ms, l.gala_cum_ms, l.speedup()});
        t.add_row(std::move(ga));
    }
    emit(t, o, out);
    return kOk;
}

// calibrate ------------------------------------------------------------------

inline int cmd_calibrate(const CommonOptions &o, std::ostream &out) {
    std::string source;
    const Calibration cal = resolve_calibration(o, &source);
    Table t({"key", "value"});
    t.add_row({"source", source});
    t.add_row({"t_perm", cal.cost.t_perm});
    t.add_row({"t_scmult", cal.cost.t_scmult});
    t.add_row({"t_add", cal.cost.t_add});
    t.add_row({"t_decperm", cal.cost.t_decperm});
    t.add_row({"t_hstperm", cal.cost.t_hstperm});
    t.add_row({"n", cal.params.n});
    t.add_row({"p", cal.params.p});
    t.add_row({"q_bits", cal.params.q_bits});
    t.add_row({"sigma", cal.params.sigma});
    t.add_row({"eta0", cal.params.eta0});
    t.add_row({"eta_mult", cal.params.eta_mult});
    t.add_row({"eta_rot", cal.params.eta_rot});
    t.add_row({"noise_budget", cal.params.noise_budget});
    emit(t, o, out);
    return kOk;
}

// entry point ----------------------------------------------------------------

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Operation-count, noise and oracle harness for packed HE linear layers", "helinear"};
    app.require_subcommand(1);

    CommonOptions common;
    std::vector<std::string> dims;
    std::vector<std::string> convs;
    bool execute = false;
    std::string view = "table7";
    std::string network;
    std::string mode = "analytic";

    auto *mv = app.add_subcommand("mv-bench", "matrix-vector counts for every scheme");
    add_common(mv, common);
    mv->add_option("--dims", dims, "n_oxn_i, repeatable (default 1x2048 2x1024 16x128)");

    auto *conv = app.add_subcommand("conv-bench", "convolution counts for both MIMO schemes");
    add_common(conv, common);
    conv->add_option("--conv", convs, "u_wxu_h@c_i,k_wxk_h@c_o, repeatable");
    conv->add_flag("--execute", execute, "run the schemes and report metered counts");
    conv->add_option("--view", view, "count view")->check(CLI::IsMember({"table2", "table7"}))->capture_default_str();

    auto *noise = app.add_subcommand("noise", "predicted and measured noise per scheme");
    add_common(noise, common);

    auto *verify = app.add_subcommand("verify", "oracle, count and noise checks over the dimension grid");
    add_common(verify, common);

    auto *profile = app.add_subcommand("profile", "per-layer profile of a network file");
    add_common(profile, common);
    profile->add_option("--network", network, "network file (searched in the shipped networks too)")->required();
    profile->add_option("--mode", mode, "count source")
        ->check(CLI::IsMember({"analytic", "executed"}))
        ->capture_default_str();

    auto *calibrate = app.add_subcommand("calibrate", "print the effective cost model and parameters");
    add_common(calibrate, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (mv->parsed()) return cmd_mv_bench(common, dims, out);
        if (conv->parsed()) return cmd_conv_bench(common, convs, execute, view, out);
        if (noise->parsed()) return cmd_noise(common, out);
        if (verify->parsed()) return cmd_verify(common, out);
        if (profile->parsed()) return cmd_profile(common, network, mode, out);
        if (calibrate->parsed()) return cmd_calibrate(common, out);
    } catch (const VerificationError &e) {
        err << "verification failed: " << e.what() << "\n";
        return kVerifyFailed;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::out_of_range &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace helinear::cli
