// Copyright 2026 The helinear Authors
// SPDX-License-Identifier: Apache-2.0

/// \file cost.hpp
/// \brief Operation counts, per-operation cost model, and the running cost meter.

#pragma once

#include <atomic>
#include <cstdint>

#include "helinear/errors.hpp"

namespace helinear {

/// How rotations are reported.
///
/// `table2` keeps full Perms, DecPerms and HstPerms apart. `table7` additionally
/// books every full Perm as one DecPerm plus one HstPerm, the convention of the
/// convolution complexity tables.
enum class ReportView { table2, table7 };

struct OpCounts {
    std::uint64_t perm = 0;
    std::uint64_t dec_perm = 0;
    std::uint64_t hst_perm = 0;
    std::uint64_t sc_mult = 0;
    std::uint64_t add = 0;
    ReportView view = ReportView::table2;

    OpCounts in_view(ReportView target) const {
        OpCounts out = *this;
        if (view == target) return out;
        if (target == ReportView::table7) {
            out.dec_perm += perm;
            out.hst_perm += perm;
        } else {
            out.dec_perm -= perm;
            out.hst_perm -= perm;
        }
        out.view = target;
        return out;
    }

    OpCounts &operator+=(const OpCounts &o) {
        const OpCounts rhs = o.in_view(view);
        perm += rhs.perm;
        dec_perm += rhs.dec_perm;
        hst_perm += rhs.hst_perm;
        sc_mult += rhs.sc_mult;
        add += rhs.add;
        return *this;
    }

    friend OpCounts operator+(OpCounts a, const OpCounts &b) { return a += b; }

    /// Component-wise difference; both operands are brought to a's view first.
    friend OpCounts operator-(const OpCounts &a, const OpCounts &b) {
        const OpCounts rhs = b.in_view(a.view);
        return {a.perm - rhs.perm,         a.dec_perm - rhs.dec_perm, a.hst_perm - rhs.hst_perm,
                a.sc_mult - rhs.sc_mult,   a.add - rhs.add,           a.view};
    }

    friend OpCounts operator*(OpCounts a, std::uint64_t k) {
        a.perm *= k;
        a.dec_perm *= k;
        a.hst_perm *= k;
        a.sc_mult *= k;
        a.add *= k;
        return a;
    }

    bool operator==(const OpCounts &) const = default;
};

/// Per-event cost in milliseconds.
///
/// Defaults reproduce the measured 2x2048 product: 11 rotations for 1.96 ms,
/// 2 products for 0.01 ms, 11 additions for 0.037 ms. The DecPerm/HstPerm split
/// of a rotation is 0.6/0.4; only their sum is pinned by measurement.
struct CostModel {
    double t_perm = 0.178;
    double t_scmult = 0.005;
    double t_add = 0.0034;
    double t_decperm = 0.178 * 0.6;
    double t_hstperm = 0.178 * 0.4;

    void validate() const {
        if (t_perm < 0 || t_scmult < 0 || t_add < 0 || t_decperm < 0 || t_hstperm < 0) {
            throw ParameterError("cost model entries must be non-negative");
        }
    }

    bool operator==(const CostModel &) const = default;
};

/// Weighted operation cost in milliseconds. Counts in the table7 view are
/// converted back so each full Perm is priced once.
inline double estimate_time(const OpCounts &counts, const CostModel &model) {
    const OpCounts c = counts.in_view(ReportView::table2);
    return static_cast<double>(c.perm) * model.t_perm + static_cast<double>(c.dec_perm) * model.t_decperm +
           static_cast<double>(c.hst_perm) * model.t_hstperm + static_cast<double>(c.sc_mult) * model.t_scmult +
           static_cast<double>(c.add) * model.t_add;
}

/// Running counters of homomorphic events. Counters are atomic, so one meter may
/// be shared by threads; they only ever increase.
class CostMeter {
  public:
    explicit CostMeter(CostModel model = {}) : model_(model) { model_.validate(); }

    CostMeter(const CostMeter &other) : model_(other.model_) { absorb(other.counts()); }
    CostMeter &operator=(const CostMeter &) = delete;

    void record_perm(std::uint64_t k = 1) { full_perm_.fetch_add(k, std::memory_order_relaxed); }
    void record_dec_perm(std::uint64_t k = 1) { dec_perm_.fetch_add(k, std::memory_order_relaxed); }
    void record_hst_perm(std::uint64_t k = 1) { hst_perm_.fetch_add(k, std::memory_order_relaxed); }
    void record_sc_mult(std::uint64_t k = 1) { sc_mult_.fetch_add(k, std::memory_order_relaxed); }
    void record_add(std::uint64_t k = 1) { add_.fetch_add(k, std::memory_order_relaxed); }

    /// Adds another meter's (or a prediction's) counts to this one.
    void absorb(const OpCounts &c) {
        const OpCounts raw = c.in_view(ReportView::table2);
        record_perm(raw.perm);
        record_dec_perm(raw.dec_perm);
        record_hst_perm(raw.hst_perm);
        record_sc_mult(raw.sc_mult);
        record_add(raw.add);
    }

    OpCounts counts(ReportView view = ReportView::table2) const {
        OpCounts raw{full_perm_.load(std::memory_order_relaxed), dec_perm_.load(std::memory_order_relaxed),
                     hst_perm_.load(std::memory_order_relaxed),  sc_mult_.load(std::memory_order_relaxed),
                     add_.load(std::memory_order_relaxed),       ReportView::table2};
        return raw.in_view(view);
    }

    const CostModel &model() const { return model_; }
    double estimated_ms() const { return estimate_time(counts(), model_); }

  private:
    CostModel model_;
    std::atomic<std::uint64_t> full_perm_{0};
    std::atomic<std::uint64_t> dec_perm_{0};
    std::atomic<std::uint64_t> hst_perm_{0};
    std::atomic<std::uint64_t> sc_mult_{0};
    std::atomic<std::uint64_t> add_{0};
};

}  // namespace helinear
