#pragma once

// Summability means of character expansions.  Two engines cover every family:
//
//   T mean       T_n f = (1/Q_n) * sum_{k=0}^{n-1} q_k S_k f
//   Norlund mean t_n f = (1/Q_n) * sum_{k=1}^{n}   q_{n-k} S_k f
//
// with Q_n = q_0 + ... + q_{n-1}.  Since S_0 f = 0 and S_k f = f once
// k >= M_N, both engines are defined for orders past the group size; the
// usual working cap is 4 * M_N.  Swapping the summation order turns either
// engine into a spectral multiplier:
//
//   T_n f       = sum_{j < M_N} fhat(j) * psi_j * (Q_n - Q_{j+1})+ / Q_n
//   t_n f       = sum_{j < min(n, M_N)} fhat(j) * psi_j * Q_{n-j} / Q_n
//
// which is how the single-order entry points evaluate.  Order sweeps (all
// n up to a cap against one fixed f) instead walk the prefix recurrence
// P_{n+1} = P_n + q_n S_n f so the whole sweep costs O(cap * M_N).

#include <functional>
#include <span>
#include <vector>

#include "vilenkin/signal.hpp"
#include "vilenkin/transform.hpp"
#include "vilenkin/weights.hpp"

namespace vilenkin {

namespace detail {

inline void require_order(const WeightSeq& w, index_t n, const char* where) {
    if (n < 1) throw std::out_of_range(std::string(where) + ": order must be at least 1");
    if (n > w.length())
        throw std::out_of_range(std::string(where) + ": order exceeds materialized weights");
    if (!(w.Q(n) > 0.0))
        throw std::invalid_argument(std::string(where) + ": degenerate weights, Q_n = 0 at n = " +
                                    std::to_string(n));
}

}  // namespace detail

/// T mean of order n (n may exceed M_N; weights must cover [0, n]).
inline Signal t_mean(const Signal& f, const WeightSeq& w, index_t n) {
    detail::require_order(w, n, "t_mean");
    Spectrum s = transform_fast(f);
    const double Qn = w.Q(n);
    for (index_t j = 0; j < s.size(); ++j)
        s[j] *= j <= n - 2 ? (Qn - w.Q(j + 1)) / Qn : 0.0;
    return inverse_transform(s);
}

/// Norlund mean of order n.
inline Signal norlund_mean(const Signal& f, const WeightSeq& w, index_t n) {
    detail::require_order(w, n, "norlund_mean");
    Spectrum s = transform_fast(f);
    const double Qn = w.Q(n);
    for (index_t j = 0; j < s.size(); ++j)
        s[j] *= j <= n - 1 ? w.Q(n - j) / Qn : 0.0;
    return inverse_transform(s);
}

/// Evaluates the mean a family descriptor names, routing to its engine.
inline Signal family_mean(const Signal& f, const Family& fam, const WeightSeq& w, index_t n) {
    return fam.engine() == MeanEngine::Norlund ? norlund_mean(f, w, n) : t_mean(f, w, n);
}

// Named wrappers.  Each materializes just enough weights and defers to the
// generic engine; nothing here has its own summation code path.

/// Classical Fejer (arithmetic) mean sigma_n f = (1/n) sum_{k=1..n} S_k f.
inline Signal fejer_mean(const Signal& f, index_t n) {
    return norlund_mean(f, make_weights({.kind = "fejer"}, n + 1), n);
}

inline Signal riesz_mean(const Signal& f, index_t n) {
    return t_mean(f, make_weights({.kind = "riesz"}, n + 1), n);
}

inline Signal u_mean(const Signal& f, double alpha, index_t n) {
    return t_mean(f, make_weights({.kind = "u", .alpha = alpha}, n + 1), n);
}

inline Signal v_mean(const Signal& f, double alpha, index_t n) {
    return t_mean(f, make_weights({.kind = "v", .alpha = alpha}, n + 1), n);
}

inline Signal b_mean(const Signal& f, double alpha, int beta, index_t n) {
    return t_mean(f, make_weights({.kind = "b", .alpha = alpha, .beta = beta}, n + 1), n);
}

inline Signal cesaro_mean(const Signal& f, double alpha, index_t n) {
    return norlund_mean(f, make_weights({.kind = "cesaro", .alpha = alpha}, n + 1), n);
}

inline Signal norlund_log_mean(const Signal& f, index_t n) {
    return norlund_mean(f, make_weights({.kind = "norlund_log"}, n + 1), n);
}

/// Dense table of character rows: row(j)[x] = psi_j(x).  Worth building once
/// per group when many order sweeps run against it; refuse sizes where the
/// quadratic table stops being a desk-scale object.
class CharacterTable {
public:
    static constexpr index_t kMaxSize = 2048;

    explicit CharacterTable(GroupSpec spec) : spec_(std::move(spec)) {
        if (spec_.size() > kMaxSize)
            throw std::invalid_argument("CharacterTable: group too large for a dense table");
        const index_t size = spec_.size();
        rows_.resize(static_cast<std::size_t>(size));
        for (index_t j = 0; j < size; ++j) {
            auto& row = rows_[static_cast<std::size_t>(j)];
            row.resize(static_cast<std::size_t>(size));
            for (index_t x = 0; x < size; ++x) row[static_cast<std::size_t>(x)] = vilenkin_at(spec_, j, x);
        }
    }

    const GroupSpec& spec() const noexcept { return spec_; }
    std::span<const cplx> row(index_t j) const {
        return rows_[static_cast<std::size_t>(j)];
    }

private:
    GroupSpec spec_;
    std::vector<std::vector<cplx>> rows_;
};

/// Walks T-mean numerators for n = 1..n_end against a fixed f.  For each n
/// with Q_n > 0 the callback receives (n, Q_n, P, tail) where the mean is
///
///     T_n f(x) = (P[x] + tail * f(x)) / Q_n.
///
/// Orders with Q_n = 0 (an empty weight window) are skipped.  Past n = M_N+1
/// the prefix P freezes and only the scalar tail coefficient moves, so long
/// sweeps spend most steps on a single fused pass.
template <class Callback>
void sweep_t_means(const CharacterTable& table, const Signal& f, const WeightSeq& w,
                   index_t n_end, Callback&& cb) {
    require_same_spec(table.spec(), f.spec, "sweep_t_means");
    if (n_end < 1 || n_end > w.length())
        throw std::out_of_range("sweep_t_means: order range outside materialized weights");
    const index_t size = f.size();
    const Spectrum fhat = transform_fast(f);
    std::vector<cplx> S(static_cast<std::size_t>(size), cplx{});  // S_{n-1} f
    std::vector<cplx> P(static_cast<std::size_t>(size), cplx{});  // P_n after the axpy
    const index_t dense_end = std::min<index_t>(n_end, size + 1);
    for (index_t n = 1; n <= dense_end; ++n) {
        const double qn1 = w.q(n - 1);
        if (qn1 != 0.0)
            for (index_t x = 0; x < size; ++x)
                P[static_cast<std::size_t>(x)] += qn1 * S[static_cast<std::size_t>(x)];
        if (w.Q(n) > 0.0) cb(n, w.Q(n), std::span<const cplx>(P), 0.0);
        if (n - 1 < size) {
            const cplx c = fhat[n - 1];
            if (c != cplx{}) {
                const std::span<const cplx> row = table.row(n - 1);
                for (index_t x = 0; x < size; ++x)
                    S[static_cast<std::size_t>(x)] += c * row[static_cast<std::size_t>(x)];
            }
        }
    }
    // Here S = f (all coefficients absorbed) and P = P_{M_N + 1}.
    const double Qfix = w.Q(dense_end);
    for (index_t n = dense_end + 1; n <= n_end; ++n)
        if (w.Q(n) > 0.0) cb(n, w.Q(n), std::span<const cplx>(P), w.Q(n) - Qfix);
}

/// Same walk for classical Fejer means: cb(n, n, PS, tail) with
/// sigma_n f(x) = (PS[x] + tail * f(x)) / n.
template <class Callback>
void sweep_fejer_means(const CharacterTable& table, const Signal& f, index_t n_end,
                       Callback&& cb) {
    require_same_spec(table.spec(), f.spec, "sweep_fejer_means");
    if (n_end < 1) throw std::out_of_range("sweep_fejer_means: empty order range");
    const index_t size = f.size();
    const Spectrum fhat = transform_fast(f);
    std::vector<cplx> S(static_cast<std::size_t>(size), cplx{});
    std::vector<cplx> PS(static_cast<std::size_t>(size), cplx{});  // S_1 + ... + S_n
    const index_t dense_end = std::min<index_t>(n_end, size);
    for (index_t n = 1; n <= dense_end; ++n) {
        const cplx c = fhat[n - 1];
        if (c != cplx{}) {
            const std::span<const cplx> row = table.row(n - 1);
            for (index_t x = 0; x < size; ++x)
                S[static_cast<std::size_t>(x)] += c * row[static_cast<std::size_t>(x)];
        }
        for (index_t x = 0; x < size; ++x)
            PS[static_cast<std::size_t>(x)] += S[static_cast<std::size_t>(x)];
        cb(n, static_cast<double>(n), std::span<const cplx>(PS), 0.0);
    }
    for (index_t n = dense_end + 1; n <= n_end; ++n)
        cb(n, static_cast<double>(n), std::span<const cplx>(PS),
           static_cast<double>(n - dense_end));
}

}  // namespace vilenkin
