#pragma once

// Summation kernels, materialized as full signals.  Everything reduces to
// weighted sums of characters via the closed coefficient forms
//
//   D_n  = sum_{j<n} psi_j
//   K_n  = (1/n) sum_{k=1..n} D_k            = (1/n)   sum_{j<n} (n-j)    psi_j
//   F_n  = (1/Q_n) sum_{k<n} q_k D_k         = (1/Q_n) sum_{j<n-1} (Q_n - Q_{j+1}) psi_j
//   tail = (1/Q_n) sum_{j=start..n-1} q_j D_j
//
// F_n is the kernel of the T mean: T_n f = f (*) F_n, with (*) the group
// convolution below.  Convolution is evaluated straight from its definition;
// the convolution theorem against the fast transforms is a test concern.

#include <algorithm>
#include <vector>

#include "vilenkin/signal.hpp"
#include "vilenkin/transform.hpp"
#include "vilenkin/weights.hpp"

namespace vilenkin {

namespace detail {

// sum over j of coeff(j) * psi_j as one dense accumulation pass.
template <class Coeff>
Signal character_sum(const GroupSpec& spec, index_t count, Coeff&& coeff) {
    Signal out(spec);
    for (index_t j = 0; j < count; ++j) {
        const double c = coeff(j);
        if (c == 0.0) continue;
        for (index_t x = 0; x < spec.size(); ++x) out[x] += c * vilenkin_at(spec, j, x);
    }
    return out;
}

}  // namespace detail

/// Dirichlet kernel D_n; D_0 = 0 and D_n(0) = n.
inline Signal dirichlet(const GroupSpec& spec, index_t n) {
    if (n < 0 || n > spec.size())
        throw std::out_of_range("dirichlet: order outside [0, M_N]");
    return detail::character_sum(spec, n, [](index_t) { return 1.0; });
}

/// Fejer kernel K_n = (1/n) sum_{k=1..n} D_k; K_n(0) = (n+1)/2.
inline Signal fejer_kernel(const GroupSpec& spec, index_t n) {
    if (n < 1 || n > spec.size())
        throw std::out_of_range("fejer_kernel: order outside [1, M_N]");
    const double inv = 1.0 / static_cast<double>(n);
    return detail::character_sum(spec, n,
                                 [&](index_t j) { return static_cast<double>(n - j) * inv; });
}

/// T-mean kernel F_n = (1/Q_n) sum_{k=0}^{n-1} q_k D_k.  Orders past M_N are
/// allowed: partial sums S_k with k >= M_N reproduce the signal, i.e. D_k
/// collapses to M_N * 1_{I_N}, and the spectral coefficient formula below is
/// unchanged -- only the number of live characters is capped at M_N.
inline Signal t_kernel(const GroupSpec& spec, const WeightSeq& w, index_t n) {
    if (n < 1) throw std::out_of_range("t_kernel: order must be >= 1");
    if (n > w.length()) throw std::out_of_range("t_kernel: order exceeds materialized weights");
    const double Qn = w.Q(n);
    if (!(Qn > 0.0)) throw std::invalid_argument("t_kernel: degenerate weights, Q_n = 0");
    return detail::character_sum(
        spec, std::min<index_t>(n - 1, spec.size()),
        [&](index_t j) { return (Qn - w.Q(j + 1)) / Qn; });
}

/// Upper slice of the T kernel: (1/Q_n) sum_{j=start}^{n-1} q_j D_j.
/// start = 0 recovers t_kernel; splitting at start = M_{N'} isolates the
/// part of a mean that acts on frequencies past an atom's support scale.
inline Signal dirichlet_tail_kernel(const GroupSpec& spec, const WeightSeq& w, index_t n,
                                    index_t start) {
    if (n < 1) throw std::out_of_range("dirichlet_tail_kernel: order must be >= 1");
    if (start < 0 || start >= n)
        throw std::out_of_range("dirichlet_tail_kernel: start must lie in [0, n)");
    if (n > w.length())
        throw std::out_of_range("dirichlet_tail_kernel: order exceeds materialized weights");
    const double Qn = w.Q(n);
    if (!(Qn > 0.0))
        throw std::invalid_argument("dirichlet_tail_kernel: degenerate weights, Q_n = 0");
    return detail::character_sum(spec, std::min<index_t>(n - 1, spec.size()), [&](index_t j) {
        return (Qn - w.Q(std::max(start, j + 1))) / Qn;
    });
}

/// Group convolution (f (*) g)(x) = integral of f(t) g(x - t) d mu(t),
/// evaluated from the definition in O(M_N^2) point operations.
inline Signal convolve(const Signal& f, const Signal& g) {
    require_same_spec(f.spec, g.spec, "convolve");
    const GroupSpec& spec = f.spec;
    Signal out(spec);
    const double inv = 1.0 / static_cast<double>(spec.size());
    for (index_t x = 0; x < spec.size(); ++x) {
        cplx acc{};
        for (index_t t = 0; t < spec.size(); ++t) acc += f[t] * g[spec.sub(x, t)];
        out[x] = acc * inv;
    }
    return out;
}

struct KernelNormRow {
    index_t n = 0;
    double l1 = 0.0;
    double max_abs = 0.0;
};

namespace detail {

// Shared incremental L1 sweep over kernel orders 1..n_end.  `weight_at(k)`
// is the coefficient of D_k; the normalizer at order n is `norm_at(n)`.
// Orders past M_N use the level-N representative of D_k, which is
// D_{M_N} = M_N 1_{I_N} (a point mass at 0): convolving with it is the
// identity on level-N signals, exactly as S_k f = f for k >= M_N.
template <typename WeightAt, typename NormAt>
std::vector<KernelNormRow> kernel_norm_sweep(const GroupSpec& spec, index_t n_end,
                                             WeightAt&& weight_at, NormAt&& norm_at) {
    if (n_end < 1) throw std::out_of_range("kernel_norm_sweep: empty order range");
    const index_t size = spec.size();
    std::vector<cplx> D(static_cast<std::size_t>(size), cplx{});
    std::vector<cplx> acc(static_cast<std::size_t>(size), cplx{});
    std::vector<KernelNormRow> rows;
    rows.reserve(static_cast<std::size_t>(n_end));
    double point_mass = 0.0;  // coefficient of M_N 1_{I_N}, orders past M_N
    for (index_t n = 1; n <= n_end; ++n) {
        const index_t k = n - 1;  // fold in q_k D_k
        const double qk = weight_at(k);
        if (k < size) {
            if (k > 0)  // D_0 = 0
                for (index_t x = 0; x < size; ++x)
                    acc[static_cast<std::size_t>(x)] += qk * D[static_cast<std::size_t>(x)];
            for (index_t x = 0; x < size; ++x)
                D[static_cast<std::size_t>(x)] += vilenkin_at(spec, k, x);
        } else {
            point_mass += qk;
        }
        const double norm = norm_at(n);
        if (!(norm > 0.0)) continue;
        double l1 = 0.0, mx = 0.0;
        for (index_t x = 0; x < size; ++x) {
            cplx v = acc[static_cast<std::size_t>(x)];
            if (x == 0) v += point_mass * static_cast<double>(size);
            const double a = std::abs(v) / norm;
            l1 += a;
            if (a > mx) mx = a;
        }
        rows.push_back({n, l1 / static_cast<double>(size), mx});
    }
    return rows;
}

}  // namespace detail

/// L1 norms and sup norms of the Fejer kernels K_n = (1/n) sum_{k<=n} D_k
/// over 1 <= n <= n_end; n may exceed M_N (see the sweep note above).
/// K_n needs the accumulator one order ahead of the F_n layout (its sum is
/// inclusive of D_n), so the sweep runs to n_end + 1 and rows are relabeled.
inline std::vector<KernelNormRow> fejer_kernel_norms(const GroupSpec& spec, index_t n_end) {
    std::vector<KernelNormRow> rows = detail::kernel_norm_sweep(
        spec, n_end + 1, [](index_t) { return 1.0; },
        [](index_t order) { return static_cast<double>(order - 1); });
    for (KernelNormRow& r : rows) r.n -= 1;
    return rows;
}

/// Same for the T kernels F_n = (1/Q_n) sum_{k<n} q_k D_k.  Orders with
/// Q_n = 0 are skipped.
inline std::vector<KernelNormRow> t_kernel_norms(const GroupSpec& spec, const WeightSeq& w,
                                                 index_t n_end) {
    if (n_end > w.length())
        throw std::out_of_range("t_kernel_norms: orders exceed materialized weights");
    return detail::kernel_norm_sweep(
        spec, n_end, [&](index_t k) { return w.q(k); }, [&](index_t n) { return w.Q(n); });
}

}  // namespace vilenkin
