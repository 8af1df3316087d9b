#pragma once

// Weighted maximal operators of summability means and the quantities the
// boundedness theory is made of.  The central object is
//
//     Tmax_p f(x) = sup_n |T_n f(x)| / w(n, p),
//     w(n, p)     = (n+1)^(1/p - 2) * log2(n+1)^(2 * floor(1/2 + p)),
//
// for 0 < p <= 1/2 (the log factor is active only at p = 1/2), together
// with the Fejer-dominated comparison, strong convergence sums, and the
// interval integral estimates behind the atomic decomposition:  for an atom
// supported on I = I_{N'} only the orders past M_{N'} act, and the relevant
// kernel slices integrate over I against bounds shaped like
// M_k * M_l / M_{N'}^2 or M_k * M_l / (n * M_{N'}) on the complement cells.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "vilenkin/hardy.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/summability.hpp"

namespace vilenkin {

/// Integer part of 1/2 + p: the log-power switch (0 below p = 1/2, 1 at it).
inline int log_power_switch(double p) { return static_cast<int>(std::floor(0.5 + p)); }

/// The order weight w(n, p); requires 0 < p <= 1/2 and n >= 1.
inline double mean_weight(index_t n, double p) {
    if (!(p > 0.0) || p > 0.5) throw std::invalid_argument("mean_weight: p must lie in (0, 1/2]");
    if (n < 1) throw std::out_of_range("mean_weight: order must be at least 1");
    const double base = std::pow(static_cast<double>(n + 1), 1.0 / p - 2.0);
    const int lp = 2 * log_power_switch(p);
    if (lp == 0) return base;
    const double lg = std::log2(static_cast<double>(n + 1));
    return base * std::pow(lg, lp);
}

/// Weight variants for the maximal operator: the critical weight, a weakened
/// version (smaller power or dropped log factor, for sharpness probes), or
/// no weight at all (for counter-family trends).
struct WeightRule {
    double p = 0.5;
    double exponent_drop = 0.0;  // subtracted from 1/p - 2
    bool drop_log = false;
    bool unweighted = false;

    static WeightRule critical(double p) { return {p, 0.0, false, false}; }
    static WeightRule weakened(double p, double eps) { return {p, eps, p >= 0.5, false}; }
    static WeightRule none(double p) { return {p, 0.0, false, true}; }

    double at(index_t n) const {
        if (unweighted) return 1.0;
        const double expo = 1.0 / p - 2.0 - exponent_drop;
        double w = std::pow(static_cast<double>(n + 1), expo);
        if (!drop_log) {
            const int lp = 2 * log_power_switch(p);
            if (lp != 0) w *= std::pow(std::log2(static_cast<double>(n + 1)), lp);
        }
        return w;
    }
};

namespace detail {

// Pointwise sup of |numerator(x)| * scale_n over a sweep, accumulated on
// squared magnitudes so the inner loop carries no sqrt.
class MaxAccumulator {
public:
    explicit MaxAccumulator(std::size_t size) : best2_(size, 0.0) {}

    void absorb(std::span<const cplx> P, double tail, std::span<const cplx> f, double scale) {
        const double s2 = scale * scale;
        if (tail == 0.0) {
            for (std::size_t x = 0; x < best2_.size(); ++x) {
                const double n2 = std::norm(P[x]) * s2;
                if (n2 > best2_[x]) best2_[x] = n2;
            }
        } else {
            for (std::size_t x = 0; x < best2_.size(); ++x) {
                const double n2 = std::norm(P[x] + tail * f[x]) * s2;
                if (n2 > best2_[x]) best2_[x] = n2;
            }
        }
    }

    std::vector<double> take() && {
        for (double& v : best2_) v = std::sqrt(v);
        return std::move(best2_);
    }

private:
    std::vector<double> best2_;
};

}  // namespace detail

/// Pointwise weighted maximal function sup_{1<=n<=n_end} |T_n f| / rule(n).
inline std::vector<double> maximal_op(const CharacterTable& table, const Signal& f,
                                      const WeightSeq& w, const WeightRule& rule,
                                      index_t n_end) {
    detail::MaxAccumulator acc(static_cast<std::size_t>(f.size()));
    sweep_t_means(table, f, w, n_end,
                  [&](index_t n, double Qn, std::span<const cplx> P, double tail) {
                      acc.absorb(P, tail, f.values, 1.0 / (Qn * rule.at(n)));
                  });
    return std::move(acc).take();
}

/// Same for the classical Fejer means sigma_n.
inline std::vector<double> fejer_maximal_op(const CharacterTable& table, const Signal& f,
                                            const WeightRule& rule, index_t n_end) {
    detail::MaxAccumulator acc(static_cast<std::size_t>(f.size()));
    sweep_fejer_means(table, f, n_end,
                      [&](index_t n, double Qn, std::span<const cplx> P, double tail) {
                          acc.absorb(P, tail, f.values, 1.0 / (Qn * rule.at(n)));
                      });
    return std::move(acc).take();
}

/// Pointwise comparison of the weighted maximal T mean against the weighted
/// maximal Fejer mean.  For non-increasing weights the summation-by-parts
/// bound gives Tmax <= Fejermax outright (the comparison factor is 1); for
/// non-decreasing weights the same argument leaves the factor
/// max_n (2 q_{n-1} (n-1) - (Q_n - q_0)) / Q_n, which the tail condition
/// keeps bounded.  Weights that are neither are out of scope.
struct DominationReport {
    bool applicable = false;
    double factor = 1.0;         // the comparison constant actually used
    double max_violation = 0.0;  // max_x (Tmax - factor * Fejermax), signed
    double max_ratio = 0.0;      // max_x Tmax / (factor * Fejermax), where defined
};

inline DominationReport domination_check(const CharacterTable& table, const Signal& f,
                                         const WeightSeq& w, double p, index_t n_end) {
    DominationReport rep;
    const Monotonicity mono = w.monotonicity();
    if (mono == Monotonicity::Neither) return rep;
    rep.applicable = true;
    rep.factor = 1.0;
    if (!is_non_increasing(mono)) {
        for (index_t n = 2; n <= n_end; ++n) {
            if (!(w.Q(n) > 0.0)) continue;
            const double c =
                (2.0 * w.q(n - 1) * static_cast<double>(n - 1) - (w.Q(n) - w.q(0))) / w.Q(n);
            if (c > rep.factor) rep.factor = c;
        }
    }
    const WeightRule rule = WeightRule::critical(p);
    const std::vector<double> tmax = maximal_op(table, f, w, rule, n_end);
    const std::vector<double> smax = fejer_maximal_op(table, f, rule, n_end);
    for (std::size_t x = 0; x < tmax.size(); ++x) {
        const double bound = rep.factor * smax[x];
        rep.max_violation = std::max(rep.max_violation, tmax[x] - bound);
        if (bound > 0.0) rep.max_ratio = std::max(rep.max_ratio, tmax[x] / bound);
    }
    return rep;
}

/// One strong-convergence partial sum.  Below p = 1/2 the series is
/// sum_n ||T_n f||_p^p / n^(2-2p); at p = 1/2 it is the log-averaged
/// (1/log2 n_end) sum_n ||T_n f||_{1/2}^{1/2} / n.  The ratio is against
/// ||f||_{H_p}^p, the scale the bounds are stated in.
struct StrongReport {
    double partial_sum = 0.0;
    double hardy_norm = 0.0;
    double ratio = 0.0;
};

namespace detail {

// |c|^p from |c|^2 with sqrt chains for the common exponents.
struct PowP {
    double p;
    double half_p;
    explicit PowP(double p_) : p(p_), half_p(p_ / 2.0) {}
    double operator()(double norm2) const {
        if (norm2 == 0.0) return 0.0;
        if (p == 0.5) return std::sqrt(std::sqrt(norm2));
        if (p == 0.25) return std::sqrt(std::sqrt(std::sqrt(norm2)));
        if (p == 1.0) return std::sqrt(norm2);
        return std::pow(norm2, half_p);
    }
};

}  // namespace detail

inline StrongReport strong_convergence_sum(const CharacterTable& table, const Signal& f,
                                           const WeightSeq& w, double p, index_t n_end) {
    if (!(p > 0.0) || p > 0.5)
        throw std::invalid_argument("strong_convergence_sum: p must lie in (0, 1/2]");
    const detail::PowP powp(p);
    const double inv_size = 1.0 / static_cast<double>(f.size());
    double sum = 0.0;
    sweep_t_means(table, f, w, n_end,
                  [&](index_t n, double Qn, std::span<const cplx> P, double tail) {
                      double acc = 0.0;
                      if (tail == 0.0) {
                          for (const cplx& v : P) acc += powp(std::norm(v));
                      } else {
                          for (std::size_t x = 0; x < P.size(); ++x)
                              acc += powp(std::norm(P[x] + tail * f.values[x]));
                      }
                      // ||T_n f||_p^p = (1/M) sum |P + tail f|^p / Q_n^p
                      const double norm_p = acc * inv_size / powp(Qn * Qn);
                      const double dn = static_cast<double>(n);
                      sum += p < 0.5 ? norm_p / std::pow(dn, 2.0 - 2.0 * p) : norm_p / dn;
                  });
    StrongReport rep;
    rep.partial_sum = p < 0.5 ? sum : sum / std::log2(static_cast<double>(n_end));
    rep.hardy_norm = hardy_quasinorm(f, p);
    rep.ratio = rep.partial_sum / std::pow(rep.hardy_norm, p);
    return rep;
}

/// Which slice of the T kernel an integral estimate looks at: the full
/// kernel F_n, or its tail past the support scale,
/// (1/Q_n) sum_{j >= M_{N'}} q_j D_j.
enum class KernelSlice { Tail, Full };

/// Shape of the bound on a complement cell (k, l) of level N': either
/// M_k M_l / M_{N'}^2 uniformly, or M_k M_l / (n M_{N'}) with the boundary
/// cells l = N' bounded by M_k / M_{N'}.
enum class BoundShape { Uniform, OrderDecay };

struct LemmaRow {
    index_t n = 0;
    int k = 0;
    int l = 0;
    double lhs = 0.0;    // sup over the cell of the interval integral
    double bound = 0.0;  // the bound shape, sans constant
    double ratio = 0.0;  // lhs / bound = the empirical constant on this row
};

/// Evaluates sup_{x in cell} integral_{I_{N'}} |G_n(x - t)| d mu(t) for every
/// complement cell of level `lemma_level` and every n in [n_lo, n_hi], where
/// G_n is the chosen kernel slice, and divides by the bound shape.  Because
/// I_{N'}(0) is a subgroup, the integral is constant on its cosets, so each
/// cell reduces to a max over the finitely many cosets it contains.
inline std::vector<LemmaRow> lemma_integral_check(const GroupSpec& spec, const WeightSeq& w,
                                                  int lemma_level, index_t n_lo, index_t n_hi,
                                                  KernelSlice slice, BoundShape shape) {
    if (lemma_level < 1 || lemma_level >= spec.levels())
        throw std::out_of_range("lemma_integral_check: lemma level must lie in [1, N)");
    if (n_lo < 1 || n_lo > n_hi || n_hi > spec.size())
        throw std::out_of_range("lemma_integral_check: order range outside [1, M_N]");
    if (n_hi > w.length())
        throw std::out_of_range("lemma_integral_check: orders exceed materialized weights");
    const index_t size = spec.size();
    const index_t base = spec.block(lemma_level);  // M_{N'}
    const index_t start = slice == KernelSlice::Tail ? base : 0;
    const double Mbase = static_cast<double>(base);

    // Classify each coset of I_{N'}(0) into its complement cell.
    const std::vector<ComplementCell> cells = complement_partition(spec, lemma_level);
    std::vector<int> coset_cell(static_cast<std::size_t>(base), -1);  // -1: inside I_{N'}
    for (index_t c = 1; c < base; ++c)
        for (std::size_t ci = 0; ci < cells.size(); ++ci)
            if (cell_contains(spec, cells[ci], c)) {
                coset_cell[static_cast<std::size_t>(c)] = static_cast<int>(ci);
                break;
            }

    std::vector<cplx> D(static_cast<std::size_t>(size), cplx{});      // D_j, running
    std::vector<cplx> numer(static_cast<std::size_t>(size), cplx{});  // sum q_j D_j over the slice
    std::vector<double> coset_sup(cells.size(), 0.0);
    std::vector<LemmaRow> rows;
    rows.reserve(cells.size() * static_cast<std::size_t>(n_hi - n_lo + 1));

    for (index_t j = 0; j < n_hi; ++j) {
        if (j >= start && w.q(j) != 0.0) {
            const double qj = w.q(j);
            for (index_t x = 0; x < size; ++x)
                numer[static_cast<std::size_t>(x)] += qj * D[static_cast<std::size_t>(x)];
        }
        // advance D_j -> D_{j+1}
        for (index_t x = 0; x < size; ++x)
            D[static_cast<std::size_t>(x)] += vilenkin_at(spec, j, x);
        const index_t n = j + 1;
        if (n < n_lo || !(w.Q(n) > 0.0)) continue;
        // numer now holds sum_{start <= i <= n-1} q_i D_i, the full slice.
        std::fill(coset_sup.begin(), coset_sup.end(), 0.0);
        for (index_t c = 0; c < base; ++c) {
            const int ci = coset_cell[static_cast<std::size_t>(c)];
            if (ci < 0) continue;
            double acc = 0.0;
            for (index_t y = c; y < size; y += base)
                acc += std::abs(numer[static_cast<std::size_t>(y)]);
            const double integral = acc / static_cast<double>(size) / w.Q(n);
            if (integral > coset_sup[static_cast<std::size_t>(ci)])
                coset_sup[static_cast<std::size_t>(ci)] = integral;
        }
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            const ComplementCell& cell = cells[ci];
            const double Mk = static_cast<double>(spec.block(cell.k));
            const double Ml = static_cast<double>(spec.block(cell.l));
            double bound;
            if (shape == BoundShape::Uniform)
                bound = Mk * Ml / (Mbase * Mbase);
            else
                bound = cell.l == lemma_level ? Mk / Mbase
                                              : Mk * Ml / (static_cast<double>(n) * Mbase);
            rows.push_back({n, cell.k, cell.l, coset_sup[ci], bound, coset_sup[ci] / bound});
        }
    }
    return rows;
}

inline double max_ratio(const std::vector<LemmaRow>& rows) {
    double m = 0.0;
    for (const LemmaRow& r : rows) m = std::max(m, r.ratio);
    return m;
}

/// Empirical constant in the pointwise tail bound
///   |(1/Q_n) sum_{j=M_{N'}}^{n-1} q_j D_j|
///       <= (C / M_{N'}) * sum_{t <= |n|} M_t |K_{M_t}|,
/// maximized over the grid and over n in (n_lo, n_hi].  |n| is the scale of
/// n: M_{|n|} <= n < M_{|n|+1}.
inline double tail_pointwise_constant(const GroupSpec& spec, const WeightSeq& w,
                                      int lemma_level, index_t n_lo, index_t n_hi) {
    if (lemma_level < 1 || lemma_level >= spec.levels())
        throw std::out_of_range("tail_pointwise_constant: lemma level must lie in [1, N)");
    if (n_lo < spec.block(lemma_level) || n_lo > n_hi || n_hi > spec.size())
        throw std::out_of_range("tail_pointwise_constant: order range invalid");
    const index_t size = spec.size();
    const index_t start = spec.block(lemma_level);

    // Scale-indexed denominators: denom[t](x) = sum_{s<=t} M_s |K_{M_s}(x)|.
    std::vector<std::vector<double>> denom;
    {
        std::vector<cplx> D(static_cast<std::size_t>(size), cplx{});
        std::vector<cplx> SD(static_cast<std::size_t>(size), cplx{});  // D_1 + ... + D_n
        std::vector<double> cur(static_cast<std::size_t>(size), 0.0);
        index_t n = 0;
        for (int t = 0; t <= spec.levels(); ++t) {
            const index_t Mt = spec.block(t);
            for (; n < Mt; ++n) {
                for (index_t x = 0; x < size; ++x)
                    D[static_cast<std::size_t>(x)] += vilenkin_at(spec, n, x);
                for (index_t x = 0; x < size; ++x)
                    SD[static_cast<std::size_t>(x)] += D[static_cast<std::size_t>(x)];
            }
            // K_{M_t} = SD / M_t
            for (index_t x = 0; x < size; ++x)
                cur[static_cast<std::size_t>(x)] += std::abs(SD[static_cast<std::size_t>(x)]);
            denom.push_back(cur);
        }
    }

    std::vector<cplx> D(static_cast<std::size_t>(size), cplx{});
    std::vector<cplx> numer(static_cast<std::size_t>(size), cplx{});
    double best = 0.0;
    int scale = 0;
    for (index_t j = 0; j < n_hi; ++j) {
        if (j >= start && w.q(j) != 0.0) {
            const double qj = w.q(j);
            for (index_t x = 0; x < size; ++x)
                numer[static_cast<std::size_t>(x)] += qj * D[static_cast<std::size_t>(x)];
        }
        for (index_t x = 0; x < size; ++x)
            D[static_cast<std::size_t>(x)] += vilenkin_at(spec, j, x);
        const index_t n = j + 1;
        if (n < n_lo || !(w.Q(n) > 0.0)) continue;
        while (scale + 1 <= spec.levels() && spec.block(scale + 1) <= n) ++scale;
        const double Mbase = static_cast<double>(start);
        for (index_t x = 0; x < size; ++x) {
            const double num =
                std::abs(numer[static_cast<std::size_t>(x)]) / w.Q(n) * Mbase;
            const double den = denom[static_cast<std::size_t>(scale)][static_cast<std::size_t>(x)];
            if (den > 0.0) {
                if (num / den > best) best = num / den;
            }
        }
    }
    return best;
}

/// Empirical constant in n |K_n| <= C sum_{t <= |n|} M_t |K_{M_t}|,
/// maximized over the grid and 1 <= n <= M_N.
inline double fejer_kernel_scale_constant(const GroupSpec& spec) {
    const index_t size = spec.size();
    std::vector<std::vector<double>> denom;
    std::vector<cplx> D(static_cast<std::size_t>(size), cplx{});
    std::vector<cplx> SD(static_cast<std::size_t>(size), cplx{});
    {
        std::vector<double> cur(static_cast<std::size_t>(size), 0.0);
        index_t n = 0;
        std::vector<cplx> Dl(static_cast<std::size_t>(size), cplx{});
        std::vector<cplx> SDl(static_cast<std::size_t>(size), cplx{});
        for (int t = 0; t <= spec.levels(); ++t) {
            const index_t Mt = spec.block(t);
            for (; n < Mt; ++n) {
                for (index_t x = 0; x < size; ++x)
                    Dl[static_cast<std::size_t>(x)] += vilenkin_at(spec, n, x);
                for (index_t x = 0; x < size; ++x)
                    SDl[static_cast<std::size_t>(x)] += Dl[static_cast<std::size_t>(x)];
            }
            for (index_t x = 0; x < size; ++x)
                cur[static_cast<std::size_t>(x)] += std::abs(SDl[static_cast<std::size_t>(x)]);
            denom.push_back(cur);
        }
    }
    double best = 0.0;
    int scale = 0;
    for (index_t n = 1; n <= size; ++n) {
        for (index_t x = 0; x < size; ++x)
            D[static_cast<std::size_t>(x)] += vilenkin_at(spec, n - 1, x);
        for (index_t x = 0; x < size; ++x)
            SD[static_cast<std::size_t>(x)] += D[static_cast<std::size_t>(x)];
        while (scale + 1 <= spec.levels() && spec.block(scale + 1) <= n) ++scale;
        for (index_t x = 0; x < size; ++x) {
            // n * K_n = SD
            const double num = std::abs(SD[static_cast<std::size_t>(x)]);
            const double den = denom[static_cast<std::size_t>(scale)][static_cast<std::size_t>(x)];
            if (den > 0.0 && num / den > best) best = num / den;
        }
    }
    return best;
}

}  // namespace vilenkin
