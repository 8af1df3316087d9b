#pragma once

// Martingale Hardy machinery on the finite group model.  The filtration is
// the tower of digit sigma-algebras; its conditional expectations are coset
// averages, which in the flat layout are plain strided means.  The maximal
// function takes the pointwise sup over the tower, and the Hardy quasinorm
// is its L_p quasinorm.  p-atoms are the building blocks the atomic theory
// decomposes Hardy functions into: mean-zero on an interval, sup-bounded by
// the interval measure to the -1/p.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "vilenkin/rng.hpp"
#include "vilenkin/signal.hpp"
#include "vilenkin/transform.hpp"

namespace vilenkin {

inline double lp_quasinorm(const GroupSpec& spec, std::span<const double> values, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("lp_quasinorm: p must be positive");
    if (static_cast<index_t>(values.size()) != spec.size())
        throw std::invalid_argument("lp_quasinorm: value count must equal group size");
    double acc = 0.0;
    for (double v : values) acc += std::pow(std::abs(v), p);
    return std::pow(acc / static_cast<double>(spec.size()), 1.0 / p);
}

inline double lp_quasinorm(const Signal& f, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("lp_quasinorm: p must be positive");
    double acc = 0.0;
    for (const cplx& v : f.values) acc += std::pow(std::abs(v), p);
    return std::pow(acc / static_cast<double>(f.size()), 1.0 / p);
}

/// Weak-L_p quasinorm sup_v v * mu(|f| >= v)^{1/p}; on a finite grid the sup
/// runs over the distinct values of |f|.
inline double weak_lp_quasinorm(const Signal& f, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("weak_lp_quasinorm: p must be positive");
    std::vector<double> mags(f.values.size());
    for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::abs(f.values[i]);
    std::sort(mags.begin(), mags.end(), std::greater<>());
    double best = 0.0;
    for (std::size_t i = 0; i < mags.size(); ++i) {
        if (i + 1 < mags.size() && mags[i + 1] == mags[i]) continue;  // last of a tie block
        if (mags[i] == 0.0) break;
        const double mu = static_cast<double>(i + 1) / static_cast<double>(mags.size());
        best = std::max(best, std::pow(mags[i], p) * mu);
    }
    return std::pow(best, 1.0 / p);
}

/// The conditional-expectation tower: levels[n] = average of f over the
/// level-n cosets, for n = 0..N.  Level 0 is the constant mean, level N is f
/// itself.  Equal to the partial sums of order M_n; built here by direct
/// coset averaging, which is exact and O(M_N) per level.
struct MartingaleView {
    GroupSpec spec;
    std::vector<Signal> levels;

    static MartingaleView from_signal(const Signal& f) {
        MartingaleView view{f.spec, {}};
        view.levels.reserve(static_cast<std::size_t>(f.spec.levels()) + 1);
        for (int n = 0; n <= f.spec.levels(); ++n) {
            const index_t block = f.spec.block(n);
            const index_t cosets = block;
            const index_t per = f.size() / block;
            Signal level(f.spec);
            for (index_t c = 0; c < cosets; ++c) {
                cplx acc{};
                for (index_t j = 0; j < per; ++j) acc += f[c + j * block];
                acc /= static_cast<double>(per);
                for (index_t j = 0; j < per; ++j) level[c + j * block] = acc;
            }
            view.levels.push_back(std::move(level));
        }
        return view;
    }
};

/// Pointwise maximal function over the tower, max_{0<=n<=N} |S_{M_n} f|.
inline std::vector<double> maximal_function(const MartingaleView& view) {
    std::vector<double> out(static_cast<std::size_t>(view.spec.size()), 0.0);
    for (const Signal& level : view.levels)
        for (std::size_t x = 0; x < out.size(); ++x)
            out[x] = std::max(out[x], std::abs(level.values[x]));
    return out;
}

inline std::vector<double> maximal_function(const Signal& f) {
    return maximal_function(MartingaleView::from_signal(f));
}

/// Hardy quasinorm: the L_p quasinorm of the tower maximal function.
inline double hardy_quasinorm(const Signal& f, double p) {
    return lp_quasinorm(f.spec, maximal_function(f), p);
}

/// A p-atom: supported on an interval I, mean zero there, and sup-bounded by
/// mu(I)^{-1/p}.  The signal stores the atom on the full grid.
struct PAtom {
    double p = 0.5;
    Interval support;
    Signal values;
};

struct AtomCheck {
    bool supported = false;
    bool mean_zero = false;
    bool bounded = false;
    double support_leak = 0.0;  // largest |a| outside the interval
    double mean_residual = 0.0; // |integral of a over I|
    double sup = 0.0;
    double sup_bound = 0.0;
    bool ok() const { return supported && mean_zero && bounded; }
};

inline AtomCheck validate_atom(const PAtom& atom, double tol = 1e-12) {
    const GroupSpec& spec = atom.values.spec;
    check_interval(spec, atom.support);
    AtomCheck chk;
    const index_t block = spec.block(atom.support.level);
    cplx mean{};
    for (index_t x = 0; x < spec.size(); ++x) {
        const double mag = std::abs(atom.values[x]);
        if (x % block == atom.support.anchor) {
            mean += atom.values[x];
            chk.sup = std::max(chk.sup, mag);
        } else {
            chk.support_leak = std::max(chk.support_leak, mag);
        }
    }
    chk.mean_residual = std::abs(mean) / static_cast<double>(spec.size());
    chk.sup_bound = std::pow(static_cast<double>(block), 1.0 / atom.p);  // mu(I)^(-1/p)
    chk.supported = chk.support_leak == 0.0;
    chk.mean_zero = chk.mean_residual <= tol;
    chk.bounded = chk.sup <= chk.sup_bound * (1.0 + 1e-12);
    return chk;
}

namespace detail {

inline void check_atom_params(const GroupSpec& spec, double p, int support_level,
                              index_t anchor) {
    if (!(p > 0.0) || p > 1.0)
        throw std::invalid_argument("atom: p must lie in (0, 1]");
    if (support_level < 0 || support_level > spec.levels())
        throw std::out_of_range("atom: support level out of range");
    if (support_level == spec.levels())
        throw std::invalid_argument(
            "atom: degenerate support (a single grid point forces the zero atom)");
    if (anchor < 0 || anchor >= spec.block(support_level))
        throw std::out_of_range("atom: anchor outside [0, M_level)");
}

}  // namespace detail

/// Random extremal p-atom on I_{support_level}(anchor): values drawn uniform
/// on [-1,1] per support point, recentred to mean zero, then scaled so the
/// sup norm equals mu(I)^{-1/p} exactly.  The recentring residual scales
/// with the final sup norm, so at extreme normalizations (deep supports at
/// small p) prefer make_lattice_atom, whose cancellations are exact.
inline PAtom make_random_atom(const GroupSpec& spec, double p, int support_level,
                              index_t anchor, Rng rng) {
    detail::check_atom_params(spec, p, support_level, anchor);
    const index_t block = spec.block(support_level);
    const index_t per = spec.size() / block;
    std::vector<double> draw(static_cast<std::size_t>(per));
    for (double& v : draw) v = rng.uniform(-1.0, 1.0);
    for (int pass = 0; pass < 2; ++pass) {  // two recentring passes
        long double mean = 0.0L;
        for (double v : draw) mean += v;
        mean /= static_cast<long double>(per);
        for (double& v : draw) v = static_cast<double>(v - mean);
    }
    double top = 0.0;
    for (double v : draw) top = std::max(top, std::abs(v));
    if (top == 0.0) draw[0] = top = 1.0;  // all-equal draw; vanishing odds, but stay total
    const double target = std::pow(static_cast<double>(block), 1.0 / p);
    const double scale = target / top;
    PAtom atom{p, Interval{support_level, anchor}, Signal(spec)};
    for (index_t j = 0; j < per; ++j)
        atom.values[anchor + j * block] = draw[static_cast<std::size_t>(j)] * scale;
    return atom;
}

/// Random extremal p-atom with power-of-two lattice values: each resolution
/// cell inside the support carries z * (target/32) with z in {0, +-1, +-2,
/// +-4, +-8, +-16, +-32}, the cell values balance to an exact zero sum, and
/// at least one cell attains +-32.  Every value is the target times a power
/// of two, so the mean-zero and sup-norm conditions hold without rounding,
/// and on radix-2 groups the transform of such an atom is exact: partial
/// sums below the support scale vanish identically.
inline PAtom make_lattice_atom(const GroupSpec& spec, double p, int support_level,
                               index_t anchor, int resolution_level, Rng rng) {
    detail::check_atom_params(spec, p, support_level, anchor);
    if (resolution_level <= support_level || resolution_level > spec.levels())
        throw std::out_of_range("atom: resolution level must lie in (support_level, N]");
    const index_t cell_count = spec.block(resolution_level) / spec.block(support_level);
    if (cell_count < 4)
        throw std::invalid_argument("atom: need at least 4 resolution cells inside the support");

    static constexpr int kAlphabet[] = {0, 1, -1, 2, -2, 4, -4, 8, -8, 16, -16};
    std::vector<int> z(static_cast<std::size_t>(cell_count));
    const std::size_t hi = rng.below(static_cast<std::uint64_t>(cell_count));
    std::size_t lo = hi;
    while (lo == hi) lo = rng.below(static_cast<std::uint64_t>(cell_count));
    for (std::size_t i = 0; i < z.size(); ++i)
        z[i] = kAlphabet[rng.below(sizeof(kAlphabet) / sizeof(int))];
    z[hi] = 32;
    z[lo] = -32;  // the extremal pair pins the sup norm and keeps repair easy
    long long sum = 0;
    for (int v : z) sum += v;
    // Repair the remaining imbalance by stepping single cells one notch along
    // the power-of-two ladder ... 16, 8, ..., 1, 0, -1, ..., -16 ...; a step is
    // taken only when it moves the sum strictly toward zero.
    auto step_down = [](int v) { return v > 1 ? v / 2 : (v >= -1 ? v - 1 : v * 2); };
    auto step_up = [](int v) { return v < -1 ? v / 2 : (v <= 1 ? v + 1 : v * 2); };
    std::size_t cursor = 0;
    std::size_t spins = 0;
    const std::size_t spin_cap = 64 * z.size() + 4096;
    while (sum != 0) {
        if (++spins > spin_cap) {  // unreachable by construction; stay total anyway
            for (std::size_t i = 0; i < z.size(); ++i)
                if (i != hi && i != lo) z[i] = 0;
            sum = 0;
            break;
        }
        const std::size_t i = cursor++ % z.size();
        if (i == hi || i == lo) continue;
        const int next = sum > 0 ? step_down(z[i]) : step_up(z[i]);
        if (next >= -16 && next <= 16 && std::llabs(sum + next - z[i]) < std::llabs(sum)) {
            sum += next - z[i];
            z[i] = next;
        }
    }

    const double target = std::pow(static_cast<double>(spec.block(support_level)), 1.0 / p);
    const double unit = target / 32.0;
    const index_t cell_block = spec.block(resolution_level);
    const index_t per_cell = spec.size() / cell_block;
    PAtom atom{p, Interval{support_level, anchor}, Signal(spec)};
    for (index_t c = 0; c < cell_count; ++c) {
        // Cell c of the support: digits below support_level equal the anchor,
        // digits in [support_level, resolution_level) encode c.
        const index_t cell_anchor = anchor + c * spec.block(support_level);
        const double value = z[static_cast<std::size_t>(c)] * unit;
        if (value == 0.0) continue;
        for (index_t j = 0; j < per_cell; ++j)
            atom.values[cell_anchor + j * cell_block] = value;
    }
    return atom;
}

/// Deterministic extremal atom: target * r_{support_level} on the support.
/// Mean zero because the Rademacher digit averages out; on radix-2 groups
/// the values are exactly +-target.
inline PAtom make_rademacher_atom(const GroupSpec& spec, double p, int support_level,
                                  index_t anchor = 0) {
    detail::check_atom_params(spec, p, support_level, anchor);
    const index_t block = spec.block(support_level);
    const double target = std::pow(static_cast<double>(block), 1.0 / p);
    PAtom atom{p, Interval{support_level, anchor}, Signal(spec)};
    for (index_t j = 0; j < spec.size() / block; ++j) {
        const index_t x = anchor + j * block;
        atom.values[x] = target * rademacher(spec, support_level, x);
    }
    return atom;
}

/// Deterministic two-level spike atom, a rescaled D_{M_{N'+1}} - D_{M_{N'}}:
/// value +target on I_{N'+1}(anchor), -target/(m_{N'} - 1) on the rest of
/// I_{N'}(anchor).  Mean-zero holds exactly (the two level sums cancel term
/// by term) and the sup norm equals the atom bound.  These are the
/// concentrated-frequency probes that drive maximal operators hardest near
/// order M_{N'}.
inline PAtom make_spike_atom(const GroupSpec& spec, double p, int support_level,
                             index_t anchor = 0) {
    detail::check_atom_params(spec, p, support_level, anchor);
    const index_t block = spec.block(support_level);
    const int m = spec.radix(support_level);
    const double hi = std::pow(static_cast<double>(block), 1.0 / p);
    const double lo = -hi / static_cast<double>(m - 1);
    PAtom atom{p, Interval{support_level, anchor}, Signal(spec)};
    for (index_t j = 0; j < spec.size() / block; ++j) {
        const index_t x = anchor + j * block;
        atom.values[x] = spec.digit(x, support_level) == 0 ? hi : lo;
    }
    return atom;
}

}  // namespace vilenkin
