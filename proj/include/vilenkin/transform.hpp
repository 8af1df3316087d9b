#pragma once

// The character system of a truncated mixed-radix group and the associated
// transforms.  The n-th character is the product over levels k of the k-th
// generalized Rademacher function raised to the k-th digit of n:
//
//     psi_n(x) = prod_k exp(2*pi*i * n_k * x_k / m_k),
//
// which for radix-2 groups reduces to the Walsh system in Paley order.
// The forward transform carries the 1/M_N normalization, the inverse none:
//
//     coeffs(n) = (1/M_N) * sum_x f(x) * conj(psi_n(x)),
//     f(x)      = sum_n coeffs(n) * psi_n(x).
//
// transform_fast runs one small DFT stage per level (decimation over the
// digit tower); transform_naive evaluates the defining double sum and serves
// as the reference implementation.

#include <vector>

#include "vilenkin/signal.hpp"

namespace vilenkin {

/// Generalized Rademacher function r_level(x) = exp(2*pi*i*x_level/m_level).
inline cplx rademacher(const GroupSpec& spec, int level, index_t x) {
    return spec.roots(level)[static_cast<std::size_t>(spec.digit(x, level))];
}

/// Pointwise character value psi_n(x); product of at most levels() roots.
inline cplx vilenkin_at(const GroupSpec& spec, index_t n, index_t x) {
    if (n < 0 || n >= spec.size())
        throw std::out_of_range("vilenkin_at: character index outside [0, M_N)");
    if (x < 0 || x >= spec.size())
        throw std::out_of_range("vilenkin_at: point outside [0, M_N)");
    cplx acc(1.0, 0.0);
    for (int k = 0; k < spec.levels() && n != 0; ++k) {
        const int m = spec.radix(k);
        const int nk = static_cast<int>(n % m);
        const int xk = static_cast<int>(x % m);
        if (nk != 0 && xk != 0) acc *= spec.roots(k)[static_cast<std::size_t>((nk * xk) % m)];
        n /= m;
        x /= m;
    }
    return acc;
}

/// The n-th character as a full signal.
inline Signal vilenkin_fn(const GroupSpec& spec, index_t n) {
    Signal psi(spec);
    for (index_t x = 0; x < spec.size(); ++x) psi[x] = vilenkin_at(spec, n, x);
    return psi;
}

namespace detail {

// One DFT stage per level over the flat little-endian layout.  At level k the
// m_k points of a fiber sit at stride M_k; `sign` +1 evaluates sum_j v_j *
// root^(j*t), -1 uses the conjugate.  Radices are capped (<= 16 by default)
// so the quadratic small DFT is the right tool; radix 2 stays a pure
// butterfly because the roots are exactly +1/-1.
inline void dft_stages(const GroupSpec& spec, std::vector<cplx>& a, int sign) {
    const index_t size = spec.size();
    std::vector<cplx> fiber(static_cast<std::size_t>(GroupSpec::kDefaultRadixCap));
    for (int k = 0; k < spec.levels(); ++k) {
        const int m = spec.radix(k);
        const index_t stride = spec.block(k);
        const index_t block = stride * m;
        const std::vector<cplx>& roots = spec.roots(k);
        if (fiber.size() < static_cast<std::size_t>(m)) fiber.resize(m);
        for (index_t base = 0; base < size; base += block) {
            for (index_t low = 0; low < stride; ++low) {
                const index_t at = base + low;
                for (int j = 0; j < m; ++j) fiber[j] = a[at + j * stride];
                for (int t = 0; t < m; ++t) {
                    cplx acc = fiber[0];
                    for (int j = 1; j < m; ++j) {
                        const int e = (j * t) % m;
                        const cplx w = sign > 0 ? roots[e] : std::conj(roots[e]);
                        acc += fiber[j] * w;
                    }
                    a[at + t * stride] = acc;
                }
            }
        }
    }
}

}  // namespace detail

/// Fast transform: one small-DFT pass per level, O(M_N * sum_k m_k).
inline Spectrum transform_fast(const Signal& f) {
    Spectrum out(f.spec, f.values);
    detail::dft_stages(f.spec, out.coeffs, -1);
    const double inv = 1.0 / static_cast<double>(f.size());
    for (cplx& c : out.coeffs) c *= inv;
    return out;
}

/// Reference transform straight from the definition, O(M_N^2).
inline Spectrum transform_naive(const Signal& f) {
    Spectrum out(f.spec);
    const double inv = 1.0 / static_cast<double>(f.size());
    for (index_t n = 0; n < f.size(); ++n) {
        const Signal psi = vilenkin_fn(f.spec, n);
        cplx acc{};
        for (index_t x = 0; x < f.size(); ++x) acc += f[x] * std::conj(psi[x]);
        out[n] = acc * inv;
    }
    return out;
}

inline Signal inverse_transform(const Spectrum& s) {
    Signal out(s.spec, s.coeffs);
    detail::dft_stages(s.spec, out.values, +1);
    return out;
}

/// Partial sum S_n f of the character expansion: the first n terms.
/// S_0 f = 0 by convention; S_{M_N} f reproduces f.
inline Signal partial_sum_from(const Spectrum& s, index_t n) {
    if (n < 0 || n > s.size())
        throw std::out_of_range("partial_sum: order outside [0, M_N]");
    Spectrum head(s.spec);
    for (index_t k = 0; k < n; ++k) head[k] = s[k];
    return inverse_transform(head);
}

inline Signal partial_sum(const Signal& f, index_t n) {
    return partial_sum_from(transform_fast(f), n);
}

}  // namespace vilenkin
