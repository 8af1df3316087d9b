#pragma once

// Complex-valued functions on a truncated group ("signals") and their
// coefficient vectors ("spectra"), plus the handful of integral quantities
// used everywhere: Haar integral, L1 norm, sup norm.

#include <algorithm>
#include <cmath>
#include <vector>

#include "vilenkin/group.hpp"

namespace vilenkin {

/// A function on the group grid: values[x] for x in [0, M_N).
struct Signal {
    GroupSpec spec;
    std::vector<cplx> values;

    explicit Signal(GroupSpec s) : spec(std::move(s)), values(spec.size(), cplx{}) {}
    Signal(GroupSpec s, std::vector<cplx> v) : spec(std::move(s)), values(std::move(v)) {
        if (static_cast<index_t>(values.size()) != spec.size())
            throw std::invalid_argument("Signal: value count must equal group size");
    }

    index_t size() const noexcept { return spec.size(); }
    cplx& operator[](index_t x) { return values[static_cast<std::size_t>(x)]; }
    const cplx& operator[](index_t x) const { return values[static_cast<std::size_t>(x)]; }
};

/// Coefficients against the group's character system: coeffs[n] for n < M_N.
struct Spectrum {
    GroupSpec spec;
    std::vector<cplx> coeffs;

    explicit Spectrum(GroupSpec s) : spec(std::move(s)), coeffs(spec.size(), cplx{}) {}
    Spectrum(GroupSpec s, std::vector<cplx> c) : spec(std::move(s)), coeffs(std::move(c)) {
        if (static_cast<index_t>(coeffs.size()) != spec.size())
            throw std::invalid_argument("Spectrum: coefficient count must equal group size");
    }

    index_t size() const noexcept { return spec.size(); }
    cplx& operator[](index_t n) { return coeffs[static_cast<std::size_t>(n)]; }
    const cplx& operator[](index_t n) const { return coeffs[static_cast<std::size_t>(n)]; }
};

/// Integral against normalized Haar measure: (1/M_N) * sum of values.
inline cplx haar_integral(const Signal& f) {
    cplx acc{};
    for (const cplx& v : f.values) acc += v;
    return acc / static_cast<double>(f.size());
}

inline double l1_norm(const Signal& f) {
    double acc = 0.0;
    for (const cplx& v : f.values) acc += std::abs(v);
    return acc / static_cast<double>(f.size());
}

inline double max_abs(const Signal& f) {
    double m = 0.0;
    for (const cplx& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

inline double max_abs_diff(const Signal& f, const Signal& g) {
    require_same_spec(f.spec, g.spec, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        m = std::max(m, std::abs(f.values[i] - g.values[i]));
    return m;
}

inline bool all_finite(const Signal& f) {
    return std::all_of(f.values.begin(), f.values.end(), [](const cplx& v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
}

}  // namespace vilenkin
