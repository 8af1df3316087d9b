#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <vector>

#include "support/closed_forms.hpp"
#include "vilenkin/kernels.hpp"
#include "vilenkin/rng.hpp"
#include "vilenkin/transform.hpp"
#include "vilenkin/weights.hpp"

using namespace vilenkin;

TEST_CASE("dirichlet kernel matches the definitional character sum") {
    for (const auto& radices : {std::vector<int>{2, 2, 2}, std::vector<int>{3, 2, 3}}) {
        GroupSpec spec(radices);
        for (index_t n = 1; n <= spec.size(); ++n) {
            const Signal d = dirichlet(spec, n);
            for (index_t x = 0; x < spec.size(); ++x)
                CHECK_THAT(std::abs(d[x] - closed_forms::dirichlet_sum(spec, n, x)),
                           Catch::Matchers::WithinAbs(0.0, 1e-12));
        }
    }
}

TEST_CASE("block dirichlet kernels are scaled interval indicators") {
    GroupSpec spec({2, 3, 2});
    for (int level = 0; level <= spec.levels(); ++level) {
        const index_t block = spec.block(level);
        const Signal d = dirichlet(spec, block);
        for (index_t x = 0; x < spec.size(); ++x) {
            const double expect = interval_contains(spec, Interval{level, 0}, x)
                                      ? static_cast<double>(block)
                                      : 0.0;
            CHECK_THAT(std::abs(d[x] - expect), Catch::Matchers::WithinAbs(0.0, 1e-12));
        }
    }
}

TEST_CASE("fejer kernel values on the four-point group are exact") {
    GroupSpec spec({2, 2});
    // K_2 = (D_1 + D_2)/2 with D_1 = 1 and D_2(x) = 1 + (-1)^{x_0}
    const Signal k2 = fejer_kernel(spec, 2);
    const double expect[4] = {1.5, 0.5, 1.5, 0.5};
    for (index_t x = 0; x < 4; ++x)
        CHECK_THAT(std::abs(k2[x] - expect[x]), Catch::Matchers::WithinAbs(0.0, 1e-14));
}

TEST_CASE("fejer kernel matches the averaged dirichlet sum") {
    GroupSpec spec({3, 2, 3});
    for (index_t n : {index_t{1}, index_t{2}, index_t{5}, index_t{7}, index_t{17}}) {
        const Signal k = fejer_kernel(spec, n);
        for (index_t x = 0; x < spec.size(); ++x)
            CHECK_THAT(std::abs(k[x] - closed_forms::fejer_sum(spec, n, x)),
                       Catch::Matchers::WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("kernels integrate to their mean value") {
    GroupSpec spec({2, 3, 4});
    // D_n picks up only the constant character: integral 1 for n >= 1
    for (index_t n : {index_t{1}, index_t{4}, index_t{24}}) {
        CHECK_THAT(std::abs(haar_integral(dirichlet(spec, n)) - 1.0),
                   Catch::Matchers::WithinAbs(0.0, 1e-13));
        CHECK_THAT(std::abs(haar_integral(fejer_kernel(spec, n)) - 1.0),
                   Catch::Matchers::WithinAbs(0.0, 1e-13));
    }
}

TEST_CASE("block fejer kernels are nonnegative with unit L1 norm") {
    GroupSpec spec({2, 2, 2});
    for (int level = 0; level <= spec.levels(); ++level) {
        const Signal k = fejer_kernel(spec, spec.block(level));
        for (index_t x = 0; x < spec.size(); ++x) {
            CHECK(k[x].real() > -1e-13);
            CHECK_THAT(k[x].imag(), Catch::Matchers::WithinAbs(0.0, 1e-13));
        }
        CHECK_THAT(l1_norm(k), Catch::Matchers::WithinRel(1.0, 1e-12));
    }
}

TEST_CASE("convolution implements the group-shift average") {
    GroupSpec spec({2, 3, 2});
    Rng rng(9);
    Signal f(spec), g(spec);
    for (index_t x = 0; x < spec.size(); ++x) {
        f[x] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        g[x] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
    const Signal fg = convolve(f, g);
    for (index_t x = 0; x < spec.size(); ++x) {
        cplx acc{};
        for (index_t t = 0; t < spec.size(); ++t) acc += f[t] * g[spec.sub(x, t)];
        acc /= static_cast<double>(spec.size());
        CHECK_THAT(std::abs(fg[x] - acc), Catch::Matchers::WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("convolving with the dirichlet kernel gives the partial sum") {
    GroupSpec spec({2, 2, 3});
    Rng rng(13);
    Signal f(spec);
    for (index_t x = 0; x < spec.size(); ++x)
        f[x] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    for (index_t n : {index_t{1}, index_t{3}, index_t{8}, index_t{12}}) {
        const Signal via_kernel = convolve(f, dirichlet(spec, n));
        const Signal direct = partial_sum(f, n);
        CHECK(max_abs_diff(via_kernel, direct) < 1e-12);
    }
}

TEST_CASE("weighted kernels reduce to known special cases") {
    GroupSpec spec({2, 2, 2});
    const WeightSeq flat = make_weights(Family::parse("fejer"), 32);
    for (index_t n : {index_t{2}, index_t{5}, index_t{8}}) {
        // flat weights: F_n = (1/n) sum_{k<n} D_k = ((n-1)/n) K_{n-1}
        const Signal fn = t_kernel(spec, flat, n);
        const Signal kn = fejer_kernel(spec, n - 1);
        for (index_t x = 0; x < spec.size(); ++x)
            CHECK_THAT(std::abs(fn[x] - kn[x] * (static_cast<double>(n - 1) /
                                                 static_cast<double>(n))),
                       Catch::Matchers::WithinAbs(0.0, 1e-13));
    }
}

TEST_CASE("weighted kernel orders past the group size stay consistent") {
    GroupSpec spec({2, 2, 2});
    const index_t size = spec.size();
    const WeightSeq flat = make_weights(Family::parse("fejer"), 4 * size + 1);
    // beyond M_N every partial sum is the identity average: D_k freezes at
    // M_N * indicator of I_N, so F_n mixes the frozen kernel with weight
    // (Q_n - Q_{M_N}) / Q_n
    const index_t n = 3 * size;
    const Signal fn = t_kernel(spec, flat, n);
    for (index_t x = 0; x < spec.size(); ++x) {
        cplx acc{};
        for (index_t k = 0; k < n; ++k) {
            cplx dk;
            if (k <= size)
                dk = closed_forms::dirichlet_sum(spec, k, x);
            else
                dk = (x == 0) ? cplx(static_cast<double>(size), 0.0) : cplx{};
            acc += flat.q(k) * dk;
        }
        acc /= flat.Q(n);
        CHECK_THAT(std::abs(fn[x] - acc), Catch::Matchers::WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("kernel norm sweeps tabulate L1 norms in order") {
    GroupSpec spec({2, 2, 2});
    const auto rows = fejer_kernel_norms(spec, 6);
    REQUIRE(rows.size() == 6);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const index_t n = rows[i].n;
        CHECK(n == static_cast<index_t>(i + 1));
        const Signal k = fejer_kernel(spec, n);
        CHECK_THAT(rows[i].l1, Catch::Matchers::WithinRel(l1_norm(k), 1e-12));
        CHECK_THAT(rows[i].max_abs, Catch::Matchers::WithinRel(max_abs(k), 1e-12));
    }
    const WeightSeq riesz = make_weights(Family::parse("riesz"), 16);
    const auto trows = t_kernel_norms(spec, riesz, 6);
    for (const auto& row : trows) {
        const Signal k = t_kernel(spec, riesz, row.n);
        CHECK_THAT(row.l1, Catch::Matchers::WithinRel(l1_norm(k), 1e-12));
    }
}
