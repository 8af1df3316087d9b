#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "vilenkin/hardy.hpp"
#include "vilenkin/rng.hpp"
#include "vilenkin/transform.hpp"

using namespace vilenkin;

namespace {

Signal random_signal(const GroupSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    Signal f(spec);
    for (index_t x = 0; x < spec.size(); ++x)
        f[x] = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return f;
}

}  // namespace

TEST_CASE("lp quasinorm uses normalized counting measure") {
    GroupSpec spec({2, 2});
    Signal half(spec);  // indicator of the level-1 interval at 0
    for (index_t x : interval_members(spec, Interval{1, 0})) half[x] = 1.0;
    for (double p : {0.25, 0.4, 0.5, 1.0, 2.0})
        CHECK_THAT(lp_quasinorm(half, p),
                   Catch::Matchers::WithinRel(std::pow(0.5, 1.0 / p), 1e-13));
    CHECK_THROWS_AS(lp_quasinorm(half, 0.0), std::invalid_argument);
}

TEST_CASE("weak quasinorm sits below the strong one") {
    GroupSpec spec({2, 3, 2});
    for (std::uint64_t seed : {31u, 32u, 33u}) {
        const Signal f = random_signal(spec, seed);
        for (double p : {0.25, 0.5, 1.0})
            CHECK(weak_lp_quasinorm(f, p) <= lp_quasinorm(f, p) * (1.0 + 1e-12));
    }
}

TEST_CASE("weak quasinorm of an indicator is exact") {
    GroupSpec spec({2, 2});
    Signal half(spec);
    for (index_t x : interval_members(spec, Interval{1, 0})) half[x] = 1.0;
    // sup_lambda lambda * mu(|f| > lambda)^{1/p} = 1 * (1/2)^{1/p}
    for (double p : {0.25, 0.5, 1.0})
        CHECK_THAT(weak_lp_quasinorm(half, p),
                   Catch::Matchers::WithinRel(std::pow(0.5, 1.0 / p), 1e-12));
}

TEST_CASE("martingale view levels are coset averages of the signal") {
    GroupSpec spec({2, 3, 2});
    const Signal f = random_signal(spec, 41);
    const MartingaleView view = MartingaleView::from_signal(f);
    REQUIRE(static_cast<int>(view.levels.size()) == spec.levels() + 1);
    for (int level = 0; level <= spec.levels(); ++level) {
        const Signal& lv = view.levels[static_cast<std::size_t>(level)];
        for (index_t anchor = 0; anchor < spec.block(level); ++anchor) {
            cplx avg{};
            const auto members = interval_members(spec, Interval{level, anchor});
            for (index_t x : members) avg += f[x];
            avg /= static_cast<double>(members.size());
            for (index_t x : members)
                CHECK_THAT(std::abs(lv[x] - avg), Catch::Matchers::WithinAbs(0.0, 1e-12));
        }
    }
}

TEST_CASE("martingale levels equal block partial sums") {
    GroupSpec spec({3, 2, 3});
    const Signal f = random_signal(spec, 42);
    const MartingaleView view = MartingaleView::from_signal(f);
    for (int level = 0; level <= spec.levels(); ++level) {
        const Signal sn = partial_sum(f, spec.block(level));
        CHECK(max_abs_diff(sn, view.levels[static_cast<std::size_t>(level)]) < 1e-12);
    }
}

TEST_CASE("maximal function dominates every level and the signal itself") {
    GroupSpec spec({2, 2, 3});
    const Signal f = random_signal(spec, 43);
    const MartingaleView view = MartingaleView::from_signal(f);
    const std::vector<double> fstar = maximal_function(view);
    for (index_t x = 0; x < spec.size(); ++x) {
        CHECK(fstar[static_cast<std::size_t>(x)] >= std::abs(f[x]) - 1e-13);
        for (const Signal& lv : view.levels)
            CHECK(fstar[static_cast<std::size_t>(x)] >= std::abs(lv[x]) - 1e-13);
    }
    CHECK(hardy_quasinorm(f, 0.5) >= lp_quasinorm(f, 0.5) - 1e-12);
}

TEST_CASE("atom validator accepts a hand-built half-interval atom") {
    GroupSpec spec({2, 2});
    // support I_1(0) = {0, 2}; values +-4 = mu(I_1)^{-1/p} at p = 1/2
    PAtom atom{0.5, Interval{1, 0}, Signal(spec)};
    atom.values[0] = 4.0;
    atom.values[2] = -4.0;
    const AtomCheck chk = validate_atom(atom);
    CHECK(chk.supported);
    CHECK(chk.mean_zero);
    CHECK(chk.bounded);
    CHECK(chk.ok());
    CHECK_THAT(chk.sup_bound, Catch::Matchers::WithinRel(4.0, 1e-14));
}

TEST_CASE("atom validator rejects mean or support violations") {
    GroupSpec spec({2, 2});
    PAtom constant{0.5, Interval{1, 0}, Signal(spec)};
    for (index_t x = 0; x < spec.size(); ++x) constant.values[x] = 1.0;
    const AtomCheck bad = validate_atom(constant);
    CHECK_FALSE(bad.supported);  // leaks outside I_1(0)
    CHECK_FALSE(bad.mean_zero);
    CHECK_FALSE(bad.ok());
}

TEST_CASE("generated atoms satisfy the three defining conditions") {
    GroupSpec spec({2, 2, 2, 2, 2});
    int made = 0;
    for (double p : {0.25, 0.4, 0.5}) {
        for (int level = 1; level <= 3; ++level) {
            Rng rng = Rng::derive(77, {static_cast<std::uint64_t>(level),
                                       static_cast<std::uint64_t>(p * 1000)});
            const index_t anchor = static_cast<index_t>(rng.below(
                static_cast<std::uint64_t>(spec.block(level))));
            for (const PAtom& atom :
                 {make_rademacher_atom(spec, p, level), make_spike_atom(spec, p, level),
                  make_lattice_atom(spec, p, level, anchor, level + 2, rng),
                  make_random_atom(spec, p, level, anchor, rng)}) {
                const AtomCheck chk = validate_atom(atom);
                CHECK(chk.ok());
                ++made;
            }
        }
    }
    CHECK(made == 36);
}

TEST_CASE("atoms normalize their sup to the measure power") {
    GroupSpec spec({2, 2, 2, 2});
    const PAtom atom = make_rademacher_atom(spec, 0.25, 2);
    // mu(I_2) = 1/4, so the bound is 4^{1/p} = 4^4
    CHECK_THAT(max_abs(atom.values), Catch::Matchers::WithinRel(256.0, 1e-12));
    CHECK_THAT(hardy_quasinorm(atom.values, 0.25),
               Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("degenerate single-point supports are refused") {
    GroupSpec spec({2, 2});
    CHECK_THROWS_AS(make_rademacher_atom(spec, 0.5, spec.levels()), std::invalid_argument);
}
