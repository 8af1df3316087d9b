#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "support/closed_forms.hpp"
#include "vilenkin/rng.hpp"
#include "vilenkin/summability.hpp"
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

// S_0, S_1, ..., including the frozen S_k = f for k >= M_N.
Signal literal_partial_sum(const Signal& f, index_t k) {
    return k >= f.size() ? f : partial_sum(f, k);
}

Signal literal_t_mean(const Signal& f, const WeightSeq& w, index_t n) {
    Signal acc(f.spec);
    for (index_t k = 0; k < n; ++k) {
        if (w.q(k) == 0.0) continue;
        const Signal sk = literal_partial_sum(f, k);
        for (index_t x = 0; x < f.size(); ++x) acc[x] += w.q(k) * sk[x];
    }
    for (index_t x = 0; x < f.size(); ++x) acc[x] /= w.Q(n);
    return acc;
}

Signal literal_norlund_mean(const Signal& f, const WeightSeq& w, index_t n) {
    Signal acc(f.spec);
    for (index_t k = 1; k <= n; ++k) {
        if (w.q(n - k) == 0.0) continue;
        const Signal sk = literal_partial_sum(f, k);
        for (index_t x = 0; x < f.size(); ++x) acc[x] += w.q(n - k) * sk[x];
    }
    for (index_t x = 0; x < f.size(); ++x) acc[x] /= w.Q(n);
    return acc;
}

}  // namespace

TEST_CASE("frozen weight prefixes for the classical families") {
    const WeightSeq riesz = make_weights(Family::parse("riesz"), 8);
    CHECK_THAT(riesz.Q(4), Catch::Matchers::WithinRel(11.0 / 6.0, 1e-14));

    const WeightSeq u = make_weights(Family::parse("u:0.5"), 8);
    CHECK_THAT(u.Q(4), Catch::Matchers::WithinRel(35.0 / 16.0, 1e-13));
    CHECK_THAT(u.Q(4), Catch::Matchers::WithinRel(closed_forms::binom_alpha(0.5, 3), 1e-13));

    const WeightSeq b = make_weights(Family::parse("b:1:1"), 8);
    CHECK_THAT(b.Q(4), Catch::Matchers::WithinRel(1.0 + std::log2(3.0), 1e-13));

    const WeightSeq v = make_weights(Family::parse("v:0.5"), 8);
    CHECK_THAT(v.Q(4), Catch::Matchers::WithinRel(1.0 + 1.0 / std::sqrt(2.0) + 1.0 / std::sqrt(3.0),
                                                  1e-13));
}

TEST_CASE("cesaro weights carry the hockey-stick normalizer") {
    const WeightSeq w = make_weights(Family::parse("cesaro:0.5"), 64);
    for (index_t n = 1; n <= 63; ++n)
        CHECK_THAT(w.Q(n), Catch::Matchers::WithinRel(closed_forms::binom_alpha(0.5, n - 1),
                                                      1e-12));
}

TEST_CASE("t means equal the literal weighted partial-sum average") {
    GroupSpec spec({2, 2, 3});
    const Signal f = random_signal(spec, 21);
    for (const char* name : {"riesz", "u:0.5", "v:0.5", "b:1:1"}) {
        const Family fam = Family::parse(name);
        const WeightSeq w = make_weights(fam, 3 * spec.size());
        for (index_t n : {index_t{2}, index_t{3}, index_t{7}, index_t{12}, index_t{25}}) {
            if (!(w.Q(n) > 0.0)) {  // degenerate normalizer, e.g. b at n = 2
                CHECK_THROWS_AS(t_mean(f, w, n), std::invalid_argument);
                continue;
            }
            const Signal mean = t_mean(f, w, n);
            const Signal lit = literal_t_mean(f, w, n);
            CHECK(max_abs_diff(mean, lit) < 1e-12);
        }
    }
}

TEST_CASE("norlund means equal the literal backward-weighted average") {
    GroupSpec spec({3, 2, 2});
    const Signal f = random_signal(spec, 22);
    for (const char* name : {"cesaro:0.5", "b:1:1", "norlund_log"}) {
        const Family fam = Family::parse(name);
        const WeightSeq w = make_weights(fam, 3 * spec.size());
        for (index_t n : {index_t{2}, index_t{5}, index_t{11}, index_t{26}}) {
            if (!(w.Q(n) > 0.0)) {  // degenerate normalizer, e.g. b at n = 2
                CHECK_THROWS_AS(norlund_mean(f, w, n), std::invalid_argument);
                continue;
            }
            const Signal mean = norlund_mean(f, w, n);
            const Signal lit = literal_norlund_mean(f, w, n);
            CHECK(max_abs_diff(mean, lit) < 1e-12);
        }
    }
}

TEST_CASE("fejer mean averages the first n partial sums") {
    GroupSpec spec({2, 2, 2});
    const Signal f = random_signal(spec, 23);
    for (index_t n : {index_t{1}, index_t{4}, index_t{8}, index_t{13}}) {
        const Signal mean = fejer_mean(f, n);
        Signal acc(spec);
        for (index_t k = 1; k <= n; ++k) {
            const Signal sk = literal_partial_sum(f, k);
            for (index_t x = 0; x < spec.size(); ++x) acc[x] += sk[x];
        }
        for (index_t x = 0; x < spec.size(); ++x) acc[x] /= static_cast<double>(n);
        CHECK(max_abs_diff(mean, acc) < 1e-12);
    }
}

TEST_CASE("flat forward weights collapse to a scaled fejer mean") {
    GroupSpec spec({2, 3, 2});
    const Signal f = random_signal(spec, 24);
    const WeightSeq flat = make_weights(Family::parse("fejer"), 16);
    for (index_t n : {index_t{2}, index_t{5}, index_t{9}}) {
        const Signal tn = t_mean(f, flat, n);
        const Signal sigma = fejer_mean(f, n - 1);
        const double scale = static_cast<double>(n - 1) / static_cast<double>(n);
        for (index_t x = 0; x < spec.size(); ++x)
            CHECK_THAT(std::abs(tn[x] - scale * sigma[x]),
                       Catch::Matchers::WithinAbs(0.0, 1e-13));
    }
}

TEST_CASE("norlund means preserve constants; t means dampen them by q0") {
    GroupSpec spec({2, 2, 2});
    Signal ones(spec);
    for (index_t x = 0; x < spec.size(); ++x) ones[x] = 1.0;
    const WeightSeq flat = make_weights(Family::parse("fejer"), 40);
    const index_t n = 32;
    const Signal tn = t_mean(ones, flat, n);
    const Signal ln = norlund_mean(ones, flat, n);
    for (index_t x = 0; x < spec.size(); ++x) {
        CHECK_THAT(tn[x].real(), Catch::Matchers::WithinRel(31.0 / 32.0, 1e-13));
        CHECK_THAT(ln[x].real(), Catch::Matchers::WithinRel(1.0, 1e-13));
    }
}

TEST_CASE("order guards reject degenerate requests") {
    GroupSpec spec({2, 2});
    const Signal f = random_signal(spec, 25);
    const WeightSeq riesz = make_weights(Family::parse("riesz"), 8);
    CHECK_THROWS_AS(t_mean(f, riesz, 0), std::out_of_range);
    CHECK_THROWS_AS(t_mean(f, riesz, 1), std::invalid_argument);  // Q_1 = q_0 = 0
    CHECK_THROWS_AS(t_mean(f, riesz, 9), std::out_of_range);
}

TEST_CASE("family descriptors parse and route to the right engine") {
    CHECK(Family::parse("fejer").label() == "fejer");
    CHECK(Family::parse("u:0.5").label() == "u_0.5");
    CHECK(Family::parse("b:1:1").label() == "b_1_1");
    CHECK(Family::parse("cesaro:0.5").engine() == MeanEngine::Norlund);
    CHECK(Family::parse("riesz").engine() == MeanEngine::TMean);
    CHECK_THROWS_AS(Family::parse("unknown"), std::invalid_argument);

    GroupSpec spec({2, 2, 2});
    const Signal f = random_signal(spec, 26);
    const Family ces = Family::parse("cesaro:0.5");
    const WeightSeq w = make_weights(ces, 16);
    CHECK(max_abs_diff(family_mean(f, ces, w, 6), cesaro_mean(f, 0.5, 6)) < 1e-13);
}

TEST_CASE("character table rows reproduce pointwise characters") {
    GroupSpec spec({3, 2, 3});
    const CharacterTable table(spec);
    for (index_t j = 0; j < spec.size(); ++j) {
        const auto row = table.row(j);
        for (index_t x = 0; x < spec.size(); ++x)
            CHECK_THAT(std::abs(row[static_cast<std::size_t>(x)] - vilenkin_at(spec, j, x)),
                       Catch::Matchers::WithinAbs(0.0, 1e-15));
    }
}

TEST_CASE("order sweeps reproduce the one-shot means") {
    GroupSpec spec({2, 2, 2});
    const Signal f = random_signal(spec, 27);
    const CharacterTable table(spec);
    const index_t n_end = 3 * spec.size();

    const WeightSeq riesz = make_weights(Family::parse("riesz"), n_end + 1);
    sweep_t_means(table, f, riesz, n_end, [&](index_t n, double Qn, std::span<const cplx> P,
                                              double tail) {
        const Signal direct = t_mean(f, riesz, n);
        for (index_t x = 0; x < spec.size(); ++x) {
            const cplx swept = (P[static_cast<std::size_t>(x)] + tail * f[x]) / Qn;
            CHECK_THAT(std::abs(swept - direct[x]), Catch::Matchers::WithinAbs(0.0, 1e-12));
        }
    });

    sweep_fejer_means(table, f, n_end, [&](index_t n, double norm, std::span<const cplx> PS,
                                           double tail) {
        const Signal direct = fejer_mean(f, n);
        for (index_t x = 0; x < spec.size(); ++x) {
            const cplx swept = (PS[static_cast<std::size_t>(x)] + tail * f[x]) / norm;
            CHECK_THAT(std::abs(swept - direct[x]), Catch::Matchers::WithinAbs(0.0, 1e-12));
        }
    });
}
