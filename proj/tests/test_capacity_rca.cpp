#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "stpolar/capacity.hpp"
#include "stpolar/construction.hpp"
#include "stpolar/rca.hpp"

using namespace stpolar;

namespace {

// fully numeric check-node pipeline: oracle Psi in place of the closed form
double rca_check_oracle(double xi0, double xi1) {
    const auto lam = [](double xi) { return std::log(reciprocal_snr(std::exp(xi))); };
    return lam(rca_var(lam(xi0), lam(xi1)));
}

double gamma_star() {
    double lo = 0.1, hi = 2.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (biawgn_capacity(mid) < 0.5 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("biawgn_capacity limits and domain") {
    CHECK(biawgn_capacity(0.0) == 0.0);
    CHECK(biawgn_capacity(1e-9) < 1e-8);
    CHECK(biawgn_capacity(1e4) > 1.0 - 1e-9);
    CHECK_THROWS_AS(biawgn_capacity(-0.1), DomainError);
}

TEST_CASE("biawgn_capacity agrees with a Monte Carlo estimate at gamma=1") {
    const double mc = oracles::mc_biawgn_capacity(1.0, 10'000'000, 2024);
    CHECK(std::abs(biawgn_capacity(1.0) - mc) < 1e-3);
}

TEST_CASE("capacity is monotone on the log grid") {
    // strict increase holds wherever the gap to 1 is representable; the gap
    // itself decreases strictly across the whole grid in the log domain
    double prev_c = -1.0, prev_gap = 1.0;
    for (int i = 0; i < 50; ++i) {
        const double g = std::pow(10.0, -2.0 + 4.0 * i / 49.0);
        const double c = biawgn_capacity(g);
        const double gap = biawgn_capacity_gap_ln(g);
        CHECK(c >= prev_c);
        if (c < 1.0 - 1e-12 && prev_c >= 0.0)
            CHECK(c > prev_c);
        CHECK(gap < prev_gap);
        prev_c = c;
        prev_gap = gap;
    }
}

TEST_CASE("reciprocal_snr satisfies the defining identity") {
    CHECK(std::abs(biawgn_capacity(reciprocal_snr(0.5)) + biawgn_capacity(0.5) - 1.0) < 1e-6);
    for (int i = 0; i < 50; ++i) {
        const double g = std::pow(10.0, -2.0 + 4.0 * i / 49.0);
        CHECK(std::abs(biawgn_capacity(reciprocal_snr(g)) + biawgn_capacity(g) - 1.0) <= 1e-6);
    }
    CHECK_THROWS_AS(reciprocal_snr(0.0), DomainError);
    CHECK_THROWS_AS(reciprocal_snr(-1.0), DomainError);
}

TEST_CASE("reciprocal_snr fixed point and involution") {
    const double gs = gamma_star();
    CHECK(std::abs(reciprocal_snr(gs) - gs) < 1e-6 * gs);
    CHECK(std::abs(reciprocal_snr(reciprocal_snr(3.0)) - 3.0) < 1e-6 * 3.0);

    double prev = reciprocal_snr(0.01);
    for (double g : {0.05, 0.2, 0.6, 1.5, 4.0, 12.0}) {
        const double psi = reciprocal_snr(g);
        CHECK(psi < prev);
        prev = psi;
    }
}

TEST_CASE("lambda_log matches the numeric oracle within 0.05 on [-4,4]") {
    for (int i = 0; i < 50; ++i) {
        const double xi = -4.0 + 8.0 * i / 49.0;
        const double num = std::log(reciprocal_snr(std::exp(xi)));
        CHECK(std::abs(lambda_log(xi) - num) <= 0.05);
    }
    CHECK(std::abs(lambda_log(-2.0) - std::log(reciprocal_snr(std::exp(-2.0)))) <= 0.05);
}

TEST_CASE("lambda_log fixed point, involution, monotonicity") {
    const double xs = std::log(gamma_star());
    CHECK(std::abs(lambda_log(xs) - xs) < 0.05);
    CHECK(std::abs(lambda_log(lambda_log(0.0))) < 0.05);

    double prev = lambda_log(-30.0);
    for (int i = 1; i <= 6000; ++i) {
        const double xi = -30.0 + 60.0 * i / 6000.0;
        const double v = lambda_log(xi);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("rca_var is exactly log-sum-exp") {
    CHECK(rca_var(1.0, 1.0) == Catch::Approx(1.0 + std::log(2.0)).epsilon(1e-14));
    CHECK(rca_var(0.0, 1.0) == Catch::Approx(1.0 + std::log1p(std::exp(-1.0))).epsilon(1e-14));
    std::mt19937_64 eng(5);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int i = 0; i < 1000; ++i) {
        const double a = u(eng), b = u(eng);
        CHECK(std::abs(rca_var(a, b) - std::log(std::exp(a) + std::exp(b))) <= 1e-12);
        // upgrading is strict wherever the increment is representable at all
        CHECK(rca_var(a, b) >= std::max(a, b));
        if (std::abs(a - b) < 30.0)
            CHECK(rca_var(a, b) > std::max(a, b));
        CHECK(rca_var(a, b) == rca_var(b, a));
    }
}

TEST_CASE("rca_check reduces correctly and degrades") {
    const double xi = 0.5;
    CHECK(rca_check(xi, xi) ==
          Catch::Approx(lambda_log(lambda_log(xi) + std::log(2.0))).epsilon(1e-12));
    CHECK(std::abs(rca_check(0.0, 1.0) - rca_check_oracle(0.0, 1.0)) <= 0.05);
    std::mt19937_64 eng(6);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    for (int i = 0; i < 300; ++i) {
        const double a = u(eng), b = u(eng);
        CHECK(rca_check(a, b) == rca_check(b, a));
        // degradation is strict where the combining increment stays above the
        // closed form's local fit error; beyond that only the fidelity band
        // around min(a,b) can be promised
        const double la = lambda_log(a), lb = lambda_log(b);
        if (std::abs(la - lb) < 5.0 && std::min(la, lb) > -30.0)
            CHECK(rca_check(a, b) < std::min(a, b));
        CHECK(rca_check(a, b) < std::min(a, b) + 2e-3);
    }
}

TEST_CASE("build_initialization lays streams out row-major") {
    const SnrProfile p({4.0, 1.0});
    const auto init = build_initialization(p, 2);
    CHECK(init.xis[0] == Catch::Approx(std::log(4.0)));
    CHECK(init.xis[1] == Catch::Approx(std::log(4.0)));
    CHECK(init.xis[2] == 0.0);
    CHECK(init.xis[3] == 0.0);

    const SnrProfile uni({2.0, 2.0, 2.0, 2.0});
    for (double v : build_initialization(uni, 8).xis)
        CHECK(v == Catch::Approx(std::log(2.0)));

    const SnrProfile p4({8.0, 4.0, 2.0, 1.0});
    const auto init4 = build_initialization(p4, 32);
    REQUIRE(init4.xis.size() == 128);
    for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 32; ++t)
            CHECK(init4.xis[static_cast<std::size_t>(index_map(s, t, 4, 32))] ==
                  Catch::Approx(std::log(p4.gammas[static_cast<std::size_t>(s)])));

    CHECK_THROWS_AS(build_initialization(SnrProfile({1.0, 1.0, 1.0}), 4), DimensionError);
}

TEST_CASE("rca_evolve single stage and determinism") {
    const double xi = std::log(1.7);
    const auto out = rca_evolve({xi, xi});
    CHECK(out[0] == Catch::Approx(rca_check(xi, xi)));
    CHECK(out[1] == Catch::Approx(xi + std::log(2.0)));
    CHECK_THROWS_AS(rca_evolve(std::vector<double>(3, 0.0)), DimensionError);

    const std::vector<double> init{0.3, -0.2, 1.1, 0.0, -1.0, 0.7, 0.2, -0.4};
    CHECK(rca_evolve(init) == rca_evolve(init));
}

TEST_CASE("rca_evolve ordering at N=4 uniform matches density evolution") {
    const auto rel = rca_evolve(build_initialization(SnrProfile({1.0, 1.0}), 2).xis);
    const auto perr = oracles::mc_density_evolution({1.0, 1.0, 1.0, 1.0}, 200000, 42);
    // position 0 least reliable, position 3 most reliable in both
    for (int i = 1; i < 4; ++i) {
        CHECK(rel[0] < rel[static_cast<std::size_t>(i)]);
        CHECK(perr[0] > perr[static_cast<std::size_t>(i)]);
        CHECK(rel[3] > rel[static_cast<std::size_t>(i - 1)]);
        CHECK(perr[3] < perr[static_cast<std::size_t>(i - 1)]);
    }
}

TEST_CASE("rca_evolve tracks Monte Carlo density evolution, N=8 non-uniform") {
    // two-level stream profile, S=2 T=4
    const SnrProfile prof({1.0, 0.25});
    const auto rel = rca_evolve(build_initialization(prof, 4).xis);
    std::vector<double> gammas(8);
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 4; ++t)
            gammas[static_cast<std::size_t>(index_map(s, t, 2, 4))] = prof.gammas[static_cast<std::size_t>(s)];
    const auto perr = oracles::mc_density_evolution(gammas, 300000, 99);
    std::vector<double> neg_perr(8);
    for (int i = 0; i < 8; ++i)
        neg_perr[static_cast<std::size_t>(i)] = -perr[static_cast<std::size_t>(i)];
    CHECK(oracles::spearman(rel, neg_perr) >= 0.95);
}

TEST_CASE("per_stream_snr applies the eigenvalue map") {
    const auto p = per_stream_snr({4.0, 1.0}, 2.0);
    CHECK(p.gammas == std::vector<double>{8.0, 2.0});
    const auto uni = per_stream_snr({1.0, 1.0, 1.0}, 3.5);
    for (double g : uni.gammas)
        CHECK(g == 3.5);
    CHECK_THROWS_AS(per_stream_snr({-1.0, 1.0}, 1.0), DomainError);
    CHECK_THROWS_AS(per_stream_snr({1.0}, 0.0), DomainError);
    // spread ratio preserved
    const auto s = per_stream_snr({5.0, 0.25}, 7.0);
    CHECK(s.gammas[0] / s.gammas[1] == Catch::Approx(20.0));
    // floor
    CHECK(per_stream_snr({0.0, 1.0}, 1.0).gammas[0] == kGammaFloor);
}

TEST_CASE("select_frozen picks the least reliable and is monotone-invariant") {
    ReliabilityVector rel{{0.4, -1.0, 2.0, 0.1}};
    const auto fsr = select_frozen(rel, 2);
    CHECK(fsr.order == std::vector<int>{2, 0, 3, 1});
    CHECK(fsr.frozen_set == std::vector<int>{1, 3});

    // K = N: empty frozen set
    CHECK(select_frozen(rel, 4).frozen_set.empty());
    CHECK_THROWS_AS(select_frozen(rel, 0), RangeError);
    CHECK_THROWS_AS(select_frozen(rel, 5), RangeError);

    // any strictly monotone transform leaves the order unchanged
    ReliabilityVector warped{{}};
    for (double x : rel.xis)
        warped.xis.push_back(std::exp(2.0 * x) + 3.0);
    CHECK(select_frozen(warped, 2).order == fsr.order);

    // degenerate ties: lower index frozen first
    ReliabilityVector flat{{1.0, 1.0, 1.0, 1.0}};
    CHECK(select_frozen(flat, 2).frozen_set == std::vector<int>{0, 1});
}

TEST_CASE("select_frozen at N=4 uniform gamma=1 freezes {0,1}") {
    const auto rel = rca_evolve(build_initialization(SnrProfile({1.0, 1.0}), 2).xis);
    const auto fsr = select_frozen(ReliabilityVector{rel}, 2);
    CHECK(fsr.frozen_set == std::vector<int>{0, 1});
    // density-evolution oracle confirms positions 0,1 are the least reliable
    const auto perr = oracles::mc_density_evolution({1.0, 1.0, 1.0, 1.0}, 200000, 17);
    CHECK(std::min(perr[0], perr[1]) > std::max(perr[2], perr[3]));
}

TEST_CASE("construction CSV is reproducible and well-formed") {
    const SnrProfile prof({3.0, 1.0});
    const auto fsr = construct(ConstructionMethod::kRca, prof, 4, 4);
    const std::string csv1 = construction_csv(fsr, 2, 4);
    const std::string csv2 = construction_csv(construct(ConstructionMethod::kRca, prof, 4, 4), 2, 4);
    CHECK(csv1 == csv2);
    CHECK(csv1.substr(0, csv1.find('\n')) == "index,stream,slot,xi_hat,rank,frozen");
    CHECK(std::count(csv1.begin(), csv1.end(), '\n') == 9); // header + 8 rows
}
