#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "stpolar/modem.hpp"
#include "stpolar/rng.hpp"

using namespace stpolar;

namespace {

int bit_diff(int a, int b) {
    int d = a ^ b, n = 0;
    while (d) {
        n += d & 1;
        d >>= 1;
    }
    return n;
}

} // namespace

TEST_CASE("constellations have unit average energy") {
    for (const auto* c : {&Constellation::bpsk(), &Constellation::qpsk(), &Constellation::qam16()}) {
        double e = 0.0;
        for (const auto& p : c->points)
            e += std::norm(p);
        CHECK(std::abs(e / c->points.size() - 1.0) <= 1e-12);
        CHECK(static_cast<int>(c->points.size()) == (1 << c->bits_per_symbol));
    }
}

TEST_CASE("Gray adjacency: nearest neighbours differ in exactly one bit") {
    for (const auto* c : {&Constellation::qpsk(), &Constellation::qam16()}) {
        // find the minimum pairwise distance, then check all pairs at it
        const int n = static_cast<int>(c->points.size());
        double dmin = 1e9;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                dmin = std::min(dmin, std::abs(c->points[static_cast<std::size_t>(i)] - c->points[static_cast<std::size_t>(j)]));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (std::abs(c->points[static_cast<std::size_t>(i)] - c->points[static_cast<std::size_t>(j)]) < dmin * 1.01)
                    CHECK(bit_diff(i, j) == 1);
    }
}

TEST_CASE("mapping conventions") {
    CHECK(Constellation::bpsk().points[0] == std::complex<double>{1.0, 0.0});
    CHECK(Constellation::bpsk().points[1] == std::complex<double>{-1.0, 0.0});
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(Constellation::qpsk().points[0] - std::complex<double>{s, s}) < 1e-15);
    CHECK_THROWS_AS(Constellation::from_name("8psk"), ConfigError);

    BitMatrix bits(1, 4);
    bits.at(0, 1) = 1; // 01 | 00 -> labels 1, 0
    const auto sym = map_bits(bits, Constellation::qpsk());
    CHECK(sym.cols() == 2);
    CHECK(std::abs(sym(0, 0) - Constellation::qpsk().points[1]) < 1e-15);
    CHECK(std::abs(sym(0, 1) - Constellation::qpsk().points[0]) < 1e-15);

    BitMatrix odd(1, 2);
    CHECK_THROWS_AS(map_bits(odd, Constellation::qam16()), ConfigError);
}

TEST_CASE("noiseless hard-demap roundtrip for all constellations") {
    std::mt19937_64 eng(3);
    for (const auto* c : {&Constellation::bpsk(), &Constellation::qpsk(), &Constellation::qam16()}) {
        const int mb = c->bits_per_symbol;
        BitMatrix bits(2, 16);
        for (auto& b : bits.data)
            b = static_cast<std::uint8_t>(eng() & 1u);
        const auto sym = map_bits(bits, *c);
        const double gain = 1.7, es = 2.3;
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < sym.cols(); ++t) {
                const auto y = gain * std::sqrt(es) * sym(s, t);
                const int label = hard_demap(y, gain, es, *c);
                for (int j = 0; j < mb; ++j)
                    CHECK(((label >> (mb - 1 - j)) & 1) == bits.at(s, t * mb + j));
            }
    }
}

TEST_CASE("BPSK LLR equals the closed form") {
    double llr;
    llr_demap({1.0, 0.0}, 1.0, 1.0, 1.0, Constellation::bpsk(), &llr);
    CHECK(llr == Catch::Approx(4.0).margin(1e-12));

    std::mt19937_64 eng(8);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 2000; ++i) {
        const std::complex<double> y{u(eng), u(eng)};
        const double lam = 1.3, es = 0.8, n0 = 0.7;
        double a, b;
        llr_demap(y, std::sqrt(lam), es, n0, Constellation::bpsk(), &a);
        llr_demap(-y, std::sqrt(lam), es, n0, Constellation::bpsk(), &b);
        CHECK(a == Catch::Approx(-b).margin(1e-12));
        const double closed = 4.0 * std::sqrt(lam * es) * y.real() / n0;
        CHECK(a == Catch::Approx(std::clamp(closed, -kLlrMax, kLlrMax)).margin(1e-12));
    }
}

TEST_CASE("exact log-MAP vs max-log sign agreement at high SNR, 16QAM") {
    Rng rng(44);
    std::mt19937_64 eng(45);
    const auto& c = Constellation::qam16();
    const double es = 40.0, n0 = 1.0, gain = 1.0; // high SNR
    int disagree = 0;
    const int nsym = 100000;
    for (int i = 0; i < nsym; ++i) {
        const int label = static_cast<int>(eng() & 15u);
        const auto y = std::sqrt(es) * c.points[static_cast<std::size_t>(label)] + rng.cgaussian(n0);
        double exact[4], maxlog[4];
        llr_demap(y, gain, es, n0, c, exact, false);
        llr_demap(y, gain, es, n0, c, maxlog, true);
        for (int j = 0; j < 4; ++j)
            if ((exact[j] < 0.0) != (maxlog[j] < 0.0))
                ++disagree;
    }
    CHECK(static_cast<double>(disagree) / (4.0 * nsym) <= 1e-3);
}

TEST_CASE("LLR consistency: all-zero labels give positive mean LLRs") {
    Rng rng(46);
    for (const auto* c : {&Constellation::bpsk(), &Constellation::qpsk(), &Constellation::qam16()}) {
        for (double es : {0.5, 4.0}) {
            double mean[4] = {0, 0, 0, 0};
            const int nsym = 20000;
            for (int i = 0; i < nsym; ++i) {
                const auto y = std::sqrt(es) * c->points[0] + rng.cgaussian(1.0);
                double llr[4];
                llr_demap(y, 1.0, es, 1.0, *c, llr);
                for (int j = 0; j < c->bits_per_symbol; ++j)
                    mean[j] += llr[j];
            }
            for (int j = 0; j < c->bits_per_symbol; ++j)
                CHECK(mean[j] / nsym > 0.0);
        }
    }
}

TEST_CASE("LLRs clamp at +/-60 nats") {
    double llr;
    llr_demap({1e3, 0.0}, 1.0, 1.0, 1.0, Constellation::bpsk(), &llr);
    CHECK(llr == kLlrMax);
    llr_demap({-1e3, 0.0}, 1.0, 1.0, 1.0, Constellation::bpsk(), &llr);
    CHECK(llr == -kLlrMax);
    CHECK_THROWS_AS(llr_demap({0, 0}, 1.0, 1.0, 0.0, Constellation::bpsk(), &llr), DomainError);
}
