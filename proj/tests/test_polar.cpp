#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "stpolar/polar.hpp"

using namespace stpolar;

namespace {

BitVector random_bits(std::size_t n, std::mt19937_64& eng) {
    BitVector v(n);
    for (auto& b : v)
        b = static_cast<std::uint8_t>(eng() & 1u);
    return v;
}

BitVector xor_bits(const BitVector& a, const BitVector& b) {
    BitVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] ^ b[i];
    return r;
}

} // namespace

TEST_CASE("encode_1d matches the generator rows for N=2 and N=4") {
    CHECK(encode_1d({1, 0}) == BitVector{1, 0});
    CHECK(encode_1d({0, 1}) == BitVector{1, 1});
    CHECK(encode_1d({0, 0, 0, 1}) == BitVector{1, 1, 1, 1});
}

TEST_CASE("encode_1d rejects non-power-of-two lengths") {
    CHECK_THROWS_AS(encode_1d(BitVector(3, 0)), DimensionError);
    CHECK_THROWS_AS(encode_1d(BitVector{}), DimensionError);
}

TEST_CASE("encode_1d is an involution and linear") {
    std::mt19937_64 eng(7);
    for (int n : {2, 4, 8, 16}) {
        for (std::uint32_t w = 0; w < (1u << n); ++w) {
            BitVector u(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j)
                u[static_cast<std::size_t>(j)] = (w >> j) & 1u;
            CHECK(encode_1d(encode_1d(u)) == u);
        }
    }
    for (int rep = 0; rep < 200; ++rep) {
        const BitVector a = random_bits(128, eng);
        const BitVector b = random_bits(128, eng);
        CHECK(encode_1d(encode_1d(a)) == a);
        CHECK(encode_1d(xor_bits(a, b)) == xor_bits(encode_1d(a), encode_1d(b)));
    }
}

TEST_CASE("index_map is the row-major bijection") {
    CHECK(index_map(0, 0, 2, 2) == 0);
    CHECK(index_map(0, 1, 2, 2) == 1);
    CHECK(index_map(1, 0, 2, 2) == 2);
    CHECK(index_map(1, 1, 2, 2) == 3);
    CHECK(index_map(3, 31, 4, 32) == 127);

    std::set<int> image;
    for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 8; ++t) {
            const int i = index_map(s, t, 4, 8);
            image.insert(i);
            CHECK(index_unmap(i, 4, 8) == std::pair{s, t});
        }
    CHECK(image.size() == 32);
    CHECK(*image.begin() == 0);
    CHECK(*image.rbegin() == 31);

    CHECK_THROWS_AS(index_map(4, 0, 4, 8), RangeError);
    CHECK_THROWS_AS(index_map(0, -1, 4, 8), RangeError);
    CHECK_THROWS_AS(index_unmap(32, 4, 8), RangeError);
}

TEST_CASE("encode_2d special cases at S=2,T=2") {
    CodeConfig cfg(2, 2, 4, {});
    BitMatrix z(2, 2);
    CHECK(encode_2d(z, cfg).data == BitMatrix(2, 2).data);

    BitMatrix one(2, 2);
    one.at(1, 1) = 1; // 1-D index 3
    const BitMatrix enc = encode_2d(one, cfg);
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
            CHECK(enc.at(s, t) == 1);

    BitMatrix bad(2, 3);
    CHECK_THROWS_AS(encode_2d(bad, cfg), DimensionError);
}

TEST_CASE("encode_2d equals devectorized encode_1d, exhaustive S=2 T=4") {
    CodeConfig cfg(2, 4, 8, {});
    for (std::uint32_t w = 0; w < 256; ++w) {
        BitVector u(8);
        for (int j = 0; j < 8; ++j)
            u[static_cast<std::size_t>(j)] = (w >> j) & 1u;
        const BitMatrix m2 = encode_2d(to_matrix(u, cfg), cfg);
        CHECK(to_vector(m2) == encode_1d(u));
    }
}

TEST_CASE("assemble_input places info bits at non-frozen indices") {
    CodeConfig cfg(2, 2, 2, {0, 1});
    CHECK(assemble_input({1, 0}, cfg) == BitVector{0, 0, 1, 0});
    CHECK_THROWS_AS(assemble_input({1, 0, 1}, cfg), DimensionError);

    CodeConfig full(2, 2, 4, {});
    const BitVector b{1, 0, 1, 1};
    CHECK(assemble_input(b, full) == b);
}

TEST_CASE("extract_info inverts assemble_input") {
    std::mt19937_64 eng(11);
    std::vector<int> frozen;
    for (int i = 0; i < 64; ++i)
        frozen.push_back(i * 2); // arbitrary N-K = 64 pattern in [0,128)
    CodeConfig cfg(4, 32, 64, frozen);
    for (int rep = 0; rep < 100; ++rep) {
        const BitVector info = random_bits(64, eng);
        CHECK(extract_info(assemble_input(info, cfg), cfg) == info);
    }
}

TEST_CASE("CodeConfig validates its invariants") {
    CHECK_THROWS_AS(CodeConfig(3, 2, 3, {0, 1, 2}), DimensionError); // S not a power of two
    CHECK_THROWS_AS(CodeConfig(2, 2, 2, {0}), DimensionError);       // wrong frozen size
    CHECK_THROWS_AS(CodeConfig(2, 2, 2, {0, 4}), RangeError);        // index out of range
    CHECK_THROWS_AS(CodeConfig(2, 2, 2, {1, 1}), DimensionError);    // duplicate
    CHECK_THROWS_AS(CodeConfig(2, 2, 0, {}), RangeError);            // K = 0
    CHECK_THROWS_AS(CodeConfig(2, 2, 5, {}), RangeError);            // K > N
}
