#include <doctest.h>

#include <random>

#include "avlg/fingerprint.hpp"
#include "oracles.hpp"

using avlg::DedupMap;
using avlg::Fingerprint;
using avlg::FingerprintContext;

TEST_CASE("fingerprint of short strings with q=7, r=3") {
    const FingerprintContext ctx(7, 3);
    CHECK(ctx.of("").value == 0);
    CHECK(ctx.of(std::string{'\1', '\2'}).value == 5);
    CHECK(ctx.concat(ctx.of("\1"), 1, ctx.of("\2")).value == 5);
    CHECK(ctx.concat(ctx.of("\1\2"), 0, ctx.of("")).value == 5);
}

TEST_CASE("seeded context") {
    const FingerprintContext a(42), b(42), c(43);
    CHECK(a.modulus() == FingerprintContext::kMersenne61);
    CHECK(a.base() >= 1);
    CHECK(a.base() < a.modulus());
    CHECK(a.base() == b.base());
    CHECK(a.base() != c.base());
}

TEST_CASE("arithmetic matches direct evaluation") {
    std::mt19937_64 rng(1);
    for (std::uint64_t q : {FingerprintContext::kMersenne61, std::uint64_t{1000000007}, std::uint64_t{7}}) {
        const FingerprintContext ctx(q, 1 + rng() % (q - 1));
        for (int k = 0; k < 10000; ++k) {
            const std::uint64_t a = rng() % q, b = rng() % q;
            REQUIRE(ctx.mul(a, b) == static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q));
            REQUIRE(ctx.add(a, b) == (a + b) % q);
            const std::uint64_t e = k < 5000 ? rng() % 5000 : rng();
            REQUIRE(ctx.pow(e) == oracle::pow_mod(ctx.base(), e, q));
        }
    }
    // Values just below the Mersenne modulus exercise the final reduction.
    const FingerprintContext m(FingerprintContext::kMersenne61, 3);
    const std::uint64_t top = FingerprintContext::kMersenne61 - 1;
    CHECK(m.mul(top, top) == 1);
    CHECK(m.mul(top, 1) == top);
}

TEST_CASE("string fingerprints match oracle and are deterministic") {
    std::mt19937_64 rng(2);
    const FingerprintContext ctx(99);
    for (int k = 0; k < 10000; ++k) {
        const std::string s = oracle::random_string(rng, rng() % 64, 256);
        const Fingerprint f = ctx.of(s);
        REQUIRE(f.value < ctx.modulus());
        REQUIRE(f.value == oracle::fingerprint(ctx.modulus(), ctx.base(), s));
        REQUIRE(ctx.of(std::string(s)) == f);
    }
}

TEST_CASE("concatenation homomorphism") {
    std::mt19937_64 rng(3);
    const FingerprintContext ctx(5);
    for (int k = 0; k < 100000; ++k) {
        const std::string u = oracle::random_string(rng, rng() % 40, 256);
        const std::string v = oracle::random_string(rng, rng() % 40, 256);
        REQUIRE(ctx.concat(ctx.of(u), v.size(), ctx.of(v)) == ctx.of(u + v));
    }
    Fingerprint acc{};
    std::string s = oracle::random_string(rng, 300, 256);
    for (unsigned char c : s)
        acc = ctx.extend(acc, c);
    CHECK(acc == ctx.of(s));
}

TEST_CASE("collision frequency") {
    std::mt19937_64 rng(4);
    // Full modulus: no collisions expected at all in 10^6 trials.
    {
        const FingerprintContext ctx(6);
        int collisions = 0;
        for (int k = 0; k < 1000000; ++k) {
            const std::size_t len = k < 990000 ? 1 + rng() % 32 : 1 + rng() % 1000;
            const std::string u = oracle::random_string(rng, len, 256);
            std::string v = oracle::random_string(rng, len, 256);
            if (u == v)
                continue;
            collisions += ctx.of(u) == ctx.of(v);
        }
        CHECK(collisions == 0);
    }
    // Small prime: the observed rate must respect 10 * len / q.
    {
        const std::uint64_t q = 10007, len = 16;
        const FingerprintContext ctx(q, 1 + rng() % (q - 1));
        int collisions = 0, trials = 0;
        for (int k = 0; k < 1000000; ++k) {
            const std::string u = oracle::random_string(rng, len, 256);
            const std::string v = oracle::random_string(rng, len, 256);
            if (u == v)
                continue;
            ++trials;
            collisions += ctx.of(u) == ctx.of(v);
        }
        CHECK(static_cast<double>(collisions) / trials < 10.0 * len / q);
    }
}

TEST_CASE("dedup lookup") {
    const FingerprintContext ctx(8);
    DedupMap m(1.0, 1);
    CHECK_FALSE(m.lookup(ctx.of("ab"), 2));

    CHECK(m.offer(17, ctx.of("ab"), 2));
    CHECK(m.lookup(ctx.of("ab"), 2) == std::optional<avlg::NodeId>(17));
    // Same fingerprint, different length: the length guard must reject.
    CHECK_FALSE(m.lookup(ctx.of("ab"), 3));

    // With q=7 distinct strings of different lengths share a fingerprint.
    const FingerprintContext tiny(7, 3);
    DedupMap t(1.0, 1);
    const Fingerprint f1 = tiny.of("\1\2");
    const Fingerprint f2 = tiny.of(std::string{'\5'});
    REQUIRE(f1 == f2);
    t.insert(1, f1, 2);
    CHECK_FALSE(t.lookup(f2, 1));

    // First writer wins.
    CHECK_FALSE(m.insert(99, ctx.of("ab"), 2));
    CHECK(m.lookup(ctx.of("ab"), 2) == std::optional<avlg::NodeId>(17));
}

TEST_CASE("dedup sampling probability") {
    const FingerprintContext ctx(9);
    DedupMap never(0.0, 5), always(1.0, 5);
    for (avlg::NodeId id = 0; id < 1000; ++id) {
        CHECK_FALSE(never.offer(id, {id}, 1));
        CHECK(always.offer(id, {id}, 1));
    }
    CHECK(never.empty());
    CHECK(always.size() == 1000);

    DedupMap half(0.5, 6);
    std::size_t stored = 0;
    for (avlg::NodeId id = 0; id < 100000; ++id)
        stored += half.offer(id, {id}, 1);
    CHECK(static_cast<double>(stored) / 100000 == doctest::Approx(0.5).epsilon(0.02));
    CHECK(stored >= 49000);
    CHECK(stored <= 51000);

    DedupMap a(0.3, 77), b(0.3, 77);
    for (avlg::NodeId id = 0; id < 1000; ++id)
        REQUIRE(a.offer(id, {id}, 1) == b.offer(id, {id}, 1));
}
