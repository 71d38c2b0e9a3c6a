#include <catch2/catch_amalgamated.hpp>

#include <codebound/bigint.hpp>

#include <cstdint>
#include <random>

using codebound::BigInt;
using codebound::Rat;

TEST_CASE("small-value arithmetic agrees with int64") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long long> dist(-1000000, 1000000);
    for (int k = 0; k < 2000; ++k) {
        long long a = dist(rng), b = dist(rng);
        REQUIRE((BigInt(a) + BigInt(b)).to_int64() == a + b);
        REQUIRE((BigInt(a) - BigInt(b)).to_int64() == a - b);
        REQUIRE((BigInt(a) * BigInt(b)).to_int64() == a * b);
        if (b != 0) {
            BigInt q, r;
            divmod(BigInt(a), BigInt(b), q, r);
            REQUIRE(q.to_int64() == a / b);
            REQUIRE(r.to_int64() == a % b);
        }
        REQUIRE((BigInt(a) < BigInt(b)) == (a < b));
    }
}

TEST_CASE("frozen large-value cases") {
    BigInt two(2), p(1);
    for (int i = 0; i < 100; ++i) p *= two;
    REQUIRE(p.to_string() == "1267650600228229401496703205376");

    BigInt fact(1);
    for (int i = 2; i <= 30; ++i) fact *= BigInt(i);
    REQUIRE(fact.to_string() == "265252859812191058636308480000000");

    BigInt t(1);
    for (int i = 0; i < 50; ++i) t *= BigInt(3);
    REQUIRE(t.to_string() == "717897987691852588770249");

    BigInt x("123456789123456789123456789");
    BigInt y("987654321987654321");
    REQUIRE((x * y).to_string() == "121932631356500531469135800347203169112635269");
}

TEST_CASE("long division, signs truncate toward zero") {
    BigInt a = BigInt("10000000000000000000000000000000000000000") + BigInt(12345);
    BigInt b = BigInt("100000000000000000000") - BigInt(3);
    BigInt q, r;
    divmod(a, b, q, r);
    REQUIRE(q.to_string() == "100000000000000000003");
    REQUIRE(r.to_string() == "12354");

    BigInt c("-22539340290692258087863249");
    BigInt d("3138428376721");
    divmod(c, d, q, r);
    REQUIRE(q.to_string() == "-7181728427475");
    REQUIRE(r.to_string() == "-833861053774");
    REQUIRE(q * d + r == c);
}

TEST_CASE("division round-trip property") {
    std::mt19937_64 rng(777);
    auto random_big = [&](int limbs) {
        BigInt v(0);
        for (int i = 0; i < limbs; ++i)
            v = v * BigInt("4294967296") + BigInt(static_cast<long long>(rng() & 0xffffffffull));
        if (rng() & 1) v = -v;
        return v;
    };
    for (int k = 0; k < 300; ++k) {
        BigInt a = random_big(1 + static_cast<int>(rng() % 6));
        BigInt b = random_big(1 + static_cast<int>(rng() % 4));
        if (b.is_zero()) continue;
        BigInt q, r;
        divmod(a, b, q, r);
        REQUIRE(q * b + r == a);
        REQUIRE(r.abs() < b.abs());
        if (!r.is_zero()) REQUIRE(r.is_negative() == a.is_negative());
    }
}

TEST_CASE("gcd and to_double") {
    BigInt f20(1);
    for (int i = 2; i <= 20; ++i) f20 *= BigInt(i);
    BigInt m = BigInt(1);
    for (int i = 0; i < 40; ++i) m *= BigInt(2);
    for (int i = 0; i < 10; ++i) m *= BigInt(3);
    REQUIRE(BigInt::gcd(f20, m).to_string() == "1719926784");

    BigInt p(1);
    for (int i = 0; i < 100; ++i) p *= BigInt(2);
    REQUIRE(p.to_double() == 0x1.0p+100);
    REQUIRE((-p).to_double() == -0x1.0p+100);
    REQUIRE(BigInt(0).to_double() == 0.0);
}

TEST_CASE("rationals reduce and compute exactly") {
    Rat a(BigInt(6), BigInt(-8));
    REQUIRE(a.num().to_string() == "-3");
    REQUIRE(a.den().to_string() == "4");

    Rat b(BigInt(1), BigInt(3));
    Rat s = a + b;  // -3/4 + 1/3 = -5/12
    REQUIRE(s.num().to_string() == "-5");
    REQUIRE(s.den().to_string() == "12");
    REQUIRE((a * b).to_string() == "-1/4");
    REQUIRE((a / b).to_string() == "-9/4");
    REQUIRE(Rat(0) == Rat(BigInt(0), BigInt(17)));

    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long long> dist(-50, 50);
    for (int k = 0; k < 500; ++k) {
        long long n1 = dist(rng), n2 = dist(rng);
        long long d1 = dist(rng), d2 = dist(rng);
        if (d1 == 0 || d2 == 0) continue;
        Rat x{BigInt(n1), BigInt(d1)};
        Rat y{BigInt(n2), BigInt(d2)};
        Rat lhs = (x + y) * (x - y);
        Rat rhs = x * x - y * y;
        REQUIRE(lhs == rhs);
    }
}
