#include <doctest.h>

#include <random>

#include "idexp/field.hpp"

using namespace idexp;

TEST_CASE("rational arithmetic is exact") {
    Field q = Field::rationals();
    // 1/3 + 1/6 = 1/2
    FieldElement a = q.from_rat(Rat(1, 3));
    FieldElement b = q.from_rat(Rat(1, 6));
    CHECK(q.add(a, b) == q.from_rat(Rat(1, 2)));
    CHECK(q.str(q.add(a, b)) == "1/2");
}

TEST_CASE("prime field arithmetic") {
    Field f5 = Field::prime(5);
    CHECK(f5.mul(f5.from_int(3), f5.from_int(4)) == f5.from_int(2));
    CHECK(f5.div(f5.from_int(1), f5.from_int(2)) == f5.from_int(3));
    CHECK_THROWS_AS(f5.div(f5.one(), f5.zero()), FieldError);
}

TEST_CASE("rational function field basics") {
    Field k = Field::prime_function(2);
    FieldElement lam = k.lambda();
    CHECK(k.div(lam, lam) == k.one());
    // (lam^2+1)/lam round trips through arithmetic
    FieldElement num = k.add(k.mul(lam, lam), k.one());
    FieldElement e = k.div(num, lam);
    CHECK(k.mul(e, lam) == num);
    CHECK(k.str(lam) == "lam");
}

TEST_CASE("descriptor mismatch is an error") {
    Field q = Field::rationals();
    Field f3 = Field::prime(3);
    CHECK_THROWS_AS(q.add(q.one(), f3.one()), FieldError);
}

TEST_CASE("pthRoot on perfect prime fields never fails") {
    for (uint32_t p : {2u, 3u, 5u}) {
        Field f = Field::prime(p);
        for (uint32_t a = 0; a < p; ++a) {
            auto r = f.pth_root(f.from_int(a));
            REQUIRE(r.has_value());
            CHECK(f.pow(*r, p) == f.from_int(a));
        }
    }
}

TEST_CASE("lam has no p-th root") {
    Field k = Field::prime_function(2);
    CHECK_FALSE(k.pth_root(k.lambda()).has_value());
}

TEST_CASE("pthRoot(lam^3 + 1) = lam + 1 in F_3(lam)") {
    Field k = Field::prime_function(3);
    FieldElement lam = k.lambda();
    FieldElement cube = k.add(k.pow(lam, 3), k.one());
    // oracle: cube (lam + 1) and compare
    FieldElement root = k.add(lam, k.one());
    REQUIRE(k.pow(root, 3) == cube);
    auto r = k.pth_root(cube);
    REQUIRE(r.has_value());
    CHECK(*r == root);
}

TEST_CASE("pthRoot errors in characteristic zero") {
    Field q = Field::rationals();
    CHECK_THROWS_AS(q.pth_root(q.one()), FieldError);
}

namespace {

FieldElement random_element(const Field& k, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> small(-6, 6);
    switch (k.kind()) {
        case FieldKind::Rationals: {
            long n = small(rng);
            long d = 0;
            while (d == 0) d = small(rng);
            return k.from_rat(Rat(n, d));
        }
        case FieldKind::Prime:
            return k.from_int(small(rng));
        case FieldKind::PrimeFunction: {
            FieldElement lam = k.lambda();
            FieldElement num = k.add(k.from_int(small(rng)), k.mul(lam, k.from_int(small(rng))));
            FieldElement den = k.add(k.from_int(small(rng)), k.mul(lam, k.from_int(small(rng))));
            if (k.is_zero(den)) den = k.one();
            return k.div(num, den);
        }
    }
    return k.zero();
}

}  // namespace

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(12345);
    std::vector<Field> fields{Field::rationals(), Field::prime(3), Field::prime_function(2)};
    for (const Field& k : fields) {
        for (int i = 0; i < 60; ++i) {
            FieldElement a = random_element(k, rng);
            FieldElement b = random_element(k, rng);
            FieldElement c = random_element(k, rng);
            CHECK(k.add(a, k.add(b, c)) == k.add(k.add(a, b), c));
            CHECK(k.mul(a, k.mul(b, c)) == k.mul(k.mul(a, b), c));
            CHECK(k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c)));
            CHECK(k.add(a, k.neg(a)) == k.zero());
            if (!k.is_zero(a)) CHECK(k.mul(a, k.inverse(a)) == k.one());
        }
    }
}

TEST_CASE("pthRoot(a)^p = a whenever it succeeds") {
    std::mt19937_64 rng(777);
    for (const Field& k : {Field::prime(3), Field::prime_function(3)}) {
        for (int i = 0; i < 40; ++i) {
            FieldElement a = random_element(k, rng);
            auto r = k.pth_root(a);
            if (r) CHECK(k.pow(*r, k.characteristic()) == a);
            // p-th powers always admit the root
            FieldElement ap = k.pow(a, k.characteristic());
            auto rp = k.pth_root(ap);
            REQUIRE(rp.has_value());
            CHECK(*rp == a);
        }
    }
}

TEST_CASE("p-basis decomposition reassembles") {
    Field k = Field::prime_function(3);
    std::mt19937_64 rng(99);
    for (int i = 0; i < 30; ++i) {
        FieldElement a = random_element(k, rng);
        auto parts = k.p_basis_decompose(a);
        REQUIRE(parts.size() == 3);
        FieldElement back = k.zero();
        for (uint32_t j = 0; j < 3; ++j)
            back = k.add(back, k.mul(k.pow(parts[j], 3), k.pow(k.lambda(), j)));
        CHECK(back == a);
    }
}
