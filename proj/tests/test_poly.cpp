#include <doctest.h>

#include <random>

#include "idexp/poly.hpp"

using namespace idexp;

namespace {

Ring ring_q_xyz() { return Ring(Field::rationals(), {"x", "y", "z"}); }

Polynomial parse(const Ring& r, const std::string& s) { return parse_polynomial(r, s); }

}  // namespace

TEST_CASE("order at the origin") {
    Ring r = ring_q_xyz();
    CHECK(*order_at_origin(parse(r, "x^3 - y^3*z^2")) == 3);
    CHECK_FALSE(order_at_origin(Polynomial::zero(r)).has_value());
    // p = 2 shape of the running hypersurface example: order p^2 + 1 = 5
    Ring r2(Field::prime(2), {"y", "z", "u1", "u2"});
    Polynomial f = parse(r2, "y^5 + z^9 + u1^10*u2^2");
    CHECK(*order_at_origin(f) == 5);
}

TEST_CASE("order along coordinate subspaces") {
    Ring r = ring_q_xyz();
    Polynomial f = parse(r, "x^3 - y^3*z^2");
    CHECK(*order_along(f, {0, 2}) == 2);  // {x,z}
    CHECK(*order_along(f, {0, 1}) == 3);  // {x,y}
    CHECK(*order_along(f, {0, 1, 2}) == *order_at_origin(f));
}

TEST_CASE("Hasse derivative examples") {
    // p = 2: D_{Y^4}(X Y^4) = X
    Ring r2(Field::prime(2), {"x", "y"});
    Polynomial f = parse(r2, "x*y^4");
    Polynomial d = hasse_derivative(f, {0, 4});
    CHECK(d == parse(r2, "x"));
    // |N| > deg f kills everything
    CHECK(hasse_derivative(f, {6, 0}).is_zero());
    // char 0: D_{y^2}(y^3 + 3 y^2 z) = 3y + 3z = (1/2!) d^2/dy^2
    Ring rq(Field::rationals(), {"y", "z"});
    Polynomial g = parse(rq, "y^3 + 3*y^2*z");
    CHECK(hasse_derivative(g, {2, 0}) == parse(rq, "3*y + 3*z"));
}

TEST_CASE("Leibniz-type composition on random monomials") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<uint32_t> ed(0, 5);
    for (const Field& k : {Field::rationals(), Field::prime(2), Field::prime(3)}) {
        Ring r(k, {"x", "y"});
        for (int i = 0; i < 50; ++i) {
            Exponents b{ed(rng), ed(rng)}, n{ed(rng) % 3, ed(rng) % 3}, m{ed(rng) % 3, ed(rng) % 3};
            Polynomial mono = Polynomial::monomial(r, b, k.one());
            Polynomial lhs = hasse_derivative(hasse_derivative(mono, m), n);
            Exponents nm = exp_add(n, m);
            mpz_class c = 1;
            for (size_t j = 0; j < nm.size(); ++j) {
                mpz_class bi;
                mpz_bin_uiui(bi.get_mpz_t(), nm[j], n[j]);
                c *= bi;
            }
            Polynomial rhs = hasse_derivative(mono, nm).scaled(k.from_rat(Rat(c)));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("substitution examples") {
    Ring r(Field::rationals(), {"y", "z", "w"});
    Polynomial f = parse(r, "y^3 + 3*y^2*z + 3*y*z^2 + z^3 + z^5");
    Polynomial img = parse(r, "w - z");
    Polynomial g = substitute_vars(f, {{0, img}});
    CHECK(g == parse(r, "w^3 + z^5"));

    Ring rx = ring_q_xyz();
    Polynomial h = parse(rx, "x^3 - y^3*z^2");
    CHECK(substitute_vars(h, {}) == h);
    // blowup chart map x -> x*y
    Polynomial t = substitute_vars(h, {{0, parse(rx, "x*y")}});
    CHECK(t == parse(rx, "y^3*(x^3 - z^2)"));
}

TEST_CASE("order is multiplicative") {
    std::mt19937_64 rng(1717);
    Ring r(Field::prime(3), {"x", "y", "z"});
    std::uniform_int_distribution<uint32_t> ed(0, 3);
    std::uniform_int_distribution<long> cd(1, 2);
    auto random_poly = [&]() {
        Polynomial f = Polynomial::zero(r);
        for (int t = 0; t < 4; ++t)
            f.add_term({ed(rng), ed(rng), ed(rng)}, r.field().from_int(cd(rng)));
        return f;
    };
    for (int i = 0; i < 60; ++i) {
        Polynomial f = random_poly(), g = random_poly();
        if (f.is_zero() || g.is_zero()) continue;
        CHECK(*order_at_origin(f * g) == *order_at_origin(f) + *order_at_origin(g));
    }
}

TEST_CASE("initial forms") {
    // p = 2 instances of the running example's generators
    Ring r(Field::prime(2), {"x", "y", "z", "t", "u", "v"});
    Polynomial f1 = parse(r, "x*y^4 + x*t^3*u^4");       // p^2 = 4, b = 5
    Polynomial f3 = parse(r, "t^6 + u^5*v");             // order p^2+2 = 6
    CHECK(initial_form(f3, Rat(5)).is_zero());
    CHECK(initial_form(f1, Rat(5)) == parse(r, "x*y^4"));
    CHECK(initial_form(f1, Rat(3, 2)).is_zero());
    Polynomial f = parse(r, "x^2 + y^3");
    CHECK(initial_form(f, Rat(*order_at_origin(f))) == parse(r, "x^2"));
    CHECK(is_homogeneous(initial_form(f, Rat(2))));
}

namespace {

// independent oracle: iterated division by the y-variables, following the
// recursive construction (peel y one power at a time)
std::map<Exponents, Polynomial> expansion_oracle(const Polynomial& f, long bound) {
    const Ring& r = f.ring();
    std::map<Exponents, Polynomial> out;
    // collect terms directly by y-degree, dividing off the y part
    for (const auto& [e, c] : f.terms()) {
        Exponents ypart(e.size(), 0);
        long ydeg = 0;
        for (size_t i : r.y_indices()) {
            ypart[i] = e[i];
            ydeg += e[i];
        }
        if (ydeg >= bound) continue;
        Exponents upart(e);
        for (size_t i : r.y_indices()) upart[i] = 0;
        auto it = out.find(ypart);
        if (it == out.end()) it = out.emplace(ypart, Polynomial::zero(r)).first;
        it->second.add_term(upart, c);
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero()) it = out.erase(it);
        else ++it;
    }
    return out;
}

}  // namespace

TEST_CASE("coefficient expansion") {
    // ring ((y,z);(x)), f = x^2 + g(y,z), b = 2
    Ring r(Field::rationals(), {"x", "y", "z"}, {1, 2}, {0});
    Polynomial g = parse(r, "y^3 + 3*y^2*z + 3*y*z^2 + z^3 + z^5");
    Polynomial f = parse(r, "x^2") + g;
    CoeffExpansion ex = coefficient_expansion(f, Rat(2));
    Exponents b0{0, 0, 0};
    REQUIRE(ex.coeffs.count(b0) == 1);
    CHECK(ex.coeffs.at(b0) == g);
    CHECK(ex.coeffs.size() == 1);  // f_(1) = 0 dropped
    CHECK(ex.remainder == parse(r, "x^2"));

    // f in <y>^b: everything lands in the remainder
    CoeffExpansion ex2 = coefficient_expansion(parse(r, "x^2*y"), Rat(2));
    CHECK(ex2.coeffs.empty());

    // derived case: f = y^2 u + y u^3 + u^7, split ((u);(y)), b = 2
    Ring r2(Field::rationals(), {"u", "y"}, {0}, {1});
    Polynomial f2 = parse(r2, "y^2*u + y*u^3 + u^7");
    CoeffExpansion ex3 = coefficient_expansion(f2, Rat(2));
    auto oracle = expansion_oracle(f2, 2);
    REQUIRE(ex3.coeffs.size() == oracle.size());
    for (const auto& [k, v] : oracle) CHECK(ex3.coeffs.at(k) == v);
    CHECK(ex3.coeffs.at(Exponents{0, 0}) == parse(r2, "u^7"));
    CHECK(ex3.coeffs.at(Exponents{0, 1}) == parse(r2, "u^3"));
}

TEST_CASE("coefficient expansion reassembles exactly") {
    std::mt19937_64 rng(31337);
    Ring r(Field::prime(2), {"u", "v", "y"}, {0, 1}, {2});
    std::uniform_int_distribution<uint32_t> ed(0, 4);
    for (int i = 0; i < 40; ++i) {
        Polynomial f = Polynomial::zero(r);
        for (int t = 0; t < 5; ++t) f.add_term({ed(rng), ed(rng), ed(rng)}, r.field().one());
        CoeffExpansion ex = coefficient_expansion(f, Rat(3));
        Polynomial back = ex.remainder;
        for (const auto& [b, fb] : ex.coeffs)
            back = back + fb * Polynomial::monomial(r, b, r.field().one());
        CHECK(back == f);
    }
}

TEST_CASE("polynomial roots") {
    Ring r2(Field::prime(2), {"t", "u"});
    Polynomial tu = parse(r2, "t^2 + u^2");
    auto root = poly_pth_root(tu);
    REQUIRE(root.has_value());
    CHECK(*root == parse(r2, "t + u"));
    CHECK_FALSE(poly_pth_root(parse(r2, "t^2 + t*u")).has_value());

    Ring rq(Field::rationals(), {"z"});
    auto r5 = poly_nth_root(parse(rq, "z^5"), 5);
    REQUIRE(r5.has_value());
    CHECK(*r5 == parse(rq, "z"));
}

TEST_CASE("evaluation and translation") {
    Ring r = ring_q_xyz();
    Polynomial f = parse(r, "x^2 + y - z");
    const Field& k = r.field();
    std::vector<FieldElement> pt{k.from_int(2), k.from_int(1), k.from_int(5)};
    CHECK(evaluate(f, pt) == k.from_int(0));
    Polynomial shifted = shift_to_point(f, pt);
    std::vector<FieldElement> zero{k.zero(), k.zero(), k.zero()};
    CHECK(evaluate(shifted, zero) == k.from_int(0));
    CHECK(*order_at_origin(shifted) >= 1);
}

TEST_CASE("parser rejects bad input with positions") {
    Ring r = ring_q_xyz();
    CHECK_THROWS_AS(parse(r, "x + w"), ParseError);
    CHECK_THROWS_AS(parse(r, "x ^ -2"), ParseError);
    CHECK_THROWS_AS(parse(r, "x / y"), ParseError);
    CHECK(parse(r, "2/4") == Polynomial::constant(r, r.field().from_rat(Rat(1, 2))));
}

TEST_CASE("rational function literals in polynomial text") {
    Ring r(Field::prime_function(2), {"x", "y"});
    Polynomial f = parse(r, "(lam^2 + 1)/lam * x + 2/1 * y");
    const Field& k = r.field();
    FieldElement lam = k.lambda();
    FieldElement want = k.div(k.add(k.mul(lam, lam), k.one()), lam);
    Exponents ex{1, 0};
    CHECK(f.coeff(ex) == want);
    // 2 = 0 mod 2, so the y term vanishes
    Exponents ey{0, 1};
    CHECK(k.is_zero(f.coeff(ey)));
    CHECK(parse(r, to_string(f)) == f);
}

TEST_CASE("to_string round trips through the parser") {
    std::mt19937_64 rng(555);
    Ring r(Field::prime_function(3), {"x", "y"});
    std::uniform_int_distribution<uint32_t> ed(0, 3);
    std::uniform_int_distribution<long> cd(-4, 4);
    for (int i = 0; i < 30; ++i) {
        Polynomial f = Polynomial::zero(r);
        for (int t = 0; t < 4; ++t) {
            FieldElement c = r.field().add(r.field().from_int(cd(rng)),
                                           r.field().mul(r.field().lambda(),
                                                         r.field().from_int(cd(rng))));
            f.add_term({ed(rng), ed(rng)}, c);
        }
        CHECK(parse(r, to_string(f)) == f);
    }
}
