#include <doctest.h>

#include <random>

#include "idexp/cone.hpp"

using namespace idexp;

namespace {

Polynomial parse(const Ring& r, const std::string& s) { return parse_polynomial(r, s); }

// the running example E = (<f1,f2,f3>, p^2+1) on (x,y,z,t,u,v)
Pair running_example(uint32_t p) {
    Ring r(Field::prime(p), {"x", "y", "z", "t", "u", "v"});
    long p2 = static_cast<long>(p) * p;
    auto P = [&](long e) { return std::to_string(e); };
    Polynomial f1 = parse(r, "x*y^" + P(p2) + " - x*t^3*u^" + P(p2));
    Polynomial f2 = parse(r, "z^" + P(p2 - p + 1) + "*(t + u)^" + P(p) + " - v^" + P(p2 * p));
    Polynomial f3 = parse(r, "t^" + P(p2 + 2) + " - u^" + P(p2 + 1) + "*v");
    return Pair::single(r, {f1, f2, f3}, Rat(p2 + 1), /*standard_basis=*/true);
}

// E' = (<f1', f2'>, p^2) over F_p(lam) on (x,y,z,t,u,v); the unit eps is the
// constant lam itself
Pair running_example_imperfect(uint32_t p) {
    Ring r(Field::prime_function(p), {"x", "y", "z", "t", "u", "v"});
    long p2 = static_cast<long>(p) * p;
    auto P = [&](long e) { return std::to_string(e); };
    Polynomial f1 =
        parse(r, "(x^" + P(p) + " + lam*y^" + P(p) + ")*z^" + P(p2 - p) + " + t*u*v^" + P(p2));
    Polynomial f2 = parse(r, "z^" + P(p2) + " + u^" + P(p2) + " + lam*(x^" + P(p) + " + lam*y^" +
                                 P(p) + ")^" + P(p) + " + v^" + P(p2 + 1));
    return Pair::single(r, {f1, f2}, Rat(p2), /*standard_basis=*/true);
}

}  // namespace

TEST_CASE("tangent cone of the running example") {
    for (uint32_t p : {2u, 3u}) {
        CAPTURE(p);
        Pair e = running_example(p);
        TangentConePair c = tangent_cone_pair(e);
        long p2 = static_cast<long>(p) * p;
        CHECK(c.weight == Rat(p2 + 1));
        const Ring& g = c.graded_ring;
        Polynomial in1 = parse(g, "X*Y^" + std::to_string(p2));
        Polynomial in2 = parse(g, "Z^" + std::to_string(p2 - p + 1) + "*(T + U)^" +
                                      std::to_string(p));
        // in(f3, b) = 0, so exactly two generators survive
        CHECK(c.gens == normalize_generators({in1, in2}));
    }
}

TEST_CASE("tangent cone of the imperfect-field example") {
    uint32_t p = 2;
    Pair e = running_example_imperfect(p);
    TangentConePair c = tangent_cone_pair(e);
    const Ring& g = c.graded_ring;
    Polynomial in1 = parse(g, "(X^2 + lam*Y^2)*Z^2");
    Polynomial in2 = parse(g, "Z^4 + U^4 + lam*(X^2 + lam*Y^2)^2");
    CHECK(c.gens == normalize_generators({in1, in2}));
}

TEST_CASE("tangent cone of (x, 1)") {
    Ring r(Field::rationals(), {"x", "y"});
    TangentConePair c = tangent_cone_pair(Pair::single(r, {parse(r, "x")}, Rat(1)));
    CHECK(c.weight == Rat(1));
    REQUIRE(c.gens.size() == 1);
    CHECK(c.gens[0] == parse(c.graded_ring, "X"));
    CHECK_THROWS_AS(tangent_cone_pair(Pair::single(r, {parse(r, "x + 1")}, Rat(1))), PairError);
}

TEST_CASE("stabilizer ideals of small cones") {
    Ring r(Field::rationals(), {"x", "y"});
    // C = <XY>, b = 2: only the trivial translation
    {
        TangentConePair c = tangent_cone_pair(Pair::single(r, {parse(r, "x*y")}, Rat(2)));
        StabilizerIdeal st = stabilizer_ideal(c);
        const Ring& t = st.t_ring;
        CHECK(ideal_equal(st.gens, {parse(t, "T_X"), parse(t, "T_Y"),
                                    parse(t, "T_X*T_Y")}));
        CHECK(radical_member(parse(t, "T_X"), st.gens));
        CHECK(radical_member(parse(t, "T_Y"), st.gens));
    }
    // C = <X>, b = 1
    {
        TangentConePair c = tangent_cone_pair(Pair::single(r, {parse(r, "x")}, Rat(1)));
        StabilizerIdeal st = stabilizer_ideal(c);
        CHECK(ideal_equal(st.gens, {parse(st.t_ring, "T_X")}));
    }
    // C = <X^2> in characteristic 2: the group scheme alpha_2
    {
        Ring r2(Field::prime(2), {"x", "y"});
        TangentConePair c = tangent_cone_pair(Pair::single(r2, {parse(r2, "x^2")}, Rat(2)));
        StabilizerIdeal st = stabilizer_ideal(c);
        CHECK(ideal_equal(st.gens, {parse(st.t_ring, "T_X^2")}));
        RidgePresentation rp = ridge(c);
        REQUIRE(rp.sigmas.size() == 1);
        CHECK(rp.sigmas[0] == parse(c.graded_ring, "X^2"));
        CHECK(rp.degrees[0] == 2);
        DirectrixPresentation dp = directrix_from_ridge(c, rp);
        REQUIRE(dp.forms.size() == 1);
        CHECK(dp.forms[0] == parse(c.graded_ring, "X"));
        // sigma = X^2 is the square of the directrix form X, so the REDUCED
        // ridge does coincide with the directrix here
        CHECK(reduced_ridge_equals_directrix(rp, dp));
    }
}

TEST_CASE("stabilizer rational points match brute-force translation checks") {
    // small seeded sample; the acceptance suite runs the full oracle
    std::mt19937_64 rng(515);
    std::uniform_int_distribution<uint32_t> pick(0, 2);
    for (uint32_t p : {2u, 3u}) {
        Field k = Field::prime(p);
        Ring r(k, {"x", "y"});
        for (int trial = 0; trial < 8; ++trial) {
            long b = 2 + static_cast<long>(pick(rng));
            Polynomial f = Polynomial::zero(r);
            for (int t = 0; t < 3; ++t) {
                uint32_t a = pick(rng) % (b + 1) ? pick(rng) : 0;
                uint32_t e1 = std::min<uint32_t>(a + pick(rng), static_cast<uint32_t>(b));
                Exponents e{e1, static_cast<uint32_t>(b) - e1};
                f.add_term(e, k.from_int(1 + static_cast<long>(pick(rng))));
            }
            if (f.is_zero()) continue;
            Pair e = Pair::single(r, {f}, Rat(b));
            TangentConePair c = tangent_cone_pair(e);
            if (c.gens.empty()) continue;
            StabilizerIdeal st = stabilizer_ideal(c);
            for (uint32_t a0 = 0; a0 < p; ++a0) {
                for (uint32_t a1 = 0; a1 < p; ++a1) {
                    std::vector<FieldElement> tv{k.from_int(a0), k.from_int(a1)};
                    bool in_locus = true;
                    for (const auto& g : st.gens)
                        if (!k.is_zero(evaluate(g, tv))) in_locus = false;
                    // brute force: translate the cone and compare ideals
                    std::vector<Polynomial> shifted;
                    for (const auto& g : c.gens) shifted.push_back(shift_to_point(g, tv));
                    bool stable = ideal_equal(shifted, c.gens);
                    CHECK(in_locus == stable);
                }
            }
        }
    }
}

TEST_CASE("ridge and directrix of the running example") {
    for (uint32_t p : {2u, 3u}) {
        CAPTURE(p);
        Pair e = running_example(p);
        TangentConePair c = tangent_cone_pair(e);
        RidgePresentation rp = ridge(c);
        const Ring& g = c.graded_ring;
        long p2 = static_cast<long>(p) * p;
        REQUIRE(rp.sigmas.size() == 4);
        CHECK(rp.sigmas[0] == parse(g, "X"));
        CHECK(rp.sigmas[1] == parse(g, "Z"));
        CHECK(rp.sigmas[2] == parse(g, "T^" + std::to_string(p) + " + U^" + std::to_string(p)));
        CHECK(rp.sigmas[3] == parse(g, "Y^" + std::to_string(p2)));
        CHECK(rp.degrees == std::vector<unsigned long>{1, 1, static_cast<unsigned long>(p),
                                                       static_cast<unsigned long>(p2)});
        DirectrixPresentation dp = directrix_from_ridge(c, rp);
        REQUIRE(dp.forms.size() == 4);
        CHECK(dp.forms[0] == parse(g, "X"));
        CHECK(dp.forms[1] == parse(g, "Y"));
        CHECK(dp.forms[2] == parse(g, "Z"));
        CHECK(dp.forms[3] == parse(g, "T + U"));
        CHECK(reduced_ridge_equals_directrix(rp, dp));
    }
}

TEST_CASE("ridge and directrix over the imperfect field") {
    for (uint32_t p : {2u, 3u}) {
        CAPTURE(p);
        Pair e = running_example_imperfect(p);
        TangentConePair c = tangent_cone_pair(e);
        RidgePresentation rp = ridge(c);
        const Ring& g = c.graded_ring;
        long p2 = static_cast<long>(p) * p;
        auto P = [&](long v) { return std::to_string(v); };
        REQUIRE(rp.sigmas.size() == 3);
        CHECK(rp.sigmas[0] == parse(g, "X^" + P(p) + " + lam*Y^" + P(p)));
        CHECK(rp.sigmas[1] == parse(g, "Z^" + P(p)));
        CHECK(rp.sigmas[2] == parse(g, "U^" + P(p2)));
        DirectrixPresentation dp = directrix_from_ridge(c, rp);
        REQUIRE(dp.forms.size() == 4);
        CHECK(dp.forms[0] == parse(g, "X"));
        CHECK(dp.forms[1] == parse(g, "Y"));
        CHECK(dp.forms[2] == parse(g, "Z"));
        CHECK(dp.forms[3] == parse(g, "U"));
        CHECK_FALSE(reduced_ridge_equals_directrix(rp, dp));
    }
}

TEST_CASE("characteristic zero collapse") {
    Ring r(Field::rationals(), {"x", "y"});
    TangentConePair c = tangent_cone_pair(Pair::single(r, {parse(r, "x^2")}, Rat(2)));
    RidgePresentation rp = ridge(c);
    REQUIRE(rp.sigmas.size() == 1);
    CHECK(rp.degrees[0] == 1);
    CHECK(rp.sigmas[0] == parse(c.graded_ring, "X"));
    DirectrixPresentation dp = directrix_from_ridge(c, rp);
    CHECK(reduced_ridge_equals_directrix(rp, dp));
}

TEST_CASE("generation certificates and minimality") {
    for (uint32_t p : {2u, 3u}) {
        Pair e = running_example(p);
        TangentConePair c = tangent_cone_pair(e);
        RidgePresentation rp = ridge(c);
        CHECK(generation_holds(c, rp.sigmas, rp.degrees));
        // dropping any single generator must break the generation property
        for (size_t i = 0; i < rp.sigmas.size(); ++i) {
            std::vector<Polynomial> sg;
            std::vector<unsigned long> dg;
            for (size_t j = 0; j < rp.sigmas.size(); ++j) {
                if (j == i) continue;
                sg.push_back(rp.sigmas[j]);
                dg.push_back(rp.degrees[j]);
            }
            CHECK_FALSE(generation_holds(c, sg, dg));
        }
        // each sigma vanishes on the directrix subspace
        DirectrixPresentation dp = directrix_from_ridge(c, rp);
        Mat rows;
        for (const auto& f : dp.forms) rows.push_back(additive_coefficients(f, 1));
        std::vector<size_t> piv = rref(c.graded_ring.field(), rows);
        for (size_t i = 0; i < rp.sigmas.size(); ++i) {
            // the q-th-root linear forms of sigma must be directrix forms
            Polynomial root = rp.sigmas[i];
            unsigned long q = rp.degrees[i];
            while (q > 1) {
                auto s = poly_pth_root(root);
                REQUIRE(s.has_value());
                root = *s;
                q /= p;
            }
            Vec v = additive_coefficients(root, 1);
            CHECK(is_zero_vec(c.graded_ring.field(),
                              reduce_row(c.graded_ring.field(), rows, piv, v)));
        }
        CHECK(dp.forms.size() <= c.graded_ring.nvars());
        CHECK(rp.sigmas.size() <= c.graded_ring.nvars());
    }
}
