#include <catch2/catch_amalgamated.hpp>

#include <towerforge/polys.hpp>

#include <algorithm>
#include <random>

using namespace towerforge;

namespace {

MPoly random_mpoly(std::mt19937_64& rng, const FieldCtx& K,
                   const std::vector<Var>& pool, int max_terms, int max_exp) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> exp(0, max_exp);
    std::uniform_int_distribution<i64> coeff(0, i64(K.size()) - 1);
    auto elems = K.enumerate();
    MPoly f = MPoly::zero(K);
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        std::vector<std::pair<Var, std::uint32_t>> mono;
        for (Var v : pool) {
            int e = exp(rng);
            if (e) mono.emplace_back(v, std::uint32_t(e));
        }
        f.add_term(mono, elems[std::size_t(coeff(rng))]);
    }
    return f;
}

FieldElem random_elem(std::mt19937_64& rng, const FieldCtx& K) {
    auto elems = K.enumerate();
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
    return elems[pick(rng)];
}

} // namespace

TEST_CASE("mpoly arithmetic basics") {
    auto F3 = make_prime_field(3);
    MPoly T = MPoly::variable(F3, Var::T);
    MPoly s = MPoly::variable(F3, Var::s);
    MPoly one = MPoly::constant(F3, 1);

    MPoly f = T * T + s * T + MPoly::constant(F3, 2);
    REQUIRE(f.degree(Var::T) == 2);
    REQUIRE(f.degree(Var::s) == 1);
    REQUIRE(f.total_degree() == 2);
    REQUIRE(f.to_string() == "T^2 + T*s + 2");

    REQUIRE((f - f).is_zero());
    REQUIRE(f + f + f == MPoly::zero(F3));  // char 3
    REQUIRE((T + one).pow(3) == T * T * T + one);  // freshman's dream
    REQUIRE(-f == f + f);

    // cross-variable cancellation keeps the form canonical
    MPoly g = (T + s) * (T - s);
    REQUIRE(g == T * T - s * s);
    REQUIRE(g.vars().size() == 2);
    MPoly h = g - T * T + s * s;
    REQUIRE(h.is_zero());
    REQUIRE(h.vars().empty());

    REQUIRE(f.coeff_of(Var::T, 1) == s);
    REQUIRE(f.coeff_of(Var::T, 0) == MPoly::constant(F3, 2));
    REQUIRE(f.coeff_of(Var::s, 0) == T * T + MPoly::constant(F3, 2));
    REQUIRE(f.leading_coeff() == F3.one());
}

TEST_CASE("mpoly term order is graded lex with fixed priority") {
    auto F2 = make_prime_field(2);
    MPoly X = MPoly::variable(F2, Var::X);
    MPoly Y = MPoly::variable(F2, Var::Y);
    MPoly f = X.pow(3) * Y.pow(4) + X.pow(4) + Y.pow(2) + MPoly::constant(F2, 1);
    REQUIRE(f.to_string() == "X^3*Y^4 + X^4 + Y^2 + 1");

    MPoly u2 = MPoly::variable(F2, Var::u).pow(2);
    MPoly u01 = MPoly::variable(F2, Var::u0) * MPoly::variable(F2, Var::u1);
    REQUIRE((u2 + u01).to_string() == "u^2 + u0*u1");
}

TEST_CASE("grammar round trip") {
    auto F2 = make_prime_field(2);
    auto F3 = make_prime_field(3);
    auto F4 = extend_field(F2, find_irreducible(F2, 2)).field;

    for (const char* src : {"0", "1", "T", "T^2", "s + 1", "T^2 + T*s + 2",
                            "x^12 + x*X", "xi^2 + x", "u^2 + u0*u1"}) {
        MPoly f = parse_mpoly(src, F3);
        REQUIRE(f.to_string() == src);
        REQUIRE(parse_mpoly(f.to_string(), F3) == f);
    }

    MPoly g = parse_mpoly("(g+1)*T^2 + g", F4);
    REQUIRE(g.to_string() == "(g+1)*T^2 + g");
    REQUIRE(parse_mpoly(g.to_string(), F4) == g);

    MPoly gm = parse_mpoly("g*T", F4);
    REQUIRE(gm.to_string() == "g*T");

    // unary minus, parentheses, explicit multiplication
    MPoly m = parse_mpoly("-T + 1", F3);
    REQUIRE(m.to_string() == "2*T + 1");
    REQUIRE(parse_mpoly("(T + 1)*(T + 2)", F3) ==
            parse_mpoly("T^2 + 2", F3));
    REQUIRE(parse_mpoly("2^3", F3) == MPoly::constant(F3, 2));
    REQUIRE(parse_mpoly("(-T)^2", F3) == parse_mpoly("T^2", F3));

    // longest match on identifiers
    MPoly lm = parse_mpoly("xi + x*u1 + u0 + u", F2);
    REQUIRE(lm.vars() == std::vector<Var>{Var::u, Var::u0, Var::u1, Var::x, Var::xi});

    RatFun r = parse_ratfun("(s + 1) / (s^2 + s + 1)", F2);
    REQUIRE(r.to_string() == "(s + 1) / (s^2 + s + 1)");
    REQUIRE(parse_ratfun(r.to_string(), F2) == r);
    RatFun rp = parse_ratfun("s^2 + T", F2);
    REQUIRE(rp.is_polynomial());
    REQUIRE(rp.to_string() == "s^2 + T");
}

TEST_CASE("grammar rejects malformed input") {
    auto F2 = make_prime_field(2);
    auto F3 = make_prime_field(3);
    REQUIRE_THROWS_AS(parse_mpoly("T T", F2), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_mpoly("q + 1", F2), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_mpoly("g + 1", F3), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_mpoly("(T", F2), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_mpoly("T^", F2), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_mpoly("T^99999", F2), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_mpoly("", F2), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_mpoly("2**T", F2), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_ratfun("T / 0", F2), std::invalid_argument);
}

TEST_CASE("ring axioms hold on random polynomials") {
    std::mt19937_64 rng(20240811);
    for (i64 q : {2, 3, 4}) {
        FieldCtx K = q == 4 ? extend_field(make_prime_field(2), find_irreducible(make_prime_field(2), 2)).field
                            : make_prime_field(q);
        std::vector<Var> pool = {Var::T, Var::s, Var::X};
        for (int it = 0; it < 1000; ++it) {
            MPoly a = random_mpoly(rng, K, pool, 4, 3);
            MPoly b = random_mpoly(rng, K, pool, 4, 3);
            MPoly c = random_mpoly(rng, K, pool, 4, 3);
            REQUIRE(a + b == b + a);
            REQUIRE(a * b == b * a);
            REQUIRE((a + b) + c == a + (b + c));
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE(a - a == MPoly::zero(K));
            REQUIRE(a * MPoly::constant(K, 1) == a);
            REQUIRE((a * MPoly::zero(K)).is_zero());
        }
    }
}

TEST_CASE("print parse round trip on random polynomials") {
    std::mt19937_64 rng(77001);
    auto F2 = make_prime_field(2);
    auto F9 = extend_field(make_prime_field(3), find_irreducible(make_prime_field(3), 2)).field;
    for (const FieldCtx& K : {F2, F9}) {
        std::vector<Var> pool = {Var::T, Var::u, Var::x, Var::xi};
        for (int it = 0; it < 300; ++it) {
            MPoly f = random_mpoly(rng, K, pool, 5, 4);
            REQUIRE(parse_mpoly(f.to_string(), K) == f);
        }
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937_64 rng(5150);
    auto F8 = extend_field(make_prime_field(2), find_irreducible(make_prime_field(2), 3)).field;
    std::vector<Var> pool = {Var::T, Var::s};
    for (int it = 0; it < 200; ++it) {
        MPoly a = random_mpoly(rng, F8, pool, 4, 3);
        MPoly b = random_mpoly(rng, F8, pool, 4, 3);
        std::map<Var, FieldElem> pt = {{Var::T, random_elem(rng, F8)},
                                       {Var::s, random_elem(rng, F8)}};
        REQUIRE((a + b).eval(pt) == a.eval(pt) + b.eval(pt));
        REQUIRE((a * b).eval(pt) == a.eval(pt) * b.eval(pt));
    }
}

TEST_CASE("derivative satisfies the product rule") {
    std::mt19937_64 rng(424242);
    auto F3 = make_prime_field(3);
    std::vector<Var> pool = {Var::s, Var::T};
    for (int it = 0; it < 200; ++it) {
        MPoly a = random_mpoly(rng, F3, pool, 4, 4);
        MPoly b = random_mpoly(rng, F3, pool, 4, 4);
        REQUIRE(derivative(a * b, Var::s) ==
                a * derivative(b, Var::s) + b * derivative(a, Var::s));
        REQUIRE(derivative(a + b, Var::T) ==
                derivative(a, Var::T) + derivative(b, Var::T));
    }
    // p-th powers die in characteristic p
    auto F2 = make_prime_field(2);
    REQUIRE(derivative(parse_mpoly("s^2 + T", F2), Var::s).is_zero());
    REQUIRE(derivative(parse_mpoly("s^3", F3), Var::s).is_zero());
    REQUIRE(derivative(parse_mpoly("s^3 + s", F3), Var::s) == MPoly::constant(F3, 1));
}

TEST_CASE("substitution agrees with pointwise evaluation") {
    std::mt19937_64 rng(909090);
    auto F9 = extend_field(make_prime_field(3), find_irreducible(make_prime_field(3), 2)).field;
    MPoly n = parse_mpoly("T + 1", F9);
    MPoly d = parse_mpoly("T + 2", F9);
    RatFun bind(n, d);
    for (int it = 0; it < 100; ++it) {
        MPoly f = random_mpoly(rng, F9, {Var::s, Var::T}, 5, 3);
        RatFun sub = substitute(f, {{Var::s, bind}});
        for (int tries = 0; tries < 8; ++tries) {
            FieldElem tv = random_elem(rng, F9);
            std::map<Var, FieldElem> pt = {{Var::T, tv}};
            FieldElem dv = d.eval(pt);
            if (dv.is_zero()) continue;
            FieldElem sv = n.eval(pt) / dv;
            std::map<Var, FieldElem> full = {{Var::T, tv}, {Var::s, sv}};
            REQUIRE(sub.eval(pt) == f.eval(full));
        }
    }
    // a polynomial binding keeps the result polynomial
    MPoly f = parse_mpoly("s^2 + s*T", F9);
    RatFun sub = substitute(f, {{Var::s, RatFun(parse_mpoly("T^2", F9))}});
    REQUIRE(sub.is_polynomial());
    REQUIRE(sub.num() == parse_mpoly("T^4 + T^3", F9));
    // a binding may mention its own variable
    RatFun shifted = substitute(f, {{Var::s, RatFun(parse_mpoly("s + 1", F9))}});
    REQUIRE(shifted.num() == parse_mpoly("s^2 + T*s + 2*s + T + 1", F9));
    // but not another substituted variable
    REQUIRE_THROWS_AS(substitute(f, {{Var::T, RatFun(parse_mpoly("s + 1", F9))},
                                     {Var::s, RatFun::constant(F9, 1)}}),
                      std::invalid_argument);
}

TEST_CASE("rational function normalization and equality") {
    auto F2 = make_prime_field(2);
    auto F3 = make_prime_field(3);

    RatFun a(parse_mpoly("T^2*s", F2), parse_mpoly("T^3", F2));
    REQUIRE(a.num() == parse_mpoly("s", F2));
    REQUIRE(a.den() == parse_mpoly("T", F2));

    // univariate gcd cancellation
    RatFun b(parse_mpoly("s^2 + 2*s + 1", F3), parse_mpoly("s^2 + s", F3));
    REQUIRE(b.num() == parse_mpoly("s + 1", F3));
    REQUIRE(b.den() == parse_mpoly("s", F3));

    // monic denominator normalization
    RatFun c(parse_mpoly("T", F3), parse_mpoly("2*T + 1", F3));
    REQUIRE(c.den().leading_coeff() == F3.one());
    REQUIRE(c == RatFun(parse_mpoly("2*T", F3), parse_mpoly("T + 2", F3)));

    // cross-multiplicative equality ignores representation
    RatFun d(parse_mpoly("s*T + s", F2), parse_mpoly("T^2 + 1", F2));
    RatFun e(parse_mpoly("s", F2), parse_mpoly("T + 1", F2));
    REQUIRE(d == e);
    REQUIRE(d - e == RatFun::zero(F2));
    REQUIRE((d / e) == RatFun::constant(F2, 1));
    REQUIRE_THROWS_AS(d / RatFun::zero(F2), std::invalid_argument);

    std::mt19937_64 rng(6161);
    for (int it = 0; it < 200; ++it) {
        MPoly fa = random_mpoly(rng, F3, {Var::s, Var::T}, 3, 2);
        MPoly fb = random_mpoly(rng, F3, {Var::s, Var::T}, 3, 2);
        MPoly fc = random_mpoly(rng, F3, {Var::s, Var::T}, 3, 2);
        if (fb.is_zero() || fc.is_zero()) continue;
        RatFun x(fa, fb);
        RatFun scaled(fa * fc, fb * fc);
        REQUIRE(x == scaled);
        REQUIRE(x + scaled == x * RatFun::constant(F3, 2));
    }
}

TEST_CASE("reduce_mod_L maps T to a root") {
    auto F2 = make_prime_field(2);
    UPoly L = {F2.one(), F2.one(), F2.one()};  // T^2 + T + 1
    auto ext = extend_field(F2, L);
    const FieldCtx& F4 = ext.field;
    FieldElem a = ext.alpha;

    MPoly f = parse_mpoly("T*s + T^2", F2);
    REQUIRE(reduce_mod_L(f, F4, a) == parse_mpoly("g*s + g + 1", F4));
    REQUIRE(reduce_mod_L(parse_mpoly("T^2 + T + 1", F2), F4, a).is_zero());

    std::mt19937_64 rng(2222);
    for (int it = 0; it < 150; ++it) {
        MPoly x = random_mpoly(rng, F2, {Var::T, Var::s, Var::X}, 4, 3);
        MPoly y = random_mpoly(rng, F2, {Var::T, Var::s, Var::X}, 4, 3);
        REQUIRE(reduce_mod_L(x + y, F4, a) ==
                reduce_mod_L(x, F4, a) + reduce_mod_L(y, F4, a));
        REQUIRE(reduce_mod_L(x * y, F4, a) ==
                reduce_mod_L(x, F4, a) * reduce_mod_L(y, F4, a));
    }

    // rational reduction requires the denominator to clear to a constant
    RatFun r(parse_mpoly("s + T", F2), parse_mpoly("T^2", F2));
    REQUIRE(reduce_mod_L(r, F4, a) == parse_mpoly("g*s + g + 1", F4));
    RatFun bad(parse_mpoly("s", F2), parse_mpoly("s + T", F2));
    REQUIRE_THROWS_AS(reduce_mod_L(bad, F4, a), std::invalid_argument);
    REQUIRE_THROWS_AS(reduce_mod_L(f, F4, F2.one()), std::invalid_argument);
}

TEST_CASE("exact division") {
    std::mt19937_64 rng(31337);
    auto F4 = extend_field(make_prime_field(2), find_irreducible(make_prime_field(2), 2)).field;
    for (int it = 0; it < 150; ++it) {
        MPoly f = random_mpoly(rng, F4, {Var::X, Var::Y}, 4, 3);
        MPoly g = random_mpoly(rng, F4, {Var::X, Var::Y}, 4, 3);
        if (g.is_zero()) continue;
        auto q = exact_divide(f * g, g);
        REQUIRE(q.has_value());
        REQUIRE(*q == f);
        if (!g.is_constant())
            REQUIRE_FALSE(exact_divide(f * g + MPoly::constant(F4, 1), g).has_value());
    }
    REQUIRE_THROWS_AS(exact_divide(MPoly::constant(F4, 1), MPoly::zero(F4)),
                      std::invalid_argument);
    auto F2 = make_prime_field(2);
    REQUIRE_FALSE(exact_divide(parse_mpoly("X^2 + 1", F2), parse_mpoly("X + T", F2)).has_value());
    REQUIRE(exact_divide(parse_mpoly("X^2 + T^2", F2), parse_mpoly("X + T", F2)).value() ==
            parse_mpoly("X + T", F2));
}

TEST_CASE("pseudo reduction by a monic divisor") {
    auto F2 = make_prime_field(2);
    MPoly f = parse_mpoly("X^5 + Y", F2);
    MPoly g = parse_mpoly("X^2 + Y*X + 1", F2);
    MPoly r = pseudo_reduce(f, g, Var::X);
    REQUIRE(r.degree(Var::X) < 2);
    auto q = exact_divide(f - r, g);
    REQUIRE(q.has_value());
    REQUIRE(*q * g + r == f);
    REQUIRE(pseudo_reduce(g * parse_mpoly("X^3 + Y^2", F2), g, Var::X).is_zero());
    REQUIRE_THROWS_AS(pseudo_reduce(f, parse_mpoly("Y*X^2 + 1", F2), Var::X),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(pseudo_reduce(f, parse_mpoly("Y + 1", F2), Var::X),
                      std::invalid_argument);
}

TEST_CASE("variable renaming is simultaneous") {
    auto F3 = make_prime_field(3);
    MPoly f = parse_mpoly("X^2 + 2*X*Y + Y", F3);

    // swap
    MPoly swapped = rename_vars(f, {{Var::X, Var::Y}, {Var::Y, Var::X}});
    REQUIRE(swapped == parse_mpoly("Y^2 + 2*X*Y + X", F3));
    REQUIRE(rename_vars(swapped, {{Var::X, Var::Y}, {Var::Y, Var::X}}) == f);

    // shared target accumulates
    REQUIRE(rename_vars(parse_mpoly("X + 2*Y", F3), {{Var::X, Var::Z}, {Var::Y, Var::Z}}) ==
            parse_mpoly("0", F3));
    auto F2 = make_prime_field(2);
    REQUIRE(rename_vars(parse_mpoly("X + Y", F2), {{Var::X, Var::Z}, {Var::Y, Var::Z}})
                .is_zero());
    REQUIRE(rename_vars(parse_mpoly("X^2 + Y", F2), {{Var::X, Var::Z}, {Var::Y, Var::Z}}) ==
            parse_mpoly("Z^2 + Z", F2));

    // untouched variables survive, absent sources are ignored
    MPoly g = parse_mpoly("T*X + s", F2);
    REQUIRE(rename_vars(g, {{Var::X, Var::Y}, {Var::Z, Var::u}}) ==
            parse_mpoly("T*Y + s", F2));

    RatFun r(parse_mpoly("X + T", F2), parse_mpoly("X^2", F2));
    REQUIRE(rename_vars(r, {{Var::X, Var::u}}) ==
            RatFun(parse_mpoly("u + T", F2), parse_mpoly("u^2", F2)));
}

TEST_CASE("resultant eliminates the shared variable") {
    auto F3 = make_prime_field(3);

    // res(x^2 + 1, x + 1) = f(-1) = 2
    REQUIRE(resultant(parse_mpoly("x^2 + 1", F3), parse_mpoly("x + 1", F3), Var::x) ==
            parse_mpoly("2", F3));
    // shared root gives zero
    REQUIRE(resultant(parse_mpoly("(x + 1)*(x + 2)", F3), parse_mpoly("x + 1", F3),
                      Var::x)
                .is_zero());
    // elimination: res_Y(X - Y^2, Y - 1) = X - 1
    REQUIRE(resultant(parse_mpoly("X + 2*Y^2", F3), parse_mpoly("Y + 2", F3), Var::Y) ==
            parse_mpoly("X + 2", F3));

    // multiplicativity res(f*g, h) = res(f, h) res(g, h)
    auto F4 = extend_field(make_prime_field(2), find_irreducible(make_prime_field(2), 2)).field;
    std::mt19937_64 rng(777);
    for (int it = 0; it < 40; ++it) {
        MPoly f = random_mpoly(rng, F4, {Var::x, Var::Y}, 2, 2);
        MPoly g = random_mpoly(rng, F4, {Var::x, Var::Y}, 2, 2);
        MPoly h = random_mpoly(rng, F4, {Var::x, Var::Y}, 2, 2);
        if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
        REQUIRE(resultant(f * g, h, Var::x) ==
                resultant(f, h, Var::x) * resultant(g, h, Var::x));
    }

    // a common factor forces a zero resultant
    for (int it = 0; it < 40; ++it) {
        MPoly f = random_mpoly(rng, F4, {Var::x, Var::Y}, 2, 2);
        MPoly g = random_mpoly(rng, F4, {Var::x, Var::Y}, 2, 2);
        MPoly h = random_mpoly(rng, F4, {Var::x, Var::Y}, 2, 2);
        if (h.degree(Var::x) == 0) continue;
        REQUIRE(resultant(f * h, g * h, Var::x).is_zero());
    }

    REQUIRE(resultant(MPoly::zero(F3), parse_mpoly("x", F3), Var::x).is_zero());
    REQUIRE(resultant(parse_mpoly("2", F3), parse_mpoly("1", F3), Var::x) ==
            parse_mpoly("1", F3));
    REQUIRE_THROWS_AS(resultant(parse_mpoly("x^9 + 1", F3), parse_mpoly("x^9 + x", F3),
                                Var::x),
                      guard_error);
}

TEST_CASE("distinct roots with simplicity flags") {
    auto F2 = make_prime_field(2);
    auto F4 = extend_field(F2, find_irreducible(F2, 2)).field;
    MPoly s = MPoly::variable(F4, Var::s);
    FieldElem g = F4.gen();

    MPoly f = (s + MPoly::constant(F4, g)) * (s + MPoly::constant(F4, g)) *
              (s + MPoly::constant(F4, 1));
    RootReport rep = distinct_roots(f, F4);
    REQUIRE(rep.roots.size() == 2);
    REQUIRE(rep.roots[0] == g);        // [0,1] precedes [1,0] in element order
    REQUIRE(rep.roots[1] == F4.one());
    REQUIRE(rep.simple == std::vector<bool>{false, true});
    REQUIRE_FALSE(rep.all_simple);

    // base-field polynomial scanned over an extension
    MPoly f2 = parse_mpoly("s^2 + s + 1", F2);
    RootReport rep2 = distinct_roots(f2, F4);
    REQUIRE(rep2.roots.size() == 2);
    REQUIRE(rep2.all_simple);
    REQUIRE(distinct_roots(f2, F2).roots.empty());

    std::mt19937_64 rng(8080);
    auto F8 = extend_field(F2, find_irreducible(F2, 3)).field;
    auto elems = F8.enumerate();
    for (int it = 0; it < 50; ++it) {
        std::shuffle(elems.begin(), elems.end(), rng);
        std::uniform_int_distribution<int> nroots(1, 4), mult(1, 3);
        int n = nroots(rng);
        MPoly prod = MPoly::constant(F8, 1);
        std::map<std::vector<i64>, int> expect;
        for (int i = 0; i < n; ++i) {
            int m = mult(rng);
            expect[elems[std::size_t(i)].coeffs()] = m;
            MPoly lin = MPoly::variable(F8, Var::s) - MPoly::constant(F8, elems[std::size_t(i)]);
            prod = prod * lin.pow(u64(m));
        }
        RootReport rr = distinct_roots(prod, F8);
        REQUIRE(rr.roots.size() == std::size_t(n));
        for (std::size_t i = 0; i < rr.roots.size(); ++i) {
            int m = expect.at(rr.roots[i].coeffs());
            REQUIRE(rr.simple[i] == (m == 1));
        }
    }
    REQUIRE_THROWS_AS(distinct_roots(MPoly::zero(F2), F2), std::invalid_argument);
    REQUIRE_THROWS_AS(distinct_roots(parse_mpoly("s*T", F2), F2), std::invalid_argument);
}

TEST_CASE("univariate factorization by trial division") {
    auto F2 = make_prime_field(2);
    auto F3 = make_prime_field(3);

    auto facs = factor_univariate(parse_mpoly("T^4 + T", F2), Var::T);
    REQUIRE(facs.size() == 3);
    REQUIRE(facs[0].factor == parse_mpoly("T", F2));
    REQUIRE(facs[0].multiplicity == 1);
    REQUIRE(facs[1].factor == parse_mpoly("T + 1", F2));
    REQUIRE(facs[2].factor == parse_mpoly("T^2 + T + 1", F2));

    auto sq = factor_univariate(parse_mpoly("(T^2 + T + 1)^2", F2), Var::T);
    REQUIRE(sq.size() == 1);
    REQUIRE(sq[0].multiplicity == 2);

    auto irr = factor_univariate(parse_mpoly("T^2 + 1", F3), Var::T);
    REQUIRE(irr.size() == 1);
    REQUIRE(irr[0].factor == parse_mpoly("T^2 + 1", F3));

    std::mt19937_64 rng(999);
    for (int it = 0; it < 40; ++it) {
        MPoly f = random_mpoly(rng, F3, {Var::T}, 5, 5);
        if (f.is_zero() || f.total_degree() == 0) continue;
        auto fs = factor_univariate(f, Var::T);
        MPoly prod = MPoly::constant(F3, f.leading_coeff());
        for (const auto& [fac, mult] : fs) {
            for (int i = 0; i < mult; ++i) prod = prod * fac;
            REQUIRE(is_irreducible(to_upoly(fac, Var::T), F3));
        }
        REQUIRE(prod == f);
    }
    REQUIRE_THROWS_AS(factor_univariate(parse_mpoly("T^13 + T", F2), Var::T), guard_error);
}

TEST_CASE("degree guards trip") {
    auto F2 = make_prime_field(2);
    REQUIRE_THROWS_AS(MPoly::variable(F2, Var::T, 20000), guard_error);
    MPoly big = MPoly::variable(F2, Var::T, 16000);
    REQUIRE_THROWS_AS(big * big, guard_error);
    REQUIRE_THROWS_AS(MPoly::variable(F2, Var::T, 100).pow(400), guard_error);
}
