#include <catch2/catch_amalgamated.hpp>

#include <towerforge/modular.hpp>

#include <set>

using namespace towerforge;

namespace {

const FieldCtx& F2() {
    static const FieldCtx K = make_prime_field(2);
    return K;
}

MPoly P(const char* src) { return parse_mpoly(src, F2()); }
RatFun R(const char* src) { return parse_ratfun(src, F2()); }

UPoly upoly_from_ints(const FieldCtx& K, std::initializer_list<i64> cs) {
    UPoly f;
    for (i64 c : cs) f.push_back(K.from_int(c));
    return f;
}

} // namespace

TEST_CASE("embedded blobs: checksums hold and printing round-trips") {
    for (const auto& b : modtext::blobs()) {
        INFO(b.name);
        CHECK(fnv1a64(b.text) == b.checksum);
        if (b.rational) {
            RatFun f = parse_ratfun(std::string(b.text), F2());
            CHECK(parse_ratfun(f.to_string(), F2()) == f);
        } else {
            MPoly f = parse_mpoly(std::string(b.text), F2());
            CHECK(parse_mpoly(f.to_string(), F2()) == f);
        }
    }
    std::set<std::string> names;
    for (const auto& b : modtext::blobs()) names.insert(b.name);
    CHECK(names.size() == modtext::blobs().size());
}

TEST_CASE("modular data shape across the three levels") {
    const auto& all = all_modular_data();
    REQUIRE(all.size() == 3);

    const ModularData& dT = *all[0];
    CHECK(dT.name == "T");
    CHECK(dT.prime);
    CHECK(dT.step_degree == 2);
    CHECK(dT.factors.size() == 2);
    CHECK(dT.psi.has_value());
    CHECK(dT.phi.degree(Var::X) == 3);
    CHECK(dT.phi.degree(Var::Y) == 3);

    const ModularData& d5 = *all[1];
    CHECK(d5.name == "T^2 + T + 1");
    CHECK(d5.prime);
    CHECK(d5.step_degree == 4);
    CHECK(d5.factors.size() == 2);
    CHECK(!d5.psi.has_value());
    CHECK(d5.phi.degree(Var::Y) == 5);

    const ModularData& d9 = *all[2];
    CHECK(d9.name == "T^2 + T");
    CHECK(!d9.prime);
    CHECK(d9.step_degree == 4);
    CHECK(d9.factors.size() == 4);
    CHECK(d9.phi.degree(Var::X) == 9);
    CHECK(d9.phi.degree(Var::Y) == 9);

    for (const ModularData* d : all) {
        INFO(d->name);
        CHECK(i64(d->phi.degree(Var::Y)) == degree_formula(d->level, F2()));
        CHECK(d->f_p.degree(Var::Y) == d->step_degree);
        // the step factor is monic of degree q^{deg P} in X
        CHECK(d->f_p.degree(Var::X) == d->step_degree);
        CHECK(d->f_p.coeff_of(Var::X, std::uint32_t(d->step_degree)) ==
              MPoly::constant(F2(), 1));
    }
}

TEST_CASE("degree formula values, multiplicativity and guards") {
    UPoly t = upoly_from_ints(F2(), {0, 1});
    UPoly t1 = upoly_from_ints(F2(), {1, 1});
    UPoly tt1 = upoly_from_ints(F2(), {1, 1, 1});
    UPoly tt = upoly_from_ints(F2(), {0, 1, 1});

    CHECK(degree_formula(t, F2()) == 3);
    CHECK(degree_formula(t1, F2()) == 3);
    CHECK(degree_formula(tt1, F2()) == 5);
    CHECK(degree_formula(tt, F2()) == 9);

    // constants give the empty product
    CHECK(degree_formula(UPoly{F2().one()}, F2()) == 1);

    // N -> P N for a new prime P multiplies by q^{deg P} + 1; P -> P^2 by q^{deg P}
    CHECK(degree_formula(upmul(t, t1, F2()), F2()) == 9);
    CHECK(degree_formula(upmul(t, t, F2()), F2()) == 2 * 3);
    CHECK(degree_formula(upmul(tt1, tt1, F2()), F2()) == 4 * 5);

    const FieldCtx F3 = make_prime_field(3);
    CHECK(degree_formula(upoly_from_ints(F3, {0, 1}), F3) == 4);
    CHECK(degree_formula(upoly_from_ints(F3, {1, 0, 1}), F3) == 10);

    CHECK_THROWS_AS(degree_formula(UPoly{}, F2()), std::invalid_argument);
    UPoly big(14, F2().zero());
    big[0] = F2().one();
    big[13] = F2().one();
    CHECK_THROWS_AS(degree_formula(big, F2()), guard_error);
}

TEST_CASE("symmetry of the prime-level relations") {
    CHECK(verify_symmetry(modular_T()).applicable);
    CHECK(verify_symmetry(modular_T()).symmetric);
    CHECK(verify_symmetry(modular_T2T1()).applicable);
    CHECK(verify_symmetry(modular_T2T1()).symmetric);

    SymmetryReport comp = verify_symmetry(modular_T2T());
    CHECK(!comp.applicable);
    CHECK(comp.note == "skipped: P composite");

    // not part of the verifier's contract, but the composite-level relation
    // is symmetric too; pins the transcription
    MPoly swapped = rename_vars(modular_T2T().phi, {{Var::X, Var::Y}, {Var::Y, Var::X}});
    CHECK(swapped == modular_T2T().phi);
}

TEST_CASE("the parametrizations annihilate their relations") {
    for (const ModularData* d : all_modular_data()) {
        INFO(d->name);
        CHECK(verify_parametrization(*d));
    }
}

TEST_CASE("general level-T parametrization: q = 2 specialization and consistency") {
    auto [j0, j1] = eq4_parametrization(F2());
    CHECK(j0 == modular_T().j0);
    CHECK(j1 == modular_T().j1);

    CHECK(verify_eq4_consistency(F2()));
    CHECK(verify_eq4_consistency(make_prime_field(3)));
    CHECK(verify_eq4_consistency(make_prime_field(5)));
    auto F2base = make_prime_field(2);
    CHECK(verify_eq4_consistency(extend_field(F2base, find_irreducible(F2base, 2)).field));
}

TEST_CASE("level T factorization identity, fully displayed") {
    // (X + T^2)^3 Y + (Y + T)^3 X^2 = (X Y + T^3)(X^2 + X Y^2 + X Y T + Y T^3)
    MPoly lhs = P("(X + T^2)^3*Y + (Y + T)^3*X^2");
    MPoly rhs = P("(X*Y + T^3)*(X^2 + X*Y^2 + X*Y*T + Y*T^3)");
    CHECK(lhs == rhs);
    CHECK(lhs == modular_T().expansion);
    CHECK(modular_T().expansion == cleared_step_polynomial(modular_T()));

    FactorReport rep = verify_factorization(modular_T());
    CHECK(rep.product_matches);
    CHECK(rep.unique_step_factor);
    CHECK(rep.step_factor_is_f);
    CHECK(rep.ok);
}

TEST_CASE("level T^2+T+1 factorization and the repaired quartic factor") {
    const ModularData& d = modular_T2T1();
    CHECK(d.expansion == cleared_step_polynomial(d));

    FactorReport rep = verify_factorization(d);
    CHECK(rep.ok);

    // the quartic factor is the exact quotient of the expansion by the
    // linear factor, and that quotient is the displayed form plus the gap
    auto q = exact_divide(d.expansion, d.factors[0]);
    REQUIRE(q.has_value());
    CHECK(*q == d.f_p);

    MPoly display = parse_mpoly(std::string(modtext::kFacTT1_2), F2());
    MPoly gap = parse_mpoly(std::string(modtext::kFacTT1_2Gap), F2());
    CHECK(*q != display);
    CHECK(*q - display == gap);
    CHECK(gap == P("(T^2 + T)*(T^2 + T + 1)*(X^2 + T^2 + T + 1)*Y"));

    // the gap vanishes modulo T and modulo T + 1, so the reduced displays
    // are untouched by the repair
    CHECK(reduce_mod_L(gap, F2(), F2().zero()).is_zero());
    CHECK(reduce_mod_L(gap, F2(), F2().one()).is_zero());
}

TEST_CASE("level T^2+T factorization and the X^9 coefficient") {
    const ModularData& d = modular_T2T();
    CHECK(!d.expansion_embedded);

    FactorReport rep = verify_factorization(d);
    CHECK(rep.ok);

    // leading X-coefficient of the cleared relation is the ramified locus
    MPoly lead = d.expansion.coeff_of(Var::X, 9);
    CHECK(lead == P("Y*(Y + T)^2*(Y + T + 1)^2"));

    // and it is the product of the factors' leading X-coefficients
    MPoly prod = MPoly::constant(F2(), 1);
    for (const auto& f : d.factors)
        prod = prod * f.coeff_of(Var::X, std::uint32_t(f.degree(Var::X)));
    CHECK(lead == prod);
}

TEST_CASE("level T^2+T relation rebuilt as a resultant") {
    // the composite of the T- and (T+1)-isogeny has cyclic kernel of order
    // T^2+T, so eliminating the middle invariant yields the level T^2+T
    // relation exactly
    MPoly phiT = modular_T().phi;
    MPoly shifted = substitute(phiT, {{Var::T, RatFun(P("T + 1"))}}).num();
    MPoly a = rename_vars(phiT, {{Var::Y, Var::Z}});
    MPoly b = rename_vars(shifted, {{Var::X, Var::Z}});
    MPoly res = resultant(a, b, Var::Z);

    CHECK(res == modular_T2T().phi);

    // the displayed form alone is four symmetric groups short; the gap is
    // exactly the embedded repair, and only the repaired sum vanishes under
    // the parametrization
    MPoly display = parse_mpoly(std::string(modtext::kPhiTT), F2());
    MPoly gap = parse_mpoly(std::string(modtext::kPhiTTGap), F2());
    CHECK(res != display);
    CHECK(res - display == gap);
    CHECK(substitute(display, {{Var::X, modular_T2T().j0}, {Var::Y, modular_T2T().j1}})
              .is_zero() == false);
}

TEST_CASE("trivariate relation psi at level T") {
    PsiReport rep = verify_psi(modular_T());
    CHECK(rep.ok);
    CHECK(rep.z_degree == 2);
    CHECK(rep.remainder.is_zero());

    // a perturbed cofactor leaves a nonzero remainder
    MPoly off = *modular_T().psi + MPoly::constant(F2(), 1);
    PsiReport bad = verify_psi_with(modular_T(), off);
    CHECK(!bad.ok);
    CHECK(!bad.remainder.is_zero());

    CHECK_THROWS_AS(verify_psi(modular_T2T1()), std::invalid_argument);
}

TEST_CASE("reductions modulo small primes match the residue displays") {
    for (const ModularData* d : all_modular_data()) {
        INFO(d->name);
        CHECK(verify_reductions(*d));
    }

    UPoly t = upoly_from_ints(F2(), {0, 1});
    UPoly t1 = upoly_from_ints(F2(), {1, 1});
    UPoly tt1 = upoly_from_ints(F2(), {1, 1, 1});

    // level T reduced mod T + 1 lands in F_2 again
    CHECK(reduce_example(modular_T(), t1) == P("X^2 + X*Y^2 + X*Y + Y"));

    // level T^2+T+1 reduces to the same polynomial mod T and mod T + 1
    CHECK(reduce_example(modular_T2T1(), t) == reduce_example(modular_T2T1(), t1));
    CHECK(reduce_example(modular_T2T1(), t) ==
          parse_mpoly(std::string(modtext::kRedTT1), F2()));

    // level T^2+T reduced mod T^2+T+1 lives over F_4
    ExtField f4 = extend_field(F2(), tt1);
    MPoly red = reduce_example(modular_T2T(), tt1);
    CHECK(red == parse_mpoly(std::string(modtext::kRedTT), f4.field));

    // the reduction prime must not divide the level
    CHECK_THROWS_AS(reduce_example(modular_T2T(), t), std::invalid_argument);
    CHECK_THROWS_AS(reduce_example(modular_T2T(), t1), std::invalid_argument);
    CHECK_THROWS_AS(reduce_example(modular_T(), t), std::invalid_argument);
    // and must be irreducible so the residue ring is a field
    CHECK_THROWS_AS(reduce_example(modular_T(), upoly_from_ints(F2(), {0, 1, 1})),
                    std::invalid_argument);
}

TEST_CASE("reduced uniformizer: identity and the repaired exponent") {
    CHECK(verify_uniformizer_mod_T());

    const ModularData& d = modular_T2T1();
    RatFun j0r(reduce_mod_L(d.j0.num(), F2(), F2().zero()),
               reduce_mod_L(d.j0.den(), F2(), F2().zero()));
    RatFun j1r(reduce_mod_L(d.j1.num(), F2(), F2().zero()),
               reduce_mod_L(d.j1.den(), F2(), F2().zero()));
    CHECK(j0r == R("((u + 1)^3*(u^2 + u + 1)) / (u)"));
    CHECK(j1r == R("((u + 1)^3*(u^2 + u + 1)) / (u^4)"));

    RatFun u = RatFun(MPoly::variable(F2(), Var::u));
    CHECK(substitute(uniformizer_mod_T(), {{Var::X, j0r}, {Var::Y, j1r}}) == u);

    // the displayed numerator has X^6 where it needs Y^6; with the displayed
    // form the composition is not the identity
    RatFun display = parse_ratfun(std::string(modtext::kU0TT1ModT), F2());
    CHECK(substitute(display, {{Var::X, j0r}, {Var::Y, j1r}}) != u);
    CHECK(uniformizer_mod_T().num() - display.num() ==
          parse_mpoly(std::string(modtext::kU0TT1ModTGap), F2()));
    CHECK(uniformizer_mod_T().den() == P("Y^8"));
}

TEST_CASE("the bundled check suite is green") {
    auto checks = run_modular_checks();
    CHECK(checks.size() == 82);
    std::set<std::string> names;
    for (const auto& c : checks) {
        INFO(c.name << (c.note.empty() ? "" : " (" + c.note + ")"));
        CHECK(c.pass);
        names.insert(c.name);
    }
    CHECK(names.size() == checks.size());
}
