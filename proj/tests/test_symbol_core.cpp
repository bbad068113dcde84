#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opindex/word.hpp"

#include <cmath>

using namespace opindex;

namespace {

const double inf = std::numeric_limits<double>::infinity();

SemiperiodicSymbol constant_symbol(cplx plus, cplx minus) {
    return semiperiodic_from_parts(trig_polynomial({{0, plus}}, "const+"),
                                   trig_polynomial({{0, minus}}, "const-"), fn_zero());
}

// independent oracle: raw phase-increment sum, no shared code with winding_number
double phase_sum(const std::vector<cplx>& z) {
    double acc = 0.0;
    for (size_t i = 0; i + 1 < z.size(); ++i) acc += std::arg(z[i + 1] / z[i]);
    return acc;
}

}  // namespace

TEST_CASE("eval_semiperiodic on the spec fixtures") {
    auto one = constant_symbol(1.0, 1.0);
    CHECK(eval_semiperiodic(one, 3.7) == cplx(1.0));

    // s encoded as (a+ = 1, a- = -1, a0 = s - chi+ + chi-)
    ScalarFn s = fn_s(), b = fn_b_std(), c = fn_c_std();
    ScalarFn dec("s_dec", FnClass::C0,
                 [s, b, c](double x) { return s(x) - b(x) + c(x); });
    auto enc = semiperiodic_from_parts(trig_polynomial({{0, cplx(1.0)}}),
                                       trig_polynomial({{0, cplx(-1.0)}}), dec, "s_enc");
    CHECK(std::abs(eval_semiperiodic(enc, 0.0)) < 1e-14);
    for (double x : {-5.0, -0.3, 0.7, 12.0})
        CHECK(std::abs(enc.eval(x) - s(x)) < 1e-14);

    // direct-evaluation oracle: sin at pi/2
    std::map<int, cplx> sinc = {{1, cplx(0.0, -0.5)}, {-1, cplx(0.0, 0.5)}};
    auto sinsym = semiperiodic_from_parts(trig_polynomial(sinc, "sin"),
                                          trig_polynomial(sinc, "sin"), fn_zero());
    CHECK(std::abs(eval_semiperiodic(sinsym, kPi / 2) - 1.0) < 1e-14);
}

TEST_CASE("limit_functional matches the Cauchy-probe oracle") {
    // a+ = e^{i theta}: probe a(pi + 2 pi k) and check it settles on the value
    auto a = semiperiodic_from_parts(fn_exp_i_theta(), fn_one(), fn_zero(), "aL");
    cplx lim = limit_functional(a, MSharpPoint::plus_inf(kPi));
    CHECK(std::abs(lim - cplx(-1.0)) < 1e-14);
    for (int k = 8; k <= 16; ++k)
        CHECK(std::abs(a.eval(kPi + kTwoPi * k) - lim) < 1e-9);

    // C0-only symbol vanishes at infinity
    ScalarFn bump("bump", FnClass::C0, [](double x) { return cplx(std::exp(-x * x)); });
    auto a0 = semiperiodic_from_parts(fn_zero(), fn_zero(), bump, "bump_only");
    CHECK(std::abs(limit_functional(a0, MSharpPoint::minus_inf(0.0))) == 0.0);

    // builtin L: L(e^{i theta}, +inf) = e^{i theta}
    auto L = semiperiodic_L();
    for (double th : {0.0, 1.0, kPi, 5.0})
        CHECK(std::abs(limit_functional(L, MSharpPoint::plus_inf(th)) - std::polar(1.0, th)) <
              1e-14);
    CHECK(std::abs(limit_functional(L, MSharpPoint::minus_inf(2.0)) - cplx(1.0)) < 1e-14);
    // consistency with finite evaluation
    CHECK(std::abs(limit_functional(L, MSharpPoint::finite(3.0)) - std::polar(1.0, 3.0)) < 1e-12);
    CHECK(std::abs(limit_functional(L, MSharpPoint::finite(-3.0)) - cplx(1.0)) < 1e-12);
}

TEST_CASE("sigma_C on M_C") {
    ScalarFn a0("g1", FnClass::C0, [](double x) { return cplx(std::exp(-x * x)); });
    ScalarFn b0("g2", FnClass::C0, [](double x) { return cplx(1.0 / (1.0 + x * x)); });
    GeneratorWord w;
    w.add_term(a0, b0, 0);
    for (auto p : {MCPoint::canonical(0.0, inf), MCPoint::canonical(inf, 2.0),
                   MCPoint::canonical(-inf, -inf), MCPoint::canonical(5.0, -inf)})
        CHECK(std::abs(sigma_C(w, p)) == 0.0);

    auto id = GeneratorWord::identity();
    CHECK(sigma_C(id, MCPoint::canonical(inf, 0.0)) == cplx(1.0));

    auto [b, c] = standard_bc();
    GeneratorWord bc;
    bc.add_term(fn_one(), b, 0).add_term(fn_one(), c, 0);
    CHECK(std::abs(sigma_C(bc, MCPoint::canonical(0.0, inf)) - 1.0) < 1e-14);
}

TEST_CASE("sigma_C error paths") {
    ScalarFn nolim("nolim", FnClass::Generic, [](double x) { return cplx(std::sin(x)); });
    GeneratorWord w;
    w.add_term(nolim, fn_one(), 0);
    CHECK_THROWS_WITH_AS(sigma_C(w, MCPoint::canonical(inf, 0.0)),
                         doctest::Contains("symbol not in CS"), std::invalid_argument);
    GeneratorWord modulated;
    modulated.add_term(fn_one(), fn_one(), 1);
    CHECK_THROWS(sigma_C(modulated, MCPoint::canonical(0.0, inf)));
}

TEST_CASE("sigma_A on M_A") {
    // e^{ijM}: sigma at (PlusInf(theta), either sign) = e^{ij theta} exactly
    auto mod2 = GeneratorWord::modulation(2);
    for (int sign : {-1, 1})
        CHECK(std::abs(sigma_A(mod2, MSharpPoint::plus_inf(0.7), sign) - std::polar(1.0, 1.4)) <
              1e-14);
    // b(D): sigma = b(sign inf) everywhere on M#
    auto w = GeneratorWord::fourier(fn_b_std());
    CHECK(std::abs(sigma_A(w, MSharpPoint::finite(0.3), +1) - 1.0) < 1e-14);
    CHECK(std::abs(sigma_A(w, MSharpPoint::minus_inf(1.0), +1) - 1.0) < 1e-14);
    CHECK(std::abs(sigma_A(w, MSharpPoint::plus_inf(2.0), -1)) < 1e-14);
    auto id = GeneratorWord::identity();
    CHECK(std::abs(sigma_A(id, MSharpPoint::finite(-1.0), -1) - 1.0) < 1e-14);
    CHECK(std::abs(sigma_A(id, MSharpPoint::plus_inf(0.0), 1) - 1.0) < 1e-14);
}

TEST_CASE("loop_sigma_C fixtures") {
    auto id_loop = loop_sigma_C(GeneratorWord::identity(), 32);
    CHECK(id_loop.closed);
    for (const auto& z : id_loop.samples) CHECK(std::abs(z - cplx(1.0)) < 1e-14);
    CHECK(winding_number(id_loop) == 0);

    // K_1(C/K_R) generator: winding 1
    auto [b, c] = standard_bc();
    ScalarFn phi("e2pic", FnClass::CS,
                 [c](double x) { return std::exp(cplx(0, kTwoPi) * c(x)); }, cplx(1.0),
                 cplx(1.0));
    GeneratorWord gen;
    gen.add_term(phi, b, 0).add_term(fn_one(), c, 0);
    auto loop = loop_sigma_C(gen, 128);
    CHECK(winding_number(loop) == 1);
    // phase-sum oracle agrees
    CHECK(std::abs(phase_sum(loop.samples) / kTwoPi - 1.0) < 1e-6);

    // real-valued a >= 1: loop stays in the right half plane, winding 0
    ScalarFn apos("apos", FnClass::CS,
                  [](double x) { return cplx(1.5 + fn_s()(x).real() / 3); },
                  cplx(1.5 - 1.0 / 3), cplx(1.5 + 1.0 / 3));
    auto wpos = GeneratorWord::multiplication(apos);
    auto lp = loop_sigma_C(wpos, 64);
    for (const auto& z : lp.samples) CHECK(z.real() > 0.0);
    CHECK(winding_number(lp) == 0);
    CHECK(std::abs(phase_sum(lp.samples)) < 1e-9);
}

TEST_CASE("winding_number fixtures and guards") {
    SampledLoop unit;
    for (int k = 0; k <= 64; ++k) unit.samples.push_back(std::polar(1.0, kTwoPi * k / 64));
    unit.closed = true;
    CHECK(winding_number(unit) == 1);

    // Prop 3.1: u = e^{2 pi i b}, traversed in the natural variable
    auto [b, c] = standard_bc();
    SampledLoop ub;
    for (int k = 0; k <= 256; ++k)
        ub.samples.push_back(std::exp(cplx(0, kTwoPi) * b(-2.0 + 4.0 * k / 256)));
    ub.closed = true;
    CHECK(winding_number(ub) == 1);

    SampledLoop through_zero;
    for (int k = 0; k <= 64; ++k)
        through_zero.samples.push_back(cplx(-1.0 + 2.0 * k / 64, 0.0));
    through_zero.closed = false;
    CHECK_THROWS_WITH_AS(winding_number(through_zero), doctest::Contains("not invertible"),
                         std::invalid_argument);

    SampledLoop coarse;  // a half-turn per step cannot be unwrapped
    coarse.samples = {cplx(1.0), cplx(-1.0), cplx(1.0)};
    coarse.closed = true;
    CHECK_THROWS_WITH_AS(winding_number(coarse), doctest::Contains("undersampled"),
                         std::invalid_argument);
}

TEST_CASE("standard transition pair") {
    auto [b, c] = standard_bc();
    CHECK(b(-2.0) == cplx(0.0));
    CHECK(b(0.0) == cplx(0.5));
    CHECK(b(1.0) == cplx(1.0));
    for (double x : {-3.0, -1.0, -0.2, 0.0, 0.4, 1.0, 7.0})
        CHECK(std::abs(b(x) + c(x) - 1.0) == 0.0);
    CutoffPair::standard().validate({-5.0, -1.1, -0.5, 0.0, 0.5, 1.1, 5.0});
}

TEST_CASE("semiperiodic decomposition is unique given the cutoffs") {
    // build L twice: once canonically, once by re-deriving the decaying part
    // from the raw symbol; the components must agree
    auto L1 = semiperiodic_L();
    ScalarFn b = fn_b_std(), c = fn_c_std();
    auto Lraw = [](double x) { return x >= 0.0 ? std::polar(1.0, x) : cplx(1.0); };
    ScalarFn dec2("dec2", FnClass::C0, [Lraw, b, c](double x) {
        return Lraw(x) - (std::polar(1.0, x) * b(x) + c(x));
    });
    auto L2 = semiperiodic_from_parts(fn_exp_i_theta(), fn_one(), dec2, "L2");
    for (double x : {-9.0, -1.0, 0.0, 0.5, 2.0, 11.0}) {
        CHECK(std::abs(L1.eval(x) - L2.eval(x)) < 1e-14);
        CHECK(std::abs(L1.decaying(x) - L2.decaying(x)) < 1e-14);
    }
    for (double th : {0.0, 1.0, 4.0}) {
        CHECK(std::abs(L1.periodic_plus(th) - L2.periodic_plus(th)) == 0.0);
        CHECK(std::abs(L1.periodic_minus(th) - L2.periodic_minus(th)) == 0.0);
    }
}

TEST_CASE("MCPoint canonical corners") {
    auto p = MCPoint::canonical(-inf, -inf);
    CHECK(p.edge == MCPoint::Edge::Bottom);
    CHECK(MCPoint::canonical(inf, -inf).edge == MCPoint::Edge::Right);
    CHECK(MCPoint::canonical(inf, inf).edge == MCPoint::Edge::Top);
    CHECK(MCPoint::canonical(-inf, inf).edge == MCPoint::Edge::Left);
    CHECK_THROWS(MCPoint::canonical(1.0, 2.0));
}

TEST_CASE("ScalarFn class invariants") {
    CHECK_THROWS(ScalarFn("badCS", FnClass::CS, [](double) { return cplx(0.0); }));
    CHECK_THROWS(ScalarFn("badP", FnClass::P2pi, [](double x) { return cplx(x); }));
    CHECK(fn_s().validate_limits() < 1e-3);
    CHECK(fn_b_std().validate_limits() == 0.0);
}
