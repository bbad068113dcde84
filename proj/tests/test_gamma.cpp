#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "opindex/ab_lattice.hpp"
#include "opindex/gamma_calculus.hpp"

#include <cmath>
#include <random>

using namespace opindex;

namespace {

// entrywise forms of gamma[A1](1,+1) derived from the operator expressions
// b(M-1)Y_{-1} + Y_1 c(M-1) Y_{-1}; used as an independent oracle.
cplx a1_entry_literal(int j, int k) {
    auto b = fn_b_std(), c = fn_c_std();
    if (k == j - 1) return b(j - 1.0);
    if (k == j) return c(double(j));
    return 0.0;
}
cplx a1_entry_paper(int j, int k) {
    auto b = fn_b_std(), c = fn_c_std();
    if (k == j + 1) return b(j - 1.0);
    if (k == j) return c(j - 2.0);
    return 0.0;
}

SeqOperator ramp_operator(int J, double site, double width, int reps, uint64_t salt) {
    // q(M) + p(M) S_1 with p ramping 0 -> 1 and q ramping 1 -> 0 across the
    // interior site; outside the ramp it is exactly diagonal-unitary or the
    // shift, so Id - A*A is finite rank in the center.
    std::mt19937_64 rng(salt);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto ramp = [&](double j) { return std::clamp((j - site) / width + 0.5, 0.0, 1.0); };
    const int n = 2 * J + 1;
    Mat m = Mat::Zero(n, n);
    for (int j = -J; j <= J; ++j) {
        double r = ramp(j);
        double jitter = (r > 0.0 && r < 1.0) ? 0.2 * (unif(rng) - 0.5) : 0.0;
        double p = std::sin(kPi / 2 * std::clamp(r + jitter, 0.0, 1.0));
        double q = std::sqrt(std::max(0.0, 1.0 - p * p));
        cplx phase = (r == 0.0) ? std::polar(1.0, kTwoPi * unif(rng)) : cplx(1.0);
        m(j + J, j + J) = q * phase;
        if (j + 1 <= J) m(j + J, j + 1 + J) = p;
    }
    SeqOperator a{std::move(m), J, "ramp"};
    for (int i = 1; i < reps; ++i)
        a = a * ramp_operator(J, site + 3.0 * i, width, 1, salt + 101 * i);
    return a;
}

}  // namespace

TEST_CASE("y_op basics") {
    auto y0 = y_op(0.0, 10);
    CHECK((y0.matrix - Mat::Identity(21, 21)).norm() < 1e-13);

    // integer phi: exact shift on interior rows
    auto y2 = y_op(2.0, 10);
    for (int j = -10; j <= 8; ++j)
        for (int k = -10; k <= 10; ++k)
            CHECK(std::abs(y2.matrix(j + 10, k + 10) - (k == j + 2 ? 1.0 : 0.0)) < 1e-13);

    // group law
    Mat prod = y_op(0.3, 10).matrix * y_op(0.4, 10).matrix;
    CHECK((prod - y_op(0.7, 10).matrix).norm() < 1e-10);

    // unitary
    auto y = y_op(0.37, 12);
    CHECK((y.matrix * y.matrix.adjoint() - Mat::Identity(25, 25)).norm() < 1e-10);
}

TEST_CASE("gamma of single generators") {
    const int J = 12;
    for (auto conv : {ShiftConvention::Literal, ShiftConvention::Paper}) {
        // e^{ijM} -> Y_{-j}: a pure shift matrix on the truncation
        auto g = gamma_modulation(3, 0.2, +1, J, conv);
        int dir = conv == ShiftConvention::Literal ? -3 : 3;
        for (int j = -J; j <= J; ++j)
            for (int k = -J; k <= J; ++k) {
                cplx expect = (k == j + dir) ? 1.0 : 0.0;
                CHECK(std::abs(g.op.at(j, k) - expect) < 1e-13);
            }
    }
    // a = b_std at sign -1: b_std(-inf) = 0
    auto gz = gamma_mult_cs(fn_b_std(), 0.5, -1, J);
    CHECK(gz.op.matrix.norm() == 0.0);
    // b(D) at phi = 0: diagonal (b(j))_j
    auto gd = gamma_fourier(fn_b_std(), 0.0, +1, J, ShiftConvention::Literal);
    for (int j = -J; j <= J; ++j)
        for (int k = -J; k <= J; ++k)
            CHECK(std::abs(gd.op.at(j, k) - (j == k ? fn_b_std()(j) : cplx(0.0))) < 1e-13);
}

TEST_CASE("gamma of the A1 word matches the operator expressions") {
    const int J = 16;
    auto words = delta1_generators();

    // (1, -1): gamma[A1] = Id
    for (auto conv : {ShiftConvention::Literal, ShiftConvention::Paper}) {
        auto gm = gamma_word(words[0], 1.0, -1, J, conv);
        CHECK((gm.op.matrix - Mat::Identity(gm.op.size(), gm.op.size())).norm() < 1e-12);
    }
    // (1, +1): entrywise oracle per convention
    auto gl = gamma_word(words[0], 1.0, +1, J, ShiftConvention::Literal);
    auto gp = gamma_word(words[0], 1.0, +1, J, ShiftConvention::Paper);
    for (int j = -J + 2; j <= J - 2; ++j)
        for (int k = -J + 2; k <= J - 2; ++k) {
            CHECK(std::abs(gl.op.at(j, k) - a1_entry_literal(j, k)) < 1e-13);
            CHECK(std::abs(gp.op.at(j, k) - a1_entry_paper(j, k)) < 1e-13);
        }
    // identity word
    auto gi = gamma_word(GeneratorWord::identity(), 0.3, +1, J, ShiftConvention::Paper);
    CHECK((gi.op.matrix - Mat::Identity(gi.op.size(), gi.op.size())).norm() < 1e-10);
}

TEST_CASE("trace_index") {
    const int J = 16;
    auto tid = trace_index(SeqOperator::identity(J), 1);
    CHECK(tid.value == 0.0);
    CHECK(tid.exact);

    auto words = delta1_generators();
    auto gp = gamma_word(words[0], 1.0, +1, J, ShiftConvention::Paper);
    auto tp = trace_index(gp.op, 1);
    CHECK(tp.value == 1.0);
    CHECK(tp.trace_left == 0.5);
    CHECK(tp.trace_right == -0.5);
    CHECK(tp.exact);  // dyadic inputs: certified exact

    auto gl = gamma_word(words[0], 1.0, +1, J, ShiftConvention::Literal);
    auto tl = trace_index(gl.op, 1);
    CHECK(tl.value == -1.0);

    // N = 2 gives the same index
    CHECK(trace_index(gp.op, 2).value == 1.0);

    // truncated unilateral shift pattern: u_j -> u_{j-1} for j >= 1, identity
    // for j <= -1; value agrees with the eps-rank oracle
    Mat m = Mat::Zero(2 * J + 1, 2 * J + 1);
    for (int j = -J; j <= -1; ++j) m(j + J, j + J) = 1.0;
    for (int j = 1; j <= J; ++j) m(j + J, j - 1 + J) = 1.0;
    SeqOperator shift_pat{std::move(m), J, "shift pattern"};
    auto tsh = trace_index(shift_pat, 1);
    auto est = eps_rank_index(shift_pat, 1e-8);
    CHECK(est.gap.reliable);
    CHECK(tsh.value == doctest::Approx(double(est.index)).epsilon(1e-12));
    CHECK(est.index == -1);

    // guard failure: an operator whose defect sits between the center and the
    // edge collar
    Mat bad = Mat::Identity(2 * J + 1, 2 * J + 1);
    bad(J + 3 * J / 4, J + 3 * J / 4) = 0.5;
    CHECK_THROWS_WITH_AS(trace_index(SeqOperator{bad, J, "bad"}, 1),
                         doctest::Contains("not trace-ready"), std::invalid_argument);
}

TEST_CASE("delta1 table under both conventions") {
    auto tp = delta1_table(32, ShiftConvention::Paper);
    CHECK(tp.global_sign == 1);
    CHECK(tp.pairs[0] == std::pair<long, long>{1, 0});
    CHECK(tp.pairs[1] == std::pair<long, long>{0, 1});
    CHECK(tp.pairs[2] == std::pair<long, long>{-1, 0});
    CHECK(tp.pairs[3] == std::pair<long, long>{0, -1});
    CHECK(tp.a1_trace_left == 0.5);
    CHECK(tp.a1_trace_right == -0.5);

    auto tl = delta1_table(32, ShiftConvention::Literal);
    CHECK(tl.global_sign == -1);
    for (int i = 0; i < 4; ++i) {
        CHECK(tl.pairs[i].first == -tp.pairs[i].first);
        CHECK(tl.pairs[i].second == -tp.pairs[i].second);
    }
}

TEST_CASE("delta0 exponential map") {
    auto dz = delta0_exponential(fn_zero(), 64);
    CHECK(dz.cls == std::pair<long, long>{0, 0});
    for (const auto& z : dz.loop.samples) CHECK(std::abs(z - cplx(1.0)) < 1e-14);

    auto db = delta0_exponential(fn_b_std(), 512);
    CHECK(db.cls == std::pair<long, long>{1, 1});
    CHECK(db.max_offsite_leak < 1e-10);

    auto dc = delta0_exponential(fn_c_std(), 512);
    CHECK(dc.cls == std::pair<long, long>{-1, -1});

    // support leak: a transition too wide for the single-site identity
    ScalarFn wide("wide", FnClass::CS,
                  [](double x) { return cplx(std::clamp((x + 10.0) / 20.0, 0.0, 1.0)); },
                  cplx(0.0), cplx(1.0));
    CHECK_THROWS_WITH_AS(delta0_exponential(wide, 64),
                         doctest::Contains("single-site support"), std::invalid_argument);
}

TEST_CASE("w_transform") {
    const int J = 12, P = 16;
    GridSpec g(512, 16.0);  // spacing 1/16 = 1/P

    // unit-mass indicator bump over [0, 1): u^diamond picks the j = 0 site for
    // every phi, so (Wu)(phi) is Y_phi e_0 up to the sample value
    Vec u = Vec::Zero(g.n);
    for (int k = 0; k < g.n; ++k)
        if (g.x(k) >= 0.0 && g.x(k) < 1.0) u[k] = 1.0;
    auto wu = w_transform(u, g, J, P);
    for (int p = 0; p < P; ++p) {
        Vec undone = y_op(-double(p) / P, J).matrix * wu[p];
        CHECK(std::abs(undone[J] - 1.0) < 1e-10);
        for (int j = -J; j <= J; ++j)
            if (j != 0) CHECK(std::abs(undone[j + J]) < 1e-10);
    }

    // norm identity for a random band-limited u supported inside [-J+1, J-1]
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Vec v = Vec::Zero(g.n);
    for (int k = 0; k < g.n; ++k) {
        double x = g.x(k);
        if (std::abs(x) < J - 2)
            v[k] = std::exp(-x * x / 30.0) * cplx(std::cos(0.8 * x), 0.4 * std::sin(1.7 * x));
    }
    auto wv = w_transform(v, g, J, P);
    double lhs = w_norm_sq(wv, P);
    double rhs = v.squaredNorm() * g.spacing();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));

    // support violation
    Vec bad = Vec::Ones(g.n);
    CHECK_THROWS_WITH_AS(w_transform(bad, g, J, P), doctest::Contains("supported"),
                         std::invalid_argument);
}

TEST_CASE("w_transform conjugation residual (the discrete Thm 1.23 check)") {
    const int J = 12, P = 16, j_shift = 1;
    GridSpec g(512, 16.0);
    ScalarFn b = fn_b_std();
    ScalarFn a("a0", FnClass::C0, [](double x) { return cplx(std::exp(-x * x / 4)); });

    // W as a matrix onto the (P x (2J+1)) window
    const int nw = P * (2 * J + 1);
    Mat Wm = Mat::Zero(nw, g.n);
    for (int p = 0; p < P; ++p) {
        double phi = double(p) / P;
        Mat yp = y_op(phi, J).matrix;
        for (int j = -J; j <= J; ++j) {
            long k = std::lround((phi - j + g.half_width) / g.spacing());
            for (int r = -J; r <= J; ++r)
                Wm(p * (2 * J + 1) + (r + J), k) += yp(r + J, j + J);
        }
    }

    // left side: W b(D) a(M) T_j W^*
    Mat op = fourier_multiplier_op(b, g).matrix * multiplication_op(a, g).matrix *
             translation_op(j_shift, g).matrix;
    Mat lhs = Wm * op * Wm.adjoint();

    // right side: b(D_theta) Y_phi a(phi - M) Y_{-phi-j}
    Mat block = Mat::Zero(nw, nw);
    for (int p = 0; p < P; ++p) {
        double phi = double(p) / P;
        ScalarFn arev("arev", FnClass::C0, [a](double t) { return a(-t); });
        Mat m = y_op(phi, J).matrix * lattice_multiplier(arev, -phi, J).matrix *
                y_op(-phi - j_shift, J).matrix;
        block.block(p * (2 * J + 1), p * (2 * J + 1), 2 * J + 1, 2 * J + 1) = m;
    }
    // b(D_theta): multiplier b(k) on the phi-Fourier modes, acting blockwise
    Mat Fp = Mat::Zero(P, P);
    for (int k = 0; k < P; ++k)
        for (int p = 0; p < P; ++p)
            Fp(k, p) = std::polar(1.0 / std::sqrt(double(P)), -kTwoPi * k * p / P);
    Mat bd_theta = Mat::Zero(nw, nw);
    {
        Mat diag = Mat::Zero(P, P);
        for (int k = 0; k < P; ++k) {
            int freq = (k <= P / 2) ? k : k - P;
            diag(k, k) = b(double(freq));
        }
        Mat small = Fp.adjoint() * diag * Fp;
        for (int p = 0; p < P; ++p)
            for (int q = 0; q < P; ++q)
                bd_theta.block(p * (2 * J + 1), q * (2 * J + 1), 2 * J + 1, 2 * J + 1) =
                    small(p, q) * Mat::Identity(2 * J + 1, 2 * J + 1);
    }
    Mat rhs = bd_theta * block;

    auto s = singular_values(Mat(lhs - rhs));
    // compactness proxy: the residual's singular values collapse well inside
    // the 400-dimensional window (k0 = 128 documented for this family; the
    // piecewise-linear b gives algebraic tails)
    int k0 = 0;
    while (k0 < static_cast<int>(s.size()) && s[k0] > 1e-3) ++k0;
    CHECK(k0 <= 128);
    CHECK(s[160] < 1e-5);
    CHECK(s[240] < 1e-12);
    CHECK(s[0] < 1.0);
}

TEST_CASE("gamma_norm_diagnostic") {
    const int J = 12;
    std::vector<double> phis = {0.0, 0.25, 0.5, 0.75};
    ScalarFn a0("a0", FnClass::C0, [](double x) { return cplx(std::exp(-x * x)); });
    GeneratorWord j0word;
    j0word.add_term(a0, fn_b_std(), 0);
    CHECK(gamma_norm_diagnostic(j0word, phis, J, ShiftConvention::Literal) < 1e-8);
    CHECK(gamma_norm_diagnostic(GeneratorWord::identity(), phis, J,
                                ShiftConvention::Literal) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(gamma_norm_diagnostic(GeneratorWord::modulation(2), phis, J,
                                ShiftConvention::Paper) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("index_element (Lemma 3.4)") {
    const int J = 16;
    auto id = SeqOperator::identity(J);
    auto triv = index_element(id, id);
    CHECK((triv.w1 - triv.reference).norm() == 0.0);
    CHECK(triv.trace_difference == 0.0);
    CHECK(triv.idempotency_defect == 0.0);

    auto words = delta1_generators();
    auto a = gamma_word(words[0], 1.0, +1, J, ShiftConvention::Paper).op;
    auto el = index_element(a, a.adjoint());
    CHECK(el.idempotency_defect < 1e-8);
    auto ti = trace_index(a, 1);
    CHECK(el.trace_difference == doctest::Approx(ti.value).epsilon(1e-10));

    // ramp fixture vs eps-rank oracle
    auto r = ramp_operator(J, 0.0, 2.0, 1, 7);
    auto er = eps_rank_index(r, 1e-8);
    auto elr = index_element(r, r.adjoint());
    CHECK(er.gap.reliable);
    CHECK(elr.trace_difference == doctest::Approx(double(er.index)).epsilon(1e-8));
}
