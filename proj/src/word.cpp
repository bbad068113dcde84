#include "opindex/word.hpp"

#include <cmath>
#include <limits>

namespace opindex {

const char* const kMcOrientation =
    "M_C counterclockwise: Bottom(x:-inf->+inf,xi=-inf), Right(xi:-inf->+inf,x=+inf), "
    "Top(x:+inf->-inf,xi=+inf), Left(xi:+inf->-inf,x=-inf)";

GeneratorWord GeneratorWord::identity() {
    GeneratorWord w;
    w.name = "Id";
    w.add_term(fn_one(), fn_one(), 0);
    return w;
}

GeneratorWord GeneratorWord::multiplication(SymbolCoeff a, const std::string& name) {
    GeneratorWord w;
    w.name = name;
    w.add_term(std::move(a), fn_one(), 0);
    return w;
}

GeneratorWord GeneratorWord::fourier(ScalarFn b, const std::string& name) {
    GeneratorWord w;
    w.name = name.empty() ? b.name() + "(D)" : name;
    w.add_term(fn_one(), std::move(b), 0);
    return w;
}

GeneratorWord GeneratorWord::modulation(int j) {
    GeneratorWord w;
    w.name = "e^{i" + std::to_string(j) + "M}";
    w.add_term(fn_one(), fn_one(), j);
    return w;
}

GeneratorWord& GeneratorWord::add_term(SymbolCoeff a, ScalarFn b, int j) {
    require(std::abs(j) <= 64, "modulation exponent out of range");
    terms.push_back(Term{std::move(a), std::move(b), j});
    return *this;
}

bool GeneratorWord::modulation_free() const {
    for (const auto& t : terms)
        if (t.j != 0) return false;
    return true;
}

int GeneratorWord::max_abs_j() const {
    int m = 0;
    for (const auto& t : terms) m = std::max(m, std::abs(t.j));
    return m;
}

namespace {

cplx eval_cs(const ScalarFn& f, double x) {
    if (std::isinf(x)) return f.at_limit(x > 0 ? +1 : -1);
    return f(x);
}

const ScalarFn& as_cs(const SymbolCoeff& a) {
    const ScalarFn* f = std::get_if<ScalarFn>(&a);
    require(f != nullptr, "sigma_C requires plain CS(R) coefficients");
    return *f;
}

cplx limit_functional_coeff(const SymbolCoeff& a, const MSharpPoint& m) {
    if (const ScalarFn* f = std::get_if<ScalarFn>(&a)) {
        // A CS function is semiperiodic with constant periodic parts.
        switch (m.kind) {
            case MSharpPoint::Kind::Finite:
                return (*f)(m.value);
            case MSharpPoint::Kind::PlusInf:
                return f->at_limit(+1);
            case MSharpPoint::Kind::MinusInf:
                return f->at_limit(-1);
        }
    }
    return limit_functional(std::get<SemiperiodicSymbol>(a), m);
}

cplx limit_functional_modulation(int j, const MSharpPoint& m) {
    // e^{ij(theta +- 2 pi k)} = e^{ij theta} exactly, both signs.
    return std::polar(1.0, j * m.value);
}

}  // namespace

cplx sigma_C(const GeneratorWord& word, const MCPoint& p) {
    require(word.modulation_free(), "sigma_C requires a modulation-free word");
    cplx v(0.0);
    for (const auto& t : word.terms)
        v += eval_cs(as_cs(t.a), p.x()) * eval_cs(t.b, p.xi());
    return v;
}

cplx sigma_A(const GeneratorWord& word, const MSharpPoint& m, int sign) {
    require(sign == 1 || sign == -1, "sign must be +-1");
    cplx v(0.0);
    for (const auto& t : word.terms)
        v += limit_functional_coeff(t.a, m) * t.b.at_limit(sign) *
             limit_functional_modulation(t.j, m);
    return v;
}

SampledLoop loop_sigma_C(const GeneratorWord& word, int n) {
    require(n >= 16, "need at least 16 samples per edge");
    const double inf = std::numeric_limits<double>::infinity();
    auto inv_s = [](double tau) {
        if (tau <= -1.0) return -std::numeric_limits<double>::infinity();
        if (tau >= 1.0) return std::numeric_limits<double>::infinity();
        return tau / std::sqrt(1.0 - tau * tau);
    };
    SampledLoop loop;
    loop.orientation = kMcOrientation;
    loop.samples.reserve(4 * n + 1);
    for (int k = 0; k < n; ++k) {  // Bottom: x from -inf to +inf
        double tau = -1.0 + 2.0 * k / n;
        loop.samples.push_back(sigma_C(word, MCPoint::canonical(inv_s(tau), -inf)));
    }
    for (int k = 0; k < n; ++k) {  // Right: xi from -inf to +inf
        double tau = -1.0 + 2.0 * k / n;
        loop.samples.push_back(sigma_C(word, MCPoint::canonical(inf, inv_s(tau))));
    }
    for (int k = 0; k < n; ++k) {  // Top: x from +inf to -inf
        double tau = 1.0 - 2.0 * k / n;
        loop.samples.push_back(sigma_C(word, MCPoint::canonical(inv_s(tau), inf)));
    }
    for (int k = 0; k < n; ++k) {  // Left: xi from +inf to -inf
        double tau = 1.0 - 2.0 * k / n;
        loop.samples.push_back(sigma_C(word, MCPoint::canonical(-inf, inv_s(tau))));
    }
    loop.samples.push_back(loop.samples.front());
    loop.closed = true;
    return loop;
}

}  // namespace opindex
