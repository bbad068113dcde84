#include "opindex/symbol_core.hpp"

#include <cmath>

namespace opindex {

ScalarFn::ScalarFn(std::string name, FnClass tag, std::function<cplx(double)> eval,
                   std::optional<cplx> lim_minus, std::optional<cplx> lim_plus)
    : name_(std::move(name)),
      tag_(tag),
      eval_(std::move(eval)),
      lim_minus_(lim_minus),
      lim_plus_(lim_plus) {
    check_class_invariants();
}

void ScalarFn::check_class_invariants() {
    switch (tag_) {
        case FnClass::CS:
            require(lim_minus_.has_value() && lim_plus_.has_value(),
                    "symbol not in CS(R): " + name_ + " lacks declared limits");
            break;
        case FnClass::C0:
            if (!lim_minus_) lim_minus_ = cplx(0.0);
            if (!lim_plus_) lim_plus_ = cplx(0.0);
            require(std::abs(*lim_minus_) == 0.0 && std::abs(*lim_plus_) == 0.0,
                    "C0 function " + name_ + " must have zero limits");
            break;
        case FnClass::P2pi: {
            for (double x : {-7.3, -1.0, 0.0, 0.37, 2.0, 5.11}) {
                cplx d = eval_(x + kTwoPi) - eval_(x);
                require(std::abs(d) < Tol::algebraic,
                        "P2pi function " + name_ + " fails periodicity probe");
            }
            break;
        }
        case FnClass::Generic:
            break;
    }
    for (double x : {-13.7, -2.0, 0.0, 1.5, 9.9}) {
        cplx v = eval_(x);
        require(std::isfinite(v.real()) && std::isfinite(v.imag()),
                "evaluator of " + name_ + " produced a non-finite value");
    }
}

cplx ScalarFn::at_limit(int sign) const {
    const auto& lim = sign > 0 ? lim_plus_ : lim_minus_;
    require(lim.has_value(), "symbol not in CS(R): " + name_ + " missing limit at " +
                                 (sign > 0 ? std::string("+inf") : std::string("-inf")));
    return *lim;
}

ScalarFn& ScalarFn::set_trig_coeffs(std::map<int, cplx> coeffs) {
    trig_ = std::move(coeffs);
    return *this;
}

ScalarFn& ScalarFn::set_serialized_form(std::string text) {
    serial_ = std::move(text);
    return *this;
}

double ScalarFn::validate_limits(double theta, int kmax) const {
    double worst = 0.0;
    for (int sign : {-1, +1}) {
        if (!(sign > 0 ? lim_plus_ : lim_minus_)) continue;
        cplx lim = at_limit(sign);
        for (int k = kmax / 2; k <= kmax; ++k) {
            double dev = std::abs(eval_(theta + sign * kTwoPi * k) - lim);
            worst = std::max(worst, dev);
        }
    }
    return worst;
}

ScalarFn trig_polynomial(const std::map<int, cplx>& coeffs, const std::string& name) {
    auto eval = [coeffs](double x) {
        cplx v(0.0);
        for (const auto& [k, c] : coeffs) v += c * std::polar(1.0, k * x);
        return v;
    };
    ScalarFn f(name, FnClass::P2pi, eval);
    f.set_trig_coeffs(coeffs);
    return f;
}

ScalarFn fn_one() {
    ScalarFn f("one", FnClass::CS, [](double) { return cplx(1.0); }, cplx(1.0), cplx(1.0));
    f.set_trig_coeffs({{0, cplx(1.0)}});
    return f;
}

ScalarFn fn_zero() {
    ScalarFn f("zero", FnClass::C0, [](double) { return cplx(0.0); });
    f.set_trig_coeffs({});
    return f;
}

ScalarFn fn_s() {
    return ScalarFn("s", FnClass::CS,
                    [](double x) { return cplx(x / std::sqrt(1.0 + x * x)); },
                    cplx(-1.0), cplx(1.0));
}

ScalarFn fn_b_std() {
    return ScalarFn("b_std", FnClass::CS,
                    [](double x) {
                        if (x <= -1.0) return cplx(0.0);
                        if (x >= 1.0) return cplx(1.0);
                        return cplx((x + 1.0) / 2.0);
                    },
                    cplx(0.0), cplx(1.0));
}

ScalarFn fn_c_std() {
    return ScalarFn("c_std", FnClass::CS,
                    [](double x) {
                        if (x <= -1.0) return cplx(1.0);
                        if (x >= 1.0) return cplx(0.0);
                        return cplx((1.0 - x) / 2.0);
                    },
                    cplx(1.0), cplx(0.0));
}

ScalarFn fn_b_smooth() {
    return ScalarFn("b_sm", FnClass::CS,
                    [](double x) { return cplx(0.5 * (1.0 + std::tanh(x))); },
                    cplx(0.0), cplx(1.0));
}

ScalarFn fn_c_smooth() {
    return ScalarFn("c_sm", FnClass::CS,
                    [](double x) { return cplx(0.5 * (1.0 - std::tanh(x))); },
                    cplx(1.0), cplx(0.0));
}

ScalarFn fn_exp_i_theta() { return trig_polynomial({{1, cplx(1.0)}}, "exp_i_theta"); }

ScalarFn builtin_scalar_fn(const std::string& name) {
    if (name == "one") return fn_one();
    if (name == "zero") return fn_zero();
    if (name == "s") return fn_s();
    if (name == "b_std") return fn_b_std();
    if (name == "c_std") return fn_c_std();
    if (name == "b_sm") return fn_b_smooth();
    if (name == "c_sm") return fn_c_smooth();
    if (name == "exp_i_theta") return fn_exp_i_theta();
    throw std::invalid_argument("unknown builtin scalar function: " + name);
}

CutoffPair CutoffPair::standard() { return CutoffPair{fn_b_std(), fn_c_std()}; }

void CutoffPair::validate(const std::vector<double>& probes, double tol) const {
    for (double t : probes) {
        require(std::abs(chi_plus(t) + chi_minus(t) - 1.0) < tol, "chi+ + chi- != 1");
        if (t < -1.0) require(std::abs(chi_plus(t)) < tol, "chi+ must vanish left of -1");
        if (t > 1.0) require(std::abs(chi_minus(t)) < tol, "chi- must vanish right of 1");
    }
    require(std::abs(chi_plus.at_limit(+1) - 1.0) < tol, "chi+(+inf) != 1");
    require(std::abs(chi_minus.at_limit(-1) - 1.0) < tol, "chi-(-inf) != 1");
}

cplx SemiperiodicSymbol::eval(double x) const {
    return periodic_plus(x) * cutoffs.chi_plus(x) + periodic_minus(x) * cutoffs.chi_minus(x) +
           decaying(x);
}

cplx eval_semiperiodic(const SemiperiodicSymbol& a, double x) { return a.eval(x); }

SemiperiodicSymbol semiperiodic_from_parts(ScalarFn plus, ScalarFn minus, ScalarFn dec,
                                           const std::string& name) {
    return SemiperiodicSymbol{std::move(plus), std::move(minus), std::move(dec),
                              CutoffPair::standard(), name};
}

SemiperiodicSymbol semiperiodic_L() {
    ScalarFn b = fn_b_std(), c = fn_c_std();
    // L - (e^{ix} b + c) vanishes at infinity
    ScalarFn dec("L_decaying", FnClass::C0, [b, c](double x) {
        cplx L = x >= 0.0 ? std::polar(1.0, x) : cplx(1.0);
        return L - (std::polar(1.0, x) * b(x) + c(x));
    });
    return semiperiodic_from_parts(fn_exp_i_theta(), fn_one(), dec, "L");
}

SemiperiodicSymbol semiperiodic_Ltilde() {
    ScalarFn b = fn_b_std(), c = fn_c_std();
    ScalarFn dec("Ltilde_decaying", FnClass::C0, [b, c](double x) {
        cplx Lt = x > 0.0 ? cplx(1.0) : std::polar(1.0, x);
        return Lt - (b(x) + std::polar(1.0, x) * c(x));
    });
    return semiperiodic_from_parts(fn_one(), fn_exp_i_theta(), dec, "Ltilde");
}

namespace {
double norm_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0) t += kTwoPi;
    return t;
}
}  // namespace

MSharpPoint MSharpPoint::plus_inf(double theta) {
    return {Kind::PlusInf, norm_angle(theta)};
}
MSharpPoint MSharpPoint::minus_inf(double theta) {
    return {Kind::MinusInf, norm_angle(theta)};
}

cplx limit_functional(const SemiperiodicSymbol& a, const MSharpPoint& p) {
    switch (p.kind) {
        case MSharpPoint::Kind::Finite:
            return a.eval(p.value);
        case MSharpPoint::Kind::PlusInf:
            return a.periodic_plus(p.value);
        case MSharpPoint::Kind::MinusInf:
            return a.periodic_minus(p.value);
    }
    throw std::logic_error("unreachable");
}

MCPoint MCPoint::canonical(double x, double xi) {
    const bool xinf = std::isinf(x), kinf = std::isinf(xi);
    require(xinf || kinf, "M_C requires |x| + |xi| = infinity");
    // Corners pinned to the edge that starts there under the traversal
    // Bottom -> Right -> Top -> Left (counterclockwise).
    if (xinf && kinf) {
        if (x < 0 && xi < 0) return {Edge::Bottom, x};
        if (x > 0 && xi < 0) return {Edge::Right, xi};
        if (x > 0 && xi > 0) return {Edge::Top, x};
        return {Edge::Left, xi};
    }
    if (kinf) return {xi > 0 ? Edge::Top : Edge::Bottom, x};
    return {x > 0 ? Edge::Right : Edge::Left, xi};
}

double MCPoint::x() const {
    switch (edge) {
        case Edge::Top:
        case Edge::Bottom:
            return coord;
        case Edge::Right:
            return std::numeric_limits<double>::infinity();
        case Edge::Left:
            return -std::numeric_limits<double>::infinity();
    }
    throw std::logic_error("unreachable");
}

double MCPoint::xi() const {
    switch (edge) {
        case Edge::Top:
            return std::numeric_limits<double>::infinity();
        case Edge::Bottom:
            return -std::numeric_limits<double>::infinity();
        case Edge::Right:
        case Edge::Left:
            return coord;
    }
    throw std::logic_error("unreachable");
}

int winding_number(const SampledLoop& loop, double zero_tol) {
    const auto& z = loop.samples;
    require(z.size() >= 3, "loop too short");
    for (const auto& v : z) require(std::abs(v) > zero_tol, "symbol not invertible");
    double total = 0.0;
    auto step = [&](const cplx& from, const cplx& to) {
        double d = std::arg(to / from);
        require(std::abs(d) < kPi - 1e-9, "undersampled loop");
        total += d;
    };
    for (size_t i = 0; i + 1 < z.size(); ++i) step(z[i], z[i + 1]);
    if (!loop.closed) step(z.back(), z.front());
    double w = total / kTwoPi;
    int wi = static_cast<int>(std::lround(w));
    require(std::abs(w - wi) < 1e-6, "winding did not close to an integer");
    return wi;
}

SampledLoop concat_loops(const SampledLoop& a, const SampledLoop& b) {
    SampledLoop out;
    out.samples = a.samples;
    if (out.closed && !out.samples.empty()) out.samples.pop_back();
    out.samples.insert(out.samples.end(), b.samples.begin(), b.samples.end());
    out.closed = b.closed;
    out.orientation = a.orientation;
    return out;
}

SampledLoop pointwise_product(const SampledLoop& a, const SampledLoop& b) {
    require(a.samples.size() == b.samples.size(), "loop size mismatch");
    SampledLoop out;
    out.samples.resize(a.samples.size());
    for (size_t i = 0; i < a.samples.size(); ++i) out.samples[i] = a.samples[i] * b.samples[i];
    out.closed = a.closed && b.closed;
    out.orientation = a.orientation;
    return out;
}

std::pair<ScalarFn, ScalarFn> standard_bc() { return {fn_b_std(), fn_c_std()}; }

}  // namespace opindex
