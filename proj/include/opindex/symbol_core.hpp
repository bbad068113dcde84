#pragma once

#include "opindex/common.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace opindex {

enum class FnClass { CS, C0, P2pi, Generic };

/// A scalar function R -> C with declared limits at +-infinity and a class tag.
/// Limits are declared, never estimated; the numerical limit probe exists for
/// validation only (validate_limits).
class ScalarFn {
  public:
    ScalarFn() = default;
    ScalarFn(std::string name, FnClass tag, std::function<cplx(double)> eval,
             std::optional<cplx> lim_minus = std::nullopt,
             std::optional<cplx> lim_plus = std::nullopt);

    cplx operator()(double x) const { return eval_(x); }

    /// Value at sign*infinity from the declared limits.
    /// Throws "symbol not in CS(R)" when the limit is missing.
    cplx at_limit(int sign) const;

    bool has_limits() const { return lim_minus_ && lim_plus_; }
    FnClass tag() const { return tag_; }
    const std::string& name() const { return name_; }

    /// Exact Fourier data, present when the function is a trig polynomial.
    const std::optional<std::map<int, cplx>>& trig_coeffs() const { return trig_; }
    ScalarFn& set_trig_coeffs(std::map<int, cplx> coeffs);

    /// Opaque serialized form (JSON text) kept by the deserializer so that
    /// schema round trips survive for non-builtin functions.
    const std::optional<std::string>& serialized_form() const { return serial_; }
    ScalarFn& set_serialized_form(std::string text);

    /// Cauchy probe at theta + 2*pi*k, k <= kmax; returns max deviation from
    /// the declared limit. Validation only.
    double validate_limits(double theta = 0.4, int kmax = 64) const;

  private:
    void check_class_invariants();

    std::string name_;
    FnClass tag_ = FnClass::Generic;
    std::function<cplx(double)> eval_;
    std::optional<cplx> lim_minus_, lim_plus_;
    std::optional<std::map<int, cplx>> trig_;
    std::optional<std::string> serial_;
};

/// Trig polynomial sum_k c_k e^{ikx} as a P2pi ScalarFn carrying exact coefficients.
ScalarFn trig_polynomial(const std::map<int, cplx>& coeffs, const std::string& name = "trig");

// Builtins.
ScalarFn fn_one();
ScalarFn fn_zero();
ScalarFn fn_s();            // s(x) = x / sqrt(1+x^2), CS with limits -1, +1
ScalarFn fn_b_std();        // piecewise linear: 0 for x<=-1, (x+1)/2 on [-1,1], 1 for x>=1
ScalarFn fn_c_std();        // 1 - b_std
ScalarFn fn_b_smooth();     // analytic transition (1+tanh x)/2, used by the grid fixtures
ScalarFn fn_c_smooth();
ScalarFn fn_exp_i_theta();  // e^{ix}, P2pi with trig coeff {1: 1}
ScalarFn builtin_scalar_fn(const std::string& name);

struct CutoffPair {
    ScalarFn chi_plus;   // 0 for t < -1, limit 1 at +inf
    ScalarFn chi_minus;  // 0 for t > 1, limit 1 at -inf

    static CutoffPair standard();  // chi+ = b_std, chi- = c_std
    void validate(const std::vector<double>& probes, double tol = Tol::algebraic) const;
};

/// Semiperiodic symbol a = a+ chi+ + a- chi- + a0 with a+- periodic and a0
/// vanishing at infinity. The decomposition is unique once the cutoffs are fixed.
struct SemiperiodicSymbol {
    ScalarFn periodic_plus;
    ScalarFn periodic_minus;
    ScalarFn decaying;
    CutoffPair cutoffs;
    std::string name;

    cplx eval(double x) const;
};

cplx eval_semiperiodic(const SemiperiodicSymbol& a, double x);

/// The generator L: e^{ix} for x >= 0, 1 for x < 0 (and e^{ix} on the +inf circle,
/// 1 on the -inf circle), expressed in canonical semiperiodic form.
SemiperiodicSymbol semiperiodic_L();
/// Ltilde: 1 for x > 0, e^{ix} for x <= 0.
SemiperiodicSymbol semiperiodic_Ltilde();
/// Constant-coefficient semiperiodic symbol a+ = pc_plus, a- = pc_minus, a0 = 0.
SemiperiodicSymbol semiperiodic_from_parts(ScalarFn plus, ScalarFn minus, ScalarFn dec,
                                           const std::string& name = "");

// ---------------------------------------------------------------------------
// Symbol spaces.

/// Point of M# = {(x, e^{ix}) : x in R} union {-inf, +inf} x S^1.
struct MSharpPoint {
    enum class Kind { Finite, PlusInf, MinusInf };
    Kind kind = Kind::Finite;
    double value = 0.0;  // x when Finite, theta in [0, 2pi) otherwise

    static MSharpPoint finite(double x) { return {Kind::Finite, x}; }
    static MSharpPoint plus_inf(double theta);
    static MSharpPoint minus_inf(double theta);
};

/// Evaluate the M# functional: w_t, w_{theta,+} or w_{theta,-} of the symbol.
cplx limit_functional(const SemiperiodicSymbol& a, const MSharpPoint& p);

/// Point of M_C = {(x, xi) : |x| + |xi| = infinity}. `coord` is the running
/// coordinate of the edge (x on Top/Bottom, xi on Right/Left); corners carry a
/// unique canonical edge.
struct MCPoint {
    enum class Edge { Top, Bottom, Right, Left };
    Edge edge = Edge::Top;
    double coord = 0.0;  // may be +-infinity
    static MCPoint canonical(double x, double xi);
    double x() const;
    double xi() const;
};

/// Closed sampled curve in C.
struct SampledLoop {
    std::vector<cplx> samples;
    bool closed = false;
    std::string orientation;  // recorded traversal convention
};

/// Winding number by phase unwrapping; exact integer.
/// Throws "symbol not invertible" when the loop comes within `zero_tol` of 0,
/// "undersampled loop" when a phase increment reaches pi.
int winding_number(const SampledLoop& loop, double zero_tol = 1e-9);

SampledLoop concat_loops(const SampledLoop& a, const SampledLoop& b);
SampledLoop pointwise_product(const SampledLoop& a, const SampledLoop& b);

/// Standard transition pair of the comparison algebra (Thm 2.13 hypotheses):
/// b piecewise linear increasing 0 -> 1 over [-1, 1], c = 1 - b.
std::pair<ScalarFn, ScalarFn> standard_bc();

}  // namespace opindex
