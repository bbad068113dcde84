#pragma once

#include "opindex/op_numeric.hpp"
#include "opindex/word.hpp"

#include <array>
#include <optional>

namespace opindex {

/// Operator on the truncated lattice j in [-J, J]; row/col r corresponds to
/// lattice index j = r - J.
struct SeqOperator {
    Mat matrix;
    int halfwidth = 0;
    std::string provenance;

    int size() const { return 2 * halfwidth + 1; }
    int row_of(int j) const { return j + halfwidth; }
    cplx at(int j, int k) const { return matrix(row_of(j), row_of(k)); }

    static SeqOperator identity(int J);
    SeqOperator adjoint() const;
    SeqOperator operator*(const SeqOperator& o) const;
    SeqOperator operator+(const SeqOperator& o) const;
    SeqOperator operator-(const SeqOperator& o) const;
};

SeqOperator scale(cplx c, const SeqOperator& a);

/// Diagonal (f(j - phi))_j on the truncation.
SeqOperator lattice_multiplier(const ScalarFn& f, double phi, int J);

/// Y_phi = F_d M^{-phi} F_d^{-1} on 2J+1 points: unitary, Y_phi Y_psi = Y_{phi+psi}
/// exactly, and Y_k the exact cyclic shift (Y_k u)_j = u_{j+k} for integer k.
struct YOperator {
    double phi = 0.0;
    int halfwidth = 0;
    Mat matrix;
    SeqOperator as_seq(const std::string& tag = "") const;
};

YOperator y_op(double phi, int J);

/// Thm 3.5's table presupposes a shift direction the notation does not pin
/// down: `Literal` realizes (Y_k u)_j = u_{j+k} verbatim, `Paper` replaces
/// every Y_phi by Y_{-phi}, which is the reading that reproduces the printed
/// matrices (and the table's global sign).
enum class ShiftConvention { Literal, Paper };

struct GammaValue {
    double phi = 0.0;
    int sign = +1;
    SeqOperator op;
};

/// gamma on a single generator.
GammaValue gamma_mult_cs(const ScalarFn& a, double phi, int sign, int J);
GammaValue gamma_fourier(const ScalarFn& b, double phi, int sign, int J,
                         ShiftConvention conv);
GammaValue gamma_modulation(int j, double phi, int sign, int J, ShiftConvention conv);

/// gamma of a word: sum over terms of gamma_a * gamma_{b(D)} * gamma_{e^{ijM}}.
/// Semiperiodic coefficients require exact trig data on their periodic parts.
GammaValue gamma_word(const GeneratorWord& word, double phi, int sign, int J,
                      ShiftConvention conv);

// ---------------------------------------------------------------------------
// Regularized trace index.

struct TraceIndex {
    double value = 0.0;        // Tr((Id-A*A)^N) - Tr((Id-AA*)^N)
    double trace_left = 0.0;   // Tr((Id-A*A)^N)
    double trace_right = 0.0;  // Tr((Id-AA*)^N)
    bool exact = false;        // all inputs dyadic: traces computed without rounding
};

/// Throws "not trace-ready at this truncation" when either defect power has
/// entries above 1e-12 outside the centered block |j| <= J/2.
TraceIndex trace_index(const SeqOperator& a, int N);

IndexEstimate eps_rank_index(const SeqOperator& a, double eps);

// ---------------------------------------------------------------------------
// The Thm 3.5 computations.

/// The four K_1(A/E) generator words A1..A4 built from L, Ltilde and the
/// standard transition pair.
std::array<GeneratorWord, 4> delta1_generators();

struct Delta1Table {
    std::array<std::pair<long, long>, 4> pairs;  // (value at (1,+1), value at (1,-1))
    int global_sign = +1;                        // +1: matches the printed table
    double a1_trace_left = 0.0;                  // Tr(Id - gamma* gamma) for A1 at (1,+1)
    double a1_trace_right = 0.0;                 // Tr(Id - gamma gamma*)
    ShiftConvention convention = ShiftConvention::Paper;
};

Delta1Table delta1_table(int J, ShiftConvention conv);

struct Delta0Result {
    SampledLoop loop;                 // psi -> e^{2 pi i b(psi)}, psi increasing
    std::pair<long, long> cls;        // w * (1, 1)
    double max_offsite_leak = 0.0;
};

/// Verifies e^{2 pi i b(M - phi)} = Id + (e^{2 pi i b(-phi)} - Id) E over the
/// phi-samples (b rescaled to be constant outside [-1/5, 1/5]) and returns the
/// scalar loop with its class. Off-site leak above 1e-10 raises, naming phi.
Delta0Result delta0_exponential(const ScalarFn& b, int P);

// ---------------------------------------------------------------------------
// W-transform machinery.

/// (Wu)(phi_p) = Y_{phi_p} (u(phi_p - j))_j over phi_p = p/P, p = 0..P-1.
/// Requires u supported (to 1e-12) inside [-J+1, J-1] and the grid spacing to
/// equal 1/P so the shifted points are grid points.
std::vector<Vec> w_transform(const Vec& u, const GridSpec& g, int J, int P);

/// sum_p (1/P) ||(Wu)(phi_p)||^2, the phi-quadrature of the transform norm.
double w_norm_sq(const std::vector<Vec>& wu, int P);

/// Max over base points of ||gamma_word||; near-zero indicates J0 membership
/// at truncation scale.
double gamma_norm_diagnostic(const GeneratorWord& word, const std::vector<double>& phis,
                             int J, ShiftConvention conv);

}  // namespace opindex
