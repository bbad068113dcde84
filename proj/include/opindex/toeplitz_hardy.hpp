#pragma once

#include "opindex/op_numeric.hpp"

#include <map>

namespace opindex {

/// Band-limited symbol on the circle, phi(e^{i theta}) = sum_k c_k e^{i k theta}.
struct CircleSymbol {
    std::map<int, cplx> fourier;

    cplx eval(double theta) const;
    int degree() const;  // max |k| over the support
    CircleSymbol conj() const;
    CircleSymbol operator*(const CircleSymbol& other) const;  // convolution

    static CircleSymbol monomial(int k, cplx c = cplx(1.0));
};

/// Two-sided coefficient vector (finitely supported).
using CoeffVec = std::map<int, cplx>;

/// Orthogonal projection of L^2(S^1) onto H^2(S^1) in coefficients: zero out
/// the negative frequencies.
CoeffVec hardy_projection(const CoeffVec& v);

/// m x m compression of T_phi on the basis {e_k : k >= 0}: M[p][q] = c_{p-q}.
struct ToeplitzTruncation {
    CircleSymbol symbol;
    int size = 0;
    Mat matrix;
};

ToeplitzTruncation toeplitz_truncation(const CircleSymbol& phi, int m);

struct ToeplitzIndexResult {
    int index = 0;          // -winding(phi), the authoritative value
    int winding = 0;
    IndexEstimate eps_rank; // corroborating estimate on the m-truncation
    bool corroborated = false;  // eps-rank agrees and its gap check passed
};

/// ind(T_phi) = -w(phi). Throws "not Fredholm" when phi vanishes on the
/// 4m-point circle probe. The eps-rank value on the truncation corroborates
/// the winding route whenever its gap check passes.
ToeplitzIndexResult toeplitz_index(const CircleSymbol& phi, int m, double eps);

/// (Ug)(t) = 1/(sqrt(pi)(1-it)) g((1+it)/(1-it)), g given by P uniform samples
/// on theta_p = 2 pi p / P; trigonometric interpolation (exact for P > 2 deg g).
std::vector<cplx> cayley_transform(const std::vector<cplx>& g_samples,
                                   const std::vector<double>& t_grid);

/// Quadrature weights dtheta/dt = 2/(1+t^2) for L^2(R) integrals of Cayley
/// transforms parametrized by theta.
double cayley_l2_norm(const std::vector<cplx>& ug, const std::vector<double>& t_grid);

/// The (negative-frequency rows) x (nonnegative-frequency columns) block of
/// (Id - P) phi(M) P on the m-truncation; rows p = -1..-deg(phi). Exact rank
/// <= deg(phi), with equality for phi = e_{-deg}.
Mat hankel_block(const CircleSymbol& phi, int m);

}  // namespace opindex
