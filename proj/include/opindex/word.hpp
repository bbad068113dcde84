#pragma once

#include "opindex/symbol_core.hpp"

#include <variant>
#include <vector>

namespace opindex {

/// Coefficient of a word term: plain CS multiplication or a semiperiodic symbol.
using SymbolCoeff = std::variant<ScalarFn, SemiperiodicSymbol>;

/// Finite sum  sum_j a_j(M) b_j(D) e^{i j M}.
struct GeneratorWord {
    struct Term {
        SymbolCoeff a;
        ScalarFn b;
        int j = 0;
    };
    std::vector<Term> terms;
    std::string name;

    static GeneratorWord identity();
    static GeneratorWord multiplication(SymbolCoeff a, const std::string& name = "");
    static GeneratorWord fourier(ScalarFn b, const std::string& name = "");
    static GeneratorWord modulation(int j);
    GeneratorWord& add_term(SymbolCoeff a, ScalarFn b, int j);

    bool modulation_free() const;  // all j == 0
    int max_abs_j() const;
};

/// sigma on M_C for modulation-free words with CS coefficients:
/// sum_j a_j(x) b_j(xi), values at infinite coordinates from declared limits.
cplx sigma_C(const GeneratorWord& word, const MCPoint& p);

/// sigma on M_A = M# x {-inf,+inf}:
/// sum_j lim(a_j, m) * b_j(sign inf) * lim(e^{ijx}, m).
cplx sigma_A(const GeneratorWord& word, const MSharpPoint& m, int sign);

/// Samples sigma along the fixed counterclockwise traversal of M_C
/// (BottomEdge left->right, RightEdge bottom->top, TopEdge right->left,
/// LeftEdge top->bottom), edges parametrized through s(x) = x/sqrt(1+x^2).
/// n samples per edge, n >= 16; returns a closed loop of 4n+1 points.
SampledLoop loop_sigma_C(const GeneratorWord& word, int n);

/// Fixed traversal tag recorded in loops and reports.
extern const char* const kMcOrientation;

}  // namespace opindex
