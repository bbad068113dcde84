#pragma once

#include "opindex/gamma_calculus.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace opindex {

using BigInt = boost::multiprecision::cpp_int;

/// Dense integer matrix, exact arithmetic only.
struct IMat {
    int rows = 0, cols = 0;
    std::vector<BigInt> a;  // row-major

    IMat() = default;
    IMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
    static IMat identity(int n);
    static IMat from(const std::vector<std::vector<long>>& rows);

    BigInt& at(int r, int c) { return a[size_t(r) * cols + c]; }
    const BigInt& at(int r, int c) const { return a[size_t(r) * cols + c]; }
    IMat operator*(const IMat& o) const;
    bool operator==(const IMat& o) const = default;
    bool is_zero() const;
    IMat col_range(int c0, int c1) const;  // columns [c0, c1)
    std::vector<BigInt> col(int c) const;
    std::string to_string() const;
};

std::vector<BigInt> mat_vec(const IMat& m, const std::vector<BigInt>& x);

/// Smith normal form U*M*V = D with U, V unimodular (verified by exhibiting
/// integer inverses) and the diagonal divisibility chain d1 | d2 | ...
struct SmithNF {
    IMat u, u_inv, d, v, v_inv;
    int rank = 0;  // number of nonzero diagonal entries
};

SmithNF smith_normal_form(const IMat& m);

/// Finitely generated abelian group in canonical form Z^rank + sum Z/d_i,
/// invariant factors d1 | d2 | ... each >= 2.
struct FgAbGroup {
    long rank = 0;
    std::vector<BigInt> torsion;

    bool operator==(const FgAbGroup& o) const = default;
    bool is_free() const { return torsion.empty(); }
    static FgAbGroup free(long r) { return {r, {}}; }
    std::string to_string() const;
};

/// Map of free Z-lattices: rows = codomain rank, cols = domain rank.
struct LatticeMap {
    IMat matrix;
    std::string cite;

    long domain_rank() const { return matrix.cols; }
    long codomain_rank() const { return matrix.rows; }
};

struct Subgroup {
    FgAbGroup group;  // free
    IMat basis;       // columns generate the subgroup
};

Subgroup kernel(const LatticeMap& f);
Subgroup image(const LatticeMap& f);
FgAbGroup cokernel(const LatticeMap& f);

/// Does x lie in the column span (over Z) of basis?
bool member(const IMat& basis, const std::vector<BigInt>& x);
/// Subgroup equality by mutual membership (bases are non-canonical).
bool subgroup_equal(const IMat& basis_a, const IMat& basis_b);

struct ExactnessVerdict {
    bool exact = true;
    std::string detail;
    std::optional<std::vector<BigInt>> witness;  // in the middle group
};

/// Verdicts at the interior nodes of f1, f2, ... (image = kernel as subgroups).
std::vector<ExactnessVerdict> check_exact(const std::vector<LatticeMap>& maps);

/// Six-term cyclic diagram. Groups are stored in cyclic order
///   K0(I), K0(A), K0(Q), K1(I), K1(A), K1(Q)
/// and maps[i] goes from node i to node (i+1) mod 6, i.e.
///   i*, pi*, delta0, i*, pi*, delta1.
struct SixTermDiagram {
    std::array<std::optional<FgAbGroup>, 6> groups;
    std::array<std::optional<LatticeMap>, 6> maps;
    std::array<std::string, 6> labels;
    std::string name;
};

struct SolveResult {
    SixTermDiagram diagram;
    std::vector<std::string> notes;
};

/// Fills unknown nodes forced by exactness (free case: quotient + kernel,
/// which always splits against a free kernel). Throws "underdetermined" when
/// the flanking data is insufficient and reports the violated node when the
/// completed diagram fails re-checking.
SolveResult solve_unknown(const SixTermDiagram& diagram);

/// Exactness check of all fully-known nodes of a diagram (cyclically).
std::vector<ExactnessVerdict> check_diagram(const SixTermDiagram& diagram);

// ---------------------------------------------------------------------------
// Lemma 3.4 index element: the 2x2 block idempotent computing delta_1 of an
// invertible lift pair.

struct IndexElement {
    Mat w1;            // 2x2 block matrix [(2ab-(ab)^2, a(2-ba)(1-ba)); ((1-ba)b, (1-ba)^2)]
    Mat reference;     // diag(Id, 0)
    double idempotency_defect = 0.0;  // ||W1^2 - W1||
    double trace_difference = 0.0;    // Tr(W1 - reference), finite-rank part
};

/// Requires a*b and b*a to equal Id modulo the trace guard (finite rank).
IndexElement index_element(const SeqOperator& a, const SeqOperator& b);

// ---------------------------------------------------------------------------
// Catalogue of the thesis's connecting maps and hexagons.

struct NamedMap {
    std::string name;
    LatticeMap map;
};

/// Connecting-map fixtures keyed by name ("prop31.delta0", "thm35.delta1", ...),
/// each carrying its citation.
const std::vector<NamedMap>& lattice_fixtures();
const LatticeMap& lattice_fixture(const std::string& name);

/// Hexagon fixtures keyed by name ("ch2", "prop31", "prop33", "thm35",
/// "thm36", "thm44", "prop43", "pv41"); unknown nodes left empty for the solver.
const std::vector<std::pair<std::string, SixTermDiagram>>& hexagon_fixtures();
SixTermDiagram hexagon_fixture(const std::string& name);

}  // namespace opindex
