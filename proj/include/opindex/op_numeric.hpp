#pragma once

#include "opindex/linalg.hpp"
#include "opindex/word.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace opindex {

/// Periodic FFT grid on [-L, L), n a power of two. Translations wrap; T_1 is an
/// exact circulant shift only when 1/spacing is an integer.
struct GridSpec {
    int n = 0;
    double half_width = 0.0;  // L

    GridSpec() = default;
    GridSpec(int n_, double L);

    double spacing() const { return 2.0 * half_width / n; }
    double dual_spacing() const { return kPi / half_width; }
    double dual_max() const { return kPi / spacing(); }
    double x(int k) const { return -half_width + spacing() * k; }
    std::vector<double> dual_points() const;  // FFT bin layout
    /// Grid points per unit translation, when 1/spacing is an integer.
    std::optional<int> unit_shift_points() const;
};

struct DiscreteOperator {
    Mat matrix;
    GridSpec grid;
    std::string provenance;
};

DiscreteOperator multiplication_op(const ScalarFn& a, const GridSpec& g);
DiscreteOperator multiplication_op(const SemiperiodicSymbol& a, const GridSpec& g);
DiscreteOperator fourier_multiplier_op(const ScalarFn& b, const GridSpec& g);
DiscreteOperator modulation_op(int j, const GridSpec& g);
DiscreteOperator translation_op(int j, const GridSpec& g);
DiscreteOperator assemble(const GeneratorWord& word, const GridSpec& g);

/// Apply b(D) to a sample vector (FFT path, no dense matrix).
Vec apply_fourier_multiplier(const ScalarFn& b, const GridSpec& g, const Vec& u);

// ---------------------------------------------------------------------------
// Compactness diagnostics.

struct CompactnessProfile {
    std::vector<double> sigma;   // descending
    double fitted_decay_rate;    // slope of log sigma_k vs k (least squares)
    int rank_1e3;                // effective ranks at thresholds relative to sigma_1
    int rank_1e6;
    int rank_1e9;
};

CompactnessProfile compactness_profile(const DiscreteOperator& A);
CompactnessProfile compactness_profile_matrix(const Mat& m);

// ---------------------------------------------------------------------------
// epsilon-rank Fredholm index.
//
// Square truncations of a Fredholm operator have sigma(A) = sigma(A*), so the
// honest kernel/cokernel directions and the truncation artifacts can only be
// told apart by where the singular vectors live.  Each singular value below
// eps contributes  [right vector interior] - [left vector interior],  where
// "interior" is a domain-specific phase-space window (see the classifiers
// below).  The gap report certifies the split.

struct GapReport {
    std::vector<double> counted;   // sigma < eps
    double largest_counted = 0.0;  // 0 when none
    double smallest_uncounted = 0.0;
    double next_uncounted = 0.0;
    double ratio = 0.0;            // largest_counted / smallest_uncounted
    bool reliable = true;          // ratio <= 0.1, and eps does not sit inside a
                                   // cluster sliding toward 0 (coarse-grid tripwire)
    bool ambiguous = false;        // some vector had borderline interior mass
};

struct IndexEstimate {
    int index = 0;
    GapReport gap;
};

/// Fraction of |v|^2 mass inside the interior window; the core treats
/// fraction >= 0.5 as interior and flags fractions in (0.3, 0.7) as ambiguous.
using InteriorFraction = std::function<double(const Vec&)>;

IndexEstimate eps_rank_index(const Mat& a, double eps, const InteriorFraction& interior);

/// Classifier for FFT-grid operators: position mass in |x| <= L/2 and Fourier
/// mass in |xi| <= xi_max/2 (minimum of the two fractions).
InteriorFraction grid_interior(const GridSpec& g);

/// Classifier for truncations of one-sided (Toeplitz) operators: mass in the
/// lower half of the index range (artifacts live at the top end).
InteriorFraction lower_half_interior(int m);

/// Classifier for lattice truncations indexed j in [-J, J]: mass in |j| <= J/2.
InteriorFraction centered_interior(int two_j_plus_1);

IndexEstimate fredholm_index_estimate(const DiscreteOperator& A, double eps);

}  // namespace opindex
