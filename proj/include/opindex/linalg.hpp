#pragma once

#include "opindex/common.hpp"

#include <vector>

namespace opindex {

// Dense complex SVD (LAPACK zgesdd), descending singular values.
struct SvdResult {
    Mat u;                    // m x k
    std::vector<double> s;    // k = min(m, n)
    Mat v;                    // n x k, columns are right singular vectors
};

SvdResult svd(const Mat& a);

// Singular values only.
std::vector<double> singular_values(const Mat& a);

// Operator 2-norm.
double op_norm(const Mat& a);

}  // namespace opindex
