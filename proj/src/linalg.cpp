#include "opindex/linalg.hpp"

#include <lapacke.h>

namespace opindex {

namespace {
lapack_complex_double* lp(Mat& m) {
    return reinterpret_cast<lapack_complex_double*>(m.data());
}
}  // namespace

SvdResult svd(const Mat& a) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    const int k = std::min(m, n);
    Mat work = a;  // zgesdd destroys its input
    SvdResult r;
    r.s.resize(k);
    r.u.resize(m, k);
    Mat vt(k, n);
    int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, lp(work), m,
                              r.s.data(), lp(r.u), m, lp(vt), k);
    if (info != 0) throw std::runtime_error("zgesdd failed, info=" + std::to_string(info));
    r.v = vt.adjoint();
    return r;
}

std::vector<double> singular_values(const Mat& a) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    const int k = std::min(m, n);
    Mat work = a;
    std::vector<double> s(k);
    int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, lp(work), m,
                              s.data(), nullptr, m, nullptr, k);
    if (info != 0) throw std::runtime_error("zgesdd failed, info=" + std::to_string(info));
    return s;
}

double op_norm(const Mat& a) {
    if (a.size() == 0) return 0.0;
    return singular_values(a).front();
}

}  // namespace opindex
