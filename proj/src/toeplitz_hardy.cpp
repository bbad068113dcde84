#include "opindex/toeplitz_hardy.hpp"

#include <cmath>

namespace opindex {

cplx CircleSymbol::eval(double theta) const {
    cplx v(0.0);
    for (const auto& [k, c] : fourier) v += c * std::polar(1.0, k * theta);
    return v;
}

int CircleSymbol::degree() const {
    int d = 0;
    for (const auto& [k, c] : fourier)
        if (std::abs(c) > 0.0) d = std::max(d, std::abs(k));
    return d;
}

CircleSymbol CircleSymbol::conj() const {
    CircleSymbol out;
    for (const auto& [k, c] : fourier) out.fourier[-k] = std::conj(c);
    return out;
}

CircleSymbol CircleSymbol::operator*(const CircleSymbol& other) const {
    CircleSymbol out;
    for (const auto& [k, c] : fourier)
        for (const auto& [l, d] : other.fourier) out.fourier[k + l] += c * d;
    return out;
}

CircleSymbol CircleSymbol::monomial(int k, cplx c) {
    CircleSymbol s;
    s.fourier[k] = c;
    return s;
}

CoeffVec hardy_projection(const CoeffVec& v) {
    CoeffVec out;
    for (const auto& [k, c] : v)
        if (k >= 0) out[k] = c;
    return out;
}

ToeplitzTruncation toeplitz_truncation(const CircleSymbol& phi, int m) {
    require(m >= 1, "truncation size must be positive");
    Mat mat = Mat::Zero(m, m);
    for (const auto& [k, c] : phi.fourier) {
        for (int q = 0; q < m; ++q) {
            int p = q + k;
            if (p >= 0 && p < m) mat(p, q) = c;
        }
    }
    return {phi, m, std::move(mat)};
}

ToeplitzIndexResult toeplitz_index(const CircleSymbol& phi, int m, double eps) {
    const int probe = std::max(4 * m, 4 * (phi.degree() + 1));
    SampledLoop loop;
    loop.samples.resize(probe + 1);
    for (int p = 0; p <= probe; ++p) loop.samples[p] = phi.eval(kTwoPi * p / probe);
    loop.closed = true;
    loop.orientation = "S^1 counterclockwise";
    for (const auto& z : loop.samples)
        require(std::abs(z) > 1e-12, "not Fredholm: symbol vanishes on the circle");

    ToeplitzIndexResult r;
    r.winding = winding_number(loop);
    r.index = -r.winding;
    auto trunc = toeplitz_truncation(phi, m);
    r.eps_rank = eps_rank_index(trunc.matrix, eps, lower_half_interior(m));
    r.corroborated = r.eps_rank.gap.reliable && r.eps_rank.index == r.index;
    return r;
}

std::vector<cplx> cayley_transform(const std::vector<cplx>& g_samples,
                                   const std::vector<double>& t_grid) {
    const int P = static_cast<int>(g_samples.size());
    require(P >= 4, "need at least 4 circle samples");
    // DFT coefficients, centered frequencies
    std::vector<cplx> coeff(P);
    for (int k = 0; k < P; ++k) {
        cplx acc(0.0);
        for (int p = 0; p < P; ++p)
            acc += g_samples[p] * std::polar(1.0, -kTwoPi * k * p / P);
        coeff[k] = acc / double(P);
    }
    auto eval_g = [&](double theta) {
        cplx v(0.0);
        for (int k = 0; k < P; ++k) {
            int f = (k <= P / 2) ? k : k - P;  // centered alias
            v += coeff[k] * std::polar(1.0, f * theta);
        }
        return v;
    };
    std::vector<cplx> out(t_grid.size());
    const double sqrt_pi = std::sqrt(kPi);
    for (size_t i = 0; i < t_grid.size(); ++i) {
        double t = t_grid[i];
        double theta = 2.0 * std::atan(t);  // e^{i theta} = (1+it)/(1-it)
        out[i] = eval_g(theta) / (sqrt_pi * cplx(1.0, -t));
    }
    return out;
}

double cayley_l2_norm(const std::vector<cplx>& ug, const std::vector<double>& t_grid) {
    // The t-grid is assumed to come from a uniform theta-grid via t = tan(theta/2);
    // then dt = (1+t^2)/2 dtheta and the trapezoid rule in theta is exact for
    // trig polynomials.
    require(ug.size() == t_grid.size() && !ug.empty(), "size mismatch");
    const double dtheta = kTwoPi / ug.size();
    double acc = 0.0;
    for (size_t i = 0; i < ug.size(); ++i) {
        double t = t_grid[i];
        acc += std::norm(ug[i]) * (1.0 + t * t) / 2.0 * dtheta;
    }
    return std::sqrt(acc);
}

Mat hankel_block(const CircleSymbol& phi, int m) {
    const int d = std::max(phi.degree(), 1);
    Mat block = Mat::Zero(d, m);
    // row r corresponds to frequency p = -(r+1)
    for (int r = 0; r < d; ++r) {
        int p = -(r + 1);
        for (int q = 0; q < m; ++q) {
            auto it = phi.fourier.find(p - q);
            if (it != phi.fourier.end()) block(r, q) = it->second;
        }
    }
    return block;
}

}  // namespace opindex
