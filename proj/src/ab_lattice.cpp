#include "opindex/ab_lattice.hpp"

#include <algorithm>
#include <sstream>

namespace opindex {

IMat IMat::identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IMat IMat::from(const std::vector<std::vector<long>>& rows_in) {
    if (rows_in.empty()) return IMat(0, 0);
    IMat m(static_cast<int>(rows_in.size()), static_cast<int>(rows_in.front().size()));
    for (int r = 0; r < m.rows; ++r) {
        require(static_cast<int>(rows_in[r].size()) == m.cols, "ragged matrix literal");
        for (int c = 0; c < m.cols; ++c) m.at(r, c) = rows_in[r][c];
    }
    return m;
}

IMat IMat::operator*(const IMat& o) const {
    require(cols == o.rows, "matrix product shape mismatch");
    IMat out(rows, o.cols);
    for (int r = 0; r < rows; ++r)
        for (int k = 0; k < cols; ++k) {
            const BigInt& v = at(r, k);
            if (v == 0) continue;
            for (int c = 0; c < o.cols; ++c) out.at(r, c) += v * o.at(k, c);
        }
    return out;
}

bool IMat::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](const BigInt& v) { return v == 0; });
}

IMat IMat::col_range(int c0, int c1) const {
    IMat out(rows, c1 - c0);
    for (int r = 0; r < rows; ++r)
        for (int c = c0; c < c1; ++c) out.at(r, c - c0) = at(r, c);
    return out;
}

std::vector<BigInt> IMat::col(int c) const {
    std::vector<BigInt> out(rows);
    for (int r = 0; r < rows; ++r) out[r] = at(r, c);
    return out;
}

std::string IMat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int r = 0; r < rows; ++r) {
        os << (r ? "; " : "");
        for (int c = 0; c < cols; ++c) os << (c ? "," : "") << at(r, c);
    }
    os << "]";
    return os.str();
}

std::vector<BigInt> mat_vec(const IMat& m, const std::vector<BigInt>& x) {
    require(static_cast<int>(x.size()) == m.cols, "mat_vec shape mismatch");
    std::vector<BigInt> y(m.rows);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) y[r] += m.at(r, c) * x[c];
    return y;
}

namespace {

BigInt babs(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

// g = gcd(a, b) = s*a + t*b
void egcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& s, BigInt& t) {
    BigInt r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        BigInt s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
        BigInt t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    g = r0;
    s = s0;
    t = t0;
}

// Entry growth in the transforms is tamed by clearing each below-pivot /
// right-of-pivot entry with one unimodular 2x2 gcd combination instead of
// repeated division-with-remainder churn.
struct SnfWork {
    IMat d, u, u_inv, v, v_inv;

    void row_swap(int r1, int r2) {
        for (int c = 0; c < d.cols; ++c) std::swap(d.at(r1, c), d.at(r2, c));
        for (int c = 0; c < u.cols; ++c) std::swap(u.at(r1, c), u.at(r2, c));
        for (int r = 0; r < u_inv.rows; ++r) std::swap(u_inv.at(r, r1), u_inv.at(r, r2));
    }
    void col_swap(int c1, int c2) {
        for (int r = 0; r < d.rows; ++r) std::swap(d.at(r, c1), d.at(r, c2));
        for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, c1), v.at(r, c2));
        for (int c = 0; c < v_inv.cols; ++c) std::swap(v_inv.at(c1, c), v_inv.at(c2, c));
    }
    void row_negate(int r) {
        for (int c = 0; c < d.cols; ++c) d.at(r, c) = -d.at(r, c);
        for (int c = 0; c < u.cols; ++c) u.at(r, c) = -u.at(r, c);
        for (int rr = 0; rr < u_inv.rows; ++rr) u_inv.at(rr, r) = -u_inv.at(rr, r);
    }
    // row r1 += q * row r2
    void row_add(int r1, int r2, const BigInt& q) {
        for (int c = 0; c < d.cols; ++c) d.at(r1, c) += q * d.at(r2, c);
        for (int c = 0; c < u.cols; ++c) u.at(r1, c) += q * u.at(r2, c);
        for (int r = 0; r < u_inv.rows; ++r) u_inv.at(r, r2) -= q * u_inv.at(r, r1);
    }
    // col c1 += q * col c2
    void col_add(int c1, int c2, const BigInt& q) {
        for (int r = 0; r < d.rows; ++r) d.at(r, c1) += q * d.at(r, c2);
        for (int r = 0; r < v.rows; ++r) v.at(r, c1) += q * v.at(r, c2);
        for (int c = 0; c < v_inv.cols; ++c) v_inv.at(c2, c) -= q * v_inv.at(c1, c);
    }
    // rows (rt, rr) <- [[a, b], [c, e]] (rt, rr), det(a e - b c) = 1
    void row_combine(int rt, int rr, const BigInt& a, const BigInt& b, const BigInt& c,
                     const BigInt& e) {
        for (int j = 0; j < d.cols; ++j) {
            BigInt x = d.at(rt, j), y = d.at(rr, j);
            d.at(rt, j) = a * x + b * y;
            d.at(rr, j) = c * x + e * y;
        }
        for (int j = 0; j < u.cols; ++j) {
            BigInt x = u.at(rt, j), y = u.at(rr, j);
            u.at(rt, j) = a * x + b * y;
            u.at(rr, j) = c * x + e * y;
        }
        // inverse of [[a,b],[c,e]] with det 1 is [[e,-b],[-c,a]], applied to columns
        for (int i = 0; i < u_inv.rows; ++i) {
            BigInt x = u_inv.at(i, rt), y = u_inv.at(i, rr);
            u_inv.at(i, rt) = e * x - c * y;
            u_inv.at(i, rr) = -b * x + a * y;
        }
    }
    void col_combine(int ct, int cc, const BigInt& a, const BigInt& b, const BigInt& c,
                     const BigInt& e) {
        for (int i = 0; i < d.rows; ++i) {
            BigInt x = d.at(i, ct), y = d.at(i, cc);
            d.at(i, ct) = a * x + b * y;
            d.at(i, cc) = c * x + e * y;
        }
        for (int i = 0; i < v.rows; ++i) {
            BigInt x = v.at(i, ct), y = v.at(i, cc);
            v.at(i, ct) = a * x + b * y;
            v.at(i, cc) = c * x + e * y;
        }
        for (int j = 0; j < v_inv.cols; ++j) {
            BigInt x = v_inv.at(ct, j), y = v_inv.at(cc, j);
            v_inv.at(ct, j) = e * x - c * y;
            v_inv.at(cc, j) = -b * x + a * y;
        }
    }
};

}  // namespace

SmithNF smith_normal_form(const IMat& m) {
    SnfWork w;
    w.d = m;
    w.u = IMat::identity(m.rows);
    w.u_inv = IMat::identity(m.rows);
    w.v = IMat::identity(m.cols);
    w.v_inv = IMat::identity(m.cols);

    const int nmin = std::min(m.rows, m.cols);
    int t = 0;
    while (t < nmin) {
        // move a minimal nonzero entry of the trailing block to (t, t)
        int pr = -1, pc = -1;
        for (int r = t; r < m.rows; ++r)
            for (int c = t; c < m.cols; ++c)
                if (w.d.at(r, c) != 0 &&
                    (pr < 0 || babs(w.d.at(r, c)) < babs(w.d.at(pr, pc)))) {
                    pr = r;
                    pc = c;
                }
        if (pr < 0) break;
        if (pr != t) w.row_swap(t, pr);
        if (pc != t) w.col_swap(t, pc);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int r = t + 1; r < m.rows; ++r) {
                const BigInt& p = w.d.at(t, t);
                const BigInt& x = w.d.at(r, t);
                if (x == 0) continue;
                if (x % p == 0) {
                    w.row_add(r, t, -BigInt(x / p));
                } else {
                    BigInt g, s, q;
                    egcd(p, x, g, s, q);
                    w.row_combine(t, r, s, q, -BigInt(x / g), BigInt(p / g));
                    clean = false;
                }
            }
            for (int c = t + 1; c < m.cols; ++c) {
                const BigInt& p = w.d.at(t, t);
                const BigInt& x = w.d.at(t, c);
                if (x == 0) continue;
                if (x % p == 0) {
                    w.col_add(c, t, -BigInt(x / p));
                } else {
                    BigInt g, s, q;
                    egcd(p, x, g, s, q);
                    w.col_combine(t, c, s, q, -BigInt(x / g), BigInt(p / g));
                    clean = false;
                }
            }
        }
        // divisibility of the trailing block by the pivot
        bool redo = false;
        for (int r = t + 1; r < m.rows && !redo; ++r)
            for (int c = t + 1; c < m.cols && !redo; ++c)
                if (w.d.at(r, c) % w.d.at(t, t) != 0) {
                    w.row_add(t, r, 1);
                    redo = true;
                }
        if (redo) continue;
        if (w.d.at(t, t) < 0) w.row_negate(t);
        ++t;
    }

    SmithNF out;
    out.u = w.u;
    out.u_inv = w.u_inv;
    out.d = w.d;
    out.v = w.v;
    out.v_inv = w.v_inv;
    out.rank = t;
    require(w.u * m * w.v == w.d, "SNF verification failed: U*M*V != D");
    require(w.u * w.u_inv == IMat::identity(m.rows), "SNF verification failed: U not unimodular");
    require(w.v * w.v_inv == IMat::identity(m.cols), "SNF verification failed: V not unimodular");
    for (int i = 0; i + 1 < out.rank; ++i)
        require(w.d.at(i + 1, i + 1) % w.d.at(i, i) == 0, "SNF divisibility chain broken");
    return out;
}

std::string FgAbGroup::to_string() const {
    if (rank == 0 && torsion.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    if (rank > 0) {
        os << "Z";
        if (rank > 1) os << "^" << rank;
        first = false;
    }
    for (const auto& d : torsion) {
        os << (first ? "" : " + ") << "Z/" << d;
        first = false;
    }
    return os.str();
}

Subgroup kernel(const LatticeMap& f) {
    auto snf = smith_normal_form(f.matrix);
    int k = f.matrix.cols - snf.rank;
    Subgroup out;
    out.group = FgAbGroup::free(k);
    out.basis = snf.v.col_range(snf.rank, f.matrix.cols);
    return out;
}

Subgroup image(const LatticeMap& f) {
    auto snf = smith_normal_form(f.matrix);
    IMat mv = f.matrix * snf.v;
    Subgroup out;
    out.group = FgAbGroup::free(snf.rank);
    out.basis = mv.col_range(0, snf.rank);
    return out;
}

FgAbGroup cokernel(const LatticeMap& f) {
    auto snf = smith_normal_form(f.matrix);
    FgAbGroup g;
    g.rank = f.matrix.rows - snf.rank;
    for (int i = 0; i < snf.rank; ++i)
        if (snf.d.at(i, i) > 1) g.torsion.push_back(snf.d.at(i, i));
    return g;
}

bool member(const IMat& basis, const std::vector<BigInt>& x) {
    require(static_cast<int>(x.size()) == basis.rows, "member: dimension mismatch");
    if (basis.cols == 0)
        return std::all_of(x.begin(), x.end(), [](const BigInt& v) { return v == 0; });
    auto snf = smith_normal_form(basis);
    auto ux = mat_vec(snf.u, x);
    for (int i = 0; i < basis.rows; ++i) {
        if (i < snf.rank) {
            if (ux[i] % snf.d.at(i, i) != 0) return false;
        } else if (ux[i] != 0) {
            return false;
        }
    }
    return true;
}

bool subgroup_equal(const IMat& basis_a, const IMat& basis_b) {
    require(basis_a.rows == basis_b.rows, "subgroup_equal: ambient mismatch");
    for (int c = 0; c < basis_a.cols; ++c)
        if (!member(basis_b, basis_a.col(c))) return false;
    for (int c = 0; c < basis_b.cols; ++c)
        if (!member(basis_a, basis_b.col(c))) return false;
    return true;
}

std::vector<ExactnessVerdict> check_exact(const std::vector<LatticeMap>& maps) {
    std::vector<ExactnessVerdict> out;
    for (size_t i = 0; i + 1 < maps.size(); ++i) {
        const auto& f = maps[i];
        const auto& g = maps[i + 1];
        require(g.matrix.cols == f.matrix.rows, "maps not composable at node " + std::to_string(i));
        ExactnessVerdict verdict;
        IMat comp = g.matrix * f.matrix;
        if (!comp.is_zero()) {
            for (int c = 0; c < comp.cols; ++c) {
                bool bad = false;
                for (int r = 0; r < comp.rows; ++r) bad = bad || comp.at(r, c) != 0;
                if (bad) {
                    verdict.exact = false;
                    verdict.detail = "composite g.f nonzero";
                    verdict.witness = f.matrix.col(c);
                    break;
                }
            }
        }
        if (verdict.exact) {
            auto ker = kernel(g);
            auto im = image(f);
            for (int c = 0; c < ker.basis.cols; ++c) {
                auto x = ker.basis.col(c);
                if (!member(im.basis, x)) {
                    verdict.exact = false;
                    verdict.detail = "kernel vector not in image";
                    verdict.witness = x;
                    break;
                }
            }
        }
        out.push_back(std::move(verdict));
    }
    return out;
}

namespace {

/// Free-quotient projection rows of U for codomain/SNF of f (requires free cokernel).
std::optional<IMat> coker_projection(const LatticeMap& f) {
    auto snf = smith_normal_form(f.matrix);
    for (int i = 0; i < snf.rank; ++i)
        if (snf.d.at(i, i) != 1) return std::nullopt;
    IMat proj(f.matrix.rows - snf.rank, f.matrix.rows);
    for (int r = snf.rank; r < f.matrix.rows; ++r)
        for (int c = 0; c < f.matrix.rows; ++c) proj.at(r - snf.rank, c) = snf.u.at(r, c);
    return proj;
}

}  // namespace

std::vector<ExactnessVerdict> check_diagram(const SixTermDiagram& d) {
    std::vector<ExactnessVerdict> out(6);
    for (int i = 0; i < 6; ++i) {
        int in = (i + 5) % 6;
        if (!d.maps[in] || !d.maps[i]) continue;  // unknown maps: node unchecked
        auto v = check_exact({*d.maps[in], *d.maps[i]});
        out[i] = v.front();
    }
    return out;
}

SolveResult solve_unknown(const SixTermDiagram& input) {
    SolveResult res;
    res.diagram = input;
    auto& d = res.diagram;

    int unknown = 0;
    for (const auto& g : d.groups) unknown += g ? 0 : 1;
    require(unknown <= 2, "solver accepts at most 2 unknown groups");

    for (int i = 0; i < 6; ++i) {
        if (d.groups[i]) continue;
        const int prev = (i + 5) % 6, next = (i + 1) % 6;
        const int into_prev = (i + 4) % 6, out_of_next = next;
        if (!d.groups[prev] || !d.groups[next] || !d.maps[into_prev] || !d.maps[out_of_next])
            throw std::runtime_error("underdetermined: node " + std::to_string(i) +
                                     " lacks flanking data");
        require(d.groups[prev]->is_free() && d.groups[next]->is_free(),
                "solver requires free flanking groups");

        FgAbGroup quotient = cokernel(*d.maps[into_prev]);
        Subgroup ker = kernel(*d.maps[out_of_next]);
        FgAbGroup solved{quotient.rank + ker.group.rank, quotient.torsion};
        d.groups[i] = solved;
        res.notes.push_back("node " + std::to_string(i) + " (" + d.labels[i] +
                            ") = " + solved.to_string());

        if (quotient.is_free()) {
            // witness maps: quotient projection into the first block, kernel
            // inclusion out of the second block
            auto proj = coker_projection(*d.maps[into_prev]);
            if (proj) {
                const long qr = quotient.rank, kr = ker.group.rank;
                IMat in_map(qr + kr, d.groups[prev]->rank);
                for (int r = 0; r < qr; ++r)
                    for (int c = 0; c < in_map.cols; ++c) in_map.at(r, c) = proj->at(r, c);
                d.maps[prev] = LatticeMap{in_map, "solver witness into node " + std::to_string(i)};

                IMat out_map(d.groups[next]->rank, qr + kr);
                for (int r = 0; r < out_map.rows; ++r)
                    for (int c = 0; c < kr; ++c) out_map.at(r, qr + c) = ker.basis.at(r, c);
                d.maps[i] = LatticeMap{out_map, "solver witness out of node " + std::to_string(i)};
            }
        } else {
            res.notes.push_back("node " + std::to_string(i) +
                                ": torsion quotient, witness maps omitted");
        }
    }

    auto verdicts = check_diagram(d);
    for (int i = 0; i < 6; ++i)
        if (!verdicts[i].exact)
            throw std::runtime_error("inconsistent constraints at node " + std::to_string(i) +
                                     ": " + verdicts[i].detail);
    return res;
}

namespace {

int band_of(const Mat& m) {
    int band = 0;
    for (int c = 0; c < m.cols(); ++c)
        for (int r = 0; r < m.rows(); ++r)
            if (std::abs(m(r, c)) > 1e-13) band = std::max(band, std::abs(r - c));
    return band;
}

}  // namespace

IndexElement index_element(const SeqOperator& a, const SeqOperator& b) {
    require(a.halfwidth == b.halfwidth, "truncation mismatch");
    const int n = a.size();
    const int J = a.halfwidth;
    const Mat id = Mat::Identity(n, n);
    Mat ab = a.matrix * b.matrix;
    Mat ba = b.matrix * a.matrix;
    // guard as in trace_index: the defects Id-ab, Id-ba must be finite rank in
    // the centered block, everything between center and the edge collar clean
    const int band = std::max({band_of(a.matrix), band_of(b.matrix), 1});
    const int collar = J - 4 * band;
    require(collar > J / 2, "not trace-ready at this truncation");
    for (const Mat* m : {&ab, &ba})
        for (int c = 0; c < n; ++c)
            for (int r = 0; r < n; ++r) {
                int jr = std::abs(r - J), jc = std::abs(c - J);
                if (jr <= J / 2 && jc <= J / 2) continue;
                if (jr > collar || jc > collar) continue;
                double defect = std::abs((*m)(r, c) - (r == c ? 1.0 : 0.0));
                require(defect < Tol::trace_guard, "not trace-ready at this truncation");
            }
    IndexElement out;
    out.w1 = Mat::Zero(2 * n, 2 * n);
    out.w1.topLeftCorner(n, n) = 2.0 * ab - ab * ab;
    out.w1.topRightCorner(n, n) = a.matrix * (2.0 * id - ba) * (id - ba);
    out.w1.bottomLeftCorner(n, n) = (id - ba) * b.matrix;
    out.w1.bottomRightCorner(n, n) = (id - ba) * (id - ba);
    out.reference = Mat::Zero(2 * n, 2 * n);
    out.reference.topLeftCorner(n, n) = id;
    // idempotency and the trace difference, restricted to the centered halves
    // of the two blocks where the compression is faithful
    const int half = J / 2;
    Mat diff = out.w1 * out.w1 - out.w1;
    double worst = 0.0;
    double trace = 0.0;
    for (int blk_r = 0; blk_r < 2; ++blk_r)
        for (int blk_c = 0; blk_c < 2; ++blk_c)
            for (int r = 0; r < n; ++r) {
                if (std::abs(r - J) > half) continue;
                for (int c = 0; c < n; ++c) {
                    if (std::abs(c - J) > half) continue;
                    worst = std::max(worst,
                                     std::abs(diff(blk_r * n + r, blk_c * n + c)));
                }
            }
    for (int r = 0; r < n; ++r) {
        if (std::abs(r - J) > half) continue;
        trace += (out.w1(r, r) - out.reference(r, r)).real();
        trace += (out.w1(n + r, n + r) - out.reference(n + r, n + r)).real();
    }
    out.idempotency_defect = worst;
    out.trace_difference = trace;
    return out;
}

namespace {

std::vector<NamedMap> build_lattice_fixtures() {
    std::vector<NamedMap> f;
    auto add = [&f](const std::string& name, const std::vector<std::vector<long>>& m,
                    int cols_if_empty, const std::string& cite) {
        IMat mat = m.empty() ? IMat(0, cols_if_empty) : IMat::from(m);
        f.push_back({name, LatticeMap{mat, cite}});
    };
    add("prop31.delta0", {{-1, 1}}, 0, "Prop 3.1: delta_0(x, y) = -x + y");
    add("prop31.delta1", {}, 2, "Prop 3.1: delta_1 = 0");
    add("prop33.delta0", {{0}}, 0, "Prop 3.3: split sequence, delta_0 = 0");
    add("prop33.delta1", {{0}}, 0, "Prop 3.3: split sequence, delta_1 = 0");
    add("ch2.delta1", {{1}}, 0, "Thm 2.13: delta_1 = ind = w(sigma), iso on the T' class");
    add("thm35.delta0", {{1, -1}, {1, -1}}, 0, "Thm 3.5: delta_0(x, y) = (x-y)(1, 1)");
    add("thm35.delta1", {{1, 0, -1, 0}, {0, 1, 0, -1}}, 0,
        "Thm 3.5: eta.delta_1 on [A1]..[A4] = (1,0),(0,1),(-1,0),(0,-1)");
    add("thm36.delta1", {{0, 0, -1}}, 0, "Thm 3.6: delta_1(x, y, z) = -z");
    add("thm44.delta1", {{0, 0, -1}}, 0, "Thm 4.4: delta_1(x, y, z) = -z");
    add("prop43.delta0", {{1, -1}, {1, -1}}, 0,
        "Prop 4.3: delta_0(x, y) = (x-y)(m, m), m = 1 forced by (1,1) in Im delta_0");
    add("prop43.delta1", {}, 2, "Prop 4.3: delta_1 = 0");
    add("pv41.one_minus_alpha", {{0}}, 0, "PV sequence for CS(R) x Z: id - alpha_*^{-1} = 0");
    return f;
}

SixTermDiagram make_hexagon(const std::string& name, std::array<std::optional<FgAbGroup>, 6> groups,
                            std::array<std::optional<LatticeMap>, 6> maps,
                            std::array<std::string, 6> labels) {
    SixTermDiagram d;
    d.name = name;
    d.groups = std::move(groups);
    d.maps = std::move(maps);
    d.labels = std::move(labels);
    return d;
}

LatticeMap zero_map(long rows, long cols, const std::string& cite) {
    return LatticeMap{IMat(static_cast<int>(rows), static_cast<int>(cols)), cite};
}

std::vector<std::pair<std::string, SixTermDiagram>> build_hexagons() {
    using G = FgAbGroup;
    std::vector<std::pair<std::string, SixTermDiagram>> out;
    const auto& fx = build_lattice_fixtures();
    auto get = [&fx](const std::string& n) -> const LatticeMap& {
        for (const auto& f : fx)
            if (f.name == n) return f.map;
        throw std::logic_error("missing fixture " + n);
    };

    // 0 -> K_R -> C -> C/K_R -> 0 (Prop 2.14); delta_1 is the T' index, an iso.
    out.push_back({"ch2", make_hexagon(
        "ch2",
        {G::free(1), std::nullopt, G::free(1), G::free(0), std::nullopt, G::free(1)},
        {std::nullopt, std::nullopt, zero_map(0, 1, "delta_0 into K_1(K_R) = 0"),
         std::nullopt, std::nullopt, get("ch2.delta1")},
        {"K0(K_R)", "K0(C)", "K0(C/K_R)", "K1(K_R)", "K1(C)", "K1(C/K_R)"})});

    // 0 -> C0(R) -> C(M#) -> C(S^1 x {-inf,+inf}) -> 0 (Prop 3.1).
    out.push_back({"prop31", make_hexagon(
        "prop31",
        {G::free(0), std::nullopt, G::free(2), G::free(1), std::nullopt, G::free(2)},
        {std::nullopt, std::nullopt, get("prop31.delta0"), std::nullopt, std::nullopt,
         get("prop31.delta1")},
        {"K0(C0(R))", "K0(C(M#))", "K0(C(S1x2))", "K1(C0(R))", "K1(C(M#))", "K1(C(S1x2))"})});

    // 0 -> SK_Z -> C(S^1, K_Z) -> K_Z -> 0 (Prop 3.3, split); doubling over
    // S^1 x {-1, 1} gives K_i(E/K_R) = Z^2.
    out.push_back({"prop33", make_hexagon(
        "prop33",
        {G::free(0), std::nullopt, G::free(1), G::free(1), std::nullopt, G::free(0)},
        {std::nullopt, std::nullopt, zero_map(1, 1, "Prop 3.3: delta_0 = 0"),
         std::nullopt, std::nullopt, zero_map(0, 0, "Prop 3.3: delta_1 = 0")},
        {"K0(SK_Z)", "K0(C(S1,K_Z))", "K0(K_Z)", "K1(SK_Z)", "K1(C(S1,K_Z))", "K1(K_Z)"})});

    // 0 -> E/K_R -> A/K_R -> A/E -> 0 (Thm 3.5).
    out.push_back({"thm35", make_hexagon(
        "thm35",
        {G::free(2), std::nullopt, G::free(2), G::free(2), std::nullopt, G::free(4)},
        {std::nullopt, std::nullopt, get("thm35.delta0"), std::nullopt, std::nullopt,
         get("thm35.delta1")},
        {"K0(E/K_R)", "K0(A/K_R)", "K0(A/E)", "K1(E/K_R)", "K1(A/K_R)", "K1(A/E)"})});

    // 0 -> K_R -> A -> A/K_R -> 0 (Thm 3.6).
    out.push_back({"thm36", make_hexagon(
        "thm36",
        {G::free(1), std::nullopt, G::free(1), G::free(0), std::nullopt, G::free(3)},
        {std::nullopt, std::nullopt, zero_map(0, 1, "delta_0 into K_1(K_R) = 0"),
         std::nullopt, std::nullopt, get("thm36.delta1")},
        {"K0(K_R)", "K0(A)", "K0(A/K_R)", "K1(K_R)", "K1(A)", "K1(A/K_R)"})});

    // Same extension, Ch. 4 route (Thm 4.4).
    out.push_back({"thm44", make_hexagon(
        "thm44",
        {G::free(1), std::nullopt, G::free(1), G::free(0), std::nullopt, G::free(3)},
        {std::nullopt, std::nullopt, zero_map(0, 1, "delta_0 into K_1(K_R) = 0"),
         std::nullopt, std::nullopt, get("thm44.delta1")},
        {"K0(K_R)", "K0(A)", "K0(A/K_R)", "K1(K_R)", "K1(A)", "K1(A/K_R)"})});

    // 0 -> J0/K_R -> A/K_R -> A^d + A^d -> 0 (Prop 4.3).
    out.push_back({"prop43", make_hexagon(
        "prop43",
        {G::free(0), std::nullopt, G::free(2), G::free(2), std::nullopt, G::free(2)},
        {std::nullopt, std::nullopt, get("prop43.delta0"), std::nullopt, std::nullopt,
         get("prop43.delta1")},
        {"K0(J0/K_R)", "K0(A/K_R)", "K0(Ad+Ad)", "K1(J0/K_R)", "K1(A/K_R)", "K1(Ad+Ad)"})});

    // Pimsner-Voiculescu instance for CS(R) x_alpha Z (section 4.1): the cycle
    // K0(A) -> K0(A) -> K0(AxZ) -> K1(A) -> K1(A) -> K1(AxZ) -> with the
    // id - alpha^{-1} maps equal to 0.
    out.push_back({"pv41", make_hexagon(
        "pv41",
        {G::free(1), G::free(1), std::nullopt, G::free(0), G::free(0), std::nullopt},
        {get("pv41.one_minus_alpha"), std::nullopt, std::nullopt,
         zero_map(0, 0, "id - alpha_*^{-1} on K_1(A) = 0"), std::nullopt, std::nullopt},
        {"K0(A)", "K0(A)", "K0(AxZ)", "K1(A)", "K1(A)", "K1(AxZ)"})});

    return out;
}

}  // namespace

const std::vector<NamedMap>& lattice_fixtures() {
    static const std::vector<NamedMap> fixtures = build_lattice_fixtures();
    return fixtures;
}

const LatticeMap& lattice_fixture(const std::string& name) {
    for (const auto& f : lattice_fixtures())
        if (f.name == name) return f.map;
    throw std::invalid_argument("unknown lattice fixture: " + name);
}

const std::vector<std::pair<std::string, SixTermDiagram>>& hexagon_fixtures() {
    static const std::vector<std::pair<std::string, SixTermDiagram>> hex = build_hexagons();
    return hex;
}

SixTermDiagram hexagon_fixture(const std::string& name) {
    for (const auto& [n, d] : hexagon_fixtures())
        if (n == name) return d;
    throw std::invalid_argument("unknown hexagon fixture: " + name);
}

}  // namespace opindex
