#include "opindex/json_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <ostream>

namespace opindex {

namespace {

json complex_to_json(const cplx& c) { return json::array({c.real(), c.imag()}); }
cplx complex_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

ScalarFn piecewise_linear_from_json(const json& j) {
    auto xs = j.at("x").get<std::vector<double>>();
    auto re = j.at("re").get<std::vector<double>>();
    auto im = j.contains("im") ? j.at("im").get<std::vector<double>>()
                               : std::vector<double>(xs.size(), 0.0);
    require(xs.size() == re.size() && xs.size() == im.size() && xs.size() >= 2,
            "piecewise_linear: need matching x/re/im arrays with >= 2 knots");
    for (size_t i = 1; i < xs.size(); ++i)
        require(xs[i] > xs[i - 1], "piecewise_linear: knots must increase");
    auto eval = [xs, re, im](double x) -> cplx {
        if (x <= xs.front()) return {re.front(), im.front()};
        if (x >= xs.back()) return {re.back(), im.back()};
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        size_t i = static_cast<size_t>(it - xs.begin());
        double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
        return {re[i - 1] + t * (re[i] - re[i - 1]), im[i - 1] + t * (im[i] - im[i - 1])};
    };
    return ScalarFn("piecewise_linear", FnClass::CS, eval, cplx(re.front(), im.front()),
                    cplx(re.back(), im.back()));
}

}  // namespace

json scalar_fn_to_json(const ScalarFn& f) {
    if (f.serialized_form()) return json::parse(*f.serialized_form());
    if (f.trig_coeffs() && f.name() != "one" && f.name() != "zero") {
        json coeffs = json::object();
        for (const auto& [k, c] : *f.trig_coeffs()) coeffs[std::to_string(k)] = complex_to_json(c);
        return {{"kind", "fourier"}, {"coeffs", coeffs}};
    }
    return {{"kind", "builtin"}, {"name", f.name()}};
}

ScalarFn scalar_fn_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "builtin") return builtin_scalar_fn(j.at("name").get<std::string>());
    if (kind == "fourier") {
        std::map<int, cplx> coeffs;
        for (const auto& [k, v] : j.at("coeffs").items())
            coeffs[std::stoi(k)] = complex_from_json(v);
        return trig_polynomial(coeffs);
    }
    if (kind == "piecewise_linear") {
        ScalarFn f = piecewise_linear_from_json(j);
        f.set_serialized_form(j.dump());
        return f;
    }
    throw std::invalid_argument("unknown ScalarFn kind: " + kind);
}

namespace {

json coeff_to_json(const SymbolCoeff& a) {
    if (const ScalarFn* f = std::get_if<ScalarFn>(&a)) return scalar_fn_to_json(*f);
    const auto& sp = std::get<SemiperiodicSymbol>(a);
    if (sp.name == "L" || sp.name == "Ltilde") return {{"kind", "builtin"}, {"name", sp.name}};
    return {{"kind", "semiperiodic"},
            {"plus", scalar_fn_to_json(sp.periodic_plus)},
            {"minus", scalar_fn_to_json(sp.periodic_minus)},
            {"decaying", scalar_fn_to_json(sp.decaying)}};
}

SymbolCoeff coeff_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "builtin") {
        const std::string name = j.at("name").get<std::string>();
        if (name == "L") return semiperiodic_L();
        if (name == "Ltilde") return semiperiodic_Ltilde();
        return builtin_scalar_fn(name);
    }
    if (kind == "semiperiodic") {
        return semiperiodic_from_parts(scalar_fn_from_json(j.at("plus")),
                                       scalar_fn_from_json(j.at("minus")),
                                       scalar_fn_from_json(j.at("decaying")));
    }
    return scalar_fn_from_json(j);
}

}  // namespace

json word_to_json(const GeneratorWord& w) {
    json terms = json::array();
    for (const auto& t : w.terms)
        terms.push_back(
            {{"a", coeff_to_json(t.a)}, {"b", scalar_fn_to_json(t.b)}, {"j", t.j}});
    json out = {{"terms", terms}};
    if (!w.name.empty()) out["name"] = w.name;
    return out;
}

GeneratorWord word_from_json(const json& j) {
    GeneratorWord w;
    if (j.contains("name")) w.name = j.at("name").get<std::string>();
    for (const auto& t : j.at("terms"))
        w.add_term(coeff_from_json(t.at("a")), scalar_fn_from_json(t.at("b")),
                   t.value("j", 0));
    return w;
}

void loop_to_csv(const SampledLoop& loop, std::ostream& os) {
    os << "index,re,im\n";
    for (size_t i = 0; i < loop.samples.size(); ++i)
        os << i << "," << loop.samples[i].real() << "," << loop.samples[i].imag() << "\n";
}

json diagram_to_json(const SixTermDiagram& d) {
    json groups = json::array();
    for (const auto& g : d.groups) {
        if (!g) {
            groups.push_back(nullptr);
            continue;
        }
        json tor = json::array();
        for (const auto& t : g->torsion) tor.push_back(t.convert_to<long long>());
        groups.push_back({{"rank", g->rank}, {"torsion", tor}});
    }
    json maps = json::array();
    for (int i = 0; i < 6; ++i) {
        if (!d.maps[i]) {
            maps.push_back(nullptr);
            continue;
        }
        const auto& m = d.maps[i]->matrix;
        json rows = json::array();
        for (int r = 0; r < m.rows; ++r) {
            json row = json::array();
            for (int c = 0; c < m.cols; ++c) row.push_back(m.at(r, c).convert_to<long long>());
            rows.push_back(row);
        }
        maps.push_back({{"matrix", rows},
                        {"from", i},
                        {"to", (i + 1) % 6},
                        {"cite", d.maps[i]->cite},
                        {"cols", m.cols}});
    }
    return {{"name", d.name},
            {"groups", groups},
            {"maps", maps},
            {"labels", d.labels}};
}

SixTermDiagram diagram_from_json(const json& j) {
    SixTermDiagram d;
    d.name = j.value("name", "");
    const auto& groups = j.at("groups");
    require(groups.size() == 6, "diagram needs 6 groups");
    for (int i = 0; i < 6; ++i) {
        if (groups[i].is_null()) continue;
        FgAbGroup g;
        g.rank = groups[i].at("rank").get<long>();
        if (groups[i].contains("torsion"))
            for (const auto& t : groups[i]["torsion"]) g.torsion.push_back(t.get<long long>());
        d.groups[i] = g;
    }
    for (const auto& mj : j.at("maps")) {
        if (mj.is_null()) continue;
        int from = mj.at("from").get<int>();
        require(from >= 0 && from < 6, "map index out of range");
        require(mj.value("to", (from + 1) % 6) == (from + 1) % 6,
                "maps must follow the six-term cycle");
        const auto& rows = mj.at("matrix");
        int r = static_cast<int>(rows.size());
        int c = r > 0 ? static_cast<int>(rows[0].size()) : mj.value("cols", 0);
        IMat m(r, c);
        for (int rr = 0; rr < r; ++rr)
            for (int cc = 0; cc < c; ++cc) m.at(rr, cc) = rows[rr][cc].get<long long>();
        d.maps[from] = LatticeMap{m, mj.value("cite", "")};
    }
    if (j.contains("labels"))
        for (int i = 0; i < 6 && i < static_cast<int>(j["labels"].size()); ++i)
            d.labels[i] = j["labels"][i].get<std::string>();
    return d;
}

void write_matrix_container(const DiscreteOperator& op, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    require(os.good(), "cannot open " + path);
    os.write("OPIX", 4);
    int64_t n = op.grid.n;
    double L = op.grid.half_width;
    int64_t plen = static_cast<int64_t>(op.provenance.size());
    os.write(reinterpret_cast<const char*>(&n), sizeof n);
    os.write(reinterpret_cast<const char*>(&L), sizeof L);
    os.write(reinterpret_cast<const char*>(&plen), sizeof plen);
    os.write(op.provenance.data(), plen);
    for (int r = 0; r < op.matrix.rows(); ++r)
        for (int c = 0; c < op.matrix.cols(); ++c) {
            cplx v = op.matrix(r, c);
            os.write(reinterpret_cast<const char*>(&v), sizeof v);
        }
}

DiscreteOperator read_matrix_container(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    require(is.good(), "cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    require(std::string(magic, 4) == "OPIX", "bad matrix container magic");
    int64_t n = 0, plen = 0;
    double L = 0;
    is.read(reinterpret_cast<char*>(&n), sizeof n);
    is.read(reinterpret_cast<char*>(&L), sizeof L);
    is.read(reinterpret_cast<char*>(&plen), sizeof plen);
    std::string prov(plen, '\0');
    is.read(prov.data(), plen);
    DiscreteOperator op;
    op.grid = GridSpec(static_cast<int>(n), L);
    op.provenance = prov;
    op.matrix.resize(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            cplx v;
            is.read(reinterpret_cast<char*>(&v), sizeof v);
            op.matrix(r, c) = v;
        }
    require(is.good(), "truncated matrix container");
    return op;
}

}  // namespace opindex
