#include "opindex/cli_report.hpp"
#include "opindex/json_io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace opindex;

GridSpec parse_grid(const std::string& spec) {
    int n = 1024;
    double L = 16.0 * kPi;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        require(eq != std::string::npos, "grid spec entries look like n=1024,L=50.27");
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        if (key == "n")
            n = std::stoi(val);
        else if (key == "L")
            L = std::stod(val);
        else
            throw std::invalid_argument("unknown grid key: " + key);
    }
    return GridSpec(n, L);
}

GeneratorWord load_word(const std::string& path) {
    std::ifstream is(path);
    require(is.good(), "cannot open word file " + path);
    json j;
    is >> j;
    return word_from_json(j);
}

CircleSymbol parse_circle_symbol(const std::string& text) {
    json j = json::parse(text);
    CircleSymbol phi;
    for (const auto& [k, v] : j.at("fourier").items()) {
        cplx c = v.is_array() ? cplx(v.at(0).get<double>(), v.at(1).get<double>())
                              : cplx(v.get<double>(), 0.0);
        phi.fourier[std::stoi(k)] = c;
    }
    return phi;
}

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

json summarize_operator(const DiscreteOperator& op, const IndexEstimate* est) {
    json j;
    j["n"] = op.grid.n;
    j["L"] = op.grid.half_width;
    j["provenance"] = op.provenance;
    j["norm"] = op_norm(op.matrix);
    auto s = singular_values(op.matrix);
    json top = json::array();
    for (size_t i = 0; i < std::min<size_t>(32, s.size()); ++i) top.push_back(s[i]);
    j["top_singular_values"] = top;
    if (est) {
        j["index"] = est->index;
        j["gap_ratio"] = est->gap.ratio;
        j["reliable"] = est->gap.reliable;
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"opindex: numerical index theory for semiperiodic pseudodifferential symbols"};
    app.require_subcommand(1);

    std::string word_path, grid_spec = "n=1024,L=50.265482457436692", out_path = "operator.bin";
    std::string symbol_text, diagram_path, config_path, only_prefix, convention = "paper";
    std::string report_stem = "replication", format = "json";
    double eps = 1e-6, phi = 1.0;
    int m = 256, J = 32, P = 512, sign = 1;
    bool strict = false, do_solve = false;

    auto* assemble_cmd = app.add_subcommand("assemble", "assemble a word on an FFT grid");
    assemble_cmd->add_option("--word", word_path, "word JSON file")->required();
    assemble_cmd->add_option("--grid", grid_spec, "grid as n=...,L=...");
    assemble_cmd->add_option("--out", out_path, "binary matrix container output");

    auto* index_cmd = app.add_subcommand("index", "eps-rank Fredholm index of a word");
    index_cmd->add_option("--word", word_path, "word JSON file")->required();
    index_cmd->add_option("--grid", grid_spec, "grid as n=...,L=...");
    index_cmd->add_option("--eps", eps, "singular value threshold");

    std::string csv_stem;
    auto* toeplitz_cmd = app.add_subcommand("toeplitz", "Toeplitz index of a circle symbol");
    toeplitz_cmd->add_option("--symbol", symbol_text, "symbol JSON, e.g. {\"fourier\":{\"1\":1}}")
        ->required();
    toeplitz_cmd->add_option("--m", m, "truncation size");
    toeplitz_cmd->add_option("--eps", eps, "singular value threshold");
    toeplitz_cmd->add_option("--csv", csv_stem,
                             "write <stem>.loop.csv and <stem>.sigma.csv");

    auto* gamma_cmd = app.add_subcommand("gamma", "gamma of a word at a base point");
    gamma_cmd->add_option("--word", word_path, "word JSON file")->required();
    gamma_cmd->add_option("--phi", phi, "base point phi");
    gamma_cmd->add_option("--sign", sign, "base point sign (+1/-1)");
    gamma_cmd->add_option("--J", J, "lattice truncation halfwidth");
    gamma_cmd->add_option("--convention", convention, "literal|paper");

    auto* d1_cmd = app.add_subcommand("delta1-table", "Thm 3.5 delta_1 generator table");
    d1_cmd->add_option("--J", J, "lattice truncation halfwidth");
    d1_cmd->add_option("--convention", convention, "literal|paper");

    auto* d0_cmd = app.add_subcommand("delta0", "Thm 3.5 delta_0 single-site computation");
    d0_cmd->add_option("--P", P, "phi sample count");

    auto* kt_cmd = app.add_subcommand("ktheory", "six-term diagram checking/solving");
    kt_cmd->add_option("--diagram", diagram_path, "diagram JSON (or a fixture name)")->required();
    kt_cmd->add_flag("--solve", do_solve, "fill unknown groups");

    auto* rep_cmd = app.add_subcommand("replicate", "run the full fixture replication");
    rep_cmd->add_option("--config", config_path, "config JSON");
    rep_cmd->add_option("--only", only_prefix, "fixture name prefix filter");
    rep_cmd->add_flag("--strict", strict, "flagged records fail the run");
    rep_cmd->add_option("--convention", convention, "literal|paper");
    rep_cmd->add_option("--out", report_stem, "output stem");
    rep_cmd->add_option("--format", format, "json|csv|md");

    CLI11_PARSE(app, argc, argv);

    try {
        auto conv = convention == "literal" ? ShiftConvention::Literal : ShiftConvention::Paper;

        if (*assemble_cmd) {
            auto op = assemble(load_word(word_path), parse_grid(grid_spec));
            write_matrix_container(op, out_path);
            std::cout << summarize_operator(op, nullptr).dump(2) << "\n";
        } else if (*index_cmd) {
            auto op = assemble(load_word(word_path), parse_grid(grid_spec));
            auto est = fredholm_index_estimate(op, eps);
            std::cout << summarize_operator(op, &est).dump(2) << "\n";
        } else if (*toeplitz_cmd) {
            auto phi = parse_circle_symbol(symbol_text);
            auto res = toeplitz_index(phi, m, eps);
            json j = {{"index", res.index},
                      {"winding", res.winding},
                      {"eps_rank_index", res.eps_rank.index},
                      {"eps_rank_reliable", res.eps_rank.gap.reliable},
                      {"gap_ratio", res.eps_rank.gap.ratio},
                      {"corroborated", res.corroborated}};
            std::cout << j.dump(2) << "\n";
            if (!csv_stem.empty()) {
                SampledLoop loop;
                const int probe = 4 * m;
                for (int p = 0; p <= probe; ++p)
                    loop.samples.push_back(phi.eval(kTwoPi * p / probe));
                loop.closed = true;
                loop.orientation = "S^1 counterclockwise";
                std::ofstream lc(csv_stem + ".loop.csv");
                loop_to_csv(loop, lc);
                std::ofstream sc(csv_stem + ".sigma.csv");
                sc << "index,sigma\n";
                auto s = singular_values(toeplitz_truncation(phi, m).matrix);
                for (size_t i = 0; i < s.size(); ++i) sc << i << "," << s[i] << "\n";
            }
        } else if (*gamma_cmd) {
            auto g = gamma_word(load_word(word_path), phi, sign, J, conv);
            json j = {{"phi", phi}, {"sign", sign}, {"J", J},
                      {"provenance", g.op.provenance}, {"norm", op_norm(g.op.matrix)}};
            if (J <= 16)
                j["matrix"] = matrix_to_json(g.op.matrix);
            else
                j["summary"] = "matrix omitted for J > 16";
            std::cout << j.dump(2) << "\n";
        } else if (*d1_cmd) {
            auto t = delta1_table(J, conv);
            json pairs = json::array();
            for (const auto& p : t.pairs) pairs.push_back({p.first, p.second});
            json j = {{"pairs", pairs},
                      {"global_sign", t.global_sign},
                      {"a1_traces", {t.a1_trace_left, t.a1_trace_right}},
                      {"convention", convention}};
            std::cout << j.dump(2) << "\n";
        } else if (*d0_cmd) {
            auto db = delta0_exponential(fn_b_std(), P);
            auto dc = delta0_exponential(fn_c_std(), P);
            json j = {{"delta0_of_(1,0)", {db.cls.first, db.cls.second}},
                      {"delta0_of_(0,1)", {dc.cls.first, dc.cls.second}},
                      {"max_offsite_leak", std::max(db.max_offsite_leak, dc.max_offsite_leak)}};
            std::cout << j.dump(2) << "\n";
        } else if (*kt_cmd) {
            SixTermDiagram d;
            std::ifstream is(diagram_path);
            if (is.good()) {
                json j;
                is >> j;
                d = diagram_from_json(j);
            } else {
                d = hexagon_fixture(diagram_path);
            }
            if (do_solve) {
                auto solved = solve_unknown(d);
                std::cout << diagram_to_json(solved.diagram).dump(2) << "\n";
                for (const auto& note : solved.notes) std::cerr << note << "\n";
            } else {
                auto verdicts = check_diagram(d);
                json j = json::array();
                for (int i = 0; i < 6; ++i)
                    j.push_back({{"node", i},
                                 {"label", d.labels[i]},
                                 {"exact", verdicts[i].exact},
                                 {"detail", verdicts[i].detail}});
                std::cout << j.dump(2) << "\n";
            }
        } else if (*rep_cmd) {
            RunConfig cfg = config_from_env_and_json(config_path);
            if (!only_prefix.empty()) cfg.only_prefix = only_prefix;
            if (strict) cfg.strict = true;
            cfg.convention = conv;
            auto report = run_replication(cfg);
            export_report(report, report_stem, format);
            std::cout << "records: " << report.records.size()
                      << "  errors: " << report.errors << "  flagged: " << report.flagged
                      << "  sign-mismatches: " << report.sign_mismatches << "\n";
            for (const auto& r : report.records)
                if (r.status != RecordStatus::Match)
                    std::cout << "  [" << to_string(r.status) << "] " << r.name << ": "
                              << r.computed << " (" << r.detail << ")\n";
            return report.exit_code(cfg.strict);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
