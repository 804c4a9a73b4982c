// Copyright 2026 The PPS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pps/cli.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pps/criterion.h"
#include "pps/errors.h"
#include "pps/factorize.h"
#include "pps/pointer.h"
#include "pps/scenario_file.h"
#include "pps/scenarios.h"
#include "pps/weakvalue.h"

namespace pps::cli {

namespace {

using json = nlohmann::ordered_json;

/// Input problems surfaced as exit code 1.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return "";
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Complex parse_complex_literal(const std::string &raw) {
    std::string s = trim(raw);
    if (s.empty()) {
        throw InputError("empty complex literal");
    }
    auto bad = [&] { return InputError("cannot parse complex literal '" + raw + "'"); };

    if (s.back() != 'i') {
        std::size_t used = 0;
        double re = 0.0;
        try {
            re = std::stod(s, &used);
        } catch (const std::exception &) {
            throw bad();
        }
        if (used != s.size()) {
            throw bad();
        }
        return {re, 0.0};
    }

    std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not the leading one and not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto parse_coef = [&](const std::string &t) -> double {
        if (t.empty() || t == "+") {
            return 1.0;
        }
        if (t == "-") {
            return -1.0;
        }
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception &) {
            throw bad();
        }
        if (used != t.size()) {
            throw bad();
        }
        return v;
    };
    if (split == std::string::npos) {
        return {0.0, parse_coef(body)};
    }
    std::string re_part = body.substr(0, split);
    std::size_t used = 0;
    double re = 0.0;
    try {
        re = std::stod(re_part, &used);
    } catch (const std::exception &) {
        throw bad();
    }
    if (used != re_part.size()) {
        throw bad();
    }
    return {re, parse_coef(body.substr(split))};
}

void print_vector(std::ostream &out, const CVector &v) {
    out << "[";
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        out << (k ? ", " : "") << format_complex(v[k]);
    }
    out << "]";
}

json complex_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

json vector_json(const CVector &v) {
    json out = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        out.push_back(complex_json(v[k]));
    }
    return out;
}

void print_weak_table(std::ostream &out, const WeakValueReport &r, const SeparationProblem &p) {
    std::vector<std::vector<std::string>> cells(p.observable_count());
    std::size_t label_w = 0;
    std::vector<std::size_t> col_w(p.block_count(), 0);
    for (std::size_t j = 0; j < p.observable_count(); ++j) {
        label_w = std::max(label_w, p.observables[j].label.size());
        for (std::size_t i = 0; i < p.block_count(); ++i) {
            cells[j].push_back(format_complex(r.weak[j][i]));
            col_w[i] = std::max({col_w[i], cells[j][i].size(), p.space.label(i).size()});
        }
    }
    out << "weak values (rows: observables, columns: blocks)\n";
    out << std::left << std::setw(static_cast<int>(label_w + 2)) << "";
    for (std::size_t i = 0; i < p.block_count(); ++i) {
        out << std::setw(static_cast<int>(col_w[i] + 2)) << p.space.label(i);
    }
    out << "\n";
    for (std::size_t j = 0; j < p.observable_count(); ++j) {
        out << std::setw(static_cast<int>(label_w + 2)) << p.observables[j].label;
        for (std::size_t i = 0; i < p.block_count(); ++i) {
            out << std::setw(static_cast<int>(col_w[i] + 2)) << cells[j][i];
        }
        out << "\n";
    }
    out << std::right;
    out << "pattern: " << (r.pattern_ok ? "PASS" : "FAIL") << " (tol " << format_real(r.tolerance) << ")\n";
    for (const auto &e : r.offending) {
        out << "  offending entry (" << p.observables[e.observable].label << ", " << p.space.label(e.block)
            << ") = " << format_complex(e.value) << "\n";
    }
    for (const auto &e : r.complex_targets) {
        out << "  warning: targeted entry (" << p.observables[e.observable].label << ", "
            << p.space.label(e.block) << ") is complex: " << format_complex(e.value) << "\n";
    }
}

json weak_json(const WeakValueReport &r, const SeparationProblem &p) {
    json w = json::array();
    json b = json::array();
    for (std::size_t j = 0; j < r.weak.size(); ++j) {
        json wr = json::array();
        json br = json::array();
        for (std::size_t i = 0; i < r.weak[j].size(); ++i) {
            wr.push_back(complex_json(r.weak[j][i]));
            br.push_back(complex_json(r.bilinear[j][i]));
        }
        w.push_back(std::move(wr));
        b.push_back(std::move(br));
    }
    json amps = json::array();
    for (auto a : r.amplitudes) {
        amps.push_back(complex_json(a));
    }
    json off = json::array();
    for (const auto &e : r.offending) {
        off.push_back(json{
            {"observable", p.observables[e.observable].label},
            {"block", p.space.label(e.block)},
            {"value", complex_json(e.value)}});
    }
    return json{
        {"overlap", complex_json(r.overlap)}, {"weak_values", std::move(w)}, {"bilinear", std::move(b)},
        {"amplitudes", std::move(amps)},      {"pattern_ok", r.pattern_ok}, {"tolerance", r.tolerance},
        {"offending", std::move(off)}};
}

std::uint64_t default_seed() {
    if (const char *env = std::getenv("PPS_SEED")) {
        try {
            return std::stoull(env, nullptr, 0);
        } catch (const std::exception &) {
            throw InputError(std::string("PPS_SEED is not an integer: '") + env + "'");
        }
    }
    return SearchConfig{}.seed;
}

int cmd_check(const std::string &path, double tol, std::ostream &out) {
    auto file = load_scenario(path);
    const auto &p = file.problem;
    auto verdicts = solve_all_blocks(p, tol);
    out << "scenario " << p.name << ": " << p.block_count() << " blocks, " << p.observable_count()
        << " observables, rank tol " << format_real(tol) << "\n";
    bool all = true;
    for (std::size_t b = 0; b < verdicts.size(); ++b) {
        const auto &v = verdicts[b];
        out << "block " << b + 1 << " (" << p.space.label(b) << "): rank " << v.rank_M << "/" << v.rank_augmented
            << " " << (v.feasible ? "FEASIBLE" : "INFEASIBLE") << "\n";
        all = all && v.feasible;
    }
    return all ? kOk : kLinearInfeasible;
}

int cmd_solve(const std::string &path, const SearchConfig &config, double tol, bool as_json, std::ostream &out) {
    auto file = load_scenario(path);
    const auto &p = file.problem;

    // OrthogonalSelections propagates to run() as exit code 4.
    ProblemSolution sol = solve_problem(p, config, tol);

    std::optional<WeakValueReport> report;
    if (sol.selection) {
        report = verify_disembodiment(*sol.selection, p);
    }

    int code = kOk;
    if (std::find(sol.diagnosis.begin(), sol.diagnosis.end(), BlockStatus::LinearInfeasible) != sol.diagnosis.end()) {
        code = kLinearInfeasible;
    } else if (!sol.all_solved()) {
        code = kRank1NotFound;
    } else if (!report || !report->pattern_ok) {
        code = kRank1NotFound;
    }

    if (as_json) {
        json blocks = json::array();
        for (std::size_t b = 0; b < p.block_count(); ++b) {
            const auto &v = sol.verdicts[b];
            const auto &s = sol.searches[b];
            json jb{
                {"label", p.space.label(b)},
                {"status", to_string(sol.diagnosis[b])},
                {"rank_M", v.rank_M},
                {"rank_augmented", v.rank_augmented},
                {"feasible", v.feasible}};
            if (v.feasible) {
                jb["linear_residual"] = v.solution->residual;
                jb["nullspace_dim"] = v.solution->nullspace.size();
                jb["best_residual"] = s.best_residual;
                jb["start"] = s.start;
                if (s.factor) {
                    jb["x"] = vector_json(s.factor->x);
                    jb["y"] = vector_json(s.factor->y);
                }
            }
            blocks.push_back(std::move(jb));
        }
        json doc{
            {"name", p.name},
            {"seed", config.seed},
            {"starts", config.starts},
            {"rank_tol", tol},
            {"blocks", std::move(blocks)}};
        if (sol.selection) {
            doc["pre"] = vector_json(sol.selection->pre.flat());
            doc["post"] = vector_json(sol.selection->post.flat());
            doc["block_scales"] = sol.selection->block_scales;
            doc["verification"] = weak_json(*report, p);
        }
        doc["exit_code"] = code;
        out << doc.dump(2) << "\n";
        return code;
    }

    out << "scenario " << p.name << " (seed " << config.seed << ", " << config.starts << " starts)\n";
    for (std::size_t b = 0; b < p.block_count(); ++b) {
        const auto &v = sol.verdicts[b];
        const auto &s = sol.searches[b];
        out << "block " << b + 1 << " (" << p.space.label(b) << "): ";
        switch (sol.diagnosis[b]) {
            case BlockStatus::LinearInfeasible:
                out << "LINEAR_INFEASIBLE rank " << v.rank_M << "/" << v.rank_augmented;
                break;
            case BlockStatus::Rank1NotFound:
                out << "RANK1_NOT_FOUND best residual " << format_real(s.best_residual)
                    << (v.solution->nullspace.empty() ? " (unique linear solution)" : "");
                break;
            case BlockStatus::Solved:
                out << "SOLVED residual " << format_real(s.best_residual);
                break;
        }
        out << "\n";
    }
    if (sol.selection) {
        out << "pre  |Psi> = ";
        print_vector(out, sol.selection->pre.flat());
        out << "\npost <Phi| = ";
        print_vector(out, sol.selection->post.flat());
        out << "\noverlap <Phi|Psi> = " << format_complex(sol.selection->overlap) << "\n";
        print_weak_table(out, *report, p);
    }
    return code;
}

int cmd_weak_values(const std::string &path, const std::string &pre_csv, const std::string &post_csv, std::ostream &out) {
    auto file = load_scenario(path);
    const auto &p = file.problem;
    CVector pre = parse_complex_csv(pre_csv);
    CVector post = parse_complex_csv(post_csv);
    SelectionPair sel = [&] {
        try {
            return make_selection(p.space, pre, post);
        } catch (const DimensionError &e) {
            throw InputError(e.what());
        }
    }();
    auto report = verify_disembodiment(sel, p);
    out << "overlap <Phi|Psi> = " << format_complex(report.overlap) << "\n";
    print_weak_table(out, report, p);
    return report.pattern_ok ? kOk : kRank1NotFound;
}

struct SimulateArgs {
    std::string path;
    std::vector<std::string> operators;
    std::vector<double> couplings;
    int block = 1;
    double sigma = 1.0;
    int ladder = 0;
};

int cmd_simulate(const SimulateArgs &a, std::ostream &out) {
    auto file = load_scenario(a.path);
    const auto &p = file.problem;
    if (a.block < 1 || static_cast<std::size_t>(a.block) > p.block_count()) {
        throw InputError("--block must be between 1 and " + std::to_string(p.block_count()));
    }
    if (a.operators.empty() || a.operators.size() > 2 || a.operators.size() != a.couplings.size()) {
        throw InputError("give one or two --operator labels, each with its own --g");
    }
    if (!(a.sigma > 0.0)) {
        throw InputError("--sigma must be positive");
    }
    auto block = static_cast<std::size_t>(a.block - 1);
    std::vector<CMatrix> embedded;
    for (const auto &label : a.operators) {
        auto it = std::find_if(p.observables.begin(), p.observables.end(), [&](const Observable &o) { return o.label == label; });
        if (it == p.observables.end()) {
            throw InputError("unknown operator '" + label + "'");
        }
        embedded.push_back(embed_block_operator(it->matrix, block, p.space));
    }

    std::optional<SelectionPair> selection = file.reference();
    std::string source = "reference";
    if (!selection) {
        SearchConfig config;
        config.seed = default_seed();
        try {
            auto sol = solve_problem(p, config);
            selection = sol.selection;
        } catch (const OrthogonalSelections &) {
        }
        source = "solved";
    }
    if (!selection) {
        out << "no selection available: the file has no reference states and solve did not reach SOLVED\n";
        return kMissingSelection;
    }
    CVector pre = selection->pre.flat();
    CVector post = selection->post.flat();

    out << "selection: " << source << ", block " << a.block << " (" << p.space.label(block) << "), sigma "
        << format_real(a.sigma) << "\n";

    if (embedded.size() == 2) {
        auto r = simulate_joint(post, pre, embedded[0], embedded[1], a.couplings[0], a.couplings[1], {a.sigma, 1.0});
        Complex w1 = weak_value(post, pre, embedded[0]);
        Complex w2 = weak_value(post, pre, embedded[1]);
        double predicted = a.couplings[0] * w1.real() + a.couplings[1] * w2.real();
        out << "joint coupling " << format_real(a.couplings[0]) << "*" << a.operators[0] << " + "
            << format_real(a.couplings[1]) << "*" << a.operators[1] << "\n";
        out << "shift = " << format_real(r.mean_position_shift) << "\n";
        out << "first-order prediction g1*Re(w1) + g2*Re(w2) = " << format_real(predicted) << "\n";
        out << "momentum shift = " << format_real(r.mean_momentum_shift) << "\n";
        out << "post-selection probability = " << format_real(r.postselection_probability) << "\n";
        return kOk;
    }

    double g = a.couplings[0];
    auto r = simulate(post, pre, embedded[0], {a.sigma, g});
    Complex w = weak_value(post, pre, embedded[0]);
    out << "operator " << a.operators[0] << ", g = " << format_real(g) << "\n";
    out << "shift = " << format_real(r.mean_position_shift) << "\n";
    out << "shift/g = " << (g != 0.0 ? format_real(r.mean_position_shift / g) : std::string("n/a")) << "\n";
    out << "Re(weak value) = " << format_real(w.real()) << "\n";
    out << "Im(weak value) = " << format_real(w.imag()) << "\n";
    out << "momentum shift = " << format_real(r.mean_momentum_shift) << "\n";
    out << "post-selection probability = " << format_real(r.postselection_probability) << "\n";

    if (a.ladder > 0) {
        if (!(g > 0.0)) {
            throw InputError("--ladder needs a positive --g");
        }
        auto table = weak_limit_check(post, pre, embedded[0], a.sigma, halving_ladder(g, a.ladder));
        out << "convergence (|shift/g - Re w|):\n";
        out << std::setw(20) << "g" << std::setw(20) << "shift/g" << std::setw(20) << "error" << std::setw(20)
            << "ratio" << "\n";
        for (const auto &row : table.rows) {
            out << std::setw(20) << format_real(row.g) << std::setw(20) << format_real(row.shift_over_g)
                << std::setw(20) << format_real(row.error) << std::setw(20)
                << (std::isnan(row.ratio) ? std::string("-") : format_real(row.ratio)) << "\n";
        }
        out << "monotone: " << (table.monotone() ? "yes" : "no") << "\n";
    }
    return kOk;
}

int cmd_examples_list(std::ostream &out) {
    for (const auto &name : builtin_names()) {
        out << name << "\n";
    }
    return kOk;
}

int cmd_examples_export(const std::string &name, const std::string &path, std::ostream &out) {
    auto s = builtin(name);
    if (!s) {
        throw InputError("unknown built-in scenario '" + name + "'");
    }
    std::string text = export_scenario(to_file(*s));
    if (path == "-") {
        out << text;
        return kOk;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw InputError("cannot write '" + path + "'");
    }
    f << text;
    return kOk;
}

}  // namespace

CVector parse_complex_csv(const std::string &text) {
    std::vector<Complex> values;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        values.push_back(parse_complex_literal(token));
    }
    if (values.empty()) {
        throw InputError("empty complex vector");
    }
    CVector v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t k = 0; k < values.size(); ++k) {
        v[static_cast<Eigen::Index>(k)] = values[k];
    }
    return v;
}

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string format_complex(Complex z) {
    if (z.imag() == 0.0) {
        return format_real(z.real());
    }
    char buf[96];
    if (z.real() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.12gi", z.imag());
    } else {
        std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
    }
    return buf;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Pre/post-selection disembodiment solver", "pps"};
    app.require_subcommand(1);

    std::string path;
    double tol = kDefaultRankTol;

    auto *check = app.add_subcommand("check", "Rank criterion per block");
    check->add_option("file", path, "scenario file")->required();
    check->add_option("--tol", tol, "relative rank tolerance");

    SearchConfig config;
    bool as_json = false;
    std::optional<std::uint64_t> seed;
    auto *solve = app.add_subcommand("solve", "Find product pre/post-selection states");
    solve->add_option("file", path, "scenario file")->required();
    solve->add_option("--seed", seed, "search seed (default: $PPS_SEED or built-in)");
    solve->add_option("--starts", config.starts, "multi-start count")->check(CLI::PositiveNumber);
    solve->add_option("--tol", tol, "relative rank tolerance");
    solve->add_flag("--json", as_json, "emit the structured report");

    std::string pre_csv;
    std::string post_csv;
    auto *weak = app.add_subcommand("weak-values", "Evaluate weak values of given states");
    weak->add_option("file", path, "scenario file")->required();
    weak->add_option("--pre", pre_csv, "pre-selection ket, comma-separated complex")->required();
    weak->add_option("--post", post_csv, "post-selection co-vector, comma-separated complex")->required();

    SimulateArgs sim;
    auto *simulate_cmd = app.add_subcommand("simulate", "Gaussian-pointer weak measurement");
    simulate_cmd->add_option("file", sim.path, "scenario file")->required();
    simulate_cmd->add_option("--operator", sim.operators, "operator label (repeat for joint coupling)")->required();
    simulate_cmd->add_option("--g", sim.couplings, "coupling per operator")->required();
    simulate_cmd->add_option("--block", sim.block, "1-based block index");
    simulate_cmd->add_option("--sigma", sim.sigma, "pointer spread");
    simulate_cmd->add_option("--ladder", sim.ladder, "number of halved couplings in a convergence table");

    auto *examples = app.add_subcommand("examples", "Built-in scenarios");
    examples->require_subcommand(1);
    auto *list = examples->add_subcommand("list", "List built-ins");
    std::string name;
    std::string out_path;
    auto *exp = examples->add_subcommand("export", "Write a built-in scenario file ('-' for stdout)");
    exp->add_option("name", name)->required();
    exp->add_option("path", out_path)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (check->parsed()) {
            return cmd_check(path, tol, out);
        }
        if (solve->parsed()) {
            config.seed = seed ? *seed : default_seed();
            return cmd_solve(path, config, tol, as_json, out);
        }
        if (weak->parsed()) {
            return cmd_weak_values(path, pre_csv, post_csv, out);
        }
        if (simulate_cmd->parsed()) {
            return cmd_simulate(sim, out);
        }
        if (list->parsed()) {
            return cmd_examples_list(out);
        }
        if (exp->parsed()) {
            return cmd_examples_export(name, out_path, out);
        }
    } catch (const PostSelectionOrthogonal &e) {
        err << "error: " << e.what() << "\n";
        return kOrthogonalSelections;
    } catch (const OrthogonalSelections &e) {
        err << "error: " << e.what() << "\n";
        return kOrthogonalSelections;
    } catch (const ScenarioFormatError &e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const InputError &e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument &e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace pps::cli
