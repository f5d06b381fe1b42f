// qdisk: duality maps and verification suites for the quantum cluster
// varieties of a marked disk.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/validation error.

#include "qdisk/io.hpp"
#include "qdisk/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <optional>

using namespace qdisk;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_output(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(output_path);
        out << text << "\n";
    }
}

struct ChartArgs {
    int polygon = 0;
    std::string chart;

    Triangulation resolve() const {
        MarkedDisk disk(polygon);
        if (chart.empty()) return canonical_completion(disk, {});
        return parse_chart_spec(disk, chart);
    }
};

int cmd_compute_ia(const ChartArgs& args, const std::string& lamination_path, bool q_one,
                   const std::string& output) {
    const Triangulation T = args.resolve();
    const json j = read_json_file(lamination_path);
    const ALamination l = parse_alamination(j, args.polygon);
    const ValidationReport v = validate(l);
    if (!v.ok) {
        std::cerr << json{{"error", "invalid lamination"}, {"violation", v.violation}}.dump()
                  << "\n";
        return 2;
    }
    DualityContext ctx(T);
    const IAResult r = i_a_q(l, ctx);
    if (q_one) {
        write_output(classical_x_text(r.value.eval_omega_one(), T), output);
    } else {
        write_output(ia_text(r), output);
    }
    return 0;
}

int cmd_compute_id(const ChartArgs& args, const std::string& lamination_path,
                   const std::string& output) {
    const Triangulation T = args.resolve();
    const json j = read_json_file(lamination_path);
    const DLamination l = parse_dlamination(j, args.polygon);
    const ValidationReport v = validate(l);
    if (!v.ok) {
        std::cerr << json{{"error", "invalid lamination"}, {"violation", v.violation}}.dump()
                  << "\n";
        return 2;
    }
    DualityContext ctx(T);
    const IDResult r = i_d_q(l, ctx);
    json out = id_json(r, ctx.dchart());

    // When the input is the phi-image of an A-lamination, cross-check the
    // commuting square and report it.
    bool is_phi_image = true;
    ALamination a{l.disk, {}};
    for (const auto& [c, w] : l.front) {
        if (!is_boundary(l.disk, c)) is_phi_image = false;
        a.weights[c] -= w;
    }
    for (const auto& [c, w] : l.back) a.weights[c] += w;
    for (auto it = a.weights.begin(); it != a.weights.end();)
        it = (it->second == 0) ? a.weights.erase(it) : std::next(it);
    if (is_phi_image && validate(a).ok && phi(a) == l)
        out["pi_q_consistent"] = verify_pi_q_compatibility(a, ctx);
    write_output(out.dump(2), output);
    return 0;
}

int cmd_verify(const std::vector<std::string>& suites, int n, int order, int weights, int jobs,
               const std::string& output) {
    std::map<std::string, std::function<SuiteResult()>> runners = {
        {"mutation", [&] { return run_mutation_suite(4, std::max(4, std::min(n, 8))); }},
        {"compat", [&] { return run_compat_suite(std::max(3, std::min(n, 9))); }},
        {"double",
         [&] {
             SuiteResult r{"double"};
             const SuiteResult a = run_commutation_suite(std::max(4, std::min(n, 7)));
             const SuiteResult b = run_transformation_suite(4, std::max(4, std::min(n, 6)));
             const SuiteResult c = run_pi_q_suite();
             r.pass = a.pass && b.pass && c.pass;
             r.checks = a.checks + b.checks + c.checks;
             return r;
         }},
        {"skein-oracle", [&] { return run_skein_oracle_suite(n >= 6); }},
        {"ia-props",
         [&] {
             SuiteResult r{"ia-props"};
             const SuiteResult a = run_ia_props_suite(100);
             const SuiteResult b = run_fpoly_suite(std::max(4, std::min(n, 8)));
             r.pass = a.pass && b.pass;
             r.checks = a.checks + b.checks;
             return r;
         }},
        {"structure", [&] { return run_structure_suite(std::max(1, weights) * 25); }},
        {"dilog", [&] { return run_dilog_suite(std::max(order, 4) + 4, std::max(order, 4)); }},
        {"gsum", [&] { return run_gsum_suite(6); }},
        {"nl", [&] { return run_nl_suite(100); }},
    };

    std::vector<std::string> selected = suites;
    if (selected.empty())
        for (const auto& [name, fn] : runners) selected.push_back(name);
    for (const std::string& s : selected)
        if (!runners.contains(s)) {
            std::cerr << json{{"error", "unknown suite"}, {"suite", s}}.dump() << "\n";
            return 2;
        }

    // Run suites (optionally in parallel); assemble output in the selection
    // order regardless of completion order.
    std::vector<SuiteResult> results(selected.size());
    if (jobs > 1) {
        std::vector<std::future<SuiteResult>> futs;
        size_t next = 0;
        while (next < selected.size()) {
            futs.clear();
            const size_t batch = std::min<size_t>(jobs, selected.size() - next);
            for (size_t b = 0; b < batch; ++b)
                futs.push_back(std::async(std::launch::async, runners.at(selected[next + b])));
            for (size_t b = 0; b < batch; ++b) results[next + b] = futs[b].get();
            next += batch;
        }
    } else {
        for (size_t i = 0; i < selected.size(); ++i) results[i] = runners.at(selected[i])();
    }

    std::ostringstream os;
    bool all = true;
    for (size_t i = 0; i < selected.size(); ++i) {
        os << selected[i] << ": " << (results[i].pass ? "PASS" : "FAIL")
           << " (checks=" << results[i].checks << ")\n";
        all = all && results[i].pass;
    }
    if (output.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream out(output);
        out << os.str();
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"duality maps for the quantum cluster varieties of a marked disk"};
    app.require_subcommand(1);

    ChartArgs chart_args;
    std::string lamination_path, output;
    bool q_one = false;

    auto add_chart_opts = [&](CLI::App* cmd, bool need_lamination) {
        cmd->add_option("--polygon", chart_args.polygon, "number of marked points")
            ->required()
            ->check(CLI::Range(3, 12));
        cmd->add_option("--chart", chart_args.chart,
                        "chart triangulation, e.g. \"0-2,0-3\" (default: fan)");
        if (need_lamination)
            cmd->add_option("--lamination", lamination_path, "lamination JSON file")->required();
        cmd->add_option("--output", output, "write the result to a file");
    };

    CLI::App* ia = app.add_subcommand("compute-ia", "expand the A-duality map of a lamination");
    add_chart_opts(ia, true);
    ia->add_flag("--q-one", q_one, "print the commutative specialization");

    CLI::App* id = app.add_subcommand("compute-id", "expand the D-duality map of a lamination");
    add_chart_opts(id, true);

    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    std::vector<std::string> suites;
    int n = 7, order = 8, weights = 2, jobs = 1;
    verify->add_option("suites", suites,
                       "suites: mutation compat double skein-oracle ia-props structure dilog "
                       "gsum nl (default: all)");
    verify->add_option("--n", n, "polygon size bound for the combinatorial suites");
    verify->add_option("--order", order, "series truncation order for the dilog suite");
    verify->add_option("--weights", weights, "weight scale for sampled suites");
    verify->add_option("--jobs", jobs, "run suites in parallel")->check(CLI::Range(1, 64));
    verify->add_option("--output", output, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ia->parsed()) return cmd_compute_ia(chart_args, lamination_path, q_one, output);
        if (id->parsed()) return cmd_compute_id(chart_args, lamination_path, output);
        if (verify->parsed()) return cmd_verify(suites, n, order, weights, jobs, output);
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }
    return 2;
}
