// negdep: construct randomized quasi-Monte Carlo point sets and measure
// their negative-dependence and discrepancy behaviour.
//
// Exit codes: 0 success, 1 check failure, 2 usage error, 3 budget exceeded.

#include "negdep/dependence.hpp"
#include "negdep/discrepancy.hpp"
#include "negdep/errors.hpp"
#include "negdep/geometry.hpp"
#include "negdep/repro.hpp"
#include "negdep/sampling.hpp"
#include "negdep/scrambling.hpp"
#include "negdep/testset_parse.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace {

using namespace negdep;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

ScramblingScheme scheme_from_name(const std::string& name) {
    ScramblingScheme s;
    if (name == "nested-uniform") {
        s.framework = ScrambleFramework::nested;
        s.family = PermFamily::uniform;
    } else if (name == "positional-uniform") {
        s.framework = ScrambleFramework::positional;
        s.family = PermFamily::uniform;
    } else if (name == "nested-linear") {
        s.framework = ScrambleFramework::nested;
        s.family = PermFamily::linear;
    } else if (name == "positional-linear") {
        s.framework = ScrambleFramework::positional;
        s.family = PermFamily::linear;
    } else if (name == "nested-shift") {
        s.framework = ScrambleFramework::nested;
        s.family = PermFamily::digital_shift;
    } else if (name == "positional-shift") {
        s.framework = ScrambleFramework::positional;
        s.family = PermFamily::digital_shift;
    } else if (name == "affine-matrix") {
        s.family = PermFamily::affine_matrix;
    } else {
        throw CLI::ValidationError("--scheme", "unknown scheme " + name);
    }
    return s;
}

PointSet read_points(const std::string& path) {
    if (path.empty() || path == "-") return read_pointset(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_pointset(in);
}

void write_points(const std::string& path, const PointSet& ps) {
    if (path.empty() || path == "-") {
        write_pointset(std::cout, ps);
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_pointset(out, ps);
}

std::vector<int> parse_index_list(const std::string& spec) {
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::runtime_error("empty index in --J");
        out.push_back(std::stoi(tok));
    }
    if (out.empty()) throw std::runtime_error("--J must name at least one point");
    return out;
}

struct ModelFlags {
    std::string model = "lhs";
    int d = 0;
    int n = 0;
    int b = 2;
    int t = 0;
    int m = 0;
    std::string scheme = "nested-uniform";
    int depth = 0;
    bool symmetrize = false;

    void attach(CLI::App* cmd, bool need_n) {
        cmd->add_option("--model", model, "Point model: lhs, mc or net")
            ->check(CLI::IsMember({"lhs", "mc", "net"}));
        cmd->add_option("--d", d, "Dimension")->required();
        auto* n_opt = cmd->add_option("--n", n, "Number of points (lhs/mc)");
        if (need_n) n_opt->default_val(0);
        cmd->add_option("--b", b, "Net base");
        cmd->add_option("--t", t, "Net quality parameter t");
        cmd->add_option("--m", m, "Net size exponent (N = b^m)");
        cmd->add_option("--scheme", scheme, "Scrambling scheme (net model)");
        cmd->add_option("--depth", depth, "Scrambling depth (default m - t)");
        cmd->add_flag("--symmetrize", symmetrize, "Relabel the scrambled points uniformly");
    }

    RandomPointModel build() const {
        if (model == "mc") {
            if (n < 1) throw std::runtime_error("--n is required for the mc model");
            return McModel{d, n};
        }
        if (model == "lhs") {
            if (n < 1) throw std::runtime_error("--n is required for the lhs model");
            return LhsModel{d, n};
        }
        NetParams params{b, t, m, d};
        params.validate();
        const auto mats = search_net_matrices(params);
        if (!mats) throw std::runtime_error("no net exists for these parameters");
        ScramblingScheme s = scheme_from_name(scheme);
        s.base = b;
        s.depth = depth > 0 ? depth : params.order();
        s.symmetrize = symmetrize;
        return ScrambledNetModel{params, net_from_matrices(params, *mats), s};
    }
};

std::string gamma_line(const DependenceReport& rep) {
    std::ostringstream out;
    if (rep.exact) {
        out << "joint=" << format_rational(rep.joint) << " product="
            << format_rational(rep.product) << " ratio=";
        if (rep.ratio_infinite)
            out << "inf";
        else
            out << format_rational(rep.ratio);
    } else {
        out << "joint=" << format_double(rep.joint_value)
            << " product=" << format_rational(rep.product)
            << " ratio=" << format_double(rep.ratio_value);
        if (rep.ratio_ci)
            out << " ci=" << format_double(rep.ratio_ci->lo) << ','
                << format_double(rep.ratio_ci->hi);
    }
    return out.str();
}

void print_repro_table(const ReproOutcome& outcome) {
    for (const auto& r : outcome.rows) {
        std::cout << repro_target_name(outcome.target) << '\t' << r.check << '\t' << r.observed
                  << '\t' << r.expected << '\t' << r.tolerance << '\t'
                  << (r.informational ? (r.pass ? "info-ok" : "info")
                                      : (r.pass ? "pass" : "FAIL"))
                  << '\n';
    }
    std::cerr << repro_target_name(outcome.target) << ": "
              << (outcome.pass() ? "pass" : "FAIL") << " (" << outcome.elapsed_seconds << " s)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"negdep: negative dependence diagnostics for randomized QMC point sets"};
    app.require_subcommand(1);
    std::function<int()> run;

    // ---- gen ----------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "Generate point sets");
    gen->require_subcommand(1);
    {
        static int d = 1, n = 1;
        static std::uint64_t seed = 0;
        static std::string out_path;
        static bool exact = false;
        auto* lhs = gen->add_subcommand("lhs", "Latin hypercube sample");
        lhs->add_option("--d", d, "Dimension")->required();
        lhs->add_option("--n", n, "Points")->required();
        lhs->add_option("--seed", seed, "Seed")->required();
        lhs->add_option("--out", out_path, "Output file (default stdout)");
        lhs->add_flag("--exact", exact, "Exact dyadic uniforms");
        lhs->callback([&] {
            run = [&]() {
                write_points(out_path, gen_lhs(d, n, seed, exact).points);
                return kExitOk;
            };
        });

        static int md = 1, mn = 1;
        static std::uint64_t mseed = 0;
        static std::string mout;
        auto* mc = gen->add_subcommand("mc", "Independent uniform points");
        mc->add_option("--d", md, "Dimension")->required();
        mc->add_option("--n", mn, "Points")->required();
        mc->add_option("--seed", mseed, "Seed")->required();
        mc->add_option("--out", mout, "Output file (default stdout)");
        mc->callback([&] {
            run = [&]() {
                write_points(mout, gen_mc(md, mn, mseed));
                return kExitOk;
            };
        });

        static int nb = 2, nt = 0, nm = 1, nd = 1;
        static std::uint64_t skip = 0;
        static std::string nout;
        auto* net = gen->add_subcommand("net", "Digital net from searched generator matrices");
        net->add_option("--b", nb, "Base (prime)")->required();
        net->add_option("--t", nt, "Quality parameter")->required();
        net->add_option("--m", nm, "Size exponent")->required();
        net->add_option("--d", nd, "Dimension")->required();
        net->add_option("--skip", skip, "Skip this many earlier search hits");
        net->add_option("--out", nout, "Output file (default stdout)");
        net->callback([&] {
            run = [&]() {
                const NetParams params{nb, nt, nm, nd};
                const auto mats = search_net_matrices(params, 1u << 24, skip);
                if (!mats) {
                    std::cerr << "search exhausted: no (" << nt << "," << nm << "," << nd
                              << ")-net in base " << nb << (skip ? " beyond the skipped hits" : "")
                              << "\n";
                    return kExitCheckFailed;
                }
                write_points(nout, net_from_matrices(params, *mats));
                return kExitOk;
            };
        });
    }

    // ---- scramble -----------------------------------------------------
    {
        static std::string scheme_name = "nested-uniform", in_path, out_path;
        static int b = 2, depth = 1;
        static std::uint64_t seed = 0;
        static bool symmetrize = false;
        auto* scr = app.add_subcommand("scramble", "Digit-scramble a point set");
        scr->add_option("--scheme", scheme_name,
                        "nested-uniform|positional-uniform|nested-linear|positional-linear|"
                        "nested-shift|positional-shift|affine-matrix")
            ->required();
        scr->add_option("--b", b, "Base")->required();
        scr->add_option("--depth", depth, "Depth")->required();
        scr->add_option("--seed", seed, "Seed")->required();
        scr->add_flag("--symmetrize", symmetrize, "Relabel output points uniformly");
        scr->add_option("--in", in_path, "Input point set (default stdin)");
        scr->add_option("--out", out_path, "Output file (default stdout)");
        scr->callback([&] {
            run = [&]() {
                ScramblingScheme s = scheme_from_name(scheme_name);
                s.base = b;
                s.depth = depth;
                s.seed = seed;
                s.symmetrize = symmetrize;
                write_points(out_path, scramble(read_points(in_path), s).points);
                return kExitOk;
            };
        });
    }

    // ---- verify -------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "Verify structural properties");
    verify->require_subcommand(1);
    {
        static int b = 2, t = 0, m = 1;
        static std::string in_path;
        auto* net = verify->add_subcommand("net", "Check the net property");
        net->add_option("--b", b, "Base")->required();
        net->add_option("--t", t, "Quality parameter")->required();
        net->add_option("--m", m, "Size exponent")->required();
        net->add_option("--in", in_path, "Input point set (default stdin)");
        net->callback([&] {
            run = [&]() {
                const PointSet ps = read_points(in_path);
                const NetParams params{b, t, m, ps.dim()};
                const NetCheckReport report = verify_net(ps, params);
                std::cout << (report.ok ? "net" : "not-a-net") << "\tintervals="
                          << report.intervals_checked << "\tviolations="
                          << report.violations.size() << '\n';
                for (const auto& v : report.violations)
                    std::cerr << "violating interval " << v.interval.to_string() << " holds "
                              << v.count << " points, expected " << report.expected_per_interval
                              << '\n';
                return report.ok ? kExitOk : kExitCheckFailed;
            };
        });
    }

    // ---- gamma --------------------------------------------------------
    auto* gamma = app.add_subcommand("gamma", "Joint membership probabilities and ratios");
    gamma->require_subcommand(1);
    {
        static ModelFlags exact_model;
        static std::string set_spec, j_spec = "1", side = "upper";
        auto* ex = gamma->add_subcommand("exact", "Exact enumeration oracle");
        exact_model.attach(ex, true);
        ex->add_option("--set", set_spec, "Test set: a1,..,ad or a1,..,ad:b1,..,bd")->required();
        ex->add_option("--J", j_spec, "Point indices, e.g. 1,2,3");
        ex->add_option("--side", side, "upper|lower")->check(CLI::IsMember({"upper", "lower"}));
        ex->callback([&] {
            run = [&]() {
                const RandomPointModel model = exact_model.build();
                DependenceQuery q;
                q.set = parse_testset(set_spec, model_dim(model));
                q.points = parse_index_list(j_spec);
                q.side = side == "upper" ? DependenceSide::upper : DependenceSide::lower;
                std::cout << gamma_line(exact_joint(q, model)) << '\n';
                return kExitOk;
            };
        });

        static ModelFlags est_model;
        static std::string eset, ej = "1", eside = "upper";
        static int reps = 1000;
        static std::uint64_t eseed = 0;
        auto* est = gamma->add_subcommand("estimate", "Rao-Blackwellized estimator");
        est_model.attach(est, true);
        est->add_option("--set", eset, "Test set spec")->required();
        est->add_option("--J", ej, "Point indices");
        est->add_option("--side", eside, "upper|lower")
            ->check(CLI::IsMember({"upper", "lower"}));
        est->add_option("--reps", reps, "Replications (>= 100)");
        est->add_option("--seed", eseed, "Seed");
        est->callback([&] {
            run = [&]() {
                const RandomPointModel model = est_model.build();
                DependenceQuery q;
                q.set = parse_testset(eset, model_dim(model));
                q.points = parse_index_list(ej);
                q.side = eside == "upper" ? DependenceSide::upper : DependenceSide::lower;
                std::cout << gamma_line(mc_estimate_joint(q, model, reps, eseed)) << '\n';
                return kExitOk;
            };
        });

        static ModelFlags search_model;
        static std::string family = "D0";
        static std::uint64_t budget = 200000;
        static int max_j = 0;
        auto* se = gamma->add_subcommand("search", "Grid search for the largest exact ratio");
        search_model.attach(se, true);
        se->add_option("--family", family, "C0 (anchored) or D0 (differences)")
            ->check(CLI::IsMember({"C0", "D0"}));
        se->add_option("--budget", budget, "Maximum number of grid queries");
        se->add_option("--max-j", max_j, "Cap on the index-set size");
        se->callback([&] {
            run = [&]() {
                SearchConfig cfg;
                cfg.family = family == "C0" ? TestFamily::anchored_boxes
                                            : TestFamily::box_differences;
                cfg.budget = budget;
                cfg.max_subset_size = max_j;
                const SearchResult res =
                    correlation_number_search(search_model.build(), cfg);
                std::cout << "max-ratio="
                          << (res.infinite ? std::string("inf")
                                           : format_rational(res.best_ratio))
                          << " set=" << format_testset(res.witness.set) << " J=";
                for (std::size_t i = 0; i < res.witness.points.size(); ++i) {
                    if (i) std::cout << ',';
                    std::cout << res.witness.points[i];
                }
                std::cout << " side="
                          << (res.witness.side == DependenceSide::upper ? "upper" : "lower")
                          << " queries=" << res.queries << '\n';
                return kExitOk;
            };
        });
    }

    // ---- disc ---------------------------------------------------------
    {
        static std::string in_path;
        auto* disc = app.add_subcommand("disc", "Exact star discrepancy");
        disc->add_option("--in", in_path, "Input point set (default stdin)");
        disc->callback([&] {
            run = [&]() {
                const StarDiscrepancy d = star_discrepancy_exact(read_points(in_path));
                std::cout << "dstar=" << format_double(d.value_d()) << " exact="
                          << format_rational(d.value) << '\n';
                return kExitOk;
            };
        });
    }

    // ---- bound --------------------------------------------------------
    auto* bound = app.add_subcommand("bound", "Probabilistic discrepancy bound calculus");
    bound->require_subcommand(1);
    {
        static double rate = 0.0;
        auto* minc = bound->add_subcommand("min-c", "Smallest valid bound constant");
        minc->add_option("--rate", rate, "Per-dimension log gamma rate (>= 0)")->required();
        minc->callback([&] {
            run = [&]() {
                std::cout << format_double(min_constant(rate)) << '\n';
                return kExitOk;
            };
        });

        static ModelFlags bmodel;
        static double c = 2.5287, brate = -1.0;
        static int seeds = 100;
        static std::uint64_t bseed = 0;
        auto* check = bound->add_subcommand("check", "Empirical bound frequency vs prediction");
        bmodel.attach(check, true);
        check->add_option("--c", c, "Bound constant")->required();
        check->add_option("--seeds", seeds, "Seeds to draw");
        check->add_option("--seed", bseed, "Base seed");
        check->add_option("--rate", brate, "log(gamma)/d (default 0 for mc, 1 otherwise)");
        check->callback([&] {
            run = [&]() {
                const RandomPointModel model = bmodel.build();
                const double gamma_rate =
                    brate >= 0.0 ? brate : (std::holds_alternative<McModel>(model) ? 0.0 : 1.0);
                const BoundCheck res = bound_vs_empirical(model, c, seeds, bseed, gamma_rate);
                std::cout << "fraction=" << res.fraction << " within=" << res.within << "/"
                          << res.seeds << " threshold=" << format_double(res.threshold)
                          << " predicted=" << format_double(res.predicted) << '\n';
                return res.fraction >= res.predicted ? kExitOk : kExitCheckFailed;
            };
        });
    }

    // ---- repro --------------------------------------------------------
    {
        static std::string target = "all", eps_spec, curve_path;
        static int seeds = 0;
        auto* repro = app.add_subcommand("repro", "Named reproduction checks");
        repro->add_option("target", target,
                          "thm2.2|prop2.3-d2|prop2.3-d3|prop2.3-asymptotic|prop3.9|"
                          "remark3.8|remark3.10|constants|all");
        repro->add_option("--eps", eps_spec, "Box growth override (decimal or p/q)");
        repro->add_option("--seeds", seeds, "Seed-count override");
        repro->add_option("--emit-curve", curve_path, "Write the ratio-vs-eps curve as TSV");
        repro->callback([&] {
            run = [&]() {
                ReproOptions opts;
                if (!eps_spec.empty()) opts.eps = parse_rational(eps_spec);
                if (seeds > 0) opts.seeds = seeds;
                opts.emit_curve_path = curve_path;
                bool all_pass = true;
                if (target == "all") {
                    for (const ReproTarget t : all_repro_targets()) {
                        const ReproOutcome outcome = run_repro(t, opts);
                        print_repro_table(outcome);
                        all_pass = all_pass && outcome.pass();
                    }
                } else {
                    const auto t = parse_repro_target(target);
                    if (!t) throw std::runtime_error("unknown repro target " + target);
                    const ReproOutcome outcome = run_repro(*t, opts);
                    print_repro_table(outcome);
                    all_pass = outcome.pass();
                }
                return all_pass ? kExitOk : kExitCheckFailed;
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        return run();
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
}
