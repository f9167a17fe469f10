// conekit command-line surface: decone / fastset / slowuf / ghdist / limit / suite.
#include "conekit/decone.hpp"
#include "conekit/filters.hpp"
#include "conekit/gh.hpp"
#include "conekit/io.hpp"
#include "conekit/slowuf.hpp"
#include "conekit/suite.hpp"
#include "conekit/ultralimit.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace conekit;

std::vector<Rat> parse_rat_list(const std::string& csv) {
    std::vector<Rat> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_rational(tok));
    return out;
}

std::pair<unsigned, unsigned> parse_schedule(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) throw std::invalid_argument("schedule must look like 3..N");
    return {static_cast<unsigned>(std::stoul(s.substr(0, dots))),
            static_cast<unsigned>(std::stoul(s.substr(dots + 2)))};
}

json decone_to_json(const DeconeSpace& X) {
    json j;
    j["space"] = space_to_json(X.base);
    j["part"] = X.part;
    j["N"] = X.N;
    return j;
}

int cmd_decone_build(const std::string& space_path, unsigned parts, const std::string& out) {
    FiniteMetricSpace Y = space_from_json(load_json_file(space_path));
    DeconeSpace X = build_decone(Y, parts);
    save_json_file(out, decone_to_json(X));
    std::cout << "wrote " << out << " (" << X.base.size() << " points)\n";
    return 0;
}

int cmd_decone_verify(const std::string& space_path, unsigned parts, const std::string& radius,
                      const std::string& schedule, const std::string& out) {
    FiniteMetricSpace Y = space_from_json(load_json_file(space_path));
    DeconeSpace X = build_decone(Y, parts);
    Rat R = radius.empty() ? Y.diameter() : parse_rational(radius);
    auto [lo, hi] = parse_schedule(schedule);
    std::vector<unsigned> sched;
    for (unsigned n = lo; n <= hi && n <= parts; ++n) sched.push_back(n);
    auto rows = verify_convergence(Y, X, R, sched);
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot write " + out);
    os << "n,gh_upper,window_lo,window_hi\n";
    for (const auto& r : rows)
        os << r.n << "," << to_string(r.gh_upper_bound) << "," << to_string(r.window_lo) << ","
           << to_string(r.window_hi) << "\n";
    std::cout << "wrote " << out << " (" << rows.size() << " rows)\n";
    return 0;
}

int cmd_fastset(const std::string& set_path, const std::string& horizon) {
    json j = load_json_file(set_path);
    if (!horizon.empty()) j["horizon"] = horizon;  // flag overrides the file's horizon
    IndexSet A = indexset_from_json(j);
    TailTestConfig cfg;
    Verdict f = is_fast(A, cfg), th = is_thin(A, cfg);
    json out{{"count", int_to_json(A.count())},
             {"horizon", int_to_json(A.horizon())},
             {"fast", json{{"verdict", to_string(f.kind)}, {"note", f.note}}},
             {"thin", json{{"verdict", to_string(th.kind)}, {"note", th.note}}}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_slowuf(const std::string& seed, unsigned max_n, const std::string& l_csv,
               const std::string& out) {
    if (seed != "factorial") throw std::invalid_argument("only the factorial seed is built in");
    if (max_n < 7) throw std::invalid_argument("--max-n must be at least 7 (thin certification)");
    IndexSet A = factorial_set(3, max_n);
    std::vector<Rat> Ls = parse_rat_list(l_csv);

    // deterministic demo sequence on a fixed 3-point ambient space
    FiniteMetricSpace S;
    S.points = {"e", "p", "q"};
    S.basepoint = 0;
    S.dist = {{Rat(0), Rat(1), Rat(2)}, {Rat(1), Rat(0), Rat(2)}, {Rat(2), Rat(2), Rat(0)}};
    SeedSequence x;
    x.space = &S;
    std::size_t turn = 1;
    for (const Int& a : A.to_elems()) {
        x.at_seed[a] = turn;
        turn = (turn == 1) ? 2 : 1;
    }

    json per_l = json::array();
    for (const Rat& L : Ls) {
        IntervalSystem sys = make_intervals(A, L);
        RatioReport r1 = verify_not_fast(sys, A);
        RatioReport r2 = verify_complement_not_fast(sys, A);
        BilipschitzReport br = verify_bilipschitz(x, sys, S);
        auto witnesses_json = [](const RatioReport& r) {
            json arr = json::array();
            for (const auto& w : r.witnesses)
                arr.push_back(json{{"a", int_to_json(w.a)},
                                   {"checkpoint", int_to_json(w.checkpoint)},
                                   {"ratio", to_string(w.ratio)},
                                   {"bound", to_string(w.bound)}});
            return arr;
        };
        per_l.push_back(json{{"L", to_string(L)},
                             {"dropped", sys.dropped},
                             {"not_fast", to_string(r1.verdict.kind)},
                             {"not_fast_witnesses", witnesses_json(r1)},
                             {"complement_not_fast", to_string(r2.verdict.kind)},
                             {"complement_witnesses", witnesses_json(r2)},
                             {"bilipschitz", to_string(br.verdict.kind)},
                             {"worst_bilipschitz_ratio", to_string(br.worst_ratio)}});
    }
    ChainReport chain = ascending_chain(A, Ls);
    json rep{{"seed", "factorial"},
             {"max_n", max_n},
             {"per_L", std::move(per_l)},
             {"ascending_chain", to_string(chain.verdict.kind)}};
    save_json_file(out, rep);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_ghdist(const std::string& a_path, const std::string& b_path, const std::string& mode,
               bool pointed) {
    FiniteMetricSpace A = space_from_json(load_json_file(a_path));
    FiniteMetricSpace B = space_from_json(load_json_file(b_path));
    json out{{"lower", to_string(gh_lower(A, B))}, {"upper", to_string(gh_upper(A, B, pointed))}};
    if (mode == "exact") out["exact"] = to_string(gh_exact(A, B, pointed));
    else if (mode != "bounds") throw std::invalid_argument("--mode must be exact or bounds");
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_limit(const std::string& seq_path, const std::string& base_path, const std::string& eps_s) {
    ValueSequence seq = valueseq_from_json(load_json_file(seq_path));
    FilterBase base = filterbase_from_json(load_json_file(base_path));
    Rat eps = parse_rational(eps_s);
    LimitResult r = mu_limit(seq, base, eps);
    json out{{"determined", r.determined}};
    if (r.determined) out["value"] = to_string(r.value);
    json cl = json::array();
    for (const Rat& c : r.clusters) cl.push_back(to_string(c));
    out["clusters"] = std::move(cl);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_suite(RunConfig cfg, const std::string& config_path) {
    if (!config_path.empty()) {
        json j = load_json_file(config_path);
        if (j.contains("horizon")) cfg.horizon = int_from_json(j["horizon"]);
        if (j.contains("parts")) cfg.parts = j["parts"].get<unsigned>();
        if (j.contains("eps")) cfg.eps = rat_from_json(j["eps"]);
        if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned>();
        if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
        if (j.contains("L")) {
            cfg.Ls.clear();
            for (const auto& l : j["L"]) cfg.Ls.push_back(rat_from_json(l));
        }
    }
    if (const char* env = std::getenv("CONEKIT_OUTPUT_DIR")) cfg.output_dir = env;

    SuiteReport rep = run_suite(cfg);
    std::cout << rep.human_summary();
    if (!cfg.output_dir.empty()) {
        std::filesystem::create_directories(cfg.output_dir);
        std::filesystem::path dir(cfg.output_dir);
        save_json_file((dir / "report.json").string(), rep.to_json());
        std::ofstream csv(dir / "report.csv");
        csv << "id,status\n";
        for (const auto& r : rep.results) csv << r.id << "," << r.status << "\n";
        std::cout << "wrote " << (dir / "report.json").string() << "\n";
    } else {
        std::cout << rep.to_json().dump(2) << "\n";
    }
    for (const auto& r : rep.results)
        if (r.status == "fail") return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-horizon asymptotic-cone toolkit"};
    app.require_subcommand(1);

    // decone
    auto* decone = app.add_subcommand("decone", "de-cone construction");
    decone->require_subcommand(1);
    std::string d_space, d_out = "X.json", d_radius, d_schedule = "3..10";
    unsigned d_parts = 10;
    auto* dbuild = decone->add_subcommand("build", "build the wedge X from Y");
    dbuild->add_option("--space", d_space, "Y.json")->required();
    dbuild->add_option("--parts", d_parts, "N, number of parts");
    dbuild->add_option("--out", d_out, "output path");
    auto* dverify = decone->add_subcommand("verify", "GH convergence report");
    dverify->add_option("--space", d_space, "Y.json")->required();
    dverify->add_option("--parts", d_parts, "N, number of parts");
    dverify->add_option("--radius", d_radius, "snapshot radius R (default: diam Y)");
    dverify->add_option("--schedule", d_schedule, "scales to check, e.g. 3..10");
    dverify->add_option("--out", d_out, "output CSV path");

    // fastset
    auto* fastset = app.add_subcommand("fastset", "fast/thin classification");
    std::string f_set, f_horizon;
    auto* fclassify = fastset->add_subcommand("classify", "classify an index set");
    fclassify->add_option("--set", f_set, "A.json")->required();
    fclassify->add_option("--horizon", f_horizon, "horizon override");
    fastset->require_subcommand(1);

    // slowuf
    auto* slowuf = app.add_subcommand("slowuf", "slow-ultrafilter interval machinery");
    slowuf->require_subcommand(1);
    std::string s_seed = "factorial", s_l = "2,3/2,5/4,9/8", s_out = "report.json";
    unsigned s_maxn = 12;
    auto* sdemo = slowuf->add_subcommand("demo", "interval system demo report");
    sdemo->add_option("--seed", s_seed, "seed family (factorial)");
    sdemo->add_option("--max-n", s_maxn, "largest n of the seed");
    sdemo->add_option("--L", s_l, "comma-separated L values");
    sdemo->add_option("--out", s_out, "output path");

    // ghdist
    auto* ghdist = app.add_subcommand("ghdist", "Gromov-Hausdorff distance oracle");
    std::string g_a, g_b, g_mode = "bounds";
    bool g_pointed = false;
    ghdist->add_option("--a", g_a, "A.json")->required();
    ghdist->add_option("--b", g_b, "B.json")->required();
    ghdist->add_option("--mode", g_mode, "exact | bounds");
    ghdist->add_flag("--pointed", g_pointed, "force basepoints to correspond");

    // limit
    auto* limit = app.add_subcommand("limit", "mu-limit evaluation");
    limit->require_subcommand(1);
    std::string l_seq, l_base, l_eps = "1/1000000";
    auto* leval = limit->add_subcommand("eval", "evaluate a mu-limit");
    leval->add_option("--seq", l_seq, "seq.json")->required();
    leval->add_option("--base", l_base, "base.json")->required();
    leval->add_option("--eps", l_eps, "cluster resolution");

    // suite
    auto* suite = app.add_subcommand("suite", "run the full acceptance suite");
    RunConfig cfg;
    std::string cfg_path, cfg_horizon, cfg_eps, cfg_l;
    suite->add_option("--config", cfg_path, "JSON config overriding flags");
    suite->add_option("--horizon", cfg_horizon, "classification horizon (>= 1000)");
    suite->add_option("--parts", cfg.parts, "N for the de-cone build");
    suite->add_option("--eps", cfg_eps, "limit resolution");
    suite->add_option("--L", cfg_l, "comma-separated L sweep");
    suite->add_option("--seed", cfg.seed, "PRNG seed");
    suite->add_option("--output-dir", cfg.output_dir, "where to write report.json/report.csv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*dbuild) return cmd_decone_build(d_space, d_parts, d_out);
        if (*dverify) return cmd_decone_verify(d_space, d_parts, d_radius, d_schedule, d_out);
        if (*fclassify) return cmd_fastset(f_set, f_horizon);
        if (*sdemo) return cmd_slowuf(s_seed, s_maxn, s_l, s_out);
        if (*ghdist) return cmd_ghdist(g_a, g_b, g_mode, g_pointed);
        if (*leval) return cmd_limit(l_seq, l_base, l_eps);
        if (*suite) {
            if (!cfg_horizon.empty()) cfg.horizon = conekit::Int(cfg_horizon);
            if (!cfg_eps.empty()) cfg.eps = conekit::parse_rational(cfg_eps);
            if (!cfg_l.empty()) cfg.Ls = parse_rat_list(cfg_l);
            return cmd_suite(cfg, cfg_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
