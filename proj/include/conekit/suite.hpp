#pragma once

#include "conekit/decone.hpp"
#include "conekit/filters.hpp"
#include "conekit/gh.hpp"
#include "conekit/io.hpp"
#include "conekit/metric_space.hpp"
#include "conekit/slowuf.hpp"
#include "conekit/ultralimit.hpp"

#include <chrono>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace conekit {

struct RunConfig {
    Int horizon = 1000000;
    unsigned parts = 10;                       // N for the de-cone build
    Rat eps = Rat(1, 1000000);
    std::vector<Rat> Ls = {Rat(2), Rat(3, 2), Rat(5, 4), Rat(9, 8)};
    unsigned seed = 2024;
    std::string output_dir;
};

inline void validate_config(const RunConfig& cfg) {
    if (cfg.horizon < 1000) throw std::invalid_argument("config: horizon >= 1000 required");
    if (cfg.parts < 2) throw std::invalid_argument("config: parts N >= 2 required");
    if (cfg.eps <= 0) throw std::invalid_argument("config: eps must be positive");
    for (const Rat& L : cfg.Ls)
        if (L <= 1) throw std::invalid_argument("config: every L must exceed 1");
}

struct CriterionResult {
    std::string id;
    std::string status;  // pass | fail | undetermined
    json witnesses = json::object();
    double elapsed_s = 0.0;
};

struct SuiteReport {
    std::vector<CriterionResult> results;

    bool all_pass() const {
        for (const auto& r : results)
            if (r.status != "pass") return false;
        return true;
    }

    // Canonical machine report; timings live only in the human summary so
    // that identical configurations yield byte-identical reports.
    json to_json() const {
        json arr = json::array();
        for (const auto& r : results)
            arr.push_back(json{{"id", r.id}, {"status", r.status}, {"witnesses", r.witnesses}});
        return arr;
    }

    std::string human_summary() const {
        std::ostringstream os;
        for (const auto& r : results) {
            os << (r.status == "pass" ? "PASS" : (r.status == "fail" ? "FAIL" : "UNDET"))
               << "  " << r.id << "  (" << r.elapsed_s << " s, approximate)\n";
        }
        os << (all_pass() ? "all criteria passed\n" : "SOME CRITERIA FAILED\n");
        return os.str();
    }
};

namespace suite_detail {

// 10-point rational metric space with all pairwise distances distinct,
// drawn from [3/4, 7/5]: any two values a,b,c in that window satisfy
// a <= b + c, so the triangle inequality is automatic, and distinct
// distances keep every point's profile unique.
inline FiniteMetricSpace make_test_space(std::mt19937& rng, std::size_t n) {
    FiniteMetricSpace Y;
    Y.points.push_back("e");
    for (std::size_t i = 1; i < n; ++i) Y.points.push_back("p" + std::to_string(i));
    Y.basepoint = 0;
    Y.dist.assign(n, std::vector<Rat>(n, Rat(0)));
    std::vector<long> nums;
    for (long v = 4800; v < 8960; ++v) nums.push_back(v);
    std::shuffle(nums.begin(), nums.end(), rng);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Rat d(nums[k++], 6400);
            Y.dist[i][j] = Y.dist[j][i] = d;
        }
    return Y;
}

// Small random space for the GH sandwich corpus; distances in [1, 2].
inline FiniteMetricSpace small_random_space(std::mt19937& rng, std::size_t n) {
    FiniteMetricSpace S;
    for (std::size_t i = 0; i < n; ++i) S.points.push_back("q" + std::to_string(i));
    S.basepoint = 0;
    S.dist.assign(n, std::vector<Rat>(n, Rat(0)));
    std::uniform_int_distribution<long> num(64, 128);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Rat d(num(rng), 64);
            S.dist[i][j] = S.dist[j][i] = d;
        }
    return S;
}

inline IndexSet random_thin_set(std::mt19937& rng) {
    std::uniform_int_distribution<int> len(16, 24), start(1, 10), bump(0, 3);
    int n = len(rng);
    std::vector<Int> e;
    Int a = start(rng);
    for (int k = 0; k < n; ++k) {
        e.push_back(a);
        a *= (k + 3 + bump(rng));  // growth factor k+3.. makes a_k/a_{k+1} -> 0
    }
    Int h = e.back();
    return IndexSet(std::move(e), h);
}

inline IndexSet random_fast_set(std::mt19937& rng, const Int& horizon) {
    std::uniform_int_distribution<int> kind(0, 3), coef(1, 5);
    switch (kind(rng)) {
        case 0: {  // c * k^2
            int c = coef(rng);
            std::vector<Int> e;
            for (Int k = 1; c * k * k <= horizon; ++k) e.push_back(c * k * k);
            return IndexSet(std::move(e), horizon);
        }
        case 1: {  // c * k^3
            int c = coef(rng);
            std::vector<Int> e;
            for (Int k = 1; c * k * k * k <= horizon; ++k) e.push_back(c * k * k * k);
            return IndexSet(std::move(e), horizon);
        }
        case 2: {  // k^2 + k
            std::vector<Int> e;
            for (Int k = 1; k * k + k <= horizon; ++k) e.push_back(k * k + k);
            return IndexSet(std::move(e), horizon);
        }
        default:
            // base fixed at 2: higher bases leave < 16 elements below 10^6
            return powers_set(2, horizon);
    }
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

}  // namespace suite_detail

// --- Criterion 1: exact de-cone embedding -----------------------------------
inline CriterionResult criterion_exact_embedding(const RunConfig& cfg) {
    suite_detail::Timer t;
    CriterionResult res{"c1_exact_embedding", "pass"};
    if (cfg.parts < 3) {
        res.status = "pass";
        res.witnesses["warning"] = "N < 3: only the degenerate part exists, vacuous";
        return res;
    }
    std::mt19937 rng(cfg.seed);
    FiniteMetricSpace Y = suite_detail::make_test_space(rng, 10);
    unsigned N = std::max(cfg.parts, 3u);
    DeconeSpace X = build_decone(Y, N);
    unsigned worst_n0 = 2;
    for (std::size_t y1 = 0; y1 < Y.size() && res.status == "pass"; ++y1)
        for (std::size_t y2 = y1 + 1; y2 < Y.size(); ++y2) {
            // smallest n0 with exact agreement for all n in [n0, N]
            unsigned n0 = N + 1;
            for (unsigned n = N; n >= 2; --n) {
                std::size_t a = embed_phi(X, Y, y1, n);
                std::size_t b = embed_phi(X, Y, y2, n);
                bool embedded = (y1 == Y.basepoint || a != X.base.basepoint) &&
                                (y2 == Y.basepoint || b != X.base.basepoint);
                if (embedded && X.base.d(a, b) == Rat(X.alpha[n]) * Y.d(y1, y2)) n0 = n;
                else break;
            }
            if (n0 > N) {
                res.status = "fail";
                res.witnesses["pair"] = json::array({Y.points[y1], Y.points[y2]});
                break;
            }
            worst_n0 = std::max(worst_n0, n0);
        }
    res.witnesses["worst_n0"] = worst_n0;
    res.elapsed_s = t.elapsed();
    res.witnesses["within_runtime"] = res.elapsed_s < 5.0;
    if (res.elapsed_s >= 5.0) res.status = "fail";
    return res;
}

// --- Criterion 2: GH convergence --------------------------------------------
inline CriterionResult criterion_gh_convergence(const RunConfig& cfg) {
    suite_detail::Timer t;
    CriterionResult res{"c2_gh_convergence", "pass"};
    if (cfg.parts < 3) {
        res.witnesses["warning"] = "N < 3: vacuous";
        return res;
    }
    std::mt19937 rng(cfg.seed);
    FiniteMetricSpace Y = suite_detail::make_test_space(rng, 10);
    unsigned N = std::max(cfg.parts, 3u);
    DeconeSpace X = build_decone(Y, N);
    Rat R = Y.diameter();
    Rat dmin = Y.min_nonzero_distance();
    std::vector<unsigned> schedule;
    for (unsigned n = 3; n <= N; ++n) schedule.push_back(n);
    auto rows = verify_convergence(Y, X, R, schedule);
    json rws = json::array();
    for (const auto& row : rows) {
        // covered <=> ln n >= R and 1/ln n <= dmin, decided by enclosures
        auto upper_ok = certified_ge(R, [&](unsigned tm) { return log_enclosure(Rat(row.n), tm); });
        bool covered = false;
        if (upper_ok && !*upper_ok) {  // R < ln n certified
            auto lower_ok = certified_le(dmin * Rat(1), [&](unsigned tm) {
                RatInterval L = log_enclosure(Rat(row.n), tm);
                return RatInterval{Rat(1) / L.hi, Rat(1) / L.lo};  // encloses 1/ln n
            });
            covered = lower_ok && !*lower_ok;  // 1/ln n < dmin certified
        }
        if (covered && row.gh_upper_bound != 0) res.status = "fail";
        rws.push_back(json{{"n", row.n},
                           {"gh_upper", to_string(row.gh_upper_bound)},
                           {"window_covers", covered}});
    }
    res.witnesses["rows"] = std::move(rws);
    res.elapsed_s = t.elapsed();
    res.witnesses["within_runtime"] = res.elapsed_s < 30.0;
    if (res.elapsed_s >= 30.0) res.status = "fail";
    return res;
}

// --- Criterion 3: case trichotomy bounds ------------------------------------
inline CriterionResult criterion_case_bounds(const RunConfig& cfg) {
    suite_detail::Timer t;
    CriterionResult res{"c3_case_bounds", "pass"};
    if (cfg.parts < 4) {
        res.witnesses["warning"] = "N < 4: no interior scales, vacuous";
        return res;
    }
    std::mt19937 rng(cfg.seed);
    FiniteMetricSpace Y = suite_detail::make_test_space(rng, 10);
    unsigned N = std::max(cfg.parts, 4u);
    DeconeSpace X = build_decone(Y, N);
    json checked = json::array();
    for (unsigned n = 3; n + 1 <= N; ++n) {
        Verdict v = check_case_bounds(X, n);
        checked.push_back(json{{"n", n}, {"verdict", to_string(v.kind)}});
        if (!v.is_holds()) res.status = v.is_fails() ? "fail" : "undetermined";
    }
    res.witnesses["scales"] = std::move(checked);
    res.elapsed_s = t.elapsed();
    return res;
}

// --- Criterion 4: thin/fast suite -------------------------------------------
inline CriterionResult criterion_thin_fast(const RunConfig& cfg) {
    suite_detail::Timer t;
    CriterionResult res{"c4_thin_fast", "pass"};
    TailTestConfig tcfg;
    Int H = std::max(cfg.horizon, Int(1000000));  // the criterion is pinned at 10^6

    IndexSet pow2 = powers_set(2, H);
    Verdict f = is_fast(pow2, tcfg), th = is_thin(pow2, tcfg);
    res.witnesses["pow2_fast"] = to_string(f.kind);
    res.witnesses["pow2_thin"] = to_string(th.kind);
    if (!f.is_holds() || !th.is_fails()) res.status = "fail";

    IndexSet fact = factorial_set(1, 15);  // rule-backed, exceeds the listed horizon
    IndexSet p2nsq = powers2_nsq_set(6);
    res.witnesses["factorial_thin"] = to_string(is_thin(fact, tcfg).kind);
    res.witnesses["pow2_nsq_thin"] = to_string(is_thin(p2nsq, tcfg).kind);
    if (!is_thin(fact, tcfg).is_holds() || !is_thin(p2nsq, tcfg).is_holds()) res.status = "fail";

    std::mt19937 rng(cfg.seed + 4);
    int thin_fails = 0;
    for (int i = 0; i < 100; ++i) {
        IndexSet A = suite_detail::random_thin_set(rng);
        if (!is_thin(A, tcfg).is_holds() || is_fast(A, tcfg).is_fails()) ++thin_fails;
    }
    res.witnesses["thin_corpus_failures"] = thin_fails;
    if (thin_fails > 0) res.status = "fail";

    int union_fails = 0;
    for (int i = 0; i < 100; ++i) {
        IndexSet A = suite_detail::random_fast_set(rng, H);
        IndexSet B = suite_detail::random_fast_set(rng, H);
        if (!is_fast(A, tcfg).is_holds() || !is_fast(B, tcfg).is_holds()) { ++union_fails; continue; }
        if (union_preserves_fast(A, B, tcfg).is_fails()) ++union_fails;
    }
    res.witnesses["union_corpus_failures"] = union_fails;
    if (union_fails > 0) res.status = "fail";

    res.elapsed_s = t.elapsed();
    res.witnesses["within_runtime"] = res.elapsed_s < 10.0;
    if (res.elapsed_s >= 10.0) res.status = "fail";
    return res;
}

// --- Criterion 5: interval ratio bounds -------------------------------------
inline CriterionResult criterion_interval_bounds(const RunConfig& cfg) {
    suite_detail::Timer t;
    CriterionResult res{"c5_interval_bounds", "pass"};
    IndexSet A = factorial_set(3, 12);
    json per_l = json::array();
    for (const Rat& L : cfg.Ls) {
        IntervalSystem sys = make_intervals(A, L);
        RatioReport r1 = verify_not_fast(sys, A);
        RatioReport r2 = verify_complement_not_fast(sys, A);
        per_l.push_back(json{{"L", to_string(L)},
                             {"dropped", sys.dropped},
                             {"not_fast", to_string(r1.verdict.kind)},
                             {"complement_not_fast", to_string(r2.verdict.kind)},
                             {"witnesses", r1.witnesses.size() + r2.witnesses.size()}});
        if (!r1.verdict.is_holds() || !r2.verdict.is_holds()) res.status = "fail";
    }
    res.witnesses["per_L"] = std::move(per_l);
    res.elapsed_s = t.elapsed();
    res.witnesses["within_runtime"] = res.elapsed_s < 5.0;
    if (res.elapsed_s >= 5.0) res.status = "fail";
    return res;
}

// --- Criterion 6: bi-Lipschitz sweep ----------------------------------------
inline CriterionResult criterion_bilipschitz(const RunConfig& cfg) {
    suite_detail::Timer t;
    CriterionResult res{"c6_bilipschitz", "pass"};
    IndexSet A = factorial_set(3, 12);
    std::mt19937 rng(cfg.seed + 6);
    FiniteMetricSpace S = suite_detail::small_random_space(rng, 6);
    SeedSequence x;
    x.space = &S;
    std::uniform_int_distribution<std::size_t> pick(1, S.size() - 1);
    for (const Int& a : A.to_elems()) x.at_seed[a] = pick(rng);

    std::vector<Rat> sweep = cfg.Ls;
    std::sort(sweep.begin(), sweep.end(), std::greater<Rat>());  // decreasing L
    json per_l = json::array();
    Rat prev_worst;
    bool have_prev = false;
    for (const Rat& L : sweep) {
        IntervalSystem sys = make_intervals(A, L);
        BilipschitzReport rep = verify_bilipschitz(x, sys, S);
        per_l.push_back(json{{"L", to_string(L)},
                             {"verdict", to_string(rep.verdict.kind)},
                             {"worst_ratio", to_string(rep.worst_ratio)}});
        if (!rep.verdict.is_holds()) res.status = "fail";
        if (have_prev && rep.worst_ratio > prev_worst) res.status = "fail";  // must not increase
        prev_worst = rep.worst_ratio;
        have_prev = true;
    }
    res.witnesses["sweep"] = std::move(per_l);
    res.elapsed_s = t.elapsed();
    return res;
}

// --- Criterion 7: pushforward and bounded accumulation ----------------------
inline CriterionResult criterion_accumulation(const RunConfig& cfg) {
    suite_detail::Timer t;
    (void)cfg;
    CriterionResult res{"c7_accumulation", "pass"};

    std::vector<Rat> fact_alpha;
    for (unsigned n = 1; n <= 60; ++n) fact_alpha.push_back(Rat(factorial(n)));
    BoundedAccumulation ba = bounded_accumulation(fact_alpha);
    res.witnesses["factorial"] = json{{"verdict", to_string(ba.verdict.kind)},
                                      {"witness", int_to_json(ba.witness)}};
    if (!ba.verdict.is_holds() || ba.witness != 1) res.status = "fail";

    std::vector<Rat> sqrt_alpha;  // floor equals isqrt(n)
    for (long n = 1; n <= 10000; ++n) sqrt_alpha.push_back(Rat(isqrt(Int(n))) + Rat(1, 2));
    BoundedAccumulation bs = bounded_accumulation(sqrt_alpha);
    res.witnesses["sqrt"] = to_string(bs.verdict.kind);
    if (!bs.verdict.is_fails()) res.status = "fail";

    // |S_r| = 2 instance: alpha_n = ceil(n/2)
    std::vector<Rat> half_alpha;
    for (long n = 1; n <= 12; ++n) half_alpha.push_back(Rat((n + 1) / 2));
    IndexSet T = IndexSet::full(12);
    auto pieces = split_bounded(T, half_alpha, 2);
    FloorScaling fs = floor_scaling(half_alpha);
    bool ok = unite(pieces[0], pieces[1]) == T && intersect(pieces[0], pieces[1]).empty_set();
    for (const auto& kv : fs.level_sizes()) {
        for (const auto& p : pieces)
            if (intersect(p, fs.level_set(kv.first)).count() > 1) ok = false;
    }
    res.witnesses["split_ok"] = ok;
    if (!ok) res.status = "fail";

    res.elapsed_s = t.elapsed();
    return res;
}

// --- Criterion 8: mu-limit dichotomy + bounded perturbation -----------------
inline CriterionResult criterion_mu_limit(const RunConfig& cfg) {
    suite_detail::Timer t;
    CriterionResult res{"c8_mu_limit", "pass"};
    const long H = 2000;
    ValueSequence alt;
    for (long n = 1; n <= H; ++n) alt.values.push_back(n % 2 == 0 ? Rat(1) : Rat(-1));

    auto evens = indexset_from_rule("evens", Int(H));
    auto odds = indexset_from_rule("odds", Int(H));
    FilterBase even_base = make_filter_base({evens}, Int(H));
    FilterBase odd_base = make_filter_base({odds}, Int(H));
    LimitResult le = mu_limit(alt, even_base, cfg.eps);
    LimitResult lo = mu_limit(alt, odd_base, cfg.eps);
    res.witnesses["evens_limit"] = le.determined ? to_string(le.value) : std::string("undetermined");
    res.witnesses["odds_limit"] = lo.determined ? to_string(lo.value) : std::string("undetermined");
    if (!le.determined || le.value != 1 || !lo.determined || lo.value != -1) res.status = "fail";

    FilterBase cofinite = make_filter_base({IndexSet::full(Int(H))}, Int(H));
    std::mt19937 rng(cfg.seed + 8);
    std::uniform_int_distribution<long> cnum(-128, 128), knum(1, 5);
    int failures = 0;
    for (int i = 0; i < 200; ++i) {
        Rat c(cnum(rng), 64);
        long K = knum(rng);
        ValueSequence x, alpha, beta;
        std::uniform_int_distribution<long> beta_num(-32, 32);  // |beta| <= 1/2
        for (long n = 1; n <= H; ++n) {
            Rat a = Rat(K) * Rat(n) * Rat(n);
            alpha.values.push_back(a);
            x.values.push_back(c * a);
            beta.values.push_back(Rat(beta_num(rng), 64));
        }
        if (!check_bounded_add(x, alpha, beta, cofinite, cfg.eps).is_holds()) ++failures;
    }
    res.witnesses["bounded_add_failures"] = failures;
    if (failures > 0) res.status = "fail";
    res.elapsed_s = t.elapsed();
    return res;
}

// --- Criterion 9: GH oracle sandwich ----------------------------------------
inline CriterionResult criterion_gh_sandwich(const RunConfig& cfg) {
    suite_detail::Timer t;
    CriterionResult res{"c9_gh_sandwich", "pass"};
    std::mt19937 rng(cfg.seed + 9);
    std::uniform_int_distribution<std::size_t> sz(1, 5);
    int sandwich_failures = 0;
    for (int i = 0; i < 200; ++i) {
        FiniteMetricSpace A = suite_detail::small_random_space(rng, sz(rng));
        FiniteMetricSpace B = suite_detail::small_random_space(rng, sz(rng));
        Rat lo = gh_lower(A, B), ex = gh_exact(A, B), up = gh_upper(A, B);
        if (!(lo <= ex && ex <= up)) ++sandwich_failures;
    }
    res.witnesses["sandwich_failures"] = sandwich_failures;
    if (sandwich_failures > 0) res.status = "fail";

    std::uniform_int_distribution<std::size_t> sz4(2, 4);
    int metric_failures = 0;
    for (int i = 0; i < 50; ++i) {
        FiniteMetricSpace A = suite_detail::small_random_space(rng, sz4(rng));
        FiniteMetricSpace B = suite_detail::small_random_space(rng, sz4(rng));
        FiniteMetricSpace C = suite_detail::small_random_space(rng, sz4(rng));
        if (gh_exact(A, B) != gh_exact(B, A)) ++metric_failures;
        if (gh_exact(A, C) > gh_exact(A, B) + gh_exact(B, C)) ++metric_failures;
    }
    res.witnesses["metric_failures"] = metric_failures;
    if (metric_failures > 0) res.status = "fail";
    res.elapsed_s = t.elapsed();
    return res;
}

// ---------------------------------------------------------------------------

inline std::vector<CriterionResult> run_criteria(const RunConfig& cfg) {
    return {criterion_exact_embedding(cfg), criterion_gh_convergence(cfg),
            criterion_case_bounds(cfg),     criterion_thin_fast(cfg),
            criterion_interval_bounds(cfg), criterion_bilipschitz(cfg),
            criterion_accumulation(cfg),    criterion_mu_limit(cfg),
            criterion_gh_sandwich(cfg)};
}

// Runs every acceptance criterion; criterion 10 (determinism) re-runs the
// whole battery and byte-compares the canonical reports.
inline SuiteReport run_suite(const RunConfig& cfg) {
    validate_config(cfg);
    SuiteReport rep;
    rep.results = run_criteria(cfg);

    suite_detail::Timer t;
    CriterionResult det{"c10_determinism", "pass"};
    SuiteReport second;
    second.results = run_criteria(cfg);
    std::string a = SuiteReport{rep.results}.to_json().dump();
    std::string b = second.to_json().dump();
    det.witnesses["byte_identical"] = (a == b);
    if (a != b) det.status = "fail";
    det.elapsed_s = t.elapsed();
    rep.results.push_back(std::move(det));
    return rep;
}

}  // namespace conekit
