// Command-line verification driver. Runs the selected relation suites and
// emits a deterministic machine-readable report.
//
// Exit codes: 0 all checks pass, 1 at least one fail or sign mismatch,
// 2 usage error.

#include "CLI11.hpp"
#include "json.hpp"

#include "qsa/hopf.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <set>

using namespace qsa;
using Json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    int m = 1, n = 1;
    long trunc = 6;
    long guard = 0; // 0: derived from trunc
    std::string mode = "symbolic";
    std::uint64_t seed = 1;
    bool grading = true;
    std::vector<std::string> suites;
    std::string format = "json";
    std::string out;
};

struct Row {
    std::string suite;
    std::string relation;
    Status status = Status::Pass;
    std::string detail;
    long long millis = 0;
};

const std::vector<std::string> kAllSuites = {
    "ybe", "rmatrix-props", "rll", "drinfeld", "serre", "hopf", "negative"};

class Runner {
  public:
    Runner(const RunConfig &cfg, std::vector<Row> &rows)
        : cfg_(cfg), rows_(rows), rng_(cfg.seed) {}

    bool sampled() const { return cfg_.mode == "sampled"; }

    long rand_int(long lo, long hi) {
        return static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)) + lo;
    }

    // seeded rational evaluation of q, never 0 or a root of unity
    LaurentPoly sample_q() {
        Rat r(rand_int(2, 49), rand_int(50, 97));
        r.canonicalize();
        return LaurentPoly(r);
    }

    void add(const std::string &suite, const std::string &relation, Status st,
             const std::string &detail, long long ms) {
        rows_.push_back({suite, relation, st, detail, ms});
    }

    template <typename F> void timed(const std::string &suite,
                                     const std::string &relation, F &&f) {
        auto t0 = std::chrono::steady_clock::now();
        Status st = Status::Pass;
        std::string detail;
        try {
            CheckResult c = f();
            st = c.pass ? Status::Pass : Status::Fail;
            detail = c.detail;
        } catch (const std::exception &e) {
            st = Status::Fail;
            detail = e.what();
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        add(suite, relation, st, detail, ms);
    }

    void add_report(const std::string &suite, const VerificationReport &r,
                    long long ms_each) {
        for (const auto &c : r) add(suite, c.id, c.status, c.detail, ms_each);
    }

    template <typename F>
    VerificationReport timed_report(long long &ms_out, F &&f) {
        auto t0 = std::chrono::steady_clock::now();
        VerificationReport r = f();
        ms_out = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
        return r;
    }

    void run_ybe(const ParityStructure &ps) {
        struct FormSpec {
            YbeForm form;
            const char *name;
            bool tilde;
        };
        const FormSpec forms[] = {{YbeForm::ThetaOperator, "ybe.theta", false},
                                  {YbeForm::ComponentSigns, "ybe.component-signs", false},
                                  {YbeForm::TildePlain, "ybe.tilde", true}};
        for (const auto &fs : forms) {
            if (!sampled()) {
                timed("ybe", fs.name, [&] { return check_ybe(ps, fs.form); });
                continue;
            }
            LaurentPoly q0 = sample_q();
            timed("ybe", std::string(fs.name) + ".sampled", [&] {
                GradedMatrix base =
                    (fs.tilde ? build_rtilde(ps) : build_r(ps)).substituted(VQ, q0);
                GradedMatrix rz = base.substituted(VW, LaurentPoly(Rat(1)));
                GradedMatrix rw = rz.substituted(VZ, LaurentPoly::variable(VW));
                return check_ybe_on(base, rz, rw, ps, fs.form);
            });
        }
    }

    void run_rmatrix_props(const ParityStructure &ps) {
        GradedMatrix R = build_r(ps);
        timed("rmatrix-props", "pt-symmetry", [&] { return check_pt_symmetry(R, ps); });
        timed("rmatrix-props", "unitarity", [&] { return check_unitarity(R, ps); });
        timed("rmatrix-props", "weight-conservation",
              [&] { return check_weight_conservation(R, ps); });
        timed("rmatrix-props", "r21-is-inverse",
              [&] { return check_r21_is_inverse(ps); });
    }

    void run_rll(const ParityStructure &ps) {
        Space W = Space::fundamental(ps);
        if (sampled()) {
            LaurentPoly pa(Rat(rand_int(2, 23))), pb(Rat(rand_int(24, 47)));
            timed("rll", "LL.defining.sampled", [&] {
                return check_rll_on(eval_L(ps, pa), W, ps);
            });
            timed("rll", "hopf.L-coproduct.sampled",
                  [&] { return check_L_coproduct(ps, pa, pb); });
        } else {
            timed("rll", "LL.defining", [&] { return check_rll_def(ps); });
            timed("rll", "hopf.L-coproduct", [&] { return check_L_coproduct(ps); });
        }
        long long ms = 0;
        auto ded = timed_report(ms, [&] {
            VerificationReport r;
            for (auto &[label, c] : check_rll_deduced(ps))
                r.push_back({"LL.deduced." + label,
                             c.pass ? Status::Pass : Status::Fail, c.detail});
            return r;
        });
        add_report("rll", ded, ms / std::max<long long>(1, static_cast<long long>(ded.size())));
        timed("rll", "hopf.L-counit", [&] { return check_L_counit(ps); });
        timed("rll", "hopf.L-antipode", [&] { return check_L_antipode(ps); });
        timed("rll", "L-rescaling", [&] { return check_L_rescaling(ps); });
    }

    void run_drinfeld(const ParityStructure &ps) {
        long long ms = 0;
        if (!cfg_.grading) {
            // grading off: rerun the sign-sensitive families and record the
            // observed statuses verbatim (failures expected); the check takes
            // the graded structure and strips the parities itself
            auto r = timed_report(ms, [&] {
                return negative_check_grading_off(
                    ParityStructure{cfg_.m, cfg_.n, true}, cfg_.trunc);
            });
            add_report("drinfeld", r, 0);
            return;
        }
        auto r = timed_report(ms, [&] {
            return (ps.m == 1 && ps.n == 1)
                       ? check_definition_gl11(std::max(cfg_.trunc, 8L))
                       : check_definition_glmn(ps, cfg_.trunc);
        });
        add_report("drinfeld", r, 0);
    }

    void run_serre(const ParityStructure &ps) {
        long long ms = 0;
        auto r = timed_report(ms, [&] { return check_serre(ps, cfg_.trunc); });
        add_report("serre", r, 0);
    }

    void run_hopf(const ParityStructure &ps) {
        long long ms = 0;
        auto r = timed_report(ms, [&] { return check_hopf_axioms(ps); });
        add_report("hopf", r, 0);
        if (ps.m == 1 && ps.n == 1) {
            auto r2 = timed_report(ms, [&] { return check_homomorphism_gl11(); });
            add_report("hopf", r2, 0);
        }
        if (ps.dim() <= 3) {
            auto r3 = timed_report(
                ms, [&] { return rep_homomorphism_check(ps, cfg_.trunc); });
            add_report("hopf", r3, 0);
        }
    }

    void run_negative(const ParityStructure &ps) {
        // pattern check: the two-site anticommutators must fail with the
        // grading off, everything else must still pass
        long long ms = 0;
        auto r = timed_report(
            ms, [&] { return negative_check_grading_off(ps, cfg_.trunc); });
        for (const auto &c : r) {
            bool expect_fail =
                c.id.find("two-site.XX.anticommutator") != std::string::npos;
            bool as_expected =
                expect_fail ? c.status == Status::Fail : c.status == Status::Pass;
            add("negative",
                c.id + (expect_fail ? ".expected-fail" : ".expected-pass"),
                as_expected ? Status::Pass : Status::Fail,
                as_expected ? "" : ("observed " + std::string(status_name(c.status)) +
                                    " " + c.detail),
                0);
        }
    }

  private:
    const RunConfig &cfg_;
    std::vector<Row> &rows_;
    std::mt19937_64 rng_;
};

Json emit_json(const RunConfig &cfg, const std::vector<Row> &rows) {
    Json j;
    Json cj;
    cj["m"] = cfg.m;
    cj["n"] = cfg.n;
    cj["trunc"] = cfg.trunc;
    cj["guard"] = cfg.guard;
    cj["mode"] = cfg.mode;
    cj["seed"] = cfg.seed;
    cj["grading"] = cfg.grading ? "on" : "off";
    cj["suites"] = cfg.suites;
    if (cfg.mode == "sampled")
        cj["note"] = "sampled evaluation applies to ybe and rll; "
                     "drinfeld, serre, hopf and negative always run exact";
    j["config"] = cj;
    Json checks = Json::array();
    long pass = 0, fail = 0, mismatch = 0, skipped = 0;
    for (const auto &r : rows) {
        Json c;
        c["id"] = r.suite + "/" + r.relation;
        c["relation"] = r.relation;
        c["status"] = status_name(r.status);
        if (!r.detail.empty()) c["counterexample"] = r.detail;
        // symbolic reports are byte-identical across runs, so wall times are
        // only recorded in sampled mode
        c["millis"] = cfg.mode == "symbolic" ? 0 : r.millis;
        checks.push_back(std::move(c));
        switch (r.status) {
        case Status::Pass: ++pass; break;
        case Status::Fail: ++fail; break;
        case Status::SignMismatch: ++mismatch; break;
        case Status::Skipped: ++skipped; break;
        }
    }
    j["checks"] = std::move(checks);
    j["summary"] = {{"pass", pass},
                    {"fail", fail},
                    {"mismatch", mismatch},
                    {"skipped", skipped}};
    return j;
}

std::string emit_text(const RunConfig &cfg, const std::vector<Row> &rows) {
    std::string out = "suite run: m=" + std::to_string(cfg.m) +
                      " n=" + std::to_string(cfg.n) +
                      " trunc=" + std::to_string(cfg.trunc) + " mode=" + cfg.mode +
                      (cfg.grading ? "" : " grading=off") + "\n";
    long pass = 0, fail = 0, mismatch = 0, skipped = 0;
    for (const auto &r : rows) {
        out += "  [" + std::string(status_name(r.status)) + "] " + r.suite + "/" +
               r.relation + " (" + std::to_string(r.millis) + " ms)" +
               (r.detail.empty() ? "" : "  " + r.detail) + "\n";
        switch (r.status) {
        case Status::Pass: ++pass; break;
        case Status::Fail: ++fail; break;
        case Status::SignMismatch: ++mismatch; break;
        case Status::Skipped: ++skipped; break;
        }
    }
    out += "summary: pass=" + std::to_string(pass) + " fail=" + std::to_string(fail) +
           " mismatch=" + std::to_string(mismatch) +
           " skipped=" + std::to_string(skipped) + "\n";
    return out;
}

} // namespace

int main(int argc, char **argv) {
    RunConfig cfg;
    CLI::App app{"exact verification suites for the graded exchange algebra"};
    app.add_option("suites", cfg.suites,
                   "suites to run (default: all): ybe rmatrix-props rll drinfeld "
                   "serre hopf negative");
    app.add_option("--m", cfg.m, "number of even basis states");
    app.add_option("--n", cfg.n, "number of odd basis states");
    app.add_option("--trunc", cfg.trunc, "comparison window half-width");
    app.add_option("--guard", cfg.guard, "construction window half-width");
    app.add_option("--mode", cfg.mode, "symbolic | sampled")
        ->check(CLI::IsMember({"symbolic", "sampled"}));
    app.add_option("--seed", cfg.seed, "sampled-mode seed");
    app.add_flag_callback("--no-grading", [&] { cfg.grading = false; },
                          "force all parities even");
    app.add_option("--format", cfg.format, "json | text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", cfg.out, "write the report to a file");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    if (cfg.suites.empty()) cfg.suites = kAllSuites;
    std::set<std::string> known(kAllSuites.begin(), kAllSuites.end());
    for (const auto &s : cfg.suites)
        if (!known.count(s)) {
            std::cerr << "unknown suite: " << s << "\n";
            return 2;
        }
    if (cfg.guard == 0) cfg.guard = guard_for(cfg.trunc);
    if (cfg.m < 1 || cfg.n < 1 || cfg.m + cfg.n > 5 || cfg.trunc < 4 ||
        cfg.guard < cfg.trunc) {
        std::cerr << "invalid configuration: need m, n >= 1, m + n <= 5, "
                     "trunc >= 4, guard >= trunc\n";
        return 2;
    }

    ParityStructure ps{cfg.m, cfg.n, cfg.grading};
    std::vector<Row> rows;
    Runner run(cfg, rows);
    std::set<std::string> chosen(cfg.suites.begin(), cfg.suites.end());
    // dependency order: R-matrix suites before RLL before the current algebra
    if (chosen.count("ybe")) run.run_ybe(ps);
    if (chosen.count("rmatrix-props")) run.run_rmatrix_props(ps);
    if (chosen.count("rll")) run.run_rll(ps);
    if (chosen.count("drinfeld")) run.run_drinfeld(ps);
    if (chosen.count("serre")) run.run_serre(ps);
    if (chosen.count("hopf")) run.run_hopf(ps);
    if (chosen.count("negative")) run.run_negative(ParityStructure{cfg.m, cfg.n, true});

    std::stable_sort(rows.begin(), rows.end(), [](const Row &a, const Row &b) {
        return std::tie(a.suite, a.relation) < std::tie(b.suite, b.relation);
    });

    std::string payload = cfg.format == "json"
                              ? emit_json(cfg, rows).dump(2) + "\n"
                              : emit_text(cfg, rows);
    if (!cfg.out.empty()) {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) {
            std::cerr << "cannot open output file: " << cfg.out << "\n";
            return 2;
        }
        f << payload;
    } else {
        std::cout << payload;
    }

    for (const auto &r : rows)
        if (r.status == Status::Fail || r.status == Status::SignMismatch) return 1;
    return 0;
}
