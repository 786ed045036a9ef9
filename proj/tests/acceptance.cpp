// End-to-end acceptance gate: one pass/fail line per criterion, nonzero exit
// if any criterion fails.

#include "qsa/hopf.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace qsa;

namespace {

int g_failures = 0;

void criterion(int num, const std::string &what, bool ok,
               const std::string &note = "") {
    std::cout << "criterion " << num << " [" << (ok ? "pass" : "FAIL") << "] "
              << what << (note.empty() ? "" : " (" + note + ")") << std::endl;
    if (!ok) ++g_failures;
}

const std::vector<ParityStructure> kShapes = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};

bool all_pass(const VerificationReport &r, std::string *bad = nullptr) {
    for (const auto &c : r)
        if (c.status == Status::Fail || c.status == Status::SignMismatch) {
            if (bad) *bad = c.id + ": " + status_name(c.status) + " " + c.detail;
            return false;
        }
    return !r.empty();
}

// the relation suite verdict with the one documented deviation: the printed
// sign of the diagonal mixed family flips at the even nodes below the
// fermionic one, and those instances must be flagged as sign mismatches
bool expected_pattern(const VerificationReport &r, const ParityStructure &ps,
                      const std::string &prefix, std::string *bad) {
    if (r.empty()) return false;
    for (const auto &c : r) {
        bool low_diag = false;
        for (int i = 1; i < ps.m; ++i)
            if (c.id == prefix + "D3.XX.mixed." + std::to_string(i) + std::to_string(i))
                low_diag = true;
        bool ok = low_diag ? c.status == Status::SignMismatch
                           : (c.status == Status::Pass || c.status == Status::Skipped);
        if (!ok) {
            if (bad) *bad = c.id + ": " + status_name(c.status) + " " + c.detail;
            return false;
        }
    }
    return true;
}

std::map<std::string, Status> verdicts(const VerificationReport &r) {
    std::map<std::string, Status> m;
    for (const auto &c : r) m[c.id] = c.status;
    return m;
}

Status status_of(const VerificationReport &r, const std::string &id) {
    for (const auto &c : r)
        if (c.id == id) return c.status;
    return Status::Fail;
}

bool has_id_with(const VerificationReport &r, const std::string &needle) {
    for (const auto &c : r)
        if (c.id.find(needle) != std::string::npos) return true;
    return false;
}

std::string slurp(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

int main() {
    using clock = std::chrono::steady_clock;

    // 1: the exchange consistency equation in all three sign conventions
    {
        auto t0 = clock::now();
        bool ok = true;
        std::string bad;
        for (const auto &ps : kShapes)
            for (auto form : {YbeForm::ThetaOperator, YbeForm::ComponentSigns,
                              YbeForm::TildePlain}) {
                CheckResult c = check_ybe(ps, form);
                if (!c.pass) { ok = false; bad = c.detail; }
            }
        double secs = std::chrono::duration<double>(clock::now() - t0).count();
        criterion(1, "exchange consistency, 3 forms x 4 shapes", ok && secs < 120.0,
                  bad.empty() ? std::to_string(secs) + " s" : bad);
    }

    // 2: PT symmetry and unitarity
    {
        bool ok = true;
        std::string bad;
        for (const auto &ps : kShapes) {
            GradedMatrix R = build_r(ps);
            for (CheckResult c : {check_pt_symmetry(R, ps), check_unitarity(R, ps)})
                if (!c.pass) { ok = false; bad = c.detail; }
        }
        criterion(2, "PT symmetry and unitarity, 4 shapes", ok, bad);
    }

    // 3: the defining exchange equation and the seven deduced ones
    {
        bool ok = true;
        std::string bad;
        for (ParityStructure ps : {ParityStructure{1, 1}, ParityStructure{2, 1}}) {
            CheckResult d = check_rll_def(ps);
            if (!d.pass) { ok = false; bad = d.detail; }
            auto ded = check_rll_deduced(ps);
            if (ded.size() != 7) { ok = false; bad = "expected 7 deduced equations"; }
            for (const auto &[label, c] : ded)
                if (!c.pass) { ok = false; bad = label + ": " + c.detail; }
        }
        criterion(3, "defining + 7 deduced exchange equations, (1,1) and (2,1)", ok, bad);
    }

    // 4: triangular factorization reconstructs L; pinned 2x2 block form
    {
        bool ok = true;
        std::string bad;
        for (const auto &ps : kShapes) {
            Space v = Space::fundamental(ps);
            GradedMatrix L = eval_L(ps);
            GaussData g = gauss_decompose(L, v, v);
            if (!(gauss_reconstruct(g) == L)) {
                ok = false;
                bad = "reconstruction mismatch";
            }
        }
        ParityStructure ps{1, 1};
        Space v = Space::fundamental(ps);
        GaussData g = gauss_decompose(eval_L(ps), v, v);
        LaurentPoly z = LaurentPoly::variable(VZ), a = LaurentPoly::variable(VA),
                    q = LaurentPoly::variable(VQ), qi = LaurentPoly::variable(VQ, -1);
        if (!(g.K[0].at(0, 0) == RationalFunction(1) &&
              g.K[0].at(1, 1) == RationalFunction(z - a, z * q - a * qi) &&
              g.E[1][0].at(0, 1) == RationalFunction(a * (q - qi), z - a) &&
              g.F[0][1].at(1, 0) == RationalFunction(z * (q - qi), z - a))) {
            ok = false;
            bad = "pinned 2x2 block form mismatch";
        }
        criterion(4, "triangular factorization E*K*F = L + pinned block form", ok, bad);
    }

    // 5: current-algebra relation suites and window stability
    {
        std::string bad;
        bool ok = all_pass(check_definition_gl11(8), &bad);
        for (ParityStructure ps :
             {ParityStructure{2, 1}, ParityStructure{1, 2}, ParityStructure{2, 2}}) {
            VerificationReport r6 = check_definition_glmn(ps, 6);
            VerificationReport r10 = check_definition_glmn(ps, 10);
            if (!expected_pattern(r6, ps, "", &bad)) ok = false;
            if (verdicts(r6) != verdicts(r10)) {
                ok = false;
                bad = "verdicts changed between windows 6 and 10";
            }
        }
        criterion(5, "current-algebra relations, window 8 / 6, stable to +4", ok, bad);
    }

    // 6: cubic and quartic current relations
    {
        std::string bad;
        bool ok = true;
        VerificationReport r21 = check_serre(ParityStructure{2, 1}, 6);
        VerificationReport r12 = check_serre(ParityStructure{1, 2}, 6);
        VerificationReport r22 = check_serre(ParityStructure{2, 2}, 6);
        ok = ok && all_pass(r21, &bad) && all_pass(r12, &bad) && all_pass(r22, &bad);
        ok = ok && has_id_with(r21, "serre1") && has_id_with(r21, "serre2") &&
             has_id_with(r12, "serre1") && has_id_with(r12, "serre2") &&
             has_id_with(r22, "serre3") && has_id_with(r22, "serre4") &&
             has_id_with(r22, "extra-serre");
        criterion(6, "Serre suites for (2,1), (1,2), (2,2)", ok, bad);
    }

    // 7: Hopf axioms with formal central charge, all generators
    {
        std::string bad;
        bool ok = true;
        for (const auto &ps : kShapes)
            if (!all_pass(check_hopf_axioms(ps), &bad)) ok = false;
        criterion(7, "Hopf axioms, all generators, shapes up to (2,2)", ok, bad);
    }

    // 8: coproduct/antipode preserve the relations, symbolically and on V (x) V
    {
        std::string bad;
        bool ok = all_pass(check_homomorphism_gl11(), &bad);
        ParityStructure p11{1, 1}, p21{2, 1};
        if (!expected_pattern(rep_homomorphism_check(p11, 6), p11, "rep.", &bad))
            ok = false;
        if (!expected_pattern(rep_homomorphism_check(p21, 6), p21, "rep.", &bad))
            ok = false;
        criterion(8, "homomorphism proof chains + tensor-representation check", ok, bad);
    }

    // 9: grading off breaks exactly the odd anticommutators
    {
        bool ok = true;
        for (ParityStructure ps : {ParityStructure{1, 1}, ParityStructure{2, 1}}) {
            VerificationReport r = negative_check_grading_off(ps, 6);
            ok = ok &&
                 status_of(r, "off.two-site.XX.anticommutator.+") == Status::Fail &&
                 status_of(r, "off.two-site.XX.anticommutator.-") == Status::Fail &&
                 status_of(r, "off.two-site.XX.commutator.+") == Status::Pass &&
                 status_of(r, "off.kk.same-sign.+.12") == Status::Pass;
        }
        criterion(9, "grading-off negative pattern for (1,1) and (2,1)", ok);
    }

    // 10: symbolic reports are byte-identical across runs
    {
        std::string bin = VERIFY_BIN;
        std::string cmd1 = "\"" + bin + "\" --m 1 --n 1 --trunc 6 --format json "
                           "--out acceptance_run1.json";
        std::string cmd2 = "\"" + bin + "\" --m 1 --n 1 --trunc 6 --format json "
                           "--out acceptance_run2.json";
        int rc1 = std::system(cmd1.c_str());
        int rc2 = std::system(cmd2.c_str());
        std::string a = slurp("acceptance_run1.json");
        std::string b = slurp("acceptance_run2.json");
        bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
        criterion(10, "byte-identical symbolic reports across two runs", ok,
                  ok ? std::to_string(a.size()) + " bytes" : "");
        std::remove("acceptance_run1.json");
        std::remove("acceptance_run2.json");
    }

    if (g_failures) {
        std::cout << g_failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all 10 criteria passed" << std::endl;
    return 0;
}
