#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qsa {

struct CheckResult {
    bool pass = true;
    std::string detail; // first counterexample, empty on pass

    static CheckResult ok() { return {}; }
    static CheckResult fail(std::string d) { return {false, std::move(d)}; }
};

// verdict for one relation instance in a verification suite
enum class Status { Pass, Fail, SignMismatch, Skipped };

struct RelationCheck {
    std::string id; // stable relation identifier, e.g. "D3.kk.mixed"
    Status status = Status::Pass;
    std::string detail; // counterexample or annotation, empty on pass
};

using VerificationReport = std::vector<RelationCheck>;

inline bool report_all_pass(const VerificationReport &r) {
    for (auto &c : r)
        if (c.status == Status::Fail || c.status == Status::SignMismatch) return false;
    return true;
}

const char *status_name(Status s);

} // namespace qsa
