#pragma once

#include <string>
#include <vector>

namespace procat {

// Outcome of a universal-property or axiom scan. A failing verdict always
// carries a concrete witness; scope records budgets and probe coverage.
struct Verdict {
    std::string check;
    std::string subject;
    bool pass = true;
    std::string witness;
    std::string scope;

    static Verdict ok(std::string check, std::string subject, std::string scope = {});
    static Verdict fail(std::string check, std::string subject, std::string witness,
                        std::string scope = {});

    explicit operator bool() const noexcept { return pass; }

    // Keeps the first failure; scopes are concatenated.
    Verdict& absorb(const Verdict& other);
};

// "PASS|FAIL <check> <subject> [witness=...]" (plus scope when present).
std::string machine_line(const Verdict& v);
std::string text_line(const Verdict& v);

}  // namespace procat
