#include "procat/verdict.hpp"

namespace procat {

Verdict Verdict::ok(std::string check, std::string subject, std::string scope)
{
    return Verdict{std::move(check), std::move(subject), true, {}, std::move(scope)};
}

Verdict Verdict::fail(std::string check, std::string subject, std::string witness,
                      std::string scope)
{
    return Verdict{std::move(check), std::move(subject), false, std::move(witness),
                   std::move(scope)};
}

Verdict& Verdict::absorb(const Verdict& other)
{
    if (pass && !other.pass) {
        pass = false;
        witness = other.witness;
    }
    if (!other.scope.empty()) {
        if (!scope.empty())
            scope += ';';
        scope += other.scope;
    }
    return *this;
}

std::string machine_line(const Verdict& v)
{
    std::string out = v.pass ? "PASS " : "FAIL ";
    out += v.check;
    out += ' ';
    out += v.subject.empty() ? "-" : v.subject;
    if (!v.pass)
        out += " witness=" + v.witness;
    if (!v.scope.empty())
        out += " scope=" + v.scope;
    return out;
}

std::string text_line(const Verdict& v)
{
    std::string out = v.check + " on " + (v.subject.empty() ? "-" : v.subject) + ": ";
    out += v.pass ? "pass" : "FAIL (" + v.witness + ")";
    if (!v.scope.empty())
        out += " [" + v.scope + "]";
    return out;
}

}  // namespace procat
