#include "doctest.h"

#include "commands.hpp"
#include "procat/error.hpp"
#include "workspace.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace procat;
using namespace procat::cli;

namespace {

std::string fixture(const std::string& name)
{
    return std::string(PROCAT_FIXTURES) + "/" + name;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> r;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        r.push_back(l);
    return r;
}

Outcome run_on(const std::string& doc, std::vector<std::string> args)
{
    args.insert(args.begin(), {"--doc", fixture(doc)});
    return run(args);
}

}  // namespace

TEST_CASE("canonical documents round-trip byte for byte")
{
    for (const char* name : {"workspace.json", "walking_arrow.json"}) {
        const std::string text = slurp(fixture(name));
        REQUIRE_FALSE(text.empty());
        CHECK(emit_document(load_document(text)) == text);
    }
    const Workspace ws = load_file(fixture("workspace.json"));
    CHECK(ws.categories.size() == 3);
    CHECK(ws.functors.size() == 4);
    CHECK(ws.profunctors.size() == 3);
    CHECK(ws.cells.size() == 3);
    CHECK(ws.algebras.size() == 2);
    CHECK(ws.category("Two")->objects().size() == 2);
}

TEST_CASE("empty documents load to an empty workspace")
{
    CHECK(load_document("").size() == 0);
    CHECK(load_document("  \n\t").size() == 0);
    CHECK(load_file(fixture("empty.json")).size() == 0);
    CHECK(emit_document(load_document("{}")) == emit_document(Workspace{}));
}

TEST_CASE("broken composition is rejected with the offending triple")
{
    try {
        load_file(fixture("broken_composition.json"));
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string what = e.what();
        CHECK(what.find("associativity") != std::string::npos);
        CHECK(what.find("a:*->*") != std::string::npos);
        CHECK(what.find("b:*->*") != std::string::npos);
    }
    const Outcome o = run_on("broken_composition.json", {"validate"});
    CHECK(o.exit_code == 1);
    CHECK(o.out.find("FAIL") != std::string::npos);
}

TEST_CASE("syntax errors carry the line number")
{
    try {
        load_file(fixture("syntax_error.json"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
    CHECK(run_on("syntax_error.json", {"validate"}).exit_code == 2);
}

TEST_CASE("document validation catches dangling references and duplicates")
{
    CHECK_THROWS_AS(load_document(R"({"functors":[{"name":"f","src":"A","tgt":"B","objects":[],"morphisms":[]}]})"),
                    UnknownName);
    CHECK_THROWS_AS(load_document(R"({"categories":[{"name":"A","objects":["x"],"identities":[["x","id"]],
        "morphisms":[],"composition":[]},{"name":"A","objects":["x"],"identities":[["x","id"]],
        "morphisms":[],"composition":[]}]})"),
                    ValidationError);
    CHECK_THROWS_AS(load_document(R"({"categories":[{"name":"A","objects":["x"],"identities":[["x","id"]],
        "morphisms":[],"composition":[],"colour":"red"}]})"),
                    ValidationError);
    CHECK_THROWS_AS(load_file(fixture("does_not_exist.json")), UsageError);
}

TEST_CASE("emit writes the canonical document")
{
    const auto path = std::filesystem::temp_directory_path() / "procat_emit_test.json";
    const Outcome o = run_on("workspace.json", {"validate", "--emit", path.string()});
    CHECK(o.exit_code == 0);
    CHECK(slurp(path.string()) == slurp(fixture("workspace.json")));
    std::filesystem::remove(path);
}

TEST_CASE("every report starts with the seed")
{
    CHECK(lines(run({"demo", "hopf"}).out).front() == "# procat report, seed=0");
    CHECK(lines(run({"--seed", "11", "demo", "sigma"}).out).front() == "# procat report, seed=11");
    CHECK(lines(run({"--seed", "5", "--format", "machine", "demo", "poset"}).out).front() == "# seed=5");
    CHECK(lines(run_on("workspace.json", {"validate"}).out).front() == "# procat report, seed=0");
}

TEST_CASE("worked demos")
{
    const Outcome hopf = run({"demo", "hopf"});
    CHECK(hopf.exit_code == 0);
    CHECK(hopf.out.find("(1 1) . (-1 0;0 1) . (1;1) = (0)") != std::string::npos);

    const Outcome sigma = run({"--format", "machine", "demo", "sigma"});
    CHECK(sigma.exit_code == 0);
    CHECK(sigma.out.find("Sigma(1,2)=0 decompositions=0") != std::string::npos);
    CHECK(sigma.out.find("PASS sigma-failure-reproduced") != std::string::npos);

    for (const char* demo : {"poset", "modmat"}) {
        const Outcome a = run({"--seed", "3", "--format", "machine", "demo", demo});
        const Outcome b = run({"--seed", "3", "--format", "machine", "demo", demo});
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("machine lines have a fixed shape")
{
    const Outcome o = run_on("workspace.json", {"--format", "machine", "check", "companion", "idT"});
    CHECK(o.exit_code == 0);
    const auto ls = lines(o.out);
    REQUIRE(ls.size() >= 2);
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const bool tagged = ls[i].rfind("PASS ", 0) == 0 || ls[i].rfind("FAIL ", 0) == 0;
        CHECK(tagged);
    }
    CHECK(ls[1] == "PASS companion idT");
}

TEST_CASE("colimit commands on the fixture workspace")
{
    const Outcome colim = run_on("workspace.json", {"colim", "W", "idT"});
    CHECK(colim.exit_code == 0);
    CHECK(colim.out.find("l(*) = top") != std::string::npos);

    CHECK(run_on("workspace.json", {"check", "colimit", "eta"}).exit_code == 0);
    CHECK(run_on("workspace.json", {"check", "colimit", "idU"}).exit_code == 0);
    CHECK(run_on("workspace.json", {"check", "pointwise", "W", "idT"}).exit_code == 0);
    CHECK(run_on("workspace.json", {"kan", "inc", "inc"}).exit_code == 0);
    CHECK(run_on("workspace.json", {"comma", "U", "idT"}).exit_code == 0);
    CHECK(run_on("workspace.json", {"compose", "U", "W"}).exit_code == 0);
    CHECK(run_on("workspace.json", {"lift", "inc", "inc", "A2", "A3", "A3"}).exit_code == 0);
}

TEST_CASE("exit codes separate verdicts from input errors")
{
    // loose sends the only element to top although bot already receives it.
    CHECK(run_on("workspace.json", {"check", "colimit", "loose"}).exit_code == 1);
    CHECK(run_on("workspace.json", {"check", "colimit", "nope"}).exit_code == 2);
    CHECK(run_on("workspace.json", {"compose", "W", "W"}).exit_code == 2);
    CHECK(run({"validate"}).exit_code == 2);
    CHECK(run({"bogus"}).exit_code == 2);
    CHECK(run({"--format", "xml", "demo", "hopf"}).exit_code == 2);
}
