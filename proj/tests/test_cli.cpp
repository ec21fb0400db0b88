#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "closurelab/cli.hpp"
#include "closurelab/fixtures.hpp"
#include "closurelab/structure.hpp"

using namespace closurelab;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

// Scratch directory with the fixture files the golden invocations use.
class Workspace {
public:
    Workspace() {
        dir_ = std::filesystem::temp_directory_path() /
               ("closurelab_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir_);
        write("k2.struct",
              "structure K2\nuniverse 2\nrelation E/2 { (0,1) (1,0) }\n");
        write("chain4.struct", serialize_structure(make_linear_order(4)));
        write("cyc5.struct", serialize_structure(make_cyclic_order(5)));
        write("eq222.struct", serialize_structure(make_equivalence({2, 2, 2})));
        write("bip.struct", serialize_structure(make_complete_bipartite(2, 3, 2)));
        write("hyper.struct", serialize_structure(make_hypergraph_tree(3, 2, 1)));
        write("d0.delta", "def id(x; y) = x = y\n");
        write("d1.delta", "def id(x; y) = x = y\ndef e1(x; y) = E1(x,y) & !(x = y)\n");
        write("d2.delta", "def id(x; y) = x = y\ndef e2(x; y) = E2(x,y) & !(x = y)\n");
        write("d12.delta",
              "def id(x; y) = x = y\n"
              "def e1(x; y) = E1(x,y) & !(x = y)\n"
              "def e2(x; y) = E2(x,y) & !(x = y)\n");
    }
    ~Workspace() { std::filesystem::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    void write(const std::string& name, const std::string& text) {
        std::ofstream f(dir_ / name, std::ios::binary);
        f << text;
    }

private:
    std::filesystem::path dir_;
};

Workspace& ws() {
    static Workspace instance;
    return instance;
}

}  // namespace

TEST_CASE("closure golden line") {
    Run r = cli({"closure", "-s", ws().path("k2.struct"), "-A", "", "--n", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "acl_2(∅) = {0, 1}\n");
    Run dcl = cli({"closure", "-s", ws().path("k2.struct"), "-A", "", "--n", "1"});
    CHECK(dcl.out == "acl_1(∅) = ∅\n");
}

TEST_CASE("diff golden line") {
    Run r = cli({"diff", "-s", ws().path("chain4.struct")});
    CHECK(r.code == 0);
    CHECK(r.out == "acl-dcl-difference (within-model): 0\n");
    CHECK(cli({"diff", "-s", ws().path("cyc5.struct")}).out ==
          "acl-dcl-difference (within-model): 1\n");
}

TEST_CASE("lattice golden line") {
    Run r = cli({"lattice", "-s", ws().path("hyper.struct"), "--seeds",
                 ws().path("d0.delta") + "," + ws().path("d1.delta") + "," +
                     ws().path("d2.delta"),
                 "--n", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("3 operators; least: d0; greatest: none\n", 0) == 0);
}

TEST_CASE("lattice with the unbounded closure adjoined") {
    Run r = cli({"lattice", "-s", ws().path("hyper.struct"), "--seeds",
                 ws().path("d0.delta") + "," + ws().path("d1.delta") + "," +
                     ws().path("d2.delta"),
                 "--n", "2", "--adjoin-acl"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("4 operators; least: d0; greatest: acl\n", 0) == 0);
}

TEST_CASE("gen writes parseable structures") {
    Run text = cli({"gen", "equivalence", "2,2,2"});
    CHECK(text.code == 0);
    CHECK(parse_structure(text.out) == make_equivalence({2, 2, 2}));

    Run json = cli({"gen", "cyclic-order", "5", "--json"});
    CHECK(json.code == 0);
    CHECK(parse_structure(json.out) == make_cyclic_order(5));
    CHECK(nlohmann::json::parse(json.out)["schema"] == 1);

    Run bad = cli({"gen", "moebius", "3"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("unknown fixture kind") != std::string::npos);
}

TEST_CASE("orbits output") {
    Run r = cli({"orbits", "-s", ws().path("eq222.struct"), "-A", "0"});
    CHECK(r.code == 0);
    CHECK(r.out == "orbits over {0}: {0} {1} {2, 3, 4, 5}\n");
    Run empty = cli({"orbits", "-s", ws().path("k2.struct")});
    CHECK(empty.out == "orbits over ∅: {0, 1}\n");
}

TEST_CASE("chain output") {
    Run r = cli({"chain", "-s", ws().path("k2.struct"), "-A", ""});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "acl_0(∅) = ∅\n"
          "acl_1(∅) = ∅\n"
          "acl_2(∅) = {0, 1}\n"
          "stabilization index: 2\n");
}

TEST_CASE("delta closure through the CLI") {
    Run r = cli({"closure", "-s", ws().path("hyper.struct"), "-A", "0", "--n", "2", "--delta",
                 ws().path("d1.delta"), "--iterate"});
    CHECK(r.code == 0);
    CHECK(r.out == "acl_2^Δ({0}) = {0, 1, 2}\n");
}

TEST_CASE("algsets output") {
    Run r = cli({"algsets", "-s", ws().path("eq222.struct"), "-A", "0", "--max-size", "2"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "A-algebraic sets over {0}, size <= 2:\n"
          "  ∅\n"
          "  {0}\n"
          "  {1}\n"
          "  {0, 1}\n"
          "DEG_alg_u({0}) = 4\n");
}

TEST_CASE("axioms counterexamples are re-runnable closure invocations") {
    Run r = cli({"axioms", "-s", ws().path("bip.struct"), "--semantic", "--n", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("exchange: FAILS at X = ∅, a = 0, b = 2") != std::string::npos);
    CHECK(r.out.find("# re-run: closure -s " + ws().path("bip.struct") + " -A \"2\" --n 2") !=
          std::string::npos);
    CHECK(r.out.find("-A \"0\" --n 2") != std::string::npos);

    // The quoted invocations indeed demonstrate the violation.
    Run with_b = cli({"closure", "-s", ws().path("bip.struct"), "-A", "2", "--n", "2"});
    Run without = cli({"closure", "-s", ws().path("bip.struct"), "-A", "", "--n", "2"});
    Run with_a = cli({"closure", "-s", ws().path("bip.struct"), "-A", "0", "--n", "2"});
    CHECK(with_b.out == "acl_2({2}) = {0, 1, 2, 3, 4, 5, 6}\n");  // contains a = 0
    CHECK(without.out == "acl_2(∅) = ∅\n");                  // omits a
    CHECK(with_a.out == "acl_2({0}) = {0, 1, 5, 6}\n");      // omits b = 2
}

TEST_CASE("axioms on a delta operator") {
    Run r = cli({"axioms", "-s", ws().path("hyper.struct"), "--delta", ws().path("d12.delta"),
                 "--n", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("transitivity: FAILS") != std::string::npos);
    CHECK(r.out.find("reflexivity: holds") != std::string::npos);

    Run usage = cli({"axioms", "-s", ws().path("hyper.struct")});
    CHECK(usage.code == 2);
}

TEST_CASE("lattice dot export and json") {
    std::string dot_path = ws().path("poset.dot");
    Run r = cli({"lattice", "-s", ws().path("hyper.struct"), "--seeds",
                 ws().path("d0.delta") + "," + ws().path("d1.delta") + "," +
                     ws().path("d2.delta"),
                 "--n", "2", "--dot", dot_path, "--json"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == 1);
    CHECK(j["elements"].size() == 3);
    CHECK(j["stats"]["least"] == "d0");
    CHECK(j["stats"]["greatest"].is_null());

    std::ifstream dot(dot_path);
    REQUIRE(dot.good());
    std::stringstream buf;
    buf << dot.rdbuf();
    CHECK(buf.str().find("digraph poset {") == 0);
}

TEST_CASE("json outputs carry the schema marker") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"orbits", "-s", ws().path("k2.struct"), "--json"},
             {"closure", "-s", ws().path("k2.struct"), "--n", "2", "--json"},
             {"chain", "-s", ws().path("k2.struct"), "-A", "", "--json"},
             {"degree", "-s", ws().path("k2.struct"), "--json"},
             {"diff", "-s", ws().path("k2.struct"), "--json"},
             {"algsets", "-s", ws().path("k2.struct"), "-A", "", "--json"},
             {"axioms", "-s", ws().path("k2.struct"), "--semantic", "--n", "2", "--json"},
             {"report", "-s", ws().path("k2.struct"), "--json"},
         }) {
        Run r = cli(args);
        CAPTURE(args[0]);
        CHECK(r.code == 0);
        CHECK(nlohmann::json::parse(r.out)["schema"] == 1);
    }
}

TEST_CASE("identical invocations produce byte-identical output") {
    std::vector<std::string> args{"report", "-s", ws().path("eq222.struct")};
    Run a = cli(args);
    Run b = cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("exit codes") {
    CHECK(cli({"frobnicate"}).code == 2);                       // unknown subcommand
    CHECK(cli({"closure"}).code == 2);                          // missing required flag
    CHECK(cli({"closure", "-s", "/nonexistent.struct"}).code == 1);
    CHECK(cli({"diff", "-s", ws().path("d0.delta")}).code == 1);  // not a structure file
    Run help = cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("closurelab") != std::string::npos);
}

TEST_CASE("structure files load in JSON form too") {
    Run gen = cli({"gen", "linear-order", "4", "--json", "-o", ws().path("chain4.json")});
    REQUIRE(gen.code == 0);
    Run r = cli({"diff", "-s", ws().path("chain4.json")});
    CHECK(r.out == "acl-dcl-difference (within-model): 0\n");
}
