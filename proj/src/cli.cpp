#include "closurelab/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "closurelab/algebraic_sets.hpp"
#include "closurelab/automorphism.hpp"
#include "closurelab/closure.hpp"
#include "closurelab/eval.hpp"
#include "closurelab/fixtures.hpp"
#include "closurelab/formula.hpp"
#include "closurelab/operator_lattice.hpp"
#include "closurelab/pregeometry.hpp"
#include "closurelab/structure.hpp"

namespace closurelab {

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file '" + path + "'");
    out << text;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::runtime_error("malformed integer list '" + text + "'");
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw std::runtime_error("expected at least one integer in '" + text + "'");
    return out;
}

std::string file_stem(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string base = (slash == std::string::npos) ? path : path.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    return (dot == std::string::npos || dot == 0) ? base : base.substr(0, dot);
}

ordered_json set_json(const ElemSet& s) {
    ordered_json j = ordered_json::array();
    for (int e : s) j.push_back(e);
    return j;
}

struct BoundFlags {
    std::optional<int> n;
    bool unbounded = false;

    Bound resolve(int fallback = -1) const {
        if (unbounded) return Bound::unbounded();
        if (n) return Bound::at(*n);
        if (fallback >= 0) return Bound::at(fallback);
        return Bound::unbounded();
    }
    std::string closure_flag() const {
        if (unbounded || !n) return "--unbounded";
        return "--n " + std::to_string(*n);
    }
};

void add_bound_flags(CLI::App* cmd, BoundFlags& flags) {
    cmd->add_option("--n", flags.n, "solution-count bound (acl_n)");
    cmd->add_flag("--unbounded", flags.unbounded, "no solution-count bound (acl)");
}

std::string closure_label(Bound bound, bool is_delta) {
    std::string label = "acl";
    if (!bound.is_unbounded()) label += "_" + bound.label();
    if (is_delta) label += "^Δ";
    return label;
}

struct LoadedDelta {
    std::string name;
    std::vector<ParamFormula> formulas;
};

LoadedDelta load_delta(const std::string& path, const Signature& sig) {
    return {file_stem(path), parse_delta(read_file(path), sig)};
}

int run_gen(const std::string& kind, const std::string& params_text,
            const std::string& out_path, bool json, std::ostream& out) {
    Structure s = generate_fixture(kind, parse_int_list(params_text));
    std::string text = json ? structure_to_json(s) : serialize_structure(s);
    if (out_path.empty()) {
        out << text;
    } else {
        write_file(out_path, text);
    }
    return 0;
}

int run_orbits(const Structure& s, const ElemSet& a, bool json, std::ostream& out) {
    OrbitPartition p = orbits(s, a);
    if (json) {
        ordered_json j;
        j["schema"] = 1;
        j["base"] = set_json(a);
        j["blocks"] = ordered_json::array();
        for (const auto& b : p.blocks) j["blocks"].push_back(set_json(b));
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "orbits over " << a.to_string() << ":";
    for (const auto& b : p.blocks) out << " " << b.to_string();
    out << "\n";
    return 0;
}

int run_closure(const Structure& s, const ElemSet& a, Bound bound,
                const std::optional<LoadedDelta>& delta, bool iterate, bool json,
                std::ostream& out) {
    ElemSet result = delta ? acl_delta(s, delta->formulas, a, bound, iterate)
                           : acl_semantic(s, a, bound);
    if (json) {
        ordered_json j;
        j["schema"] = 1;
        j["base"] = set_json(a);
        j["bound"] = bound.is_unbounded() ? ordered_json(nullptr) : ordered_json(*bound.n);
        j["kind"] = delta ? "delta" : "semantic";
        if (delta) {
            j["delta"] = delta->name;
            j["iterate"] = iterate;
        }
        j["closure"] = set_json(result);
        out << j.dump(2) << "\n";
        return 0;
    }
    out << closure_label(bound, delta.has_value()) << "(" << a.to_string()
        << ") = " << result.to_string() << "\n";
    return 0;
}

int run_chain(const Structure& s, const ElemSet& a, bool json, std::ostream& out) {
    ClosureChain chain = closure_chain(s, a);
    if (json) {
        ordered_json j;
        j["schema"] = 1;
        j["base"] = set_json(a);
        j["chain"] = ordered_json::array();
        for (const auto& set : chain.sets) j["chain"].push_back(set_json(set));
        j["stabilization_index"] = chain.stabilization_index;
        out << j.dump(2) << "\n";
        return 0;
    }
    for (std::size_t n = 0; n < chain.sets.size(); ++n) {
        out << "acl_" << n << "(" << a.to_string() << ") = " << chain.sets[n].to_string()
            << "\n";
    }
    out << "stabilization index: " << chain.stabilization_index << "\n";
    return 0;
}

int run_degree(const Structure& s, int max_subset, bool json, std::ostream& out) {
    DegreeReport report = deg_acl_of_structure(s, max_subset);
    if (json) {
        ordered_json j;
        j["schema"] = 1;
        j["max_subset_size"] = max_subset;
        j["exhaustive"] = report.exhaustive;
        j["structure_degree"] = report.structure_degree;
        j["witness"] = set_json(report.witness);
        j["stabilization_index"] = report.stabilization_index;
        j["per_set"] = ordered_json::array();
        for (const auto& [a, deg] : report.per_set) {
            j["per_set"].push_back({{"set", set_json(a)}, {"deg", deg}});
        }
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "deg_acl over sets with |A| <= " << max_subset << " ("
        << (report.exhaustive ? "exhaustive" : "sampled") << "): " << report.structure_degree
        << " at A = " << report.witness.to_string() << "\n";
    return 0;
}

int run_diff(const Structure& s, bool json, std::ostream& out) {
    std::optional<int> diff = acl_dcl_difference(s);
    if (json) {
        ordered_json j;
        j["schema"] = 1;
        j["acl_dcl_difference"] = diff ? ordered_json(*diff) : ordered_json(nullptr);
        j["scope"] = "within-model";
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "acl-dcl-difference (within-model): ";
    if (diff) {
        out << *diff << "\n";
    } else {
        out << "none-up-to-" << s.size << "\n";
    }
    return 0;
}

int run_algsets(const Structure& s, const ElemSet& a, int max_size, bool json,
                std::ostream& out) {
    std::vector<ElemSet> sets = enumerate_algebraic_sets(s, a, max_size);
    int deg = DEG_alg_u(s, a, s.size);
    if (json) {
        ordered_json j;
        j["schema"] = 1;
        j["base"] = set_json(a);
        j["max_size"] = max_size;
        j["sets"] = ordered_json::array();
        for (const auto& set : sets) j["sets"].push_back(set_json(set));
        j["DEG_alg_u"] = deg;
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "A-algebraic sets over " << a.to_string() << ", size <= " << max_size << ":\n";
    for (const auto& set : sets) out << "  " << set.to_string() << "\n";
    out << "DEG_alg_u(" << a.to_string() << ") = " << deg << "\n";
    return 0;
}

std::string closure_invocation(const std::string& structure_path, const ElemSet& a,
                               const BoundFlags& bound, const std::string& delta_path,
                               bool iterate) {
    std::string a_text;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) a_text += ",";
        a_text += std::to_string(a.elems()[i]);
    }
    std::string cmd = "closure -s " + structure_path + " -A \"" + a_text + "\" " +
                      bound.closure_flag();
    if (!delta_path.empty()) {
        cmd += " --delta " + delta_path;
        if (iterate) cmd += " --iterate";
    }
    return cmd;
}

int run_axioms(const Structure& s, const std::string& structure_path,
               const ClosureOperator& op, const BoundFlags& bound_flags,
               const std::string& delta_path, bool iterate, int subset_cap, bool json,
               std::ostream& out) {
    std::vector<AxiomReport> reports = check_axioms(s, op, {subset_cap});
    if (json) {
        ordered_json j;
        j["schema"] = 1;
        j["operator"] = op.summary();
        j["axioms"] = ordered_json::array();
        for (const auto& r : reports) {
            ordered_json item;
            item["axiom"] = axiom_name(r.axiom);
            item["holds"] = r.holds;
            item["subsets_checked"] = r.subsets_checked;
            item["sampled"] = r.sampled;
            if (r.max_min_witness) item["max_min_witness"] = *r.max_min_witness;
            if (r.counterexample) {
                ordered_json ce;
                ce["X"] = set_json(r.counterexample->x);
                if (r.counterexample->a) ce["a"] = *r.counterexample->a;
                if (r.counterexample->b) ce["b"] = *r.counterexample->b;
                ce["note"] = r.counterexample->note;
                item["counterexample"] = ce;
            }
            j["axioms"].push_back(item);
        }
        out << j.dump(2) << "\n";
        return 0;
    }
    for (const auto& r : reports) {
        out << axiom_name(r.axiom) << ": " << (r.holds ? "holds" : "FAILS");
        if (r.axiom == AxiomReport::Axiom::FiniteCharacter && r.max_min_witness) {
            out << " (max minimal witness size " << *r.max_min_witness << ")";
        }
        if (!r.holds && r.counterexample) {
            const auto& ce = *r.counterexample;
            out << " at X = " << ce.x.to_string();
            if (ce.a) out << ", a = " << *ce.a;
            if (ce.b) out << ", b = " << *ce.b;
            out << " (" << ce.note << ")";
        }
        if (r.sampled) out << " [sampled]";
        out << "\n";
        if (!r.holds && r.counterexample) {
            const auto& ce = *r.counterexample;
            if (r.axiom == AxiomReport::Axiom::Exchange) {
                out << "  # re-run: "
                    << closure_invocation(structure_path, ce.x.with(*ce.b), bound_flags,
                                          delta_path, iterate)
                    << "   (contains a)\n";
                out << "  # re-run: "
                    << closure_invocation(structure_path, ce.x, bound_flags, delta_path, iterate)
                    << "   (omits a)\n";
                out << "  # re-run: "
                    << closure_invocation(structure_path, ce.x.with(*ce.a), bound_flags,
                                          delta_path, iterate)
                    << "   (omits b)\n";
            } else if (r.axiom == AxiomReport::Axiom::Transitivity) {
                out << "  # re-run: "
                    << closure_invocation(structure_path, ce.x, bound_flags, delta_path, iterate)
                    << "\n";
                out << "  # re-run: "
                    << closure_invocation(structure_path, op.close(s, ce.x), bound_flags,
                                          delta_path, iterate)
                    << "   (close the first result again)\n";
            } else {
                out << "  # re-run: "
                    << closure_invocation(structure_path, ce.x, bound_flags, delta_path, iterate)
                    << "\n";
            }
        }
    }
    return 0;
}

int run_lattice(const Structure& s, const std::vector<std::string>& seed_paths, PosetMode mode,
                Bound bound, bool adjoin_acl, const std::string& dot_path, bool json,
                std::ostream& out) {
    std::vector<std::pair<std::string, std::vector<ParamFormula>>> seeds;
    for (const auto& path : seed_paths) {
        LoadedDelta d = load_delta(path, s.signature);
        seeds.emplace_back(d.name, d.formulas);
    }
    LatticeOptions opts;
    opts.adjoin_unbounded_acl = adjoin_acl;
    OperatorPoset poset = build_poset(s, seeds, mode, bound, opts);
    LatticeStats stats = lattice_stats(poset);

    if (!dot_path.empty()) write_file(dot_path, export_hasse_dot(poset));

    if (json) {
        ordered_json j;
        j["schema"] = 1;
        j["elements"] = ordered_json::array();
        for (std::size_t i = 0; i < poset.elements.size(); ++i) {
            j["elements"].push_back(
                {{"name", poset.names[i]}, {"summary", poset.elements[i].summary()}});
        }
        j["leq"] = ordered_json::array();
        for (const auto& row : poset.leq) {
            ordered_json r = ordered_json::array();
            for (char v : row) r.push_back(v != 0);
            j["leq"].push_back(r);
        }
        j["hasse"] = ordered_json::array();
        for (const auto& [lo, hi] : poset.hasse_edges) j["hasse"].push_back({lo, hi});
        ordered_json st;
        st["height"] = stats.height;
        st["width"] = stats.width;
        st["least"] = stats.least ? ordered_json(poset.names[static_cast<std::size_t>(
                                        *stats.least)])
                                  : ordered_json(nullptr);
        st["greatest"] = stats.greatest ? ordered_json(poset.names[static_cast<std::size_t>(
                                              *stats.greatest)])
                                        : ordered_json(nullptr);
        if (stats.distributive) st["distributive"] = *stats.distributive;
        st["sampled_domain"] = poset.domain.sampled;
        j["stats"] = st;
        out << j.dump(2) << "\n";
        return 0;
    }

    out << poset.elements.size() << " operators; least: "
        << (stats.least ? poset.names[static_cast<std::size_t>(*stats.least)] : "none")
        << "; greatest: "
        << (stats.greatest ? poset.names[static_cast<std::size_t>(*stats.greatest)] : "none")
        << "\n";
    out << "height: " << stats.height << "; width: " << stats.width;
    if (stats.distributive) out << "; distributive: " << (*stats.distributive ? "yes" : "no");
    out << "\n";
    if (poset.domain.sampled) {
        out << "note: extensional identity over a sampled subset domain\n";
    }
    return 0;
}

int run_report(const Structure& s, const std::string& structure_path, bool json,
               std::ostream& out) {
    if (json) {
        ordered_json j;
        j["schema"] = 1;
        j["name"] = s.name;
        j["size"] = s.size;
        ordered_json orbit_list = ordered_json::array();
        std::vector<ElemSet> bases{ElemSet{}};
        for (int a = 0; a < s.size; ++a) bases.push_back(ElemSet{a});
        for (const auto& base : bases) {
            OrbitPartition p = orbits(s, base);
            ordered_json item;
            item["base"] = set_json(base);
            item["blocks"] = ordered_json::array();
            for (const auto& b : p.blocks) item["blocks"].push_back(set_json(b));
            orbit_list.push_back(item);
        }
        j["orbits"] = orbit_list;
        DegreeReport deg = deg_acl_of_structure(s, 1);
        j["structure_degree"] = deg.structure_degree;
        auto diff = acl_dcl_difference(s);
        j["acl_dcl_difference"] = diff ? ordered_json(*diff) : ordered_json(nullptr);
        j["rigid"] = is_rigid(s);
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "structure " << (s.name.empty() ? "anonymous" : s.name) << " (universe " << s.size
        << ")\n";
    for (const auto& r : s.signature.relations) {
        out << "  relation " << r.name << "/" << r.arity << ": "
            << s.interpretation.at(r.name).size() << " tuples\n";
    }
    out << "rigid: " << (is_rigid(s) ? "yes" : "no") << "\n";
    run_orbits(s, ElemSet{}, false, out);
    for (int a = 0; a < s.size; ++a) run_orbits(s, ElemSet{a}, false, out);
    run_degree(s, 1, false, out);
    run_diff(s, false, out);
    out << "axioms of semantic acl_2:\n";
    BoundFlags bounds;
    bounds.n = 2;
    run_axioms(s, structure_path, ClosureOperator::semantic("acl_2", Bound::at(2)), bounds, "",
               false, 14, false, out);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"closurelab — closure operators on finite relational structures"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a fixture structure");
    std::string gen_kind, gen_params, gen_out;
    bool gen_json = false;
    gen->add_option("kind", gen_kind,
                    "equivalence | complete-bipartite | cyclic-order | linear-order | "
                    "colored-hypergraph-tree")
        ->required();
    gen->add_option("params", gen_params, "comma-separated integer parameters")->required();
    gen->add_option("-o,--out", gen_out, "output file (default stdout)");
    gen->add_flag("--json", gen_json, "emit the JSON mirror");

    struct Common {
        std::string structure_path;
        std::string a_text;
        bool json = false;
    };
    auto add_common = [](CLI::App* cmd, Common& c, bool with_a) {
        cmd->add_option("-s,--structure", c.structure_path, "structure file")->required();
        if (with_a) cmd->add_option("-A,--base", c.a_text, "parameter set, e.g. \"0,1\" (\"\" = ∅)");
        cmd->add_flag("--json", c.json, "JSON output");
    };

    auto* orbits_cmd = app.add_subcommand("orbits", "orbit partition over a parameter set");
    Common orbits_c;
    add_common(orbits_cmd, orbits_c, true);

    auto* closure_cmd = app.add_subcommand("closure", "acl_n / acl^Δ_n of a set");
    Common closure_c;
    add_common(closure_cmd, closure_c, true);
    BoundFlags closure_bound;
    add_bound_flags(closure_cmd, closure_bound);
    std::string closure_delta;
    bool closure_iterate = false;
    closure_cmd->add_option("--delta", closure_delta, "Δ file (syntactic closure)");
    closure_cmd->add_flag("--iterate", closure_iterate, "iterate the Δ step to a fixpoint");

    auto* chain_cmd = app.add_subcommand("chain", "ascending chain acl_0 ⊆ acl_1 ⊆ ...");
    Common chain_c;
    add_common(chain_cmd, chain_c, true);

    auto* degree_cmd = app.add_subcommand("degree", "degree of algebraization report");
    Common degree_c;
    add_common(degree_cmd, degree_c, false);
    int degree_max_subset = 2;
    degree_cmd->add_option("--max-subset", degree_max_subset, "max |A| to enumerate");

    auto* diff_cmd = app.add_subcommand("diff", "within-model acl-dcl-difference");
    Common diff_c;
    add_common(diff_cmd, diff_c, false);

    auto* algsets_cmd = app.add_subcommand("algsets", "A-algebraic sets and degrees");
    Common algsets_c;
    add_common(algsets_cmd, algsets_c, true);
    int algsets_max_size = -1;
    algsets_cmd->add_option("--max-size", algsets_max_size, "max cardinality (default N)");

    auto* axioms_cmd = app.add_subcommand("axioms", "pregeometry axiom checks");
    Common axioms_c;
    add_common(axioms_cmd, axioms_c, false);
    bool axioms_semantic = false;
    std::string axioms_delta;
    bool axioms_iterate = false;
    BoundFlags axioms_bound;
    int axioms_subset_cap = 14;
    axioms_cmd->add_flag("--semantic", axioms_semantic, "check the orbit-based operator");
    axioms_cmd->add_option("--delta", axioms_delta, "Δ file (one-step operator)");
    axioms_cmd->add_flag("--iterate", axioms_iterate, "iterate the Δ operator");
    add_bound_flags(axioms_cmd, axioms_bound);
    axioms_cmd->add_option("--subset-cap", axioms_subset_cap, "exhaustive enumeration cap");

    auto* lattice_cmd = app.add_subcommand("lattice", "semilattice/lattice of Δ-operators");
    Common lattice_c;
    add_common(lattice_cmd, lattice_c, false);
    std::string lattice_seeds, lattice_mode = "semilattice", lattice_dot;
    BoundFlags lattice_bound;
    bool lattice_adjoin_acl = false;
    lattice_cmd->add_option("--seeds", lattice_seeds, "comma-separated Δ files")->required();
    lattice_cmd->add_option("--mode", lattice_mode, "semilattice | lattice");
    add_bound_flags(lattice_cmd, lattice_bound);
    lattice_cmd->add_option("--dot", lattice_dot, "write the Hasse diagram as DOT");
    lattice_cmd->add_flag("--adjoin-acl", lattice_adjoin_acl,
                          "adjoin the unbounded semantic closure as a top candidate");

    auto* report_cmd = app.add_subcommand("report", "one-page summary");
    Common report_c;
    add_common(report_cmd, report_c, false);

    std::vector<std::string> argv = args;
    try {
        std::vector<const char*> raw;
        raw.push_back("closurelab");
        for (const auto& a : argv) raw.push_back(a.c_str());
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (gen->parsed()) return run_gen(gen_kind, gen_params, gen_out, gen_json, out);

        auto load = [&](const Common& c) { return parse_structure(read_file(c.structure_path)); };

        if (orbits_cmd->parsed()) {
            Structure s = load(orbits_c);
            return run_orbits(s, parse_elem_set(orbits_c.a_text), orbits_c.json, out);
        }
        if (closure_cmd->parsed()) {
            Structure s = load(closure_c);
            std::optional<LoadedDelta> delta;
            if (!closure_delta.empty()) delta = load_delta(closure_delta, s.signature);
            return run_closure(s, parse_elem_set(closure_c.a_text), closure_bound.resolve(),
                               delta, closure_iterate, closure_c.json, out);
        }
        if (chain_cmd->parsed()) {
            Structure s = load(chain_c);
            return run_chain(s, parse_elem_set(chain_c.a_text), chain_c.json, out);
        }
        if (degree_cmd->parsed()) {
            Structure s = load(degree_c);
            return run_degree(s, degree_max_subset, degree_c.json, out);
        }
        if (diff_cmd->parsed()) {
            Structure s = load(diff_c);
            return run_diff(s, diff_c.json, out);
        }
        if (algsets_cmd->parsed()) {
            Structure s = load(algsets_c);
            int max_size = algsets_max_size < 0 ? s.size : algsets_max_size;
            return run_algsets(s, parse_elem_set(algsets_c.a_text), max_size, algsets_c.json,
                               out);
        }
        if (axioms_cmd->parsed()) {
            Structure s = load(axioms_c);
            bool delta_given = !axioms_delta.empty();
            if (axioms_semantic == delta_given) {
                // Exactly one of --semantic / --delta.
                err << "usage error: pass exactly one of --semantic or --delta FILE\n";
                return 2;
            }
            ClosureOperator op;
            if (axioms_semantic) {
                Bound b = axioms_bound.resolve();
                op = ClosureOperator::semantic("acl_" + b.label(), b);
            } else {
                LoadedDelta d = load_delta(axioms_delta, s.signature);
                op = ClosureOperator::with_delta(d.name, d.formulas, axioms_bound.resolve(),
                                                 axioms_iterate);
            }
            return run_axioms(s, axioms_c.structure_path, op, axioms_bound, axioms_delta,
                              axioms_iterate, axioms_subset_cap, axioms_c.json, out);
        }
        if (lattice_cmd->parsed()) {
            Structure s = load(lattice_c);
            PosetMode mode;
            if (lattice_mode == "semilattice") {
                mode = PosetMode::Semilattice;
            } else if (lattice_mode == "lattice") {
                mode = PosetMode::Lattice;
            } else {
                err << "usage error: --mode must be semilattice or lattice\n";
                return 2;
            }
            std::vector<std::string> seed_paths;
            std::stringstream ss(lattice_seeds);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (!item.empty()) seed_paths.push_back(item);
            }
            return run_lattice(s, seed_paths, mode, lattice_bound.resolve(), lattice_adjoin_acl,
                               lattice_dot, lattice_c.json, out);
        }
        if (report_cmd->parsed()) {
            Structure s = load(report_c);
            return run_report(s, report_c.structure_path, report_c.json, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace closurelab
