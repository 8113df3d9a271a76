// Command-line frontend: validation, construction, normalization and
// reporting over the JSON file formats. Exit codes: 0 success,
// 1 validation failure, 2 I/O or format error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dk/chains.hpp"

using namespace dk;
using nlohmann::json;

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << text;
}

bool is_preset(const std::string& source) {
    for (const char* p : {"delta-min:", "delta-max:", "gamma:", "fi-sharp:"})
        if (source.rfind(p, 0) == 0) return true;
    return false;
}

TripleData triple_source(const std::string& source) {
    if (is_preset(source)) return preset_triple(source);
    return triple_from_json(slurp(source));
}

// Diagram shape refs: a triple source means its base category, a triple
// source suffixed with ::n0 means the normalized pointed shape.
MatDiagram load_diagram(const std::string& path, const DKTriple& t, bool over_n0) {
    DiagramFile f = diagram_file_from_json(slurp(path));
    if (over_n0) return diagram_from_file(f, build_N0(t).n0);
    return diagram_from_file(f, t.B);
}

std::string grid_text(const FinCategory& B, const PairingData& p) {
    std::ostringstream out;
    out << "  pairing at " << B.objects[p.object] << " (rows: Epi classes, cols: dual Epi classes)\n";
    for (size_t r = 0; r < p.iso_entry.size(); ++r) {
        out << "    ";
        for (size_t c = 0; c < p.iso_entry[r].size(); ++c)
            out << (p.iso_entry[r][c] ? "iso " : " .  ");
        out << "\n";
    }
    return out.str();
}

json grid_json(const PairingData& p) {
    json g;
    g["object"] = p.object;
    g["rows"] = p.rows.reps;
    g["cols"] = p.cols.reps;
    json entries = json::array();
    for (const auto& row : p.iso_entry) {
        json r = json::array();
        for (bool v : row) r.push_back(v);
        entries.push_back(r);
    }
    g["iso"] = entries;
    g["matching"] = p.matching;
    g["order"] = p.order;
    return g;
}

struct Reporter {
    std::string path;
    json body = json::object();

    void emit() const {
        if (!path.empty()) spit(path, body.dump(2) + "\n");
    }
};

int cmd_validate(const std::string& source, Reporter& rep) {
    TripleData t = triple_source(source);
    ValidationReport r = validate_triple_report(t);
    rep.body["command"] = "validate";
    rep.body["input"] = source;
    json axioms = json::object();
    for (const AxiomReport& a : r.axioms) {
        std::cout << a.axiom << ": " << (a.pass ? "PASS" : "FAIL") << (a.pass ? "" : " - " + a.detail)
                  << "\n";
        axioms[a.axiom] = a.pass;
        if (!a.pass) axioms[a.axiom + "_detail"] = a.detail;
    }
    rep.body["axioms"] = axioms;
    json grids = json::array();
    for (const PairingData& p : r.pairings) {
        std::cout << grid_text(t.B, p);
        grids.push_back(grid_json(p));
    }
    rep.body["pairings"] = grids;
    if (r.pass()) {
        DKTriple v = validate_triple(t);
        rep.body["diagonalizable"] = is_diagonalizable(v);
        rep.body["reduced"] = is_reduced(v);
        rep.body["monotone"] = is_monotone(v);
        rep.body["partially_monotone"] = is_partially_monotone(v);
        std::cout << "diagonalizable: " << (is_diagonalizable(v) ? "true" : "false") << "\n";
    }
    rep.body["pass"] = r.pass();
    std::cout << (r.pass() ? "PASS" : "FAIL") << "\n";
    return r.pass() ? 0 : 1;
}

int cmd_build(const std::string& source, const std::string& target, const std::string& out,
              Reporter& rep) {
    DKTriple t = validate_triple(triple_source(source));
    FinCategory built = target == "n0" ? build_N0(t).n0.base : build_V(t).v.base;
    std::string text = category_to_json(built);
    validate_category(category_from_json(text));  // reload check
    spit(out, text);
    rep.body["command"] = "build";
    rep.body["input"] = source;
    rep.body["target"] = target;
    rep.body["out"] = out;
    rep.body["objects"] = built.objects.size();
    rep.body["arrows"] = built.arrows.size();
    std::cout << "wrote " << out << " (" << built.objects.size() << " objects, "
              << built.arrows.size() << " arrows)\n";
    return 0;
}

json witness_json(const DKTriple& t, const EquivalenceWitness& w) {
    json j;
    j["ring"] = w.ring.to_string();
    j["nbar"] = w.nbar;
    auto mat_entries = [&w](const Matrix& m) {
        std::vector<std::string> out;
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) out.push_back(scalar_to_string(w.ring, m.at(r, c)));
        return out;
    };
    json per = json::object();
    for (size_t b = 0; b < t.B.objects.size(); ++b) {
        json o;
        o["incl"] = mat_entries(w.incl[b]);
        o["proj"] = mat_entries(w.proj[b]);
        if (t.order.rep[b] == static_cast<int>(b)) {
            o["phi"] = mat_entries(w.phi[b]);
            o["phi_blocks"] = w.phi_blocks[b];
            o["block_order"] = w.block_order[b];
        }
        per[t.B.objects[b]] = o;
    }
    j["objects"] = per;
    return j;
}

int cmd_normalize(const std::string& source, const std::string& diagram, const std::string& out,
                  const std::string& witness_out, Reporter& rep) {
    DKTriple t = validate_triple(triple_source(source));
    MatDiagram x = load_diagram(diagram, t, false);
    NormalizationResult n = normalize(t, x);
    spit(out, diagram_file_to_json(diagram_to_file(n.normalized, source + "::n0")));
    if (!witness_out.empty()) spit(witness_out, witness_json(t, n.witness).dump(2) + "\n");
    rep.body["command"] = "normalize";
    rep.body["input"] = diagram;
    rep.body["triple"] = source;
    rep.body["out"] = out;
    rep.body["dims"] = x.dims;
    rep.body["normalized_dims"] = n.witness.nbar;
    std::cout << "normalized dims:";
    for (int d : n.witness.nbar) std::cout << " " << d;
    std::cout << "\nwrote " << out << "\n";
    return 0;
}

int cmd_denormalize(const std::string& source, const std::string& diagram, const std::string& out,
                    Reporter& rep) {
    DKTriple t = validate_triple(triple_source(source));
    MatDiagram ybar = load_diagram(diagram, t, true);
    MatDiagram y = denormalize(t, ybar);
    spit(out, diagram_file_to_json(diagram_to_file(y, source)));
    rep.body["command"] = "denormalize";
    rep.body["input"] = diagram;
    rep.body["triple"] = source;
    rep.body["out"] = out;
    rep.body["dims"] = y.dims;
    std::cout << "denormalized dims:";
    for (int d : y.dims) std::cout << " " << d;
    std::cout << "\nwrote " << out << "\n";
    return 0;
}

int cmd_roundtrip(const std::string& source, const std::string& diagram, Reporter& rep) {
    DKTriple t = validate_triple(triple_source(source));
    MatDiagram x = load_diagram(diagram, t, false);
    RoundtripResult fwd = roundtrip_check(t, x);
    RoundtripResult bwd = reverse_roundtrip_check(t, normalize(t, x).normalized);
    rep.body["command"] = "roundtrip";
    rep.body["triple"] = source;
    rep.body["input"] = diagram;
    rep.body["forward_invertible"] = fwd.invertible;
    rep.body["forward_natural"] = fwd.natural;
    rep.body["backward_invertible"] = bwd.invertible;
    rep.body["backward_natural"] = bwd.natural;
    bool pass = fwd.pass() && bwd.pass();
    rep.body["pass"] = pass;
    std::cout << "forward: " << (fwd.pass() ? "PASS" : "FAIL") << "\nbackward: "
              << (bwd.pass() ? "PASS" : "FAIL") << "\n";
    return pass ? 0 : 1;
}

int cmd_audit(const std::string& source, const std::string& diagram, Reporter& rep) {
    DKTriple t = validate_triple(triple_source(source));
    MatDiagram x = load_diagram(diagram, t, false);
    rep.body["command"] = "audit";
    rep.body["triple"] = source;
    rep.body["input"] = diagram;
    json objs = json::array();
    bool pass = true;
    for (size_t n = 0; n < t.B.objects.size(); ++n) {
        AuditReport a = section_retraction_audit(t, x, static_cast<int>(n));
        json o;
        o["object"] = t.B.objects[n];
        o["dim"] = a.dim_x;
        o["lim"] = a.dim_lim;
        o["colim"] = a.dim_colim;
        o["normalized"] = a.dim_nbar;
        o["pass"] = a.pass();
        objs.push_back(o);
        pass = pass && a.pass();
        std::cout << t.B.objects[n] << ": dim " << a.dim_x << " = colim " << a.dim_colim
                  << " + normalized " << a.dim_nbar << " -> " << (a.pass() ? "PASS" : "FAIL")
                  << "\n";
    }
    rep.body["objects"] = objs;
    rep.body["pass"] = pass;
    return pass ? 0 : 1;
}

int cmd_kan(const std::string& source, const std::string& diagram, int level, Reporter& rep) {
    DKTriple t = validate_triple(triple_source(source));
    MatDiagram x = load_diagram(diagram, t, false);
    rep.body["command"] = "kan-check";
    rep.body["triple"] = source;
    rep.body["input"] = diagram;
    rep.body["level"] = level;
    json objs = json::array();
    bool agree = true;
    for (size_t n = 0; n < t.B.objects.size(); ++n) {
        KanReport k = kan_detector(t, x, static_cast<int>(n));
        json o;
        o["object"] = t.B.objects[n];
        o["vanishing"] = k.vanishing;
        o["limit_cone_iso"] = k.limit_cone_iso;
        objs.push_back(o);
        agree = agree && k.agree();
    }
    bool truncated = truncation_detector(t, x, level);
    rep.body["objects"] = objs;
    rep.body["criteria_agree"] = agree;
    rep.body["truncated"] = truncated;
    std::cout << "truncated at level " << level << ": " << (truncated ? "true" : "false")
              << "\ncriteria agree: " << (agree ? "true" : "false") << "\n";
    return agree ? 0 : 1;
}

int cmd_homology(const std::string& preset, int k, const std::string& ring_name, Reporter& rep) {
    Ring ring = Ring::parse(ring_name);
    SimplicialVectorSpace sv = simplicial_preset(preset, k, ring);
    ChainComplexData moore = moore_oracle(sv);
    std::vector<int> betti = homology(moore);
    rep.body["command"] = "homology";
    rep.body["preset"] = preset;
    rep.body["k"] = k;
    rep.body["ring"] = ring.to_string();
    rep.body["moore_dims"] = moore.dims;
    rep.body["betti"] = betti;
    std::cout << "betti:";
    for (int b : betti) std::cout << " " << b;
    std::cout << "\n";
    return 0;
}

int cmd_dk(const std::string& source, const std::string& simplicial, Reporter& rep) {
    DKTriple t = validate_triple(triple_source(source));
    int k = static_cast<int>(t.B.objects.size()) - 1;
    SimplicialVectorSpace sv = simplicial_preset(simplicial, k, Ring::Q());
    MatDiagram x = to_engine_diagram(sv);
    NormalizationResult n = normalize(t, x);
    ChainComplexData cc = to_chain_complex(t, n.n0, n.normalized);
    ChainComplexData moore = moore_oracle(sv);
    std::vector<int> h = homology(cc), hm = homology(moore);
    bool agree = cc.dims == moore.dims && h == hm;
    rep.body["command"] = "dk";
    rep.body["triple"] = source;
    rep.body["simplicial"] = simplicial;
    rep.body["normalized_dims"] = cc.dims;
    rep.body["moore_dims"] = moore.dims;
    rep.body["betti"] = h;
    rep.body["moore_betti"] = hm;
    rep.body["oracle_agreement"] = agree;
    std::cout << "normalized dims:";
    for (int d : cc.dims) std::cout << " " << d;
    std::cout << "\ndifferentials:\n";
    for (size_t i = 1; i < cc.d.size(); ++i)
        std::cout << "  degree " << i << " ->\n" << cc.d[i].to_string();
    std::cout << "betti:";
    for (int b : h) std::cout << " " << b;
    std::cout << "\noracle agreement: " << (agree ? "PASS" : "FAIL") << "\n";
    return agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite Dold-Kan style equivalence engine"};
    app.require_subcommand(1);
    std::string report_path;
    app.add_option("--report", report_path, "write a machine-readable JSON report");

    std::string triple, diagram, out, witness, target = "n0", preset, simplicial;
    std::string ring_name = "Q";
    if (const char* env = std::getenv("DK_RING")) ring_name = env;
    int level = 0, k = 2;

    auto* validate = app.add_subcommand("validate", "check the triple axioms");
    validate->add_option("triple", triple)->required();

    auto* build = app.add_subcommand("build", "emit a constructed category");
    build->add_option("triple", triple)->required();
    build->add_option("--target", target)->check(CLI::IsMember({"n0", "v"}));
    build->add_option("--out", out)->required();

    auto* norm = app.add_subcommand("normalize", "normalize a diagram");
    norm->add_option("--triple", triple)->required();
    norm->add_option("--diagram", diagram)->required();
    norm->add_option("--out", out)->required();
    norm->add_option("--witness", witness);

    auto* denorm = app.add_subcommand("denormalize", "denormalize a pointed diagram");
    denorm->add_option("--triple", triple)->required();
    denorm->add_option("--diagram", diagram)->required();
    denorm->add_option("--out", out)->required();

    auto* round = app.add_subcommand("roundtrip", "verify the equivalence both ways");
    round->add_option("--triple", triple)->required();
    round->add_option("--diagram", diagram)->required();

    auto* audit = app.add_subcommand("audit", "section-retraction audit per object");
    audit->add_option("--triple", triple)->required();
    audit->add_option("--diagram", diagram)->required();

    auto* kan = app.add_subcommand("kan-check", "Kan / truncation detection");
    kan->add_option("--triple", triple)->required();
    kan->add_option("--diagram", diagram)->required();
    kan->add_option("--level", level)->required();

    auto* hom = app.add_subcommand("homology", "Moore homology of a simplicial preset");
    hom->add_option("--preset", preset)->required();
    hom->add_option("--k", k)->required();
    hom->add_option("--ring", ring_name);

    auto* dk_cmd = app.add_subcommand("dk", "normalize a simplicial preset and compare oracles");
    dk_cmd->add_option("--preset", triple)->required();
    dk_cmd->add_option("--simplicial", simplicial)->required();

    CLI11_PARSE(app, argc, argv);

    Reporter rep;
    rep.path = report_path;
    auto started = std::chrono::steady_clock::now();
    int code = 2;
    try {
        if (validate->parsed()) code = cmd_validate(triple, rep);
        else if (build->parsed()) code = cmd_build(triple, target, out, rep);
        else if (norm->parsed()) code = cmd_normalize(triple, diagram, out, witness, rep);
        else if (denorm->parsed()) code = cmd_denormalize(triple, diagram, out, rep);
        else if (round->parsed()) code = cmd_roundtrip(triple, diagram, rep);
        else if (audit->parsed()) code = cmd_audit(triple, diagram, rep);
        else if (kan->parsed()) code = cmd_kan(triple, diagram, level, rep);
        else if (hom->parsed()) code = cmd_homology(preset, k, ring_name, rep);
        else if (dk_cmd->parsed()) code = cmd_dk(triple, simplicial, rep);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        // validation failures (axioms, functoriality, witnesses)
        std::cerr << "validation failure: " << e.what() << "\n";
        if (!rep.path.empty()) {
            rep.body["pass"] = false;
            rep.body["error"] = e.what();
            rep.emit();
        }
        return 1;
    }
    // wall time goes to the human side only, keeping reports byte-stable
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    std::cout << "done in " << elapsed.count() << " ms\n";
    rep.emit();
    return code;
}
