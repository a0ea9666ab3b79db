// ev8: exact planar eight-vertex model toolkit.
//
// Subcommands: classify, eval, gadget, holo, grid, lattice, interp, mobius,
// verify, gen, selftest.  Domain errors exit 1 with the module error name on
// stderr; usage errors exit 2.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include <ev8/selftest.hpp>

using namespace ev8;
using nlohmann::json;

namespace {

bool approx_mode() {
    const char* m = std::getenv("HOLANT_MODE");
    return m && std::string(m) == "approx";
}

std::string elem_out(const FieldElem& x) {
    if (!approx_mode() || !x.is_exact()) return x.str();
    auto z = x.to_complex();
    char buf[64];
    std::snprintf(buf, sizeof(buf), " ~(%.6g,%.6g)", z.real(), z.imag());
    return x.str() + buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("FileError", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Sig4 parse_sig4_arg(const std::string& text) {
    if (text == "EQ4") return sig_EQ4();
    if (text == "S") return sig_S();
    if (text == "SPRIME") return sig_SPRIME();
    if (text == "N") return Sig4::from_matrix(mat_N());
    auto vals = parse_field_elem_list(text);
    if (vals.size() != 16) fail("ParseError", "expected 16 field literals or a built-in name");
    Sig4 f;
    std::copy(vals.begin(), vals.end(), f.v.begin());
    return f;
}

Mat2 parse_matrix_arg(const std::string& text) {
    if (text == "H") return mat_H();
    if (text == "Z") return mat_Z();
    if (text == "HZ") return mat_HZ();
    auto semi = text.find(';');
    if (semi == std::string::npos) fail("ParseError", "matrix literal needs 'a,b;c,d'");
    auto top = parse_field_elem_list(text.substr(0, semi));
    auto bot = parse_field_elem_list(text.substr(semi + 1));
    if (top.size() != 2 || bot.size() != 2) fail("ParseError", "matrix literal needs 'a,b;c,d'");
    return mat_rows(top[0], top[1], bot[0], bot[1]);
}

std::string sig_literal(const std::vector<FieldElem>& vals) {
    std::string out;
    for (size_t i = 0; i < vals.size(); ++i) {
        if (i) out += ", ";
        out += vals[i].str();
    }
    return out;
}

// --- gadget expression files -------------------------------------------------

struct ExprFile {
    std::map<std::string, Sig4> sigs4;
    std::map<std::string, Sig2> sigs2;
    std::string expr;
};

ExprFile parse_expr_file(const std::string& text) {
    ExprFile out;
    std::istringstream in(text);
    std::string line;
    bool in_sigs = false, in_expr = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto notspace = line.find_first_not_of(" \t\r");
        if (notspace == std::string::npos) continue;
        std::string s = line.substr(notspace);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t'))
            s.pop_back();
        if (s == "[signatures]") {
            in_sigs = true;
            in_expr = false;
            continue;
        }
        if (s == "[expr]") {
            in_expr = true;
            in_sigs = false;
            continue;
        }
        if (in_sigs) {
            auto eq = s.find('=');
            if (eq == std::string::npos)
                fail("ParseError", "line " + std::to_string(lineno) + ": expected name = values");
            std::string name = s.substr(0, eq);
            while (!name.empty() && name.back() == ' ') name.pop_back();
            auto vals = parse_field_elem_list(s.substr(eq + 1));
            if (vals.size() == 16) {
                Sig4 f;
                std::copy(vals.begin(), vals.end(), f.v.begin());
                out.sigs4[name] = f;
            } else if (vals.size() == 4) {
                out.sigs2[name] = Sig2{vals[0], vals[1], vals[2], vals[3]};
            } else {
                fail("ParseError", "line " + std::to_string(lineno) + ": need 4 or 16 values");
            }
        } else if (in_expr) {
            out.expr += s + " ";
        }
    }
    if (out.expr.empty()) fail("ParseError", "missing [expr] section");
    return out;
}

struct SexpCursor {
    const std::string& s;
    size_t pos = 0;
    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    std::string token() {
        skip();
        size_t start = pos;
        while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
               s[pos] != '(' && s[pos] != ')')
            ++pos;
        if (start == pos) fail("ParseError", "expected token in gadget expression");
        return s.substr(start, pos - start);
    }
    void expect(char c) {
        skip();
        if (pos >= s.size() || s[pos] != c)
            fail("ParseError", std::string("expected '") + c + "' in gadget expression");
        ++pos;
    }
    bool peek_close() {
        skip();
        return pos < s.size() && s[pos] == ')';
    }
};

GadgetPtr parse_sexp(SexpCursor& c, const ExprFile& env) {
    c.expect('(');
    std::string op = c.token();
    GadgetPtr result;
    auto get2 = [&](const std::string& name) -> Sig2 {
        if (name == "NEQ2") return Sig2::neq2();
        if (name == "EQ2") return Sig2::eq2();
        auto it = env.sigs2.find(name);
        if (it == env.sigs2.end()) fail("ParseError", "unknown binary signature " + name);
        return it->second;
    };
    if (op == "leaf") {
        std::string name = c.token();
        auto it = env.sigs4.find(name);
        if (it == env.sigs4.end()) {
            if (name == "EQ4" || name == "S" || name == "SPRIME" || name == "N") {
                result = gd_leaf(parse_sig4_arg(name));
            } else {
                fail("ParseError", "unknown signature " + name);
            }
        } else {
            result = gd_leaf(it->second);
        }
    } else if (op == "rotate") {
        GadgetPtr a = parse_sexp(c, env);
        result = gd_rotate(a, std::stoi(c.token()));
    } else if (op == "connect") {
        GadgetPtr a = parse_sexp(c, env);
        GadgetPtr b = parse_sexp(c, env);
        result = gd_connect(a, b);
    } else if (op == "loop12" || op == "loop34") {
        GadgetPtr a = parse_sexp(c, env);
        Sig2 g = get2(c.token());
        result = gd_loop(a, op == "loop12" ? LoopPair::X1X2 : LoopPair::X3X4, g);
    } else if (op == "bmod") {
        GadgetPtr a = parse_sexp(c, env);
        int var = std::stoi(c.token());
        Sig2 g = get2(c.token());
        result = gd_bmod(a, var, g);
    } else if (op == "chain") {
        GadgetPtr a = parse_sexp(c, env);
        result = gd_chain(a, std::stoi(c.token()));
    } else {
        fail("ParseError", "unknown gadget operation " + op);
    }
    c.expect(')');
    return result;
}

// --- interp spec files ---------------------------------------------------------

InterpolationSystem parse_interp_file(const std::string& text) {
    InterpolationSystem sys;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
        std::string val = line.substr(eq + 1);
        if (key == "k") sys.k = std::stoi(val);
        else if (key == "m") sys.m = std::stoi(val);
        else if (key == "x") sys.base_x = parse_field_elem_list(val);
        else if (key == "y") sys.target_y = parse_field_elem_list(val);
        else if (key == "samples") sys.samples = parse_field_elem_list(val);
        else fail("ParseError", "unknown interp key: " + key);
    }
    return sys;
}

json certificate_json(const ClassLabel& r) {
    json cert = json::array();
    for (const auto& e : r.certificate) {
        json entry = {{"rule", e.rule}, {"condition", e.condition}};
        if (!e.witness.empty()) entry["witness"] = e.witness;
        cert.push_back(entry);
    }
    return cert;
}

void print_result(bool as_json, const std::string& command, const json& inputs,
                  const json& result, const json* certificate = nullptr) {
    if (as_json) {
        json out = {{"command", command}, {"inputs", inputs}, {"result", result}};
        if (certificate) out["certificate"] = *certificate;
        std::cout << out.dump(2) << "\n";
    } else {
        if (result.is_string()) {
            std::cout << result.get<std::string>() << "\n";
        } else {
            std::cout << result.dump(2) << "\n";
        }
        if (certificate)
            for (const auto& e : *certificate)
                std::cout << "  via " << e["rule"].get<std::string>() << ": "
                          << e["condition"].get<std::string>() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact tools for the planar eight-vertex model"};
    app.require_subcommand(1);
    bool as_json = false;
    uint64_t seed = 1;
    int cap = 40;
    app.add_flag("--json", as_json, "emit JSON output");
    app.add_option("--seed", seed, "seed for randomized commands");
    app.add_option("--cap", cap, "brute-force edge cap");

    // classify
    auto* c_classify = app.add_subcommand("classify", "classify an eight-vertex signature");
    std::string params_text;
    c_classify->add_option("--params", params_text, "a,b,c,d,w,x,y,z field literals")
        ->required();

    // eval
    auto* c_eval = app.add_subcommand("eval", "evaluate a grid file");
    std::string engine = "brute", eval_file;
    bool check = false;
    c_eval->add_option("--engine", engine, "brute|fkt|affine|product|auto");
    c_eval->add_flag("--check", check, "cross-check against brute force");
    c_eval->add_option("file", eval_file, "grid file")->required();

    // gadget eval
    auto* c_gadget = app.add_subcommand("gadget", "gadget expression tools");
    auto* c_gadget_eval = c_gadget->add_subcommand("eval", "evaluate a gadget expression file");
    std::string gadget_file;
    c_gadget_eval->add_option("file", gadget_file, "expression file")->required();

    // holo
    auto* c_holo = app.add_subcommand("holo", "holographic transformations");
    auto* c_holo_apply = c_holo->add_subcommand("apply", "apply a transform to a signature");
    std::string holo_t, holo_sig;
    c_holo_apply->add_option("--t", holo_t, "2x2 matrix literal 'a,b;c,d' or H|Z|HZ")
        ->required();
    c_holo_apply->add_option("sig", holo_sig, "signature literal or built-in")->required();
    auto* c_holo_verify = c_holo->add_subcommand("verify", "check the Valiant identity");
    std::string holo_grid;
    c_holo_verify->add_option("--t", holo_t, "2x2 matrix literal")->required();
    c_holo_verify->add_option("file", holo_grid, "grid file")->required();

    // grid
    auto* c_grid = app.add_subcommand("grid", "grid instance tools");
    auto* c_grid_eval = c_grid->add_subcommand("eval", "brute-force holant");
    std::string grid_file;
    c_grid_eval->add_option("file", grid_file, "grid file")->required();
    auto* c_grid_orient = c_grid->add_subcommand("orient", "count orientations");
    bool want_even = false, want_euler = false;
    std::string orient_file;
    c_grid_orient->add_flag("--even", want_even, "count even orientations");
    c_grid_orient->add_flag("--eulerian", want_euler, "count Eulerian orientations");
    c_grid_orient->add_option("file", orient_file, "grid file")->required();
    auto* c_grid_planar = c_grid->add_subcommand("check-planar", "Euler check of the embedding");
    std::string planar_file;
    c_grid_planar->add_option("file", planar_file, "grid file")->required();

    // lattice
    auto* c_lattice = app.add_subcommand("lattice", "multiplicative relation lattices");
    auto* c_lat_basis = c_lattice->add_subcommand("basis", "basis of L_x");
    std::string lat_xs, lat_ys;
    c_lat_basis->add_option("elems", lat_xs, "comma-separated field literals")->required();
    auto* c_lat_subset = c_lattice->add_subcommand("subset", "test L_x subset of L_y");
    c_lat_subset->add_option("xs", lat_xs, "comma-separated field literals")->required();
    c_lat_subset->add_option("ys", lat_ys, "comma-separated field literals")->required();

    // interp
    auto* c_interp = app.add_subcommand("interp", "interpolation solvers");
    auto* c_interp_conf = c_interp->add_subcommand("conformal", "conformal lattice interpolation");
    std::string interp_file;
    c_interp_conf->add_option("file", interp_file, "system spec file")->required();

    // mobius
    auto* c_mobius = app.add_subcommand("mobius", "Moebius transformation orbits");
    auto* c_mobius_orbit = c_mobius->add_subcommand("orbit", "iterate a Moebius map");
    std::string mob_map, mob_t0;
    int mob_n = 10;
    c_mobius_orbit->add_option("--map", mob_map, "a,b,c,d coefficients")->required();
    c_mobius_orbit->add_option("--t0", mob_t0, "start point")->required();
    c_mobius_orbit->add_option("-n", mob_n, "iterations");

    // verify
    auto* c_verify = app.add_subcommand("verify", "verification helpers");
    auto* c_verify_val = c_verify->add_subcommand("valiant", "Valiant identity on a grid");
    c_verify_val->add_option("--t", holo_t, "2x2 matrix literal")->required();
    c_verify_val->add_option("file", holo_grid, "grid file")->required();

    // gen
    auto* c_gen = app.add_subcommand("gen", "generate a random instance grid file");
    std::string gen_kind = "random", gen_out;
    c_gen->add_option("--kind", gen_kind, "affine|product|matchgate|random");
    c_gen->add_option("-o,--output", gen_out, "output path (default stdout)");

    // selftest
    auto* c_selftest = app.add_subcommand("selftest", "run the acceptance criteria");
    int st_grid = 10000;
    c_selftest->add_option("--grid-points", st_grid, "random classifier grid size");

    // allow the global flags (--json, --seed, --cap) after any subcommand
    std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
        for (CLI::App* sub : a->get_subcommands({})) {
            sub->fallthrough();
            allow_fallthrough(sub);
        }
    };
    allow_fallthrough(&app);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_classify) {
            auto vals = parse_field_elem_list(params_text);
            if (vals.size() != 8) fail("ParseError", "--params needs a,b,c,d,w,x,y,z");
            EightVertexParams p{vals[0], vals[1], vals[2], vals[3],
                                vals[4], vals[5], vals[6], vals[7]};
            ClassLabel r = classify_eight_vertex(p);
            json cert = certificate_json(r);
            json result = label_name(r.label);
            if (r.label == Label::Unresolved && !as_json) result = json(std::string(label_name(r.label)) + " (" + r.residual + ")");
            json inputs = {{"params", params_text}};
            if (as_json && r.label == Label::Unresolved) inputs["residual"] = r.residual;
            print_result(as_json, "classify", inputs, result, &cert);
        } else if (*c_eval) {
            PlanarGrid g = parse_grid(read_file(eval_file));
            FieldElem value;
            std::string used = engine;
            if (engine == "brute") {
                value = brute_holant(g, cap);
            } else if (engine == "fkt") {
                value = eval_matchgate_instance(g);
            } else if (engine == "affine") {
                value = eval_affine_instance(g);
            } else if (engine == "product") {
                value = eval_product_instance(g);
            } else if (engine == "auto") {
                try {
                    value = eval_product_instance(g);
                    used = "product";
                } catch (const Error&) {
                    try {
                        value = eval_affine_instance(g);
                        used = "affine";
                    } catch (const Error&) {
                        try {
                            value = eval_matchgate_instance(g);
                            used = "fkt";
                        } catch (const Error&) {
                            value = brute_holant(g, cap);
                            used = "brute";
                        }
                    }
                }
            } else {
                fail("BadEngine", "unknown engine " + engine);
            }
            if (check && used != "brute" && static_cast<int>(g.edges.size()) <= 20) {
                if (!(brute_holant(g, cap) == value))
                    fail("CheckFailed", "engine disagrees with brute force");
            }
            print_result(as_json, "eval", {{"file", eval_file}, {"engine", used}},
                         elem_out(value));
        } else if (*c_gadget_eval) {
            ExprFile env = parse_expr_file(read_file(gadget_file));
            SexpCursor cur{env.expr};
            GadgetPtr e = parse_sexp(cur, env);
            GadgetValue v = eval_gadget(e);
            std::vector<FieldElem> vals;
            if (v.arity == 4)
                vals.assign(v.s4.v.begin(), v.s4.v.end());
            else
                vals.assign(v.s2.v.begin(), v.s2.v.end());
            print_result(as_json, "gadget eval", {{"file", gadget_file}},
                         sig_literal(vals));
        } else if (*c_holo_apply) {
            Transform2 t = make_transform(parse_matrix_arg(holo_t));
            Sig4 f = parse_sig4_arg(holo_sig);
            Sig4 g = transform_sig4(t, f);
            print_result(as_json, "holo apply", {{"t", holo_t}, {"sig", holo_sig}},
                         sig_literal({g.v.begin(), g.v.end()}));
        } else if (*c_holo_verify || *c_verify_val) {
            PlanarGrid g = parse_grid(read_file(holo_grid));
            Transform2 t = make_transform(parse_matrix_arg(holo_t));
            bool ok = verify_valiant(g, t, cap);
            print_result(as_json, "verify valiant", {{"file", holo_grid}, {"t", holo_t}},
                         ok ? "OK" : "MISMATCH");
            if (!ok) return 1;
        } else if (*c_grid_eval) {
            PlanarGrid g = parse_grid(read_file(grid_file));
            print_result(as_json, "grid eval", {{"file", grid_file}},
                         elem_out(brute_holant(g, cap)));
        } else if (*c_grid_orient) {
            PlanarGrid g = parse_grid(read_file(orient_file));
            bool eulerian = want_euler && !want_even;
            long n = count_even_orientations(g, eulerian);
            print_result(as_json, "grid orient",
                         {{"file", orient_file}, {"eulerian", eulerian}},
                         std::to_string(n));
        } else if (*c_grid_planar) {
            PlanarGrid g = parse_grid(read_file(planar_file));
            bool ok = euler_check(g);
            print_result(as_json, "grid check-planar", {{"file", planar_file}},
                         ok ? "OK" : "NOT-PLANAR");
            if (!ok) return 1;
        } else if (*c_lat_basis) {
            auto xs = parse_field_elem_list(lat_xs);
            LatticeBasis b = lattice_basis(xs);
            json rows = json::array();
            std::string text;
            for (const auto& row : b.rows) {
                json r = json::array();
                std::string line = "(";
                for (size_t i = 0; i < row.size(); ++i) {
                    r.push_back(row[i].get_str());
                    line += (i ? "," : "") + row[i].get_str();
                }
                rows.push_back(r);
                text += line + ")  ";
            }
            json result = as_json ? json{{"rank", b.rank()}, {"basis", rows}}
                                  : json("rank " + std::to_string(b.rank()) + "  " + text);
            print_result(as_json, "lattice basis", {{"elems", lat_xs}}, result);
        } else if (*c_lat_subset) {
            bool ok = lattice_subset(parse_field_elem_list(lat_xs), parse_field_elem_list(lat_ys));
            print_result(as_json, "lattice subset", {{"xs", lat_xs}, {"ys", lat_ys}},
                         ok ? "SUBSET" : "NOT-SUBSET");
        } else if (*c_interp_conf) {
            InterpolationSystem sys = parse_interp_file(read_file(interp_file));
            FieldElem v = conformal_interpolate(sys);
            print_result(as_json, "interp conformal", {{"file", interp_file}}, elem_out(v));
        } else if (*c_mobius_orbit) {
            auto coeffs = parse_field_elem_list(mob_map);
            if (coeffs.size() != 4) fail("ParseError", "--map needs a,b,c,d");
            MobiusMap map{coeffs[0], coeffs[1], coeffs[2], coeffs[3]};
            OrbitReport rep = mobius_orbit(map, parse_field_elem(mob_t0), mob_n);
            json pts = json::array();
            for (const auto& z : rep.points) pts.push_back(z.str());
            json result = {{"points", pts},
                           {"all_distinct", rep.all_distinct},
                           {"all_on_unit_circle", rep.all_unimodular},
                           {"period", rep.period}};
            print_result(as_json, "mobius orbit", {{"map", mob_map}, {"t0", mob_t0}}, result);
        } else if (*c_gen) {
            Rng rng(seed);
            Sig4 f;
            if (gen_kind == "affine") f = gen_affine(rng);
            else if (gen_kind == "product") f = gen_product(rng);
            else if (gen_kind == "matchgate") f = gen_matchgate(rng);
            else f = gen_eightv(rng);
            PlanarGrid g = gen_grid(rng, f);
            std::string text = "# seed " + std::to_string(seed) + " kind " + gen_kind + "\n" +
                               serialize_grid(g);
            if (gen_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(gen_out);
                out << text;
            }
        } else if (*c_selftest) {
            auto results = run_acceptance(seed, st_grid);
            bool all = true;
            for (const auto& r : results) {
                std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": "
                          << r.name << "\n";
                std::cerr << "      [" << r.seconds << "s / budget " << r.budget << "s] "
                          << r.detail << "\n";
                all = all && r.pass;
            }
            std::cout << (all ? "ACCEPTANCE: all criteria passed"
                               : "ACCEPTANCE: some criteria FAILED")
                      << "\n";
            if (!all) return 1;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "InternalError: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
