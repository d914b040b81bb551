#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "acceptance_suite.hpp"
#include "orbsp/io.hpp"

using namespace orbsp;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kInputError = 2;

struct RunConfig {
    std::string surface, tri, colored, quiver, matrix, sp, out;
    std::string xi;
    std::string which = "q";
    long long p = 5, z = 0;
    int arc = -1, vertex = -1, arrow = -1, cutoff = 0, config = 0, samples = 4, cap = 0;
    std::size_t limit = 1000;
    bool quotient = false, hat = false, no_reduce = false;
};

int emit(const RunConfig& rc, const json& j) {
    if (rc.out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(rc.out);
        if (!f) throw Error(Errc::Malformed, "cannot write " + rc.out);
        f << j.dump(2) << "\n";
    }
    return kOk;
}

SurfaceSpec load_surface(const RunConfig& rc) {
    const json j = read_json_file(rc.surface);
    return surface_from_json(j.contains("surface") ? j.at("surface") : j);
}

Triangulation load_tri(const RunConfig& rc) {
    if (!rc.tri.empty()) return triangulation_from_json(read_json_file(rc.tri));
    if (!rc.colored.empty()) return colored_from_json(read_json_file(rc.colored)).tri;
    if (!rc.surface.empty()) return seed_triangulation(load_surface(rc));
    throw Error(Errc::Malformed, "need --tri, --colored or --surface");
}

std::vector<int> parse_keys(const std::string& s) {
    std::vector<int> keys;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        try {
            std::size_t used = 0;
            keys.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw Error(Errc::Malformed, "bad arrow key \"" + tok + "\" in --xi");
        }
    }
    return keys;
}

ColoredTriangulation load_colored(const RunConfig& rc) {
    if (!rc.colored.empty()) return colored_from_json(read_json_file(rc.colored));
    Triangulation T = load_tri(rc);
    const auto cx = build_complex(T, false);
    return make_colored(std::move(T), cochain_from_keys(cx, parse_keys(rc.xi)));
}

FieldTower tower(const RunConfig& rc) { return build_tower(rc.p, rc.z); }

SP load_sp(const RunConfig& rc) {
    if (!rc.sp.empty()) return sp_from_json(read_json_file(rc.sp));
    return build_sp(load_colored(rc), tower(rc));
}

std::optional<int> cutoff_opt(const RunConfig& rc) {
    if (rc.cutoff > 0) return rc.cutoff;
    return std::nullopt;
}

void require_arc(const Triangulation& T, int k) {
    if (k < 0 || k >= T.num_arcs()) throw Error(Errc::NotAnArc, "--arc " + std::to_string(k) + " is not an arc");
}

json census_json(const Census& c) {
    json rows = json::array();
    for (const auto& r : c) rows.push_back(r);
    return rows;
}

int cmd_validate(const RunConfig& rc) {
    if (!rc.surface.empty() && rc.tri.empty()) {
        const auto vs = validate_surface(load_surface(rc));
        return emit(rc, {{"valid", true}, {"surface", to_json(vs.spec())}});
    }
    const Triangulation T = load_tri(rc);
    to_matrix(build_quivers(T).q);
    return emit(rc, {{"valid", true}, {"arcs", T.num_arcs()}, {"triangles", T.num_triangles()}});
}

int cmd_counts(const RunConfig& rc) {
    std::optional<Triangulation> T;
    SurfaceSpec s;
    if (!rc.tri.empty()) {
        T = load_tri(rc);
        s = T->surface().spec();
    } else {
        s = load_surface(rc);
    }
    const auto vs = validate_surface(s);
    const auto r = closed_form_counts(vs);
    json j{{"e", r.e}, {"h", r.h}, {"dimH1", r.dimH1}, {"dimH1hat", r.dimH1hat},
           {"flip_graph_components", r.flip_graph_components}, {"b", s.b()}, {"m", s.m()}, {"o", s.o()}, {"u", s.u()}};
    if (T) {
        j["arcs"] = T->num_arcs();
        j["triangles"] = T->num_triangles();
        j["census"] = census_json(census(*T));
    }
    return emit(rc, j);
}

int cmd_flip(const RunConfig& rc) {
    const Triangulation T = load_tri(rc);
    require_arc(T, rc.arc);
    return emit(rc, to_json(flip(T, rc.arc)));
}

WeightedQuiver pick_quiver(const Triangulation& T, const std::string& which) {
    auto qs = build_quivers(T);
    if (which == "q") return qs.q;
    if (which == "qbar") return qs.qbar;
    if (which == "qprime") return qs.qprime;
    if (which == "qdp") return qs.qdp;
    throw Error(Errc::Malformed, "--which must be q, qbar, qprime or qdp");
}

int cmd_quiver(const RunConfig& rc) { return emit(rc, to_json(pick_quiver(load_tri(rc), rc.which))); }

int cmd_matrix(const RunConfig& rc) {
    const WeightedQuiver q = rc.quiver.empty() ? build_quivers(load_tri(rc)).q : quiver_from_json(read_json_file(rc.quiver));
    return emit(rc, to_json(to_matrix(q), q.vertices));
}

int cmd_mutate(const RunConfig& rc) {
    if (!rc.matrix.empty()) {
        const json j = read_json_file(rc.matrix);
        MatrixPair M = matrix_from_json(j);
        std::vector<int> vs = j.value("vertices", std::vector<int>{});
        if (vs.empty())
            for (int i = 0; i < M.B.n; ++i) vs.push_back(i);
        if (static_cast<int>(vs.size()) != M.B.n) throw Error(Errc::Malformed, "one vertex per row of B");
        const auto it = std::find(vs.begin(), vs.end(), rc.vertex);
        if (it == vs.end()) throw Error(Errc::Malformed, "--vertex not in matrix");
        if (!skew_symmetrizable(M)) throw Error(Errc::Malformed, "D B is not skew-symmetric");
        M.B = mutate_matrix(M.B, static_cast<int>(it - vs.begin()));
        return emit(rc, to_json(M, vs));
    }
    const WeightedQuiver q = rc.quiver.empty() ? build_quivers(load_tri(rc)).q : quiver_from_json(read_json_file(rc.quiver));
    return emit(rc, to_json(mutate_weighted(q, rc.vertex)));
}

int cmd_cohomology(const RunConfig& rc) {
    const Triangulation T = load_tri(rc);
    const auto cx = build_complex(T, rc.hat);
    const auto H = cohomology(cx);
    const auto r = closed_form_counts(T.surface());
    json basis = json::array();
    for (const auto& x : H.H1) basis.push_back(cochain_keys(cx, x));
    return emit(rc, {{"hat", rc.hat}, {"dimZ1", H.dimZ1}, {"dimB1", H.dimB1}, {"dimH1", H.dimH1},
                     {"expected_dimH1", rc.hat ? r.dimH1hat : r.dimH1}, {"H1", basis}});
}

int cmd_lift(const RunConfig& rc) {
    const auto ct = load_colored(rc);
    const auto hx = build_complex(ct.tri, true);
    return emit(rc, {{"xi", cochain_to_json(build_complex(ct.tri, false), ct.xi)}, {"xi_hat", cochain_keys(hx, ct.xi_hat())}});
}

int cmd_cflip(const RunConfig& rc) {
    const auto ct = load_colored(rc);
    require_arc(ct.tri, rc.arc);
    return emit(rc, to_json(colored_flip(ct, rc.arc)));
}

int cmd_flipgraph(const RunConfig& rc) {
    std::vector<ColoredTriangulation> seeds;
    if (!rc.colored.empty() || !rc.xi.empty()) seeds.push_back(load_colored(rc));
    else seeds = all_class_seeds(load_tri(rc), rc.quotient);
    const auto g = flip_graph_explore(seeds, rc.limit, rc.quotient);
    std::set<int> distinct(g.seed_component.begin(), g.seed_component.end());
    return emit(rc, {{"quotient", rc.quotient}, {"limit", rc.limit}, {"vertices", g.vertices}, {"edges", g.edges},
                     {"components", g.components}, {"overflow", g.overflow}, {"seeds", seeds.size()},
                     {"seed_components", distinct.size()}});
}

int cmd_species(const RunConfig& rc) {
    const auto ct = load_colored(rc);
    const Species S = build_species(ct, tower(rc));
    json j = to_json(S);
    j["matches_matrix"] = species_matches_matrix(S, build_quivers(ct.tri).q);
    return emit(rc, j);
}

int cmd_potential(const RunConfig& rc) { return emit(rc, to_json(load_sp(rc))); }

int cmd_derive(const RunConfig& rc) {
    const SP sp = load_sp(rc);
    json out = json::array();
    for (const auto& a : sp.sp.arrows) {
        if (rc.arrow >= 0 && a.id != rc.arrow) continue;
        const PathElem d = cyclic_derivative(sp.sp, sp.S, a.id);
        out.push_back({{"arrow", a.id}, {"name", a.name}, {"derivative", to_json(d)}, {"text", to_string(sp.sp, d)}});
    }
    if (rc.arrow >= 0 && out.empty()) throw Error(Errc::Malformed, "no arrow " + std::to_string(rc.arrow));
    return emit(rc, out);
}

int cmd_jacdim(const RunConfig& rc) {
    const auto r = jacobian_dimension(load_sp(rc), cutoff_opt(rc));
    return emit(rc, {{"dim", r.dim}, {"certified", r.certified}, {"cutoff", r.cutoff}});
}

int cmd_center(const RunConfig& rc) {
    const SP sp = load_sp(rc);
    const int t = rc.cutoff > 0 ? rc.cutoff : resolve_cutoff(sp);
    return emit(rc, {{"center_dim", center_dimension(sp, t)}, {"cutoff", t}});
}

int cmd_spmut(const RunConfig& rc) {
    SP sp;
    int next_t = -1;
    if (!rc.sp.empty()) {
        sp = sp_from_json(read_json_file(rc.sp));
    } else {
        const auto ct = load_colored(rc);
        require_arc(ct.tri, rc.arc);
        sp = build_sp(ct, tower(rc));
        if (!sp.closed) next_t = marked_point_valency(flip(ct.tri, rc.arc));
    }
    const Premutation pm = premutate(sp, rc.arc);
    json j{{"k", rc.arc}, {"premutated", to_json(pm.sp)}};
    if (!rc.no_reduce) {
        const int cap = rc.cap > 0 ? rc.cap : (next_t > 0 ? next_t + 2 : 12);
        SP red = reduce(pm.sp, cap);
        red.auto_t = next_t;
        j["reduced"] = to_json(red);
    }
    return emit(rc, j);
}

int cmd_verify_main_theorem(const RunConfig& rc) {
    const auto K = tower(rc);
    const auto ci = config_instance(rc.config);
    bool ok = true;
    for (const auto& xi : sample_cocycles(ci.tri, static_cast<std::size_t>(std::max(1, rc.samples)))) {
        const auto r = verify_main_theorem(ci, xi, K);
        std::printf("config %d k=%d xi=%s displayed=%s quiver=%s jacobian=%s dims %lld/%lld%s%s\n", r.config, ci.k,
                    r.cocycle.c_str(), r.displayed ? "yes" : "no", r.quiver ? "yes" : "no", r.jacobian ? "yes" : "no",
                    r.dim_mutated, r.dim_sigma, r.note.empty() ? "" : " ", r.note.c_str());
        ok = ok && r.ok();
    }
    std::printf("%s\n", ok ? "PASS" : "FAIL");
    return ok ? kOk : kVerificationFailed;
}

int cmd_verify_all(const RunConfig&) {
    int failed = 0;
    for (const auto& r : acceptance::run_all()) {
        std::printf("[%s] %2d %s: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
        std::fflush(stdout);
        failed += !r.pass;
    }
    std::printf("%d/12 criteria passed\n", 12 - failed);
    return failed ? kVerificationFailed : kOk;
}

int exit_code_for(Errc c) {
    switch (c) {
    case Errc::NotCertified:
    case Errc::LiftMismatch:
    case Errc::NonInvertiblePairing:
        return kVerificationFailed;
    default:
        return kInputError;
    }
}

void report_error(const std::string& code, const std::string& message) {
    std::cerr << json{{"error", code}, {"message", message}}.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Triangulations of orbifolds, colored flips and species with potential"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig rc;
    app.add_option("--p", rc.p, "prime congruent to 1 mod 4")->capture_default_str();
    app.add_option("--z", rc.z, "quadratic non-residue mod p (0 picks the smallest)")->capture_default_str();
    app.add_option("--out", rc.out, "write JSON here instead of stdout");

    std::function<int(const RunConfig&)> action;
    auto sub = [&](const std::string& name, const std::string& help, int (*fn)(const RunConfig&)) {
        auto* s = app.add_subcommand(name, help);
        s->callback([&action, fn] { action = fn; });
        return s;
    };
    auto tri_in = [&](CLI::App* s) {
        s->add_option("--tri", rc.tri, "triangulation JSON")->check(CLI::ExistingFile);
        s->add_option("--surface", rc.surface, "surface JSON (uses the built-in triangulation)")->check(CLI::ExistingFile);
    };
    auto colored_in = [&](CLI::App* s) {
        tri_in(s);
        s->add_option("--colored", rc.colored, "colored triangulation JSON")->check(CLI::ExistingFile);
        s->add_option("--xi", rc.xi, "cocycle as comma-separated arrow keys (default 0)");
    };
    auto sp_in = [&](CLI::App* s) {
        colored_in(s);
        s->add_option("--sp", rc.sp, "species with potential JSON")->check(CLI::ExistingFile);
    };

    tri_in(sub("validate", "validate a surface or triangulation", cmd_validate));
    tri_in(sub("counts", "closed-form arc, triangle and cohomology counts", cmd_counts));
    auto* flip_cmd = sub("flip", "flip an arc", cmd_flip);
    tri_in(flip_cmd);
    flip_cmd->add_option("--arc", rc.arc, "arc to flip")->required();
    auto* quiver_cmd = sub("quiver", "weighted quiver of a triangulation", cmd_quiver);
    tri_in(quiver_cmd);
    quiver_cmd->add_option("--which", rc.which, "q, qbar, qprime or qdp")->capture_default_str();
    auto* matrix_cmd = sub("matrix", "skew-symmetrizable matrix (B, D)", cmd_matrix);
    tri_in(matrix_cmd);
    matrix_cmd->add_option("--quiver", rc.quiver, "quiver JSON")->check(CLI::ExistingFile);
    auto* mutate_cmd = sub("mutate", "mutate a weighted quiver or matrix", cmd_mutate);
    tri_in(mutate_cmd);
    mutate_cmd->add_option("--quiver", rc.quiver, "quiver JSON")->check(CLI::ExistingFile);
    mutate_cmd->add_option("--matrix", rc.matrix, "matrix JSON")->check(CLI::ExistingFile);
    mutate_cmd->add_option("--vertex", rc.vertex, "mutation vertex")->required();
    auto* coh_cmd = sub("cohomology", "cohomology of C or of the hat complex", cmd_cohomology);
    tri_in(coh_cmd);
    coh_cmd->add_flag("--hat", rc.hat, "use the hat complex");
    colored_in(sub("lift", "lift a cocycle to the hat complex", cmd_lift));
    auto* cflip_cmd = sub("cflip", "colored flip", cmd_cflip);
    colored_in(cflip_cmd);
    cflip_cmd->add_option("--arc", rc.arc, "arc to flip")->required();
    auto* fg_cmd = sub("flipgraph", "explore the colored flip graph", cmd_flipgraph);
    colored_in(fg_cmd);
    fg_cmd->add_flag("--quotient", rc.quotient, "identify cohomologous colorings");
    fg_cmd->add_option("--limit", rc.limit, "vertex limit")->capture_default_str();
    colored_in(sub("species", "species of a colored triangulation", cmd_species));
    sp_in(sub("potential", "species with potential", cmd_potential));
    auto* derive_cmd = sub("derive", "cyclic derivatives of the potential", cmd_derive);
    sp_in(derive_cmd);
    derive_cmd->add_option("--arrow", rc.arrow, "single arrow id (default all)");
    auto* jac_cmd = sub("jacdim", "Jacobian algebra dimension", cmd_jacdim);
    sp_in(jac_cmd);
    jac_cmd->add_option("--cutoff", rc.cutoff, "truncate at paths of this length (uncertified)");
    auto* center_cmd = sub("center", "dimension of the center of the Jacobian algebra", cmd_center);
    sp_in(center_cmd);
    center_cmd->add_option("--cutoff", rc.cutoff, "cutoff (default: the certified surface bound)");
    auto* spmut_cmd = sub("spmut", "premutation and reduction at a vertex", cmd_spmut);
    sp_in(spmut_cmd);
    spmut_cmd->add_option("--arc", rc.arc, "mutation vertex")->required();
    spmut_cmd->add_option("--cap", rc.cap, "degree cap for the reduction");
    spmut_cmd->add_flag("--no-reduce", rc.no_reduce, "stop after premutation");
    auto* vmt_cmd = sub("verify-main-theorem", "premutate + reduce against the colored flip", cmd_verify_main_theorem);
    vmt_cmd->add_option("--config", rc.config, "configuration number")->required();
    vmt_cmd->add_option("--samples", rc.samples, "maximum number of cocycles")->capture_default_str();
    sub("verify-all", "run the acceptance suite (seed from ORBSP_SEED)", cmd_verify_all);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("Usage", e.what());
        return kInputError;
    }
    try {
        return action(rc);
    } catch (const Error& e) {
        report_error(errc_name(e.code()), e.what());
        return exit_code_for(e.code());
    } catch (const json::exception& e) {
        report_error("Malformed", e.what());
        return kInputError;
    }
}
