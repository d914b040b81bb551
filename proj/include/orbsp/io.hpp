#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "orbsp/builders.hpp"
#include "orbsp/colored.hpp"
#include "orbsp/jacobian.hpp"
#include "orbsp/spmut.hpp"

namespace orbsp {

using json = nlohmann::json;

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::Malformed, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(Errc::Malformed, path + ": " + e.what());
    }
}

namespace detail {

template <class T>
T get_field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(Errc::Malformed, std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw Error(Errc::Malformed, std::string("field \"") + key + "\" has the wrong type");
    }
}

// "a3" -> arc 3, "b0" -> boundary 0, "q1" -> orbifold 1.
inline int parse_name(const std::string& s, char tag) {
    if (s.size() < 2 || s[0] != tag) throw Error(Errc::Malformed, "bad name \"" + s + "\"");
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw Error(Errc::Malformed, "bad name \"" + s + "\"");
    return std::stoi(s.substr(1));
}

inline Side parse_side(const json& j) {
    if (!j.is_string()) throw Error(Errc::Malformed, "side names are strings");
    const std::string s = j.get<std::string>();
    if (!s.empty() && s[0] == 'b') return Side::boundary(parse_name(s, 'b'));
    return Side::arc(parse_name(s, 'a'));
}

inline std::string side_name(const Side& s) { return (s.bd ? "b" : "a") + std::to_string(s.id); }

} // namespace detail

inline json to_json(const SurfaceSpec& s) {
    return {{"genus", s.genus}, {"boundary", s.boundary}, {"punctured_closed", s.punctured_closed},
            {"orbifold_weights", s.orbifold_weights}};
}

inline SurfaceSpec surface_from_json(const json& j) {
    SurfaceSpec s;
    s.genus = detail::get_field<int>(j, "genus");
    s.boundary = detail::get_field<std::vector<int>>(j, "boundary");
    s.punctured_closed = j.value("punctured_closed", false);
    s.orbifold_weights = detail::get_field<std::vector<int>>(j, "orbifold_weights");
    return s;
}

inline json to_json(const Triangulation& T) {
    json tris = json::array();
    for (const auto& t : T.triangles()) {
        json x;
        switch (t.kind) {
        case Kind::Ord:
            x = {{"kind", "ord"}, {"sides", {detail::side_name(t.s[0]), detail::side_name(t.s[1]), detail::side_name(t.s[2])}}};
            break;
        case Kind::Once:
            x = {{"kind", "once"},
                 {"outer", {detail::side_name(t.s[0]), detail::side_name(t.s[1])}},
                 {"pending", detail::side_name(t.s[2])},
                 {"orb", "q" + std::to_string(t.orb[0])}};
            break;
        case Kind::Twice:
            x = {{"kind", "twice"},
                 {"outer", detail::side_name(t.s[0])},
                 {"pending", {detail::side_name(t.s[1]), detail::side_name(t.s[2])}},
                 {"orbs", {"q" + std::to_string(t.orb[0]), "q" + std::to_string(t.orb[1])}}};
            break;
        }
        tris.push_back(std::move(x));
    }
    return {{"surface", to_json(T.surface().spec())}, {"triangles", tris}};
}

inline Triangulation triangulation_from_json(const json& j) {
    const auto vs = validate_surface(surface_from_json(detail::get_field<json>(j, "surface")));
    const auto arr = detail::get_field<json>(j, "triangles");
    if (!arr.is_array()) throw Error(Errc::Malformed, "\"triangles\" must be an array");
    std::vector<Triangle> tris;
    for (const auto& t : arr) {
        const auto kind = detail::get_field<std::string>(t, "kind");
        if (kind == "ord") {
            const auto s = detail::get_field<json>(t, "sides");
            if (!s.is_array() || s.size() != 3) throw Error(Errc::Malformed, "ord triangle needs three sides");
            tris.push_back(make_ord(detail::parse_side(s[0]), detail::parse_side(s[1]), detail::parse_side(s[2])));
        } else if (kind == "once") {
            const auto o = detail::get_field<json>(t, "outer");
            if (!o.is_array() || o.size() != 2) throw Error(Errc::Malformed, "once triangle needs two outer sides");
            const Side p = detail::parse_side(detail::get_field<json>(t, "pending"));
            if (p.bd) throw Error(Errc::Malformed, "pending side must be an arc");
            tris.push_back(make_once(detail::parse_side(o[0]), detail::parse_side(o[1]), p.id,
                                     detail::parse_name(detail::get_field<std::string>(t, "orb"), 'q')));
        } else if (kind == "twice") {
            const auto p = detail::get_field<json>(t, "pending");
            const auto q = detail::get_field<json>(t, "orbs");
            if (!p.is_array() || p.size() != 2 || !q.is_array() || q.size() != 2)
                throw Error(Errc::Malformed, "twice triangle needs two pending arcs and two orbifold points");
            const Side p0 = detail::parse_side(p[0]), p1 = detail::parse_side(p[1]);
            if (p0.bd || p1.bd) throw Error(Errc::Malformed, "pending side must be an arc");
            tris.push_back(make_twice(detail::parse_side(detail::get_field<json>(t, "outer")), p0.id, p1.id,
                                      detail::parse_name(q[0].get<std::string>(), 'q'),
                                      detail::parse_name(q[1].get<std::string>(), 'q')));
        } else {
            throw Error(Errc::Malformed, "unknown triangle kind \"" + kind + "\"");
        }
    }
    return build_triangulation(vs, std::move(tris));
}

// A standard triangulation for the surfaces the builders cover.
inline Triangulation seed_triangulation(const SurfaceSpec& s) {
    const auto vs = validate_surface(s);
    if (!s.punctured_closed && s.genus == 0 && s.b() == 1) return fan_disc(s.m(), s.orbifold_weights);
    if (!s.punctured_closed && s.genus == 0 && s.boundary == std::vector<int>{1, 1} && s.o() == 0) return annulus11();
    if (s.punctured_closed && s.genus == 1 && s.o() == 0) return torus0();
    if (s.punctured_closed && s.genus == 1 && s.o() == 1) return torus_orb(s.orbifold_weights[0]);
    if (s.punctured_closed && s.genus == 0 && s.o() == 4) return sphere4(s.orbifold_weights);
    throw Error(Errc::Unsupported, "no built-in triangulation for this surface; pass one with --tri");
}

inline const char* kind_name(ArrowKind k) {
    switch (k) {
    case ArrowKind::Plain: return "plain";
    case ArrowKind::Epsilon: return "epsilon";
    case ArrowKind::Double: return "double";
    }
    return "plain";
}

inline json to_json(const WeightedQuiver& q) {
    json arrows = json::array();
    for (const auto& a : q.arrows) arrows.push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head}, {"kind", kind_name(a.kind)}});
    json w = json::array();
    for (int v : q.vertices) w.push_back(q.weight[v]);
    return {{"vertices", q.vertices}, {"weights", w}, {"arrows", arrows}};
}

inline WeightedQuiver quiver_from_json(const json& j) {
    WeightedQuiver q;
    q.vertices = detail::get_field<std::vector<int>>(j, "vertices");
    const auto w = detail::get_field<std::vector<int>>(j, "weights");
    if (w.size() != q.vertices.size()) throw Error(Errc::Malformed, "one weight per vertex");
    if (!std::is_sorted(q.vertices.begin(), q.vertices.end())) throw Error(Errc::Malformed, "vertices must be ascending");
    const int n = q.vertices.empty() ? 0 : q.vertices.back() + 1;
    if (!q.vertices.empty() && q.vertices.front() < 0) throw Error(Errc::Malformed, "negative vertex id");
    q.weight.assign(n, 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] != 1 && w[i] != 2 && w[i] != 4) throw Error(Errc::Malformed, "weights must be 1, 2 or 4");
        q.weight[q.vertices[i]] = w[i];
    }
    for (const auto& a : detail::get_field<json>(j, "arrows")) {
        Arrow x;
        x.id = detail::get_field<int>(a, "id");
        x.tail = detail::get_field<int>(a, "tail");
        x.head = detail::get_field<int>(a, "head");
        const auto k = a.value("kind", std::string("plain"));
        x.kind = k == "epsilon" ? ArrowKind::Epsilon : k == "double" ? ArrowKind::Double : ArrowKind::Plain;
        if (q.index_of(x.tail) < 0 || q.index_of(x.head) < 0) throw Error(Errc::Malformed, "arrow endpoint outside vertex set");
        q.arrows.push_back(x);
    }
    return q;
}

inline json to_json(const MatrixPair& M, const std::vector<int>& vertices) {
    json rows = json::array();
    for (int i = 0; i < M.B.n; ++i) {
        json r = json::array();
        for (int j = 0; j < M.B.n; ++j) r.push_back(M.B(i, j));
        rows.push_back(r);
    }
    return {{"vertices", vertices}, {"B", rows}, {"D", M.D}};
}

inline MatrixPair matrix_from_json(const json& j) {
    const auto rows = detail::get_field<std::vector<std::vector<long long>>>(j, "B");
    MatrixPair M{IntMatrix(static_cast<int>(rows.size())), detail::get_field<std::vector<int>>(j, "D")};
    if (M.D.size() != rows.size()) throw Error(Errc::Malformed, "D must have one entry per row of B");
    for (int i = 0; i < M.B.n; ++i) {
        if (rows[i].size() != rows.size()) throw Error(Errc::Malformed, "B must be square");
        for (int k = 0; k < M.B.n; ++k) M.B(i, k) = rows[i][k];
    }
    return M;
}

// Cocycles are sorted lists of arrow keys.
inline json cochain_to_json(const ComplexF2& cx, const Cochain& x) { return cochain_keys(cx, x); }

inline Cochain cochain_from_json(const ComplexF2& cx, const json& j) {
    if (!j.is_array()) throw Error(Errc::Malformed, "cochain must be a list of arrow ids");
    return cochain_from_keys(cx, j.get<std::vector<int>>());
}

inline json to_json(const ColoredTriangulation& ct) {
    return {{"triangulation", to_json(ct.tri)}, {"xi", cochain_to_json(build_complex(ct.tri, false), ct.xi)}};
}

inline ColoredTriangulation colored_from_json(const json& j) {
    Triangulation T = triangulation_from_json(detail::get_field<json>(j, "triangulation"));
    const auto cx = build_complex(T, false);
    return make_colored(std::move(T), cochain_from_json(cx, j.value("xi", json::array())));
}

inline json to_json(const Species& S) {
    json verts = json::array(), arrows = json::array();
    for (int v : S.vertices) verts.push_back({{"id", v}, {"d", S.d(v)}});
    for (const auto& a : S.arrows)
        arrows.push_back({{"id", a.id}, {"name", a.name}, {"tail", a.tail}, {"head", a.head}, {"twist", a.twist},
                          {"bimodule_dim", S.bimodule_dim(a)}});
    return {{"p", S.K.p}, {"z", S.K.z}, {"vertices", verts}, {"arrows", arrows}};
}

inline Species species_from_json(const json& j) {
    Species S;
    S.K = build_tower(detail::get_field<long long>(j, "p"), j.value("z", 0LL));
    for (const auto& v : detail::get_field<json>(j, "vertices")) {
        const int id = detail::get_field<int>(v, "id"), d = detail::get_field<int>(v, "d");
        if (id < 0 || (d != 1 && d != 2 && d != 4)) throw Error(Errc::Malformed, "bad species vertex");
        if (static_cast<int>(S.deg.size()) <= id) S.deg.resize(id + 1, 0);
        if (S.deg[id]) throw Error(Errc::Malformed, "duplicate species vertex");
        S.deg[id] = d;
        S.vertices.push_back(id);
    }
    std::sort(S.vertices.begin(), S.vertices.end());
    auto has = [&](int v) { return v >= 0 && v < static_cast<int>(S.deg.size()) && S.deg[v] != 0; };
    for (const auto& a : detail::get_field<json>(j, "arrows")) {
        SpArrow x{detail::get_field<int>(a, "id"), detail::get_field<int>(a, "tail"), detail::get_field<int>(a, "head"),
                  a.value("twist", 0), a.value("name", std::string())};
        if (!has(x.tail) || !has(x.head)) throw Error(Errc::Malformed, "arrow endpoint outside vertex set");
        S.add_arrow(x);
    }
    return S;
}

inline json to_json(const PathElem& x) {
    json terms = json::array();
    for (const auto& [p, c] : x) terms.push_back({{"coef", c}, {"vertex", p.v}, {"arrows", p.arr}, {"exponents", p.ex}});
    return terms;
}

inline PathElem path_elem_from_json(const Species& S, const json& j) {
    if (!j.is_array()) throw Error(Errc::Malformed, "algebra element must be a list of terms");
    PathElem x;
    for (const auto& t : j) {
        Path p{detail::get_field<int>(t, "vertex"), detail::get_field<std::vector<int>>(t, "arrows"),
               detail::get_field<std::vector<int>>(t, "exponents")};
        if (p.ex.size() != p.arr.size() + 1) throw Error(Errc::Malformed, "need one exponent more than arrows");
        int at = p.v;
        for (int a : p.arr) {
            if (S.arrow(a).head != at) throw Error(Errc::Malformed, "term is not a path");
            at = S.arrow(a).tail;
        }
        add_term(S, x, p, detail::get_field<long long>(t, "coef"));
    }
    return x;
}

inline json to_json(const SP& sp) {
    return {{"species", to_json(sp.sp)}, {"potential", to_json(sp.S)}, {"text", to_string(sp.sp, sp.S)},
            {"auto_t", sp.auto_t}, {"closed", sp.closed}, {"provenance", sp.provenance}};
}

inline SP sp_from_json(const json& j) {
    SP sp;
    sp.sp = species_from_json(detail::get_field<json>(j, "species"));
    sp.S = path_elem_from_json(sp.sp, detail::get_field<json>(j, "potential"));
    for (const auto& [p, c] : sp.S)
        if (!is_cycle(sp.sp, p)) throw Error(Errc::Malformed, "potential term is not a cycle");
    sp.auto_t = j.value("auto_t", -1);
    sp.closed = j.value("closed", false);
    sp.provenance = j.value("provenance", std::string("file"));
    return sp;
}

} // namespace orbsp
