#pragma once

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chisynth/cartan.hpp"
#include "chisynth/f3.hpp"
#include "chisynth/lattice.hpp"

namespace chisynth {

/**
 * Vertex of the building: a pure vertex is the pi-class of a self-dual
 * lattice, stored as its unique self-dual member (det valuation 0); an
 * alternating vertex is the pi-class of a pair {L, dual(L)} with
 * dual(L) strictly inside L, stored as the class member with det valuation 2
 * (the chi-scaling of the larger lattice).
 */
class BuildingVertex {
public:
    enum class Kind { Pure, Alternating };

private:
    Kind kind_;
    Lattice rep_;
    std::string key_;

    BuildingVertex(Kind k, Lattice r) : kind_(k), rep_(std::move(r)), key_(rep_.key()) {}

public:
    static BuildingVertex pure(const Lattice& member) {
        long dv = member.det_valuation();
        if (dv % 3 != 0) throw NotSelfDual("pure vertex needs det valuation divisible by 3");
        Lattice rep = member.scaled(-dv / 3);
        if (!is_self_dual(rep)) throw NotSelfDual("lattice class has no self-dual member");
        return {Kind::Pure, rep};
    }

    static BuildingVertex alternating(const Lattice& member) {
        long dv = member.det_valuation();
        long m = ((dv % 3) + 3) % 3;
        if (m == 0) throw NotAlternating("lattice class is pi-equivalent to a self-dual one");
        Lattice side = member;
        if (m == 1) {  // passed the dual side; switch to the larger lattice's side
            side = member.dual();
            dv = side.det_valuation();
        }
        Lattice rep = side.scaled((2 - dv) / 3);
        // the larger lattice and its dual must form the index-9 sandwich
        Lattice larger = rep.scaled(-1);
        Lattice smaller = larger.dual();
        if (!larger.contains(smaller) || larger == smaller)
            throw NotAlternating("dual is not strictly inside the lattice");
        if (!smaller.contains(larger.scaled(1)))
            throw NotAlternating("chi L is not inside the dual");
        return {Kind::Alternating, rep};
    }

    /// Classifies by the det valuation of the class members.
    static BuildingVertex classify(const Lattice& member) {
        return (((member.det_valuation() % 3) + 3) % 3 == 0) ? pure(member) : alternating(member);
    }

    Kind kind() const { return kind_; }
    bool is_pure() const { return kind_ == Kind::Pure; }
    const Lattice& rep() const { return rep_; }
    const std::string& key() const { return key_; }

    /// The self-dual lattice (pure) or the larger lattice of the pair (alternating).
    Lattice witness() const { return is_pure() ? rep_ : rep_.scaled(-1); }

    bool operator==(const BuildingVertex& o) const {
        return kind_ == o.kind_ && rep_ == o.rep_;
    }
};

/// Image of a vertex under a unitary acting on F^3.
inline BuildingVertex apply(const Matrix3& g, const BuildingVertex& v) {
    Lattice moved = Lattice::from_basis(g * v.rep().basis());
    return v.is_pure() ? BuildingVertex::pure(moved) : BuildingVertex::alternating(moved);
}

namespace detail {

inline F3Mat residue_matrix(const Matrix3& m) {
    F3Mat r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = static_cast<F3>(residue_mod_chi(m.at(i, j)));
    return r;
}

}  // namespace detail

/**
 * The alternating neighbors of a pure vertex: reduce the Hermitian form mod
 * chi on L/chi L, take the four isotropic lines, and adjoin chi^-1 times a
 * lift of each line. Every constructed lattice is validated against the
 * defining chain before it is emitted.
 */
inline std::vector<BuildingVertex> pure_neighbors(const BuildingVertex& v) {
    if (!v.is_pure()) throw NotSelfDual("pure_neighbors needs a pure vertex");
    const Lattice& lam = v.rep();
    const Matrix3& b = lam.basis();
    F3Mat form = detail::residue_matrix(lam.gram());

    std::vector<BuildingVertex> out;
    for (const F3Line& line : isotropic_lines(form)) {
        Vector3 lift{FieldElement(0), FieldElement(0), FieldElement(0)};
        for (int j = 0; j < 3; ++j) {
            if (line.rep.c[j] == 0) continue;
            FieldElement c{static_cast<long>(line.rep.c[j])};
            for (int i = 0; i < 3; ++i) lift[i] += c * b.at(i, j);
        }
        for (int i = 0; i < 3; ++i) lift[i] = lift[i] * FieldElement::chi_inv();
        Lattice lam1 = Lattice::from_generators({b.column(0), b.column(1), b.column(2), lift});
        Lattice dual1 = lam1.dual();
        if (!(lam1.contains(lam) && lam.contains(dual1) && dual1.contains(lam1.scaled(1)) &&
              lam1.det_valuation() == -1))
            throw Error("pure_neighbors: constructed lattice fails its chain");
        out.push_back(BuildingVertex::alternating(lam1));
    }
    if (out.size() != 4) throw Error("pure_neighbors: expected 4 isotropic lines");
    return out;
}

/**
 * The pure neighbors of an alternating vertex: rescale the form by chi on
 * L/chi L, which is antisymmetric with radical the image of dual(L); every
 * plane between radical and its dual lifts to a self-dual lattice sitting in
 * the sandwich dual(L) in L1 in L. (The classical count quoted for this step
 * is two; the exhaustive count, and hence the vertex degree, is four.)
 */
inline std::vector<BuildingVertex> alternating_neighbors(const BuildingVertex& v) {
    if (v.is_pure()) throw NotAlternating("alternating_neighbors needs an alternating vertex");
    Lattice lam = v.witness();
    Lattice dual = lam.dual();
    const Matrix3& b = lam.basis();

    Matrix3 scaled_gram = lam.gram() * FieldElement::chi();
    F3Mat form = detail::residue_matrix(scaled_gram);
    F3Vec radical = radical_vector(form);

    // the radical line must be the image of the dual lattice in L / chi L
    Matrix3 coords = b.inverse() * dual.basis();
    F3Mat coord_res = detail::residue_matrix(coords);
    bool radical_seen = false;
    for (int j = 0; j < 3; ++j) {
        F3Vec col{{coord_res.m[0][j], coord_res.m[1][j], coord_res.m[2][j]}};
        if (col.is_zero()) continue;
        radical_seen = true;
        if (!F3Line::through(radical).contains(col))
            throw Error("alternating_neighbors: dual image is not the radical line");
    }
    if (!radical_seen) throw Error("alternating_neighbors: dual image vanishes mod chi");

    std::vector<BuildingVertex> out;
    for (const F3Plane& plane : self_dual_planes(form)) {
        std::vector<Vector3> gens{dual.basis().column(0), dual.basis().column(1),
                                  dual.basis().column(2)};
        for (const F3Vec& w : plane.span) {
            Vector3 lift{FieldElement(0), FieldElement(0), FieldElement(0)};
            for (int j = 0; j < 3; ++j) {
                if (w.c[j] == 0) continue;
                FieldElement c{static_cast<long>(w.c[j])};
                for (int i = 0; i < 3; ++i) lift[i] += c * b.at(i, j);
            }
            gens.push_back(lift);
        }
        Lattice lam1 = Lattice::from_generators(gens);
        if (!is_self_dual(lam1))
            throw Error("alternating_neighbors: constructed lattice is not self-dual");
        if (!(lam.contains(lam1) && lam1.contains(dual)))
            throw Error("alternating_neighbors: constructed lattice fails its sandwich");
        out.push_back(BuildingVertex::pure(lam1));
    }
    return out;
}

inline std::vector<BuildingVertex> neighbors(const BuildingVertex& v) {
    return v.is_pure() ? pure_neighbors(v) : alternating_neighbors(v);
}

/// The distinguished origin: the class of O_pi^3.
inline BuildingVertex origin_vertex() { return BuildingVertex::pure(Lattice::standard()); }

/**
 * Explored ball of the building: vertices in BFS discovery order with depth
 * labels and an adjacency structure; deterministic for a given origin/depth.
 */
struct BuildingGraph {
    struct Node {
        BuildingVertex vertex;
        int depth;
        std::vector<int> adj;
    };
    std::vector<Node> nodes;
    std::unordered_map<std::string, int> index;
    std::vector<std::pair<int, int>> edges;  // discovery order, smaller id first
    int origin = 0;

    std::size_t edge_count() const { return edges.size(); }
};

inline BuildingGraph bfs_explore(const BuildingVertex& origin, int depth) {
    BuildingGraph g;
    g.nodes.push_back({origin, 0, {}});
    g.index.emplace(origin.key(), 0);
    for (std::size_t head = 0; head < g.nodes.size(); ++head) {
        if (g.nodes[head].depth == depth) continue;
        std::vector<BuildingVertex> nb = neighbors(g.nodes[head].vertex);
        for (const BuildingVertex& w : nb) {
            auto it = g.index.find(w.key());
            int id;
            if (it == g.index.end()) {
                id = static_cast<int>(g.nodes.size());
                g.index.emplace(w.key(), id);
                g.nodes.push_back({w, g.nodes[head].depth + 1, {}});
            } else {
                id = it->second;
            }
            int u = static_cast<int>(head);
            if (std::find(g.nodes[u].adj.begin(), g.nodes[u].adj.end(), id) ==
                g.nodes[u].adj.end()) {
                g.nodes[u].adj.push_back(id);
                g.nodes[id].adj.push_back(u);
                g.edges.emplace_back(std::min(u, id), std::max(u, id));
            }
        }
    }
    return g;
}

inline BuildingGraph bfs_explore(int depth) { return bfs_explore(origin_vertex(), depth); }

/**
 * Edge distance between two vertices by bidirectional breadth-first search;
 * throws BoundExceeded when the distance exceeds max_radius.
 */
inline int graph_distance(const BuildingVertex& u, const BuildingVertex& v, int max_radius = 16) {
    if (u.key() == v.key()) return 0;
    using Front = std::unordered_map<std::string, BuildingVertex>;
    std::unordered_map<std::string, int> seen_u{{u.key(), 0}}, seen_v{{v.key(), 0}};
    Front front_u{{u.key(), u}}, front_v{{v.key(), v}};
    int depth_u = 0, depth_v = 0;

    auto expand = [](Front& front, std::unordered_map<std::string, int>& seen, int new_depth) {
        Front next;
        for (const auto& [key, vert] : front)
            for (const BuildingVertex& w : neighbors(vert))
                if (seen.emplace(w.key(), new_depth).second) next.emplace(w.key(), w);
        return next;
    };

    while (depth_u + depth_v < max_radius) {
        bool grow_u = front_u.size() <= front_v.size();
        Front& front = grow_u ? front_u : front_v;
        auto& seen = grow_u ? seen_u : seen_v;
        auto& other_seen = grow_u ? seen_v : seen_u;
        int new_depth = (grow_u ? depth_u : depth_v) + 1;
        front = expand(front, seen, new_depth);
        (grow_u ? depth_u : depth_v) = new_depth;
        int best = -1;
        for (const auto& [key, vert] : front) {
            auto it = other_seen.find(key);
            if (it != other_seen.end()) {
                int d = new_depth + it->second;
                if (best < 0 || d < best) best = d;
            }
        }
        if (best >= 0) return best;
        if (front.empty()) break;
    }
    throw BoundExceeded("graph_distance: no meeting within the exploration bound");
}

/**
 * Adjacency of the pure vertices of g and h in the tree (distance 2 through
 * one alternating vertex): mutual inclusion of the lattices up to chi^-1,
 * i.e. chi g^-1 h and chi h^-1 g both integral.
 */
inline bool adjacent_pures(const Matrix3& g, const Matrix3& h) {
    if (!is_in_A(g) || !is_in_A(h)) throw NotInA();
    Lattice lg = Lattice::from_basis(g);
    Lattice lh = Lattice::from_basis(h);
    if (lg == lh) throw Error("adjacent_pures: the two lattices coincide");
    auto integral = [](const Matrix3& m) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (v_pi(m.at(i, j)) < Valuation(0)) return false;
        return true;
    };
    FieldElement chi = FieldElement::chi();
    return integral(g.inverse() * h * chi) && integral(h.inverse() * g * chi);
}

/**
 * The self-dual interpolation chain between the lattices of g and h: with
 * g^-1 h = k1 diag(chi^n, 1, chi^-n) k2 and v_i the columns of g k1, the
 * lattices L_i = chi^i v1 O + v2 O + chi^-i v3 O for i = 1..n-1 are self-dual
 * and consecutive ones are adjacent.
 */
inline std::vector<Lattice> interpolate_self_dual(const Matrix3& g, const Matrix3& h) {
    if (!is_in_A(g) || !is_in_A(h)) throw NotInA();
    Lattice lg = Lattice::from_basis(g);
    Lattice lh = Lattice::from_basis(h);
    if (!is_self_dual(lg) || !is_self_dual(lh))
        throw NotSelfDual("interpolate_self_dual: endpoints must be self-dual");

    CartanTriple t = cartan_decompose(g.inverse() * h);
    long n = t.lambda[0];
    if (t.lambda != std::array<long, 3>{n, 0, -n})
        throw Error("interpolate_self_dual: Cartan exponents are not (n, 0, -n)");

    Matrix3 gk = g * t.k;
    std::vector<Lattice> chain;
    chain.push_back(lg);
    for (long i = 1; i < n; ++i) {
        Vector3 c0 = gk.column(0), c1 = gk.column(1), c2 = gk.column(2);
        FieldElement up = chi_pow(i), down = chi_pow(-i);
        for (int r = 0; r < 3; ++r) {
            c0[r] = c0[r] * up;
            c2[r] = c2[r] * down;
        }
        Lattice li = Lattice::from_generators({c0, c1, c2});
        if (!is_self_dual(li)) throw NotSelfDual("interpolate_self_dual: intermediate not self-dual");
        chain.push_back(li);
    }
    chain.push_back(lh);
    // consecutive members must be mutually chi-adjacent
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        const Lattice& a = chain[i];
        const Lattice& bnext = chain[i + 1];
        if (!(a.scaled(-1).contains(bnext) && bnext.scaled(-1).contains(a)))
            throw Error("interpolate_self_dual: consecutive lattices are not adjacent");
    }
    chain.erase(chain.begin());
    chain.pop_back();
    return chain;
}

/// DOT rendering; pure vertices red, alternating blue; byte-deterministic.
inline std::string export_dot(const BuildingGraph& g) {
    std::string s = "graph building {\n";
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        s += "  n" + std::to_string(i) + " [color=" +
             (g.nodes[i].vertex.is_pure() ? "red" : "blue") +
             ", depth=" + std::to_string(g.nodes[i].depth) + "];\n";
    }
    for (const auto& [u, v] : g.edges)
        s += "  n" + std::to_string(u) + " -- n" + std::to_string(v) + ";\n";
    s += "}\n";
    return s;
}

/// JSON rendering with canonical lattice keys; byte-deterministic.
inline std::string export_json(const BuildingGraph& g) {
    nlohmann::ordered_json j;
    j["origin"] = g.nodes[static_cast<std::size_t>(g.origin)].vertex.key();
    j["vertices"] = nlohmann::ordered_json::array();
    for (const auto& n : g.nodes)
        j["vertices"].push_back({{"key", n.vertex.key()},
                                 {"kind", n.vertex.is_pure() ? "pure" : "alternating"},
                                 {"depth", n.depth}});
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& [u, v] : g.edges)
        j["edges"].push_back({g.nodes[static_cast<std::size_t>(u)].vertex.key(),
                              g.nodes[static_cast<std::size_t>(v)].vertex.key()});
    return j.dump(2) + "\n";
}

/// Rebuilds a graph from its JSON export; keys are re-derived from parsed lattices.
inline BuildingGraph parse_graph_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    BuildingGraph g;
    for (const auto& v : j.at("vertices")) {
        Lattice l = Lattice::from_key(v.at("key").get<std::string>());
        BuildingVertex vert = v.at("kind").get<std::string>() == "pure"
                                  ? BuildingVertex::pure(l)
                                  : BuildingVertex::alternating(l);
        if (vert.key() != v.at("key").get<std::string>())
            throw ParseError("graph json: key is not canonical");
        int id = static_cast<int>(g.nodes.size());
        g.index.emplace(vert.key(), id);
        g.nodes.push_back({vert, v.at("depth").get<int>(), {}});
    }
    g.origin = g.index.at(j.at("origin").get<std::string>());
    for (const auto& e : j.at("edges")) {
        int u = g.index.at(e.at(0).get<std::string>());
        int v = g.index.at(e.at(1).get<std::string>());
        g.nodes[static_cast<std::size_t>(u)].adj.push_back(v);
        g.nodes[static_cast<std::size_t>(v)].adj.push_back(u);
        g.edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    return g;
}

}  // namespace chisynth
