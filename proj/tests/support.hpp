#ifndef leafroot_tests_support_hpp
#define leafroot_tests_support_hpp

// Independent slow references and fixed instances shared by the test suites.

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

#include <leafroot/leafroot.hpp>

namespace lrt {

using namespace leafroot;

inline std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

inline std::string sample(const std::string& name) { return slurp(std::string(SAMPLES_DIR) + "/" + name); }

// v0=0 u0=1 v1=2 u1=3 v2=4
enum Dart : Vertex { v0 = 0, u0 = 1, v1 = 2, u1 = 3, v2 = 4 };

inline Graph dart() { return parse_graph(sample("dart.txt")); }
inline Graph fig2() { return parse_graph(sample("fig2.txt")); }

inline Graph make(std::size_t n, std::vector<std::pair<Vertex, Vertex>> e) { return Graph::from_edges(n, e); }

inline Graph complete(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex a = 0; std::size_t(a) < n; ++a)
        for (Vertex b = a + 1; std::size_t(b) < n; ++b) e.emplace_back(a, b);
    return Graph::from_edges(n, e);
}

inline Graph path(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex a = 0; std::size_t(a + 1) < n; ++a) e.emplace_back(a, a + 1);
    return Graph::from_edges(n, e);
}

// Fig. 1 middle: everything hangs off one vertex c
inline CompressedTree fig1_T() {
    CompressedTree t;
    for (Vertex v = 0; v < 5; ++v) t.add_vertex(v);
    TreeVertex c = t.add_vertex();
    t.add_edge(c, v1, 3);
    t.add_edge(c, v2, 3);
    t.add_edge(c, u1, 2);
    t.add_edge(c, u0, 1);
    t.add_edge(c, v0, 4);
    return t;
}

// Fig. 1 right: x carries v1 and u1, y carries v2, u0 and v0
inline CompressedTree fig1_Tprime() {
    CompressedTree t;
    for (Vertex v = 0; v < 5; ++v) t.add_vertex(v);
    TreeVertex x = t.add_vertex(), y = t.add_vertex();
    t.add_edge(x, v1, 2);
    t.add_edge(x, u1, 1);
    t.add_edge(x, y, 1);
    t.add_edge(y, v2, 2);
    t.add_edge(y, u0, 1);
    t.add_edge(y, v0, 3);
    return t;
}

// Fig. 2 cotree written out by hand: u_i = i, v_j = 10 + j
inline Cotree fig2_cotree() {
    Cotree ct;
    auto leaf = [&](Vertex v) { return ct.add(NodeKind::leaf, v); };
    auto uv = [&](Vertex u, std::vector<std::int32_t> kids) {
        auto j = ct.add(NodeKind::join);
        auto un = ct.add(NodeKind::union_);
        ct.link(j, leaf(u));
        ct.link(j, un);
        for (auto k : kids) ct.link(un, k);
        return j;
    };
    auto V = [](int j) { return Vertex(10 + j); };
    auto g9 = uv(9, {leaf(V(13)), leaf(V(14))});
    auto g3 = uv(3, {leaf(V(1)), g9});
    auto g4 = uv(4, {leaf(V(2)), leaf(V(3)), leaf(V(4))});
    auto g5 = uv(5, {leaf(V(5)), leaf(V(6))});
    auto g6 = uv(6, {leaf(V(7)), leaf(V(8))});
    auto g7 = uv(7, {leaf(V(9)), leaf(V(10))});
    auto g8 = uv(8, {leaf(V(11)), leaf(V(12))});
    auto g1 = uv(1, {g3, g4, g5});
    auto g2 = uv(2, {g6, g7, g8});
    ct.root = uv(0, {leaf(V(0)), g1, g2});
    return ct;
}

// adjacency matrix helpers for the brute-force references
inline std::vector<std::vector<char>> matrix(const Graph& g) {
    std::size_t n = g.vertex_count();
    std::vector<std::vector<char>> a(n, std::vector<char>(n, 0));
    for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = 1;
    return a;
}

// first induced P4 or C4 over all quadruples, as a sorted vertex set
inline std::optional<std::array<Vertex, 4>> brute_obstruction(const Graph& g) {
    auto a = matrix(g);
    int n = int(g.vertex_count());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    int q[4] = {i, j, k, l}, m = 0, deg[4] = {0, 0, 0, 0};
                    for (int x = 0; x < 4; ++x)
                        for (int y = x + 1; y < 4; ++y)
                            if (a[q[x]][q[y]]) ++m, ++deg[x], ++deg[y];
                    std::sort(deg, deg + 4);
                    bool p4 = m == 3 && deg[0] == 1 && deg[1] == 1 && deg[2] == 2 && deg[3] == 2;
                    bool c4 = m == 4 && deg[0] == 2 && deg[3] == 2;
                    if (p4 || c4) return std::array<Vertex, 4>{i, j, k, l};
                }
    return std::nullopt;
}

inline bool is_obstruction(const Graph& g, const Obstruction& w) {
    auto [x, a, b, y] = w.vertices;
    std::array<Vertex, 4> s = w.vertices;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
    bool path = g.adjacent(x, a) && g.adjacent(a, b) && g.adjacent(b, y) && !g.adjacent(x, b) && !g.adjacent(a, y);
    return path && g.adjacent(x, y) == w.cycle;
}

inline std::vector<std::pair<Vertex, Vertex>> brute_twins(const Graph& g) {
    auto a = matrix(g);
    std::size_t n = g.vertex_count();
    std::vector<std::pair<Vertex, Vertex>> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!a[i][j]) continue;
            bool same = true;
            for (std::size_t k = 0; k < n && same; ++k)
                if (k != i && k != j && a[i][k] != a[j][k]) same = false;
            if (same) out.emplace_back(Vertex(i), Vertex(j));
        }
    return out;
}

inline Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (auto [u, v] : g.edges()) e.emplace_back(perm[u], perm[v]);
    return Graph::from_edges(g.vertex_count(), e);
}

inline bool isomorphic(const Graph& g, const Graph& h) {
    if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return false;
    std::vector<Vertex> p(g.vertex_count());
    std::iota(p.begin(), p.end(), 0);
    do {
        if (relabel(g, p) == h) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

// Cotree by definition: components under a union, or the universal vertex joined
// to the rest. Labelled canonical key.
inline std::string brute_cotree_key(const std::vector<std::vector<char>>& a, std::vector<int> vs) {
    if (vs.size() == 1) return "L" + std::to_string(vs[0]);
    // components
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(a.size(), 0);
    for (int s : vs) {
        if (seen[s]) continue;
        std::vector<int> c{s}, st{s};
        seen[s] = 1;
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (int w : vs)
                if (!seen[w] && a[v][w]) seen[w] = 1, c.push_back(w), st.push_back(w);
        }
        comps.push_back(c);
    }
    std::vector<std::string> keys;
    if (comps.size() > 1) {
        for (auto& c : comps) keys.push_back(brute_cotree_key(a, c));
    } else {
        std::vector<int> rest, uni;
        for (int v : vs) {
            bool all = true;
            for (int w : vs)
                if (w != v && !a[v][w]) all = false;
            (all ? uni : rest).push_back(v);
        }
        if (uni.empty() || rest.empty()) return "?"; // not a twin-free TPG shape
        for (int u : uni) keys.push_back("L" + std::to_string(u));
        keys.push_back(brute_cotree_key(a, rest));
    }
    std::sort(keys.begin(), keys.end());
    std::string s = comps.size() > 1 ? "U(" : "J(";
    for (std::size_t i = 0; i < keys.size(); ++i) s += (i ? "," : "") + keys[i];
    return s + ")";
}

// pairwise leaf distances by BFS over the unit-weight expansion
inline std::vector<std::vector<Weight>> unit_leaf_distances(const CompressedTree& t) {
    CompressedTree u = expand(t);
    std::size_t n = t.label_bound();
    std::vector<std::vector<Weight>> d(n, std::vector<Weight>(n, -1));
    for (Vertex x = 0; std::size_t(x) < n; ++x) {
        std::vector<Weight> dd(u.vertex_count(), -1);
        std::queue<TreeVertex> q;
        q.push(u.leaf_of(x));
        dd[u.leaf_of(x)] = 0;
        while (!q.empty()) {
            auto v = q.front();
            q.pop();
            for (EdgeId e : u.incident(v)) {
                if (u.weight(e) != 1) return {};
                auto w = u.other(e, v);
                if (dd[w] < 0) dd[w] = dd[v] + 1, q.push(w);
            }
        }
        for (Vertex y = 0; std::size_t(y) < n; ++y) d[x][y] = dd[u.leaf_of(y)];
    }
    return d;
}

// random tree on `size` vertices whose degree-1 vertices are labelled 0..L-1
inline CompressedTree random_tree(std::size_t size, Weight maxw, std::mt19937_64& rng) {
    auto r = [&](std::size_t hi) { return std::uniform_int_distribution<std::size_t>(0, hi)(rng); };
    std::vector<std::size_t> parent(size, 0);
    std::vector<int> deg(size, 0);
    for (std::size_t i = 1; i < size; ++i) parent[i] = r(i - 1), ++deg[i], ++deg[parent[i]];
    CompressedTree t;
    Vertex next = 0;
    for (std::size_t i = 0; i < size; ++i) t.add_vertex(deg[i] <= 1 ? next++ : no_vertex);
    for (std::size_t i = 1; i < size; ++i)
        t.add_edge(TreeVertex(parent[i]), TreeVertex(i), Weight(r(std::size_t(maxw - 1))) + 1);
    return t;
}

// random TPG with true twins sprinkled in
inline Graph with_twins(const Graph& g, std::size_t extra, std::mt19937_64& rng) {
    std::size_t n = g.vertex_count();
    auto e = g.edges();
    std::vector<std::vector<Vertex>> nb(n);
    for (Vertex v = 0; std::size_t(v) < n; ++v) nb[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
    for (std::size_t i = 0; i < extra; ++i) {
        Vertex src = Vertex(std::uniform_int_distribution<std::size_t>(0, n + i - 1)(rng));
        Vertex x = Vertex(n + i);
        nb.emplace_back();
        for (Vertex w : nb[src]) e.emplace_back(w, x), nb[w].push_back(x), nb[x].push_back(w);
        e.emplace_back(src, x);
        nb[src].push_back(x);
        nb[x].push_back(src);
    }
    return Graph::from_edges(n + extra, e);
}

} // namespace lrt

#endif
