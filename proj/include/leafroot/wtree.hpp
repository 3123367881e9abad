#ifndef leafroot_wtree_hpp
#define leafroot_wtree_hpp

#include <algorithm>
#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "graph.hpp"

namespace leafroot {

struct TreeEdge {
    TreeVertex a, b;
    Weight w;
    std::uint32_t ia, ib; // slot of this edge in the incidence lists of a and b
};

// Tree with integer edge weights; a weight-w edge stands for a path of w unit edges.
// Leaves carry graph vertices. Splitting an edge is O(1).
class CompressedTree {
public:
    std::size_t vertex_count() const { return label_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    TreeVertex add_vertex(Vertex label = no_vertex) {
        TreeVertex id = TreeVertex(label_.size());
        if (label != no_vertex) {
            if (label < 0) throw std::invalid_argument("negative leaf label");
            if (std::size_t(label) >= leaf_of_.size()) leaf_of_.resize(std::size_t(label) + 1, no_vertex);
            if (leaf_of_[label] != no_vertex) throw std::invalid_argument("graph vertex already has a leaf");
            leaf_of_[label] = id;
            ++labelled_;
        }
        label_.push_back(label);
        inc_.emplace_back();
        return id;
    }

    EdgeId add_edge(TreeVertex a, TreeVertex b, Weight w) {
        check_vertex(a);
        check_vertex(b);
        if (a == b) throw std::invalid_argument("tree edge loop");
        if (w < 1 || w > max_weight) throw std::invalid_argument("tree edge weight out of range");
        EdgeId e = EdgeId(edges_.size());
        edges_.push_back({a, b, w, std::uint32_t(inc_[a].size()), std::uint32_t(inc_[b].size())});
        inc_[a].push_back(e);
        inc_[b].push_back(e);
        return e;
    }

    // New vertex joined to `from` by one edge of weight `length`.
    TreeVertex attach_path(TreeVertex from, Weight length, Vertex leaf_label = no_vertex) {
        check_vertex(from);
        if (length < 1) throw std::invalid_argument("attach_path needs length >= 1; identify vertices instead");
        if (label_[from] != no_vertex) throw std::invalid_argument("attach_path at a labelled leaf");
        TreeVertex x = add_vertex(leaf_label);
        add_edge(from, x, length);
        return x;
    }

    // New vertex on edge e at distance `offset` from endpoint `from`.
    TreeVertex split_edge(EdgeId e, TreeVertex from, Weight offset) {
        TreeEdge ed = edges_.at(e);
        if (from != ed.a && from != ed.b) throw std::invalid_argument("split_edge: vertex not on edge");
        if (offset <= 0 || offset >= ed.w) throw std::invalid_argument("split_edge: offset not inside edge");
        TreeVertex far = ed.a == from ? ed.b : ed.a;
        std::uint32_t far_slot = ed.a == from ? ed.ib : ed.ia;
        TreeVertex x = add_vertex();
        // e keeps its slot at `from` and now ends at x; a new edge takes over far's slot
        auto& cur = edges_[e];
        if (cur.a == from) cur.b = x, cur.ib = 0;
        else cur.a = x, cur.ia = 0;
        cur.w = offset;
        inc_[x].push_back(e);
        EdgeId e2 = EdgeId(edges_.size());
        edges_.push_back({x, far, ed.w - offset, 1, far_slot});
        inc_[x].push_back(e2);
        inc_[far][far_slot] = e2;
        return x;
    }

    const TreeEdge& edge(EdgeId e) const { return edges_[e]; }
    std::span<const TreeEdge> edges() const { return edges_; }
    TreeVertex other(EdgeId e, TreeVertex v) const { return edges_[e].a == v ? edges_[e].b : edges_[e].a; }
    Weight weight(EdgeId e) const { return edges_[e].w; }
    void add_weight(EdgeId e, Weight delta) {
        Weight w = checked_add(edges_[e].w, delta);
        if (w < 1) throw std::invalid_argument("tree edge weight below 1");
        edges_[e].w = w;
    }

    std::span<const EdgeId> incident(TreeVertex v) const { return {inc_[v].data(), inc_[v].size()}; }
    std::size_t degree(TreeVertex v) const { return inc_[v].size(); }
    Vertex label(TreeVertex v) const { return label_[v]; }
    bool labelled(TreeVertex v) const { return label_[v] != no_vertex; }

    TreeVertex leaf_of(Vertex g) const {
        return g >= 0 && std::size_t(g) < leaf_of_.size() ? leaf_of_[g] : no_vertex;
    }
    std::size_t leaf_count() const { return labelled_; }
    // one past the largest label
    std::size_t label_bound() const { return leaf_of_.size(); }

    // graph-vertex renaming, old label -> new label, applied to every leaf
    void relabel(std::span<const Vertex> to) {
        std::vector<TreeVertex> lo;
        for (TreeVertex v = 0; std::size_t(v) < label_.size(); ++v) {
            if (label_[v] == no_vertex) continue;
            Vertex nl = to[label_[v]];
            label_[v] = nl;
            if (std::size_t(nl) >= lo.size()) lo.resize(std::size_t(nl) + 1, no_vertex);
            if (lo[nl] != no_vertex) throw std::invalid_argument("relabel is not injective");
            lo[nl] = v;
        }
        leaf_of_ = std::move(lo);
    }

private:
    void check_vertex(TreeVertex v) const {
        if (v < 0 || std::size_t(v) >= label_.size()) throw std::out_of_range("unknown tree vertex " + std::to_string(v));
    }

    std::vector<TreeEdge> edges_;
    std::vector<boost::container::small_vector<EdgeId, 3>> inc_; // most vertices have degree <= 3
    std::vector<Vertex> label_;
    std::vector<TreeVertex> leaf_of_;
    std::size_t labelled_ = 0;
};

struct TreeMeta {
    Weight diameter = 0;
    Weight radius = 0;
    int parity = 0;
    std::array<TreeVertex, 2> center{no_vertex, no_vertex}; // second slot only when parity is 1
    TreeVertex minmax_center = no_vertex;
    Weight dmin = 0; // nearest leaf from minmax_center

    int center_count() const { return parity ? 2 : 1; }
};

// Distances from s to every vertex.
inline std::vector<Weight> distances_from(const CompressedTree& t, TreeVertex s, std::vector<TreeVertex>* parent = nullptr) {
    if (s < 0 || std::size_t(s) >= t.vertex_count()) throw std::out_of_range("unknown tree vertex");
    std::vector<Weight> d(t.vertex_count(), -1);
    if (parent) parent->assign(t.vertex_count(), no_vertex);
    std::vector<TreeVertex> st{s};
    d[s] = 0;
    while (!st.empty()) {
        TreeVertex v = st.back();
        st.pop_back();
        for (EdgeId e : t.incident(v)) {
            TreeVertex w = t.other(e, v);
            if (d[w] >= 0) continue;
            d[w] = d[v] + t.weight(e);
            if (parent) (*parent)[w] = v;
            st.push_back(w);
        }
    }
    return d;
}

inline Weight dist(const CompressedTree& t, TreeVertex a, TreeVertex b) {
    if (b < 0 || std::size_t(b) >= t.vertex_count()) throw std::out_of_range("unknown tree vertex");
    return distances_from(t, a)[b];
}

// nearest labelled vertex from v
inline Weight nearest_leaf(const CompressedTree& t, TreeVertex v) {
    auto d = distances_from(t, v);
    Weight best = -1;
    for (TreeVertex x = 0; std::size_t(x) < t.vertex_count(); ++x)
        if (t.labelled(x) && (best < 0 || d[x] < best)) best = d[x];
    return best;
}

namespace detail {

inline EdgeId edge_between(const CompressedTree& t, TreeVertex a, TreeVertex b) {
    for (EdgeId e : t.incident(a))
        if (t.other(e, a) == b) return e;
    throw InternalError("vertices are not adjacent");
}

} // namespace detail

// From scratch: two sweeps, then the midpoint(s) of a diametral path, splitting
// edges where a center falls inside one.
inline TreeMeta compute_meta(CompressedTree& t) {
    if (t.vertex_count() == 0) throw std::invalid_argument("compute_meta on empty tree");
    TreeMeta m;
    auto d0 = distances_from(t, 0);
    TreeVertex a = TreeVertex(std::max_element(d0.begin(), d0.end()) - d0.begin());
    std::vector<TreeVertex> par;
    auto da = distances_from(t, a, &par);
    TreeVertex b = TreeVertex(std::max_element(da.begin(), da.end()) - da.begin());
    m.diameter = da[b];
    m.parity = odd(m.diameter);
    m.radius = (m.diameter + m.parity) / 2;

    // path a..b as (vertex, distance from a)
    std::vector<std::pair<TreeVertex, Weight>> path;
    for (TreeVertex x = b; x != no_vertex; x = par[x]) path.push_back({x, da[x]});
    std::reverse(path.begin(), path.end());
    auto point_at = [&](Weight r) {
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (path[i].second == r) return path[i].first;
            if (path[i].second > r) {
                auto [p, dp] = path[i - 1];
                TreeVertex x = t.split_edge(detail::edge_between(t, p, path[i].first), p, r - dp);
                path.insert(path.begin() + std::ptrdiff_t(i), {x, r});
                return x;
            }
        }
        throw InternalError("center beyond diametral path");
    };
    Weight r0 = m.diameter / 2;
    m.center[0] = point_at(r0);
    if (m.parity) m.center[1] = point_at(r0 + 1);
    m.minmax_center = m.center[0];
    m.dmin = nearest_leaf(t, m.center[0]);
    if (m.parity) {
        Weight other = nearest_leaf(t, m.center[1]);
        if (other > m.dmin) m.minmax_center = m.center[1], m.dmin = other;
    }
    return m;
}

// n x n table over graph vertices 0..n-1; labels must be dense.
struct LeafDistances {
    std::size_t n = 0;
    std::vector<Weight> d;
    Weight at(Vertex x, Vertex y) const { return d[std::size_t(x) * n + std::size_t(y)]; }
};

inline LeafDistances all_leaf_distances(const CompressedTree& t) {
    LeafDistances r;
    r.n = t.label_bound();
    if (t.leaf_count() != r.n) throw LeafSetMismatch("tree labels are not 0..n-1");
    r.d.assign(r.n * r.n, 0);
    std::vector<Weight> dd(t.vertex_count());
    std::vector<TreeVertex> st, from(t.vertex_count());
    for (Vertex x = 0; std::size_t(x) < r.n; ++x) {
        TreeVertex s = t.leaf_of(x);
        dd[s] = 0;
        from[s] = no_vertex;
        st.push_back(s);
        while (!st.empty()) {
            TreeVertex v = st.back();
            st.pop_back();
            if (t.labelled(v)) r.d[std::size_t(x) * r.n + std::size_t(t.label(v))] = dd[v];
            for (EdgeId e : t.incident(v)) {
                TreeVertex w = t.other(e, v);
                if (w == from[v]) continue;
                from[w] = v;
                dd[w] = dd[v] + t.weight(e);
                st.push_back(w);
            }
        }
    }
    return r;
}

// Every weight-w edge becomes w unit edges; existing vertex ids are kept.
inline CompressedTree expand(const CompressedTree& t) {
    CompressedTree u;
    for (TreeVertex v = 0; std::size_t(v) < t.vertex_count(); ++v) u.add_vertex(t.label(v));
    for (auto& e : t.edges()) {
        TreeVertex prev = e.a;
        for (Weight i = 1; i < e.w; ++i) {
            TreeVertex x = u.add_vertex();
            u.add_edge(prev, x, 1);
            prev = x;
        }
        u.add_edge(prev, e.b, 1);
    }
    return u;
}

struct Canonical {
    CompressedTree tree;
    std::vector<TreeVertex> remap; // old id -> new id, no_vertex if contracted
};

// Contracts unlabelled degree-2 vertices except those in `keep`.
inline Canonical canonicalize(const CompressedTree& t, std::span<const TreeVertex> keep = {}) {
    const std::size_t nv = t.vertex_count();
    std::vector<char> gone(nv, 0);
    for (TreeVertex v = 0; std::size_t(v) < nv; ++v) gone[v] = !t.labelled(v) && t.degree(v) == 2;
    for (TreeVertex v : keep)
        if (v != no_vertex) gone[v] = 0;
    Canonical c;
    c.remap.assign(nv, no_vertex);
    for (TreeVertex v = 0; std::size_t(v) < nv; ++v)
        if (!gone[v]) c.remap[v] = c.tree.add_vertex(t.label(v));
    for (TreeVertex v = 0; std::size_t(v) < nv; ++v) {
        if (gone[v]) continue;
        for (EdgeId e : t.incident(v)) {
            TreeVertex prev = v, cur = t.other(e, v);
            Weight w = t.weight(e);
            while (gone[cur]) {
                auto inc = t.incident(cur);
                EdgeId nx = t.other(inc[0], cur) == prev ? inc[1] : inc[0];
                prev = cur;
                cur = t.other(nx, cur);
                w = checked_add(w, t.weight(nx));
            }
            // each chain is seen from both ends; keep one copy
            if (v < cur) c.tree.add_edge(c.remap[v], c.remap[cur], w);
        }
    }
    return c;
}

inline TreeMeta remap_meta(TreeMeta m, std::span<const TreeVertex> remap) {
    for (auto& z : m.center)
        if (z != no_vertex) z = remap[z];
    m.minmax_center = remap[m.minmax_center];
    return m;
}

// "T nv ne k", "u v w" per edge, "L tree-vertex graph-vertex" per leaf
inline std::string write_tree(const CompressedTree& t, std::int64_t k) {
    std::string out = "T " + std::to_string(t.vertex_count()) + " " + std::to_string(t.edge_count()) + " " +
                      std::to_string(k) + "\n";
    for (auto& e : t.edges())
        out += std::to_string(e.a) + " " + std::to_string(e.b) + " " + std::to_string(e.w) + "\n";
    for (TreeVertex v = 0; std::size_t(v) < t.vertex_count(); ++v)
        if (t.labelled(v)) out += "L " + std::to_string(v) + " " + std::to_string(t.label(v)) + "\n";
    return out;
}

struct ParsedTree {
    CompressedTree tree;
    std::int64_t k = 0;
};

inline ParsedTree parse_tree(std::string_view text) {
    ParsedTree r;
    std::optional<std::array<long long, 3>> header;
    std::vector<std::array<long long, 3>> edges;
    std::vector<std::pair<long long, long long>> leaves;
    std::vector<long long> tok;
    std::size_t header_line = 0;
    detail::for_each_content_line(text, [&](std::size_t line, std::string_view s) {
        char tag = 0;
        if (s[0] == 'T' || s[0] == 'L') tag = s[0], s = s.substr(1);
        if (!detail::parse_ints(s, tok)) throw ParseError(line, "expected non-negative integers");
        if (!header) {
            if (tag != 'T' || tok.size() != 3) throw ParseError(line, "expected header \"T <vertices> <edges> <k>\"");
            header = {tok[0], tok[1], tok[2]};
            header_line = line;
            return;
        }
        if (tag == 'L') {
            if (tok.size() != 2) throw ParseError(line, "expected \"L <tree-vertex> <graph-vertex>\"");
            if (tok[0] >= (*header)[0]) throw ParseError(line, "tree vertex out of range");
            if (tok[1] > std::numeric_limits<Vertex>::max()) throw ParseError(line, "graph vertex out of range");
            leaves.push_back({tok[0], tok[1]});
        } else if (tag == 0) {
            if (tok.size() != 3) throw ParseError(line, "expected \"u v w\"");
            if (tok[0] >= (*header)[0] || tok[1] >= (*header)[0]) throw ParseError(line, "tree vertex out of range");
            if (tok[2] < 1 || tok[2] > max_weight) throw ParseError(line, "weight out of range");
            if (tok[0] == tok[1]) throw ParseError(line, "self-loop");
            edges.push_back({tok[0], tok[1], tok[2]});
        } else {
            throw ParseError(line, "second header");
        }
    });
    if (!header) throw ParseError(0, "missing tree header");
    auto [nv, ne, k] = *header;
    if (nv > std::numeric_limits<TreeVertex>::max()) throw ParseError(header_line, "too many vertices");
    if ((long long)edges.size() != ne) throw ParseError(0, "edge count differs from header");
    if (nv > 0 && ne != nv - 1) throw ParseError(header_line, "edge count must be vertices - 1");
    std::vector<Vertex> lab(std::size_t(nv), no_vertex);
    for (auto [tv, gv] : leaves) {
        if (lab[tv] != no_vertex) throw ParseError(0, "tree vertex labelled twice");
        lab[tv] = Vertex(gv);
    }
    try {
        for (auto l : lab) r.tree.add_vertex(l);
        for (auto& e : edges) r.tree.add_edge(TreeVertex(e[0]), TreeVertex(e[1]), e[2]);
    } catch (const std::invalid_argument& ex) {
        throw ParseError(0, ex.what());
    }
    if (nv > 0) {
        auto d = distances_from(r.tree, 0);
        if (std::find(d.begin(), d.end(), Weight{-1}) != d.end()) throw ParseError(0, "tree is not connected");
    }
    r.k = k;
    return r;
}

inline std::string write_dot(const CompressedTree& t, const Graph* g = nullptr) {
    std::string out = "graph leafroot {\n  node [shape=point];\n";
    for (TreeVertex v = 0; std::size_t(v) < t.vertex_count(); ++v)
        if (t.labelled(v))
            out += "  " + std::to_string(v) + " [shape=circle, label=\"" +
                   (g ? g->name(t.label(v)) : std::to_string(t.label(v))) + "\"];\n";
    for (auto& e : t.edges())
        out += "  " + std::to_string(e.a) + " -- " + std::to_string(e.b) + " [label=\"" + std::to_string(e.w) +
               "\"];\n";
    return out + "}\n";
}

// Rooted at `root`; leaves named by graph vertex (or label), internal nodes unnamed.
inline std::string write_newick(const CompressedTree& t, TreeVertex root, const Graph* g = nullptr) {
    if (t.vertex_count() == 0) return ";\n";
    auto name = [&](TreeVertex v) {
        if (!t.labelled(v)) return std::string();
        std::string s = g ? g->name(t.label(v)) : std::to_string(t.label(v));
        bool quote = s.find_first_of(" ():;,[]'") != std::string::npos;
        if (!quote) return s;
        std::string q = "'";
        for (char c : s) q += c == '\'' ? std::string("''") : std::string(1, c);
        return q + "'";
    };
    std::string out;
    struct Frame {
        TreeVertex v, from;
        Weight w; // edge to parent, 0 at root
        std::size_t next;
        bool opened;
    };
    std::vector<Frame> st{{root, no_vertex, 0, 0, false}};
    while (!st.empty()) {
        auto& f = st.back();
        auto inc = t.incident(f.v);
        while (f.next < inc.size() && t.other(inc[f.next], f.v) == f.from) ++f.next;
        if (f.next < inc.size()) {
            out += f.opened ? "," : "(";
            f.opened = true;
            EdgeId e = inc[f.next++];
            st.push_back({t.other(e, f.v), f.v, t.weight(e), 0, false});
            continue;
        }
        if (f.opened) out += ")";
        out += name(f.v);
        if (f.from != no_vertex) out += ":" + std::to_string(f.w);
        st.pop_back();
    }
    return out + ";\n";
}

} // namespace leafroot

#endif
