#ifndef leafroot_cotree_hpp
#define leafroot_cotree_hpp

#include <algorithm>
#include <string>
#include <vector>

#include "graph.hpp"

namespace leafroot {

enum class NodeKind : std::uint8_t { leaf, union_, join };

inline const char* kind_name(NodeKind k) {
    switch (k) {
    case NodeKind::leaf: return "leaf";
    case NodeKind::union_: return "union";
    default: return "join";
    }
}

struct CotreeNode {
    NodeKind kind = NodeKind::leaf;
    std::int32_t parent = -1;
    Vertex vertex = no_vertex; // leaves only
    std::vector<std::int32_t> children;
};

// Node ids are pre-order positions after build_cotree; the root is node 0.
struct Cotree {
    std::vector<CotreeNode> nodes;
    std::int32_t root = -1;

    std::size_t size() const { return nodes.size(); }
    const CotreeNode& operator[](std::int32_t i) const { return nodes[i]; }

    std::int32_t add(NodeKind k, Vertex v = no_vertex) {
        nodes.push_back({k, -1, v, {}});
        return std::int32_t(nodes.size() - 1);
    }
    void link(std::int32_t parent, std::int32_t child) {
        nodes[child].parent = parent;
        nodes[parent].children.push_back(child);
    }
    std::size_t leaf_count() const {
        return std::size_t(std::count_if(nodes.begin(), nodes.end(), [](auto& x) { return x.kind == NodeKind::leaf; }));
    }

    // pre-order, children left to right
    std::vector<std::int32_t> preorder() const {
        std::vector<std::int32_t> out, st;
        if (root < 0) return out;
        out.reserve(nodes.size());
        st.push_back(root);
        while (!st.empty()) {
            auto x = st.back();
            st.pop_back();
            out.push_back(x);
            auto& ch = nodes[x].children;
            for (auto it = ch.rbegin(); it != ch.rend(); ++it) st.push_back(*it);
        }
        return out;
    }
};

// Renumber so ids follow pre-order.
inline Cotree renumber_preorder(const Cotree& ct) {
    auto pre = ct.preorder();
    std::vector<std::int32_t> id(ct.size(), -1);
    for (std::size_t i = 0; i < pre.size(); ++i) id[pre[i]] = std::int32_t(i);
    Cotree out;
    out.nodes.resize(pre.size());
    for (std::size_t i = 0; i < pre.size(); ++i) {
        const auto& src = ct.nodes[pre[i]];
        auto& dst = out.nodes[i];
        dst.kind = src.kind;
        dst.vertex = src.vertex;
        dst.parent = src.parent < 0 ? -1 : id[src.parent];
        for (auto c : src.children) dst.children.push_back(id[c]);
    }
    out.root = pre.empty() ? -1 : 0;
    return out;
}

class HasTrueTwins : public std::invalid_argument {
public:
    HasTrueTwins(Vertex a, Vertex b)
        : std::invalid_argument("true twins " + std::to_string(a) + " and " + std::to_string(b)), a_(a), b_(b) {}
    std::pair<Vertex, Vertex> twins() const { return {a_, b_}; }

private:
    Vertex a_, b_;
};

namespace detail {

// Forest vertex with children -> join(leaf, union(children)); roots under one union.
// A forest vertex with exactly one child shares its closed neighbourhood with that child.
inline Cotree cotree_from_forest(std::size_t n, const TpgCheck& chk) {
    const auto& parent = chk.parent;
    std::vector<std::size_t> off(n + 1, 0);
    for (Vertex v = 0; std::size_t(v) < n; ++v)
        if (parent[v] != no_vertex) ++off[parent[v] + 1];
    for (Vertex v = 0; std::size_t(v) < n; ++v)
        if (parent[v] != no_vertex && off[parent[v] + 1] == 1)
            throw HasTrueTwins(std::min(v, parent[v]), std::max(v, parent[v]));
    for (std::size_t i = 0; i < n; ++i) off[i + 1] += off[i];

    // smallest id per subtree; children precede parents in reverse order
    std::vector<Vertex> low(n);
    for (Vertex v = 0; std::size_t(v) < n; ++v) low[v] = v;
    for (auto it = chk.order.rbegin(); it != chk.order.rend(); ++it)
        if (parent[*it] != no_vertex) low[parent[*it]] = std::min(low[parent[*it]], low[*it]);

    // children and roots bucketed by smallest id, so each list comes out sorted
    std::vector<Vertex> kids(off[n]);
    std::vector<Vertex> roots;
    {
        std::vector<std::size_t> fill(off.begin(), off.end() - 1);
        std::vector<Vertex> by_low;
        by_low.reserve(n);
        std::vector<std::size_t> cnt(n + 1, 0);
        for (Vertex v = 0; std::size_t(v) < n; ++v) ++cnt[low[v] + 1];
        for (std::size_t i = 0; i < n; ++i) cnt[i + 1] += cnt[i];
        by_low.resize(n);
        for (Vertex v = 0; std::size_t(v) < n; ++v) by_low[cnt[low[v]]++] = v;
        for (Vertex v : by_low)
            if (parent[v] == no_vertex) roots.push_back(v);
            else kids[fill[parent[v]]++] = v;
    }

    Cotree ct;
    ct.nodes.reserve(2 * n);
    std::vector<std::int32_t> node_of(n, -1);
    for (auto it = chk.order.rbegin(); it != chk.order.rend(); ++it) {
        Vertex v = *it;
        if (off[v] == off[v + 1]) {
            node_of[v] = ct.add(NodeKind::leaf, v);
            continue;
        }
        auto j = ct.add(NodeKind::join);
        auto leaf = ct.add(NodeKind::leaf, v);
        auto u = ct.add(NodeKind::union_);
        for (std::size_t i = off[v]; i < off[v + 1]; ++i) ct.link(u, node_of[kids[i]]);
        if (v < low[kids[off[v]]]) ct.link(j, leaf), ct.link(j, u);
        else ct.link(j, u), ct.link(j, leaf);
        node_of[v] = j;
    }
    if (roots.size() == 1) {
        ct.root = node_of[roots[0]];
    } else if (!roots.empty()) {
        ct.root = ct.add(NodeKind::union_);
        for (Vertex r : roots) ct.link(ct.root, node_of[r]);
    }
    return renumber_preorder(ct);
}

} // namespace detail

// Cotree of a twin-free trivially perfect graph. O(n+m).
inline Cotree build_cotree(const Graph& g) {
    auto chk = check_trivially_perfect(g);
    if (!chk.trivially_perfect) throw NotTriviallyPerfect(chk.witness);
    return detail::cotree_from_forest(g.vertex_count(), chk);
}

// Leaf ids must be 0..L-1. Edges come from joins, pairwise across children. O(n+m).
inline Graph cotree_to_graph(const Cotree& ct) {
    auto pre = ct.preorder();
    std::vector<Vertex> seq; // leaves in pre-order
    std::vector<std::size_t> lo(ct.size()), hi(ct.size());
    for (auto x : pre)
        if (ct[x].kind == NodeKind::leaf) lo[x] = seq.size(), seq.push_back(ct[x].vertex), hi[x] = seq.size();
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
        auto& nd = ct[*it];
        if (nd.kind == NodeKind::leaf) continue;
        lo[*it] = lo[nd.children.front()];
        hi[*it] = hi[nd.children.back()];
    }
    const std::size_t n = seq.size();
    std::vector<char> seen(n, 0);
    for (Vertex v : seq) {
        if (v < 0 || std::size_t(v) >= n || seen[v]) throw std::invalid_argument("cotree leaves are not 0..n-1");
        seen[v] = 1;
    }
    std::vector<std::pair<Vertex, Vertex>> e;
    for (auto x : pre) {
        auto& nd = ct[x];
        if (nd.kind != NodeKind::join) continue;
        for (std::size_t i = 0; i < nd.children.size(); ++i)
            for (std::size_t j = i + 1; j < nd.children.size(); ++j)
                for (auto a = lo[nd.children[i]]; a < hi[nd.children[i]]; ++a)
                    for (auto b = lo[nd.children[j]]; b < hi[nd.children[j]]; ++b) e.emplace_back(seq[a], seq[b]);
    }
    return Graph::from_edges(n, e);
}

struct CotreeViolation {
    std::int32_t node;
    std::string what;
};

inline std::vector<CotreeViolation> validate_cotree(const Cotree& ct, bool twin_free) {
    std::vector<CotreeViolation> out;
    if (ct.root < 0 || std::size_t(ct.root) >= ct.size()) {
        out.push_back({-1, "missing root"});
        return out;
    }
    if (ct[ct.root].parent != -1) out.push_back({ct.root, "root has a parent"});
    std::vector<char> reached(ct.size(), 0);
    std::vector<std::int32_t> st{ct.root};
    std::vector<Vertex> leaves;
    while (!st.empty()) {
        auto x = st.back();
        st.pop_back();
        if (reached[x]) {
            out.push_back({x, "node reached twice"});
            continue;
        }
        reached[x] = 1;
        auto& nd = ct[x];
        if (nd.kind == NodeKind::leaf) {
            if (!nd.children.empty()) out.push_back({x, "leaf with children"});
            leaves.push_back(nd.vertex);
            continue;
        }
        if (nd.children.size() < 2) out.push_back({x, "internal node with fewer than two children"});
        for (auto c : nd.children) {
            if (c < 0 || std::size_t(c) >= ct.size()) {
                out.push_back({x, "child id out of range"});
                continue;
            }
            if (ct[c].parent != x) out.push_back({c, "parent link disagrees with child list"});
            if (ct[c].kind == nd.kind) out.push_back({c, std::string("adjacent nodes both ") + kind_name(nd.kind)});
            st.push_back(c);
        }
        if (twin_free && nd.kind == NodeKind::join) {
            int nleaf = 0, nunion = 0;
            for (auto c : nd.children)
                if (c >= 0 && std::size_t(c) < ct.size())
                    nleaf += ct[c].kind == NodeKind::leaf, nunion += ct[c].kind == NodeKind::union_;
            if (nd.children.size() != 2 || nleaf != 1 || nunion != 1)
                out.push_back({x, "join is not one leaf plus one union (twins present)"});
        }
    }
    for (std::size_t i = 0; i < ct.size(); ++i)
        if (!reached[i]) out.push_back({std::int32_t(i), "node unreachable from root"});
    std::sort(leaves.begin(), leaves.end());
    for (std::size_t i = 0; i < leaves.size(); ++i)
        if (leaves[i] != Vertex(i)) {
            out.push_back({-1, "leaves do not biject with vertices 0..n-1"});
            break;
        }
    if (!leaves.empty() && ct.size() > 2 * leaves.size() - 1) out.push_back({-1, "more than 2n-1 nodes"});
    return out;
}

// Recursive structural key, children sorted; with_vertices adds leaf ids.
inline std::string canonical_key(const Cotree& ct, bool with_vertices = false) {
    if (ct.root < 0) return "";
    std::vector<std::string> key(ct.size());
    auto pre = ct.preorder();
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
        auto& nd = ct[*it];
        if (nd.kind == NodeKind::leaf) {
            key[*it] = with_vertices ? "L" + std::to_string(nd.vertex) : "L";
            continue;
        }
        std::vector<std::string> ch;
        for (auto c : nd.children) ch.push_back(std::move(key[c]));
        std::sort(ch.begin(), ch.end());
        std::string s = nd.kind == NodeKind::join ? "J(" : "U(";
        for (std::size_t i = 0; i < ch.size(); ++i) s += (i ? "," : "") + ch[i];
        key[*it] = s + ")";
    }
    return key[ct.root];
}

// "id kind parent [vertex]" per node, pre-order
inline std::string dump_cotree(const Cotree& ct) {
    std::string out;
    for (auto x : ct.preorder()) {
        auto& nd = ct[x];
        out += std::to_string(x) + " " + kind_name(nd.kind) + " " + std::to_string(nd.parent);
        if (nd.kind == NodeKind::leaf) out += " " + std::to_string(nd.vertex);
        out += '\n';
    }
    return out;
}

} // namespace leafroot

#endif
