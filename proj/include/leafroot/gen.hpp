#ifndef leafroot_gen_hpp
#define leafroot_gen_hpp

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "cotree.hpp"

namespace leafroot {

inline Graph gen_star(std::size_t t) {
    if (t < 2) throw std::invalid_argument("star needs at least two leaves");
    std::vector<std::pair<Vertex, Vertex>> e;
    for (std::size_t i = 1; i <= t; ++i) e.emplace_back(0, Vertex(i));
    return Graph::from_edges(t + 1, e);
}

inline std::size_t family_f_size(int i) { return i == 0 ? 3 : 3 * family_f_size(i - 1) + 7; }

// F_0 = P3; F_i = t (x (F u) | y (F v) | z (F w)) with joins as juxtaposition
// and | as disjoint union.
inline Cotree family_f_cotree(int i) {
    if (i < 0 || i > 12) throw LimitExceeded("family index must be in 0..12");
    Cotree ct;
    Vertex next = 0;
    auto leaf = [&] { return ct.add(NodeKind::leaf, next++); };
    auto join = [&](std::int32_t a, std::int32_t b) {
        auto j = ct.add(NodeKind::join);
        ct.link(j, a), ct.link(j, b);
        return j;
    };
    auto unite = [&](std::initializer_list<std::int32_t> xs) {
        auto u = ct.add(NodeKind::union_);
        for (auto x : xs) ct.link(u, x);
        return u;
    };
    auto build = [&](auto& self, int level) -> std::int32_t {
        if (level == 0) {
            auto a = leaf();
            auto b = leaf(), c = leaf();
            return join(a, unite({b, c}));
        }
        auto t = leaf();
        std::vector<std::int32_t> arms;
        for (int r = 0; r < 3; ++r) {
            auto hub = leaf();
            auto inner = self(self, level - 1);
            auto pend = leaf();
            arms.push_back(join(hub, unite({inner, pend})));
        }
        return join(t, unite({arms[0], arms[1], arms[2]}));
    };
    ct.root = build(build, i);
    return renumber_preorder(ct);
}

inline Graph gen_family_f(int i) { return cotree_to_graph(family_f_cotree(i)); }

struct RandomTpgParams {
    std::size_t branching = 6; // max children per union (soft: a final 1+1 split may add one)
    int depth = 10;            // max nesting of joins; deepest parts become stars
};

// Random twin-free cotree: every join is a leaf plus a union, and no connected part
// has exactly two vertices. Leaf ids are a seeded permutation. O(n).
inline Cotree random_tpg_cotree(std::size_t n, std::uint64_t seed, RandomTpgParams prm = {}) {
    if (n == 0) throw std::invalid_argument("n must be at least 1");
    if (prm.branching < 2) throw std::invalid_argument("branching must be at least 2");
    if (prm.depth < 1) throw std::invalid_argument("depth must be at least 1");
    std::mt19937_64 rng(seed);
    std::vector<Vertex> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    std::size_t used = 0;
    Cotree ct;
    ct.nodes.reserve(2 * n);
    auto uniform = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };

    // size of the next part when r vertices remain for a union's children
    auto part = [&](std::size_t r, bool first, bool last, int depth_left) -> std::size_t {
        if (depth_left <= 0) return 1;
        if (last && r != 2) return r;
        if (r <= 2) return 1;
        std::size_t hi = first ? r - 1 : r;
        if (hi < 3) return 1;
        switch (uniform(0, 5)) {
        case 0:
        case 1: return 1;
        case 2: return hi; // long chains: one big part and little else
        default: return uniform(3, hi);
        }
    };

    struct Task {
        std::size_t size;
        int depth_left;
        std::int32_t parent; // union node, -1 for the root
        bool connected;
    };
    std::vector<Task> st;
    if (n == 1) {
        ct.root = ct.add(NodeKind::leaf, ids[used++]);
        return ct;
    }
    bool root_connected = n >= 3 && uniform(0, 3) != 0;
    st.push_back({n, prm.depth, -1, root_connected});
    while (!st.empty()) {
        Task tk = st.back();
        st.pop_back();
        std::int32_t node;
        std::int32_t un;
        std::size_t r;
        if (tk.size == 1) {
            node = ct.add(NodeKind::leaf, ids[used++]);
            if (tk.parent >= 0) ct.link(tk.parent, node);
            else ct.root = node;
            continue;
        }
        if (tk.connected) {
            node = ct.add(NodeKind::join);
            ct.link(node, ct.add(NodeKind::leaf, ids[used++]));
            un = ct.add(NodeKind::union_);
            ct.link(node, un);
            r = tk.size - 1;
        } else {
            node = un = ct.add(NodeKind::union_);
            r = tk.size;
        }
        if (tk.parent >= 0) ct.link(tk.parent, node);
        else ct.root = node;
        std::size_t children = 0;
        const int dl = tk.connected ? tk.depth_left - 1 : tk.depth_left;
        std::vector<Task> sub;
        while (r > 0) {
            bool last = children + 1 >= prm.branching;
            std::size_t x = part(r, children == 0, last, dl);
            sub.push_back({x, dl, un, true});
            r -= x;
            ++children;
        }
        for (auto it = sub.rbegin(); it != sub.rend(); ++it) st.push_back(*it);
    }
    return renumber_preorder(ct);
}

inline Graph gen_random_tpg(std::size_t n, std::uint64_t seed, RandomTpgParams prm = {}) {
    return cotree_to_graph(random_tpg_cotree(n, seed, prm));
}

namespace detail {

// rooted trees with s nodes as canonical strings "(" + sorted children + ")"
inline const std::vector<std::vector<std::string>>& rooted_trees(std::size_t max_s) {
    static std::vector<std::vector<std::string>> memo{{}, {"()"}};
    auto forests = [&](auto& self, std::size_t size, std::size_t max_tree_size, const std::string* bound,
                       std::vector<std::string>& acc, std::string prefix) -> void {
        if (size == 0) {
            acc.push_back(prefix);
            return;
        }
        // children listed in non-increasing (size, string) order
        for (std::size_t ts = std::min(size, max_tree_size); ts >= 1; --ts)
            for (auto& t : memo[ts]) {
                if (bound && ts == max_tree_size && t > *bound) continue;
                self(self, size - ts, ts, &t, acc, prefix + t);
            }
    };
    while (memo.size() <= max_s) {
        std::size_t s = memo.size();
        std::vector<std::string> acc;
        forests(forests, s - 1, s - 1, nullptr, acc, "");
        std::vector<std::string> out;
        for (auto& f : acc) out.push_back("(" + f + ")");
        memo.push_back(std::move(out));
    }
    return memo;
}

// all rooted forests with n nodes, as a list of tree strings (sizes non-increasing)
inline std::vector<std::vector<std::string>> rooted_forests(std::size_t n) {
    const auto& memo = rooted_trees(n);
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> cur;
    auto rec = [&](auto& self, std::size_t size, std::size_t max_ts, const std::string* bound) -> void {
        if (size == 0) {
            out.push_back(cur);
            return;
        }
        for (std::size_t ts = std::min(size, max_ts); ts >= 1; --ts)
            for (auto& t : memo[ts]) {
                if (bound && ts == max_ts && t > *bound) continue;
                cur.push_back(t);
                self(self, size - ts, ts, &t);
                cur.pop_back();
            }
    };
    rec(rec, n, n, nullptr);
    return out;
}

} // namespace detail

// One graph per isomorphism class of trivially perfect graphs with 1..max_n vertices,
// read off rooted forests (ancestor pairs are edges). twin_free keeps only forests
// without single-child nodes.
inline std::vector<Graph> enumerate_small_tpgs(std::size_t max_n, bool twin_free = true) {
    if (max_n > 8) throw LimitExceeded("enumeration limited to 8 vertices");
    std::vector<Graph> out;
    for (std::size_t n = 1; n <= max_n; ++n)
        for (auto& forest : detail::rooted_forests(n)) {
            std::vector<std::pair<Vertex, Vertex>> edges;
            std::vector<Vertex> anc;
            std::vector<int> kids;
            Vertex next = 0;
            bool single_child = false;
            for (auto& tree : forest)
                for (char c : tree) {
                    if (c == '(') {
                        if (!kids.empty()) ++kids.back();
                        for (Vertex a : anc) edges.emplace_back(a, next);
                        anc.push_back(next++);
                        kids.push_back(0);
                    } else {
                        single_child |= kids.back() == 1;
                        anc.pop_back();
                        kids.pop_back();
                    }
                }
            if (twin_free && single_child) continue;
            out.push_back(Graph::from_edges(n, edges));
        }
    return out;
}

} // namespace leafroot

#endif
