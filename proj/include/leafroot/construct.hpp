#ifndef leafroot_construct_hpp
#define leafroot_construct_hpp

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "cotree.hpp"
#include "wtree.hpp"

namespace leafroot {

struct LeafRootResult {
    CompressedTree tree;
    TreeMeta meta;
    std::int64_t k = 0;
    int parity = 0;
    bool reinserted = false; // twins were put back after the reduced construction
};

struct ConstructOptions {
    // re-derive child ordering facts and compare carried meta against compute_meta;
    // costs far more than the construction itself
    bool paranoid = false;
};

// Lengthen every pendant edge by delta. Centers stay put.
inline void eta(CompressedTree& t, TreeMeta& m, Weight delta) {
    if (delta < 0) throw std::invalid_argument("eta: negative delta");
    if (delta == 0) return;
    for (Vertex g = 0; std::size_t(g) < t.label_bound(); ++g) {
        TreeVertex x = t.leaf_of(g);
        if (x == no_vertex || t.degree(x) != 1) continue;
        t.add_weight(t.incident(x)[0], delta);
    }
    m.diameter = checked_add(m.diameter, 2 * delta);
    m.radius += delta;
    m.dmin += delta;
}

namespace detail {

// A leaf root of one subgraph, living inside the shared builder tree.
struct Interim {
    std::int64_t k = 0;
    TreeMeta meta;
    std::array<Weight, 2> nearest{0, 0}; // nearest leaf per center slot
    TreeVertex head = no_vertex, tail = no_vertex;
};

class Builder {
public:
    CompressedTree t;

    TreeVertex vertex(Vertex label = no_vertex) {
        TreeVertex v = t.add_vertex(label);
        next_.push_back(no_vertex);
        return v;
    }

    TreeVertex leaf(Interim& x, TreeVertex from, Weight len, Vertex label) {
        TreeVertex v = vertex(label);
        t.add_edge(from, v, len);
        append(x, v, v);
        return v;
    }

    void append(Interim& x, TreeVertex head, TreeVertex tail) {
        if (x.head == no_vertex) x.head = head;
        else next_[x.tail] = head;
        x.tail = tail;
    }

    TreeVertex split(EdgeId e, TreeVertex from, Weight offset) {
        TreeVertex v = t.split_edge(e, from, offset);
        next_.push_back(no_vertex);
        return v;
    }

    void eta(Interim& x, Weight delta) {
        check_internal(delta >= 0, "eta with negative delta");
        if (delta == 0) return;
        for (TreeVertex v = x.head; v != no_vertex; v = next_[v]) t.add_weight(t.incident(v)[0], delta);
        x.meta.diameter = checked_add(x.meta.diameter, 2 * delta);
        x.meta.radius += delta;
        x.meta.dmin += delta;
        x.nearest[0] += delta;
        x.nearest[1] += delta;
    }

    // Hang roots and isolated vertices off a new vertex c so that the result is a
    // k-leaf root of their disjoint union; meta is derived without touching subtrees.
    Interim merge(std::int64_t k, std::span<Interim> roots, std::span<const Vertex> isolated) {
        const std::size_t s = roots.size(), nt = isolated.size();
        if (s + nt < 2) throw InternalError("merge needs at least two parts");
        const Weight o = odd(k), lo = (k - o) / 2, hi = (k + o) / 2;
        for (auto& r : roots)
            if (2 * r.meta.dmin > k) throw InternalError("leaf distance exceeds k/2");

        std::size_t m = 0;
        for (std::size_t i = 1; i < s; ++i)
            if (roots[i].meta.dmin < roots[m].meta.dmin) m = i;

        Interim out;
        out.k = k;
        std::vector<Weight> p(s, 0);
        std::vector<EdgeId> e(s, -1);
        TreeVertex c;
        if (s > 0 && hi == roots[m].meta.dmin) {
            c = roots[m].meta.minmax_center; // zero-length attachment: identify
        } else {
            c = vertex();
            if (s > 0) p[m] = hi - roots[m].meta.dmin, e[m] = t.add_edge(c, roots[m].meta.minmax_center, p[m]);
        }
        for (std::size_t i = 0; i < s; ++i) {
            if (i == m) continue;
            p[i] = lo + 1 - roots[i].meta.dmin;
            check_internal(p[i] >= 1, "non-critical attachment shorter than 1");
            e[i] = t.add_edge(c, roots[i].meta.minmax_center, p[i]);
        }
        // every part hangs off c as a branch: its attachment, its radius beyond it,
        // and the nearest leaf beyond it; an isolated vertex is a branch of radius 0
        struct Branch {
            Weight len, rad, near;
            EdgeId e;
            TreeVertex z;
        };
        std::vector<Branch> br;
        br.reserve(s + nt);
        for (std::size_t i = 0; i < s; ++i)
            br.push_back({p[i], roots[i].meta.radius, roots[i].meta.dmin, e[i], roots[i].meta.minmax_center});
        for (auto& r : roots) append(out, r.head, r.tail);
        const Weight d0 = lo + 1;
        for (Vertex v : isolated) {
            TreeVertex x = leaf(out, c, d0, v);
            br.push_back({d0, 0, 0, t.incident(x)[0], x});
        }

        // the diameter runs inside the widest root or through c
        std::size_t a = 0;
        for (std::size_t i = 1; i < s; ++i)
            if (roots[i].meta.diameter > roots[a].meta.diameter) a = i;
        const Weight inside = s > 0 ? roots[a].meta.diameter : -1;

        std::size_t i1 = 0;
        Weight d1 = -1, d2 = -1;
        for (std::size_t i = 0; i < br.size(); ++i) {
            Weight d = br[i].len + br[i].rad;
            if (d > d1) d2 = d1, d1 = d, i1 = i;
            else if (d > d2) d2 = d;
        }
        const Weight through = d1 + d2;

        if (inside >= through) {
            out.meta = roots[a].meta;
            out.nearest = roots[a].nearest;
        } else {
            Weight excl = std::numeric_limits<Weight>::max();
            for (std::size_t i = 0; i < br.size(); ++i)
                if (i != i1) excl = std::min(excl, br[i].len + br[i].near);
            const Weight delta1 = (d1 - d2 + 1) / 2, delta2 = (d1 - d2) / 2;
            const Branch& b = br[i1];
            check_internal(delta1 <= b.len, "center beyond the attachment path");
            // walk from c toward z, materializing points at delta2 then delta1
            TreeVertex cur = c;
            EdgeId cur_edge = b.e;
            Weight at = 0;
            auto point = [&](Weight d) {
                if (d == at) return cur;
                if (d == b.len) return b.z;
                TreeVertex x = split(cur_edge, cur, d - at);
                cur_edge = t.incident(x)[1]; // the piece toward z
                cur = x;
                at = d;
                return x;
            };
            TreeVertex x2 = point(delta2);
            TreeVertex x1 = point(delta1);
            auto nearest_at = [&](Weight d) { return std::min(d + excl, b.len - d + b.near); };
            out.meta.diameter = through;
            out.meta.parity = odd(through);
            out.nearest[0] = nearest_at(delta1);
            if (out.meta.parity) {
                out.meta.center = {x1, x2};
                out.nearest[1] = nearest_at(delta2);
                bool second = out.nearest[1] >= out.nearest[0];
                out.meta.minmax_center = second ? x2 : x1;
                out.meta.dmin = out.nearest[second ? 1 : 0];
            } else {
                out.meta.center = {x1, no_vertex};
                out.meta.minmax_center = x1;
                out.meta.dmin = out.nearest[0];
            }
        }
        out.meta.radius = (out.meta.diameter + out.meta.parity) / 2;
        return out;
    }

    Interim star(Vertex u, std::span<const Vertex> leaves, int p) {
        Interim x;
        const std::size_t nt = leaves.size();
        if (p == 0 && nt == 2) {
            // u, v1, v2 at one, two and three from a common vertex
            TreeVertex h = vertex(), w = vertex();
            leaf(x, h, 1, u);
            leaf(x, h, 2, leaves[0]);
            t.add_edge(h, w, 1);
            leaf(x, w, 2, leaves[1]);
            x.k = 4;
            x.meta = {5, 3, 1, {h, w}, w, 2};
            x.nearest = {1, 2};
            return x;
        }
        const Weight len = p == 1 ? 2 : 3;
        TreeVertex h = vertex();
        for (Vertex v : leaves) leaf(x, h, len, v);
        leaf(x, h, 1, u);
        x.k = p == 1 ? 3 : 4;
        x.meta = {2 * len, len, 0, {h, no_vertex}, h, 1};
        x.nearest = {1, 0};
        return x;
    }

private:
    std::vector<TreeVertex> next_; // leaf lists, one per interim
};

// rad and rad-odd non-increasing once sorted by diameter
inline bool radius_order_holds(std::span<const Interim> parts) {
    std::vector<const Interim*> v;
    for (auto& x : parts) v.push_back(&x);
    std::stable_sort(v.begin(), v.end(), [](auto* a, auto* b) { return a->meta.diameter > b->meta.diameter; });
    for (std::size_t i = 1; i < v.size(); ++i) {
        auto &x = v[i - 1]->meta, &y = v[i]->meta;
        if (x.radius < y.radius || x.radius - x.parity < y.radius - y.parity) return false;
    }
    return true;
}

// k for a connected graph from its component roots (children of the union under u)
inline std::int64_t connected_k(std::span<const Interim> ch, int p) {
    if (ch.size() == 1) return ch[0].k + 2 * (1 - ch[0].meta.parity);
    std::array<std::size_t, 3> top{0, 0, 0};
    std::vector<std::size_t> idx(ch.size());
    std::iota(idx.begin(), idx.end(), 0);
    auto before = [&](std::size_t x, std::size_t y) {
        if (ch[x].k != ch[y].k) return ch[x].k > ch[y].k;
        if (ch[x].meta.diameter != ch[y].meta.diameter) return ch[x].meta.diameter > ch[y].meta.diameter;
        return x < y;
    };
    std::partial_sort(idx.begin(), idx.begin() + std::ptrdiff_t(std::min<std::size_t>(3, idx.size())), idx.end(), before);
    for (std::size_t i = 0; i < std::min<std::size_t>(3, idx.size()); ++i) top[i] = idx[i];
    const auto& A = ch[top[0]];
    const auto& B = ch[top[1]];
    const std::int64_t ka = A.k, kb = B.k, oa = A.meta.parity, ob = B.meta.parity;
    if (p == 1) return ka + kb - 1 - 2 * oa * ob;
    bool tight = ch.size() == 2;
    if (!tight) {
        const auto& C = ch[top[2]];
        tight = ka - oa > C.k - C.meta.parity;
    }
    return tight ? ka + kb - 2 * (oa + ob - oa * ob) : ka + kb - 2 * oa * ob;
}

inline void widest_first(std::vector<Interim>& ch) {
    std::size_t a = 0;
    for (std::size_t i = 1; i < ch.size(); ++i)
        if (ch[i].k > ch[a].k || (ch[i].k == ch[a].k && ch[i].meta.diameter > ch[a].meta.diameter)) a = i;
    std::rotate(ch.begin(), ch.begin() + std::ptrdiff_t(a), ch.begin() + std::ptrdiff_t(a) + 1);
}

} // namespace detail

// Parity-p optimal leaf root from the cotree of a twin-free trivially perfect graph
// with at least two vertices. Post-order over the cotree with an explicit stack.
inline LeafRootResult rho(const Cotree& ct, int p, const ConstructOptions& opt = {}) {
    if (p != 0 && p != 1) throw std::invalid_argument("parity must be 0 or 1");
    if (auto bad = validate_cotree(ct, true); !bad.empty())
        throw std::invalid_argument("cotree: " + bad.front().what);
    if (ct[ct.root].kind == NodeKind::leaf) throw std::invalid_argument("rho needs at least two vertices");
    const std::size_t n = ct.leaf_count();

    detail::Builder B;
    std::vector<detail::Interim> S;
    std::vector<detail::Interim> ch;
    std::vector<Vertex> iso;

    // split a union's children into popped roots (cotree order) and isolated vertices
    auto gather = [&](const CotreeNode& un) {
        iso.clear();
        std::size_t s = 0;
        for (auto c : un.children)
            if (ct[c].kind == NodeKind::leaf) iso.push_back(ct[c].vertex);
            else ++s;
        check_internal(S.size() >= s, "interim stack underflow");
        ch.assign(std::make_move_iterator(S.end() - std::ptrdiff_t(s)), std::make_move_iterator(S.end()));
        S.resize(S.size() - s);
    };
    auto level = [&](std::int64_t k) {
        for (auto& x : ch) {
            check_internal(odd(k - x.k) == 0 && k >= x.k, "child k of wrong parity or too large");
            B.eta(x, (k - x.k) / 2);
        }
        if (opt.paranoid) check_internal(detail::radius_order_holds(ch), "child radii out of order");
        detail::widest_first(ch);
    };

    std::vector<std::pair<std::int32_t, std::size_t>> walk{{ct.root, 0}};
    while (!walk.empty()) {
        auto& [x, i] = walk.back();
        const auto& nd = ct[x];
        if (i < nd.children.size()) {
            auto c = nd.children[i++];
            if (ct[c].kind != NodeKind::leaf) walk.push_back({c, 0});
            continue;
        }
        walk.pop_back();
        if (nd.kind != NodeKind::join) continue;
        Vertex u = no_vertex;
        const CotreeNode* un = nullptr;
        for (auto c : nd.children)
            if (ct[c].kind == NodeKind::leaf) u = ct[c].vertex;
            else un = &ct[c];
        gather(*un);
        if (ch.empty()) {
            S.push_back(B.star(u, iso, p));
            continue;
        }
        std::int64_t k = detail::connected_k(ch, p);
        level(k);
        detail::Interim r = B.merge(k, ch, iso);
        // u goes next to a center; the other center keeps the min-max role
        TreeVertex z1 = r.meta.center[0];
        TreeVertex uleaf = B.leaf(r, z1, 1, u);
        (void)uleaf;
        if (r.meta.parity) {
            r.meta.minmax_center = r.meta.center[1];
            r.nearest[0] = 1;
            r.nearest[1] = std::min<Weight>(r.nearest[1], 2);
            r.meta.dmin = r.nearest[1];
        } else {
            r.meta.minmax_center = z1;
            r.nearest[0] = r.meta.dmin = 1;
        }
        check_internal(r.meta.radius == k - 1, "radius differs from k-1");
        check_internal(r.meta.dmin == 1 + r.meta.parity, "leaf distance differs from 1+odd");
        r.k = k;
        S.push_back(std::move(r));
    }

    if (ct[ct.root].kind == NodeKind::union_) {
        gather(ct[ct.root]);
        std::int64_t k = p + 2;
        for (auto& x : ch) k = std::max(k, x.k);
        level(k);
        S.push_back(B.merge(k, ch, iso));
    }
    check_internal(S.size() == 1, "interim stack not reduced to one tree");

    detail::Interim top = std::move(S.back());
    std::array<TreeVertex, 3> keep{top.meta.center[0], top.meta.center[1], top.meta.minmax_center};
    Canonical cn = canonicalize(B.t, keep);
    LeafRootResult r;
    r.tree = std::move(cn.tree);
    r.meta = remap_meta(top.meta, cn.remap);
    r.k = top.k;
    r.parity = p;
    check_internal(odd(r.k) == p, "k has the wrong parity");
    check_internal(r.k <= std::int64_t(n) + 1, "k exceeds n+1");
    if (opt.paranoid) {
        CompressedTree copy = r.tree;
        TreeMeta m = compute_meta(copy);
        check_internal(copy.vertex_count() == r.tree.vertex_count(), "carried center is not a vertex");
        check_internal(m.diameter == r.meta.diameter && m.radius == r.meta.radius && m.dmin == r.meta.dmin,
                       "carried meta differs from recomputed meta");
        auto cs = [](const TreeMeta& t) {
            std::array<TreeVertex, 2> c = t.center;
            std::sort(c.begin(), c.end());
            return c;
        };
        check_internal(cs(m) == cs(r.meta), "carried centers differ from recomputed centers");
    }
    return r;
}

// Puts removed twins back: each hangs beside its representative at the same distance.
inline LeafRootResult reinsert_twins(LeafRootResult r, const TwinMap& tm) {
    if (tm.empty()) return r;
    if (r.tree.leaf_count() != tm.kept.size() || r.tree.label_bound() != tm.kept.size())
        throw LeafSetMismatch("twin map does not match the tree's leaves");
    r.tree.relabel(tm.kept);
    if (r.tree.vertex_count() == 1) {
        TreeVertex h = r.tree.add_vertex();
        r.tree.add_edge(h, 0, 1);
        r.meta = {2, 1, 0, {h, no_vertex}, h, 1};
    }
    for (Vertex x : tm.order) {
        TreeVertex y = r.tree.leaf_of(tm.representative[x]);
        if (y == no_vertex || r.tree.degree(y) != 1) throw LeafSetMismatch("representative has no pendant leaf");
        EdgeId e = r.tree.incident(y)[0];
        TreeVertex q = r.tree.other(e, y);
        Weight w = r.tree.weight(e);
        if (w > 1) q = r.tree.split_edge(e, q, w - 1);
        r.tree.attach_path(q, 1, x);
    }
    r.reinserted = true;
    return r;
}

namespace detail {

inline LeafRootResult single_leaf(int p) {
    LeafRootResult r;
    r.tree.add_vertex(0);
    r.meta = {0, 0, 0, {0, no_vertex}, 0, 0};
    r.k = p + 2;
    r.parity = p;
    return r;
}

// ct is the cotree of the twin-free reduction, or null when that is a single vertex
inline LeafRootResult optimal_for_parity(const Graph& g, const Cotree* ct, const TwinMap& tm, int p,
                                         const ConstructOptions& opt) {
    LeafRootResult r = ct ? rho(*ct, p, opt) : single_leaf(p);
    r = reinsert_twins(std::move(r), tm);
    const std::size_t n = g.vertex_count();
    check_internal(odd(r.k) == p, "k has the wrong parity");
    if (n >= 2) check_internal(r.k <= std::int64_t(n) + 1, "k exceeds n+1");
    if (n >= 2 && universal_vertex(g)) {
        check_internal(r.meta.radius <= r.k - 1 && r.meta.diameter <= 2 * r.k - 2, "radius above k-1");
        check_internal(2 * r.meta.dmin <= r.k, "leaf distance above k/2");
        if (ct) {
            check_internal(r.meta.radius == r.k - 1, "radius differs from k-1");
            check_internal(r.meta.dmin == 1 + r.meta.parity, "leaf distance differs from 1+odd");
        }
    }
    return r;
}

} // namespace detail

// Minimum-k leaf root of a trivially perfect graph, for one parity or the better of both.
// One recognition pass; twins and the cotree both come from its forest.
inline LeafRootResult optimal_leaf_root(const Graph& g, Parity mode = Parity::best, const ConstructOptions& opt = {}) {
    if (g.vertex_count() == 0) throw std::invalid_argument("empty graph");
    auto chk = check_trivially_perfect(g);
    if (!chk.trivially_perfect) throw NotTriviallyPerfect(chk.witness);
    auto [tm, forest] = forest_twin_reduction(chk);
    chk = {};
    std::optional<Cotree> ct;
    if (tm.kept.size() > 1) ct = detail::cotree_from_forest(tm.kept.size(), forest);
    const Cotree* cp = ct ? &*ct : nullptr;
    if (mode != Parity::best) return detail::optimal_for_parity(g, cp, tm, parity_bit(mode), opt);
    LeafRootResult a = detail::optimal_for_parity(g, cp, tm, 1, opt);
    LeafRootResult b = detail::optimal_for_parity(g, cp, tm, 0, opt);
    return a.k < b.k ? a : b;
}

struct Recognition {
    bool member = false;
    std::int64_t kappa = 0; // optimum of the same parity as k
};

inline Recognition recognize(const Graph& g, std::int64_t k) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    auto r = optimal_leaf_root(g, odd(k) ? Parity::odd : Parity::even);
    return {r.k <= k, r.k};
}

inline bool recognize_k_leaf_power(const Graph& g, std::int64_t k) { return recognize(g, k).member; }

struct RootPart {
    CompressedTree tree;
    TreeMeta meta;
};

// Standalone merge of separate k-leaf roots and isolated vertices (labels disjoint).
inline RootPart mu(std::int64_t k, const std::vector<RootPart>& roots, std::span<const Vertex> isolated) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    if (roots.size() + isolated.size() < 2) throw std::invalid_argument("mu needs at least two parts");
    detail::Builder B;
    std::vector<detail::Interim> parts;
    for (auto& rp : roots) {
        if (2 * rp.meta.dmin > k) throw std::invalid_argument("mu: leaf distance exceeds k/2");
        TreeVertex base = TreeVertex(B.t.vertex_count());
        detail::Interim x;
        x.k = k;
        for (TreeVertex v = 0; std::size_t(v) < rp.tree.vertex_count(); ++v) {
            TreeVertex nv = B.vertex(rp.tree.label(v));
            if (rp.tree.labelled(v)) {
                if (rp.tree.degree(v) != 1) throw std::invalid_argument("mu: every part needs two or more leaves");
                B.append(x, nv, nv);
            }
        }
        for (auto& e : rp.tree.edges()) B.t.add_edge(base + e.a, base + e.b, e.w);
        x.meta = rp.meta;
        for (auto& c : x.meta.center)
            if (c != no_vertex) c += base;
        x.meta.minmax_center += base;
        x.nearest[0] = nearest_leaf(rp.tree, rp.meta.center[0]);
        if (rp.meta.parity) x.nearest[1] = nearest_leaf(rp.tree, rp.meta.center[1]);
        parts.push_back(std::move(x));
    }
    auto top = B.merge(k, parts, isolated);
    std::array<TreeVertex, 3> keep{top.meta.center[0], top.meta.center[1], top.meta.minmax_center};
    Canonical cn = canonicalize(B.t, keep);
    return {std::move(cn.tree), remap_meta(top.meta, cn.remap)};
}

} // namespace leafroot

#endif
