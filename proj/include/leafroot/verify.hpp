#ifndef leafroot_verify_hpp
#define leafroot_verify_hpp

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "construct.hpp"

namespace leafroot {

struct PairViolation {
    Vertex x, y;
    Weight distance;
    bool adjacent; // edge farther than k, or non-edge within k
};

struct VerifyReport {
    bool ok = true;
    std::vector<PairViolation> violations;
    std::size_t violation_count = 0; // may exceed violations.size() when capped
    std::size_t checked_pairs = 0;
};

namespace detail {

inline void require_same_leaves(const CompressedTree& t, const Graph& g) {
    if (t.leaf_count() != g.vertex_count() || t.label_bound() != g.vertex_count())
        throw LeafSetMismatch("tree leaves are not exactly the graph's vertices");
}

} // namespace detail

// xy is an edge iff dist(x,y) <= k, over all pairs.
inline VerifyReport is_k_leaf_root(const CompressedTree& t, const Graph& g, std::int64_t k,
                                   std::size_t max_recorded = 1000) {
    detail::require_same_leaves(t, g);
    auto d = all_leaf_distances(t);
    VerifyReport r;
    const Vertex n = Vertex(g.vertex_count());
    for (Vertex x = 0; x < n; ++x) {
        auto nb = g.neighbors(x);
        std::size_t j = 0;
        for (Vertex y = x + 1; y < n; ++y) {
            while (j < nb.size() && nb[j] < y) ++j;
            bool adj = j < nb.size() && nb[j] == y;
            Weight dist = d.at(x, y);
            ++r.checked_pairs;
            if (adj != (dist <= k)) {
                ++r.violation_count;
                if (r.violations.size() < max_recorded) r.violations.push_back({x, y, dist, adj});
            }
        }
    }
    r.ok = r.violation_count == 0;
    return r;
}

// Least k making t a k-leaf root of g, if any; every k up to the nearest non-edge minus one also works.
inline std::optional<std::int64_t> min_k_for_tree(const CompressedTree& t, const Graph& g) {
    detail::require_same_leaves(t, g);
    auto d = all_leaf_distances(t);
    Weight de = 0, dne = std::numeric_limits<Weight>::max();
    const Vertex n = Vertex(g.vertex_count());
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y) {
            if (g.adjacent(x, y)) de = std::max(de, d.at(x, y));
            else dne = std::min(dne, d.at(x, y));
        }
    Weight k = std::max<Weight>(de, 2);
    if (k < dne) return k;
    return std::nullopt;
}

// Worker count: LEAFROOT_THREADS if set, else the hardware's.
inline unsigned worker_threads() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* s = std::getenv("LEAFROOT_THREADS")) {
        long v = std::strtol(s, nullptr, 10);
        if (v >= 1) return unsigned(std::min<long>(v, 1024));
    }
    return hw;
}

struct OracleLimits {
    std::size_t max_n = 6;
    std::int64_t slack = 2;
    unsigned threads = 0; // 0: worker_threads()
};

// Leaf-labelled tree shape: vertices 0..n-1 are the leaves (graph vertices),
// the rest internal with degree >= 3.
struct Topology {
    std::size_t vertices = 0;
    std::vector<std::pair<TreeVertex, TreeVertex>> edges;
};

// Every such shape exactly once, grown by inserting leaf i onto an edge or an internal vertex.
inline std::vector<Topology> leaf_labelled_topologies(std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {Topology{1, {}}};
    // internal vertices are numbered from 100 while growing, compacted at the end
    constexpr TreeVertex base = 100;
    struct Raw {
        TreeVertex next_internal;
        std::vector<std::pair<TreeVertex, TreeVertex>> edges;
    };
    std::vector<Raw> cur{{base, {{0, 1}}}};
    for (TreeVertex i = 2; std::size_t(i) < n; ++i) {
        std::vector<Raw> nxt;
        for (auto& r : cur) {
            for (std::size_t e = 0; e < r.edges.size(); ++e) {
                Raw s = r;
                auto [a, b] = s.edges[e];
                TreeVertex x = s.next_internal++;
                s.edges[e] = {a, x};
                s.edges.push_back({x, b});
                s.edges.push_back({x, i});
                nxt.push_back(std::move(s));
            }
            for (TreeVertex v = base; v < r.next_internal; ++v) {
                Raw s = r;
                s.edges.push_back({v, i});
                nxt.push_back(std::move(s));
            }
        }
        cur = std::move(nxt);
    }
    std::vector<Topology> out;
    for (auto& r : cur) {
        Topology t;
        t.vertices = n + std::size_t(r.next_internal - base);
        for (auto [a, b] : r.edges) {
            auto fix = [&](TreeVertex v) { return v >= base ? TreeVertex(n) + (v - base) : v; };
            t.edges.push_back({fix(a), fix(b)});
        }
        out.push_back(std::move(t));
    }
    return out;
}

namespace detail {

// Depth-first weight search for one topology: exact feasibility for a fixed k, or
// minimum diameter over feasible weightings.
class WeightSearch {
public:
    WeightSearch(const Topology& topo, const Graph& g) : n_(g.vertex_count()), m_(topo.edges.size()) {
        // leaf-pair paths as edge sets
        std::vector<std::vector<std::pair<TreeVertex, std::size_t>>> adj(topo.vertices);
        for (std::size_t e = 0; e < m_; ++e) {
            adj[topo.edges[e].first].push_back({topo.edges[e].second, e});
            adj[topo.edges[e].second].push_back({topo.edges[e].first, e});
        }
        for (TreeVertex x = 0; std::size_t(x) < n_; ++x) {
            std::vector<std::uint32_t> mask(topo.vertices, 0);
            std::vector<char> seen(topo.vertices, 0);
            std::vector<TreeVertex> st{x};
            seen[x] = 1;
            while (!st.empty()) {
                TreeVertex v = st.back();
                st.pop_back();
                for (auto [w, e] : adj[v])
                    if (!seen[w]) seen[w] = 1, mask[w] = mask[v] | (1u << e), st.push_back(w);
            }
            for (TreeVertex y = x + 1; std::size_t(y) < n_; ++y) pairs_.push_back({mask[y], g.adjacent(x, y)});
        }
        // edges used by many pairs first
        order_.resize(m_);
        std::iota(order_.begin(), order_.end(), 0);
        std::vector<int> use(m_, 0);
        for (auto& p : pairs_)
            for (std::size_t e = 0; e < m_; ++e) use[e] += (p.mask >> e) & 1;
        std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) { return use[a] > use[b]; });
        pairs_of_.resize(m_);
        for (std::size_t i = 0; i < pairs_.size(); ++i)
            for (std::size_t e = 0; e < m_; ++e)
                if ((pairs_[i].mask >> e) & 1) pairs_of_[e].push_back(i);
    }

    // some weighting in [1, k+1] is a k-leaf root
    bool feasible(std::int64_t k, std::vector<Weight>* witness = nullptr) {
        k_ = k;
        diam_mode_ = false;
        reset();
        bool ok = dfs(0);
        if (ok && witness) *witness = found_;
        return ok;
    }

    // least diameter among k-leaf-root weightings, weights capped at cap; -1 if none
    Weight min_diameter(std::int64_t k, Weight cap) {
        k_ = k;
        diam_mode_ = true;
        cap_ = cap;
        best_ = std::numeric_limits<Weight>::max();
        reset();
        dfs(0);
        return best_ == std::numeric_limits<Weight>::max() ? -1 : best_;
    }

private:
    struct PairInfo {
        std::uint32_t mask;
        bool adjacent;
    };

    void reset() {
        w_.assign(m_, 0);
        partial_.assign(pairs_.size(), 0);
        remaining_.assign(pairs_.size(), 0);
        for (std::size_t i = 0; i < pairs_.size(); ++i) remaining_[i] = __builtin_popcount(pairs_[i].mask);
    }

    Weight upper(std::size_t e) const {
        Weight ub = diam_mode_ ? cap_ : k_ + 1;
        for (auto i : pairs_of_[e])
            if (pairs_[i].adjacent) ub = std::min<Weight>(ub, k_ - partial_[i] - (remaining_[i] - 1));
        return ub;
    }

    // can every pair still end up on the right side of k?
    bool consistent() const {
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            if (pairs_[i].adjacent) {
                if (partial_[i] + remaining_[i] > k_) return false;
            } else if (remaining_[i] == 0) {
                if (partial_[i] <= k_) return false;
            } else {
                Weight reach = partial_[i];
                for (std::size_t e = 0; e < m_; ++e)
                    if (((pairs_[i].mask >> e) & 1) && w_[e] == 0) reach += upper(e);
                if (reach <= k_) return false;
            }
        }
        return true;
    }

    Weight diameter_lower_bound() const {
        Weight lb = 0;
        for (std::size_t i = 0; i < pairs_.size(); ++i) lb = std::max<Weight>(lb, partial_[i] + remaining_[i]);
        return lb;
    }

    void assign(std::size_t e, Weight w) {
        w_[e] = w;
        for (auto i : pairs_of_[e]) partial_[i] += w, --remaining_[i];
    }
    void unassign(std::size_t e) {
        for (auto i : pairs_of_[e]) partial_[i] -= w_[e], ++remaining_[i];
        w_[e] = 0;
    }

    bool dfs(std::size_t depth) {
        if (depth == m_) {
            if (!diam_mode_) {
                found_ = w_;
                return true;
            }
            best_ = std::min(best_, diameter_lower_bound());
            return false;
        }
        std::size_t e = order_[depth];
        Weight lb = 1, ub = upper(e);
        // a non-edge whose last open edge is e needs it long enough
        for (auto i : pairs_of_[e])
            if (!pairs_[i].adjacent && remaining_[i] == 1) lb = std::max<Weight>(lb, k_ + 1 - partial_[i]);
        for (Weight w = lb; w <= ub; ++w) {
            assign(e, w);
            bool go = consistent() && (!diam_mode_ || diameter_lower_bound() < best_);
            if (go && dfs(depth + 1)) return true;
            unassign(e);
        }
        return false;
    }

    std::size_t n_, m_;
    std::vector<PairInfo> pairs_;
    std::vector<std::vector<std::size_t>> pairs_of_;
    std::vector<std::size_t> order_;
    std::vector<Weight> w_, found_;
    std::vector<Weight> partial_;
    std::vector<int> remaining_;
    std::int64_t k_ = 0;
    bool diam_mode_ = false;
    Weight cap_ = 0, best_ = 0;
};

inline CompressedTree tree_from(const Topology& topo, const std::vector<Weight>& w, std::size_t n) {
    CompressedTree t;
    for (TreeVertex v = 0; std::size_t(v) < topo.vertices; ++v)
        t.add_vertex(std::size_t(v) < n ? Vertex(v) : no_vertex);
    for (std::size_t e = 0; e < topo.edges.size(); ++e) t.add_edge(topo.edges[e].first, topo.edges[e].second, w[e]);
    return t;
}

inline void check_oracle_size(const Graph& g, const OracleLimits& lim) {
    if (g.vertex_count() == 0) throw std::invalid_argument("oracle: empty graph");
    if (g.vertex_count() > lim.max_n || g.vertex_count() > 9)
        throw LimitExceeded("oracle limited to " + std::to_string(std::min<std::size_t>(lim.max_n, 9)) + " vertices");
}

// first topology index admitting a k-leaf root, searching in parallel
inline std::optional<std::pair<std::size_t, std::vector<Weight>>>
search_topologies(const std::vector<Topology>& topos, const Graph& g, std::int64_t k, unsigned threads) {
    std::atomic<std::size_t> next{0}, found{topos.size()};
    std::mutex mu;
    std::vector<Weight> witness;
    auto work = [&] {
        for (std::size_t i = next++; i < topos.size() && i < found.load(); i = next++) {
            WeightSearch ws(topos[i], g);
            std::vector<Weight> w;
            if (ws.feasible(k, &w)) {
                std::lock_guard lk(mu);
                if (i < found) found = i, witness = std::move(w);
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, unsigned(topos.size())));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (found == topos.size()) return std::nullopt;
    return std::make_pair(found.load(), std::move(witness));
}

} // namespace detail

struct OracleResult {
    std::int64_t k = 0;
    CompressedTree tree;
};

// Exhaustive: least k of parity p with a k-leaf root among all topologies and weights.
inline OracleResult brute_force_optimal(const Graph& g, int p, const OracleLimits& lim = {}) {
    detail::check_oracle_size(g, lim);
    const std::size_t n = g.vertex_count();
    auto topos = leaf_labelled_topologies(n);
    unsigned th = lim.threads ? lim.threads : worker_threads();
    const std::int64_t ceiling = std::int64_t(n) + 1 + lim.slack;
    for (std::int64_t k = p + 2; k <= ceiling; k += 2) {
        if (auto hit = detail::search_topologies(topos, g, k, th))
            return {k, detail::tree_from(topos[hit->first], hit->second, n)};
    }
    throw InternalError("oracle reached its k ceiling without a leaf root");
}

inline bool brute_force_is_k_leaf_power(const Graph& g, std::int64_t k, const OracleLimits& lim = {}) {
    detail::check_oracle_size(g, lim);
    if (k < 1) return false;
    auto topos = leaf_labelled_topologies(g.vertex_count());
    return detail::search_topologies(topos, g, k, lim.threads ? lim.threads : worker_threads()).has_value();
}

// Least diameter of any k-leaf root in the oracle's space, with weights up to cap; -1 if none.
inline Weight brute_force_min_diameter(const Graph& g, std::int64_t k, Weight cap, const OracleLimits& lim = {}) {
    detail::check_oracle_size(g, lim);
    Weight best = -1;
    for (auto& topo : leaf_labelled_topologies(g.vertex_count())) {
        detail::WeightSearch ws(topo, g);
        Weight d = ws.min_diameter(k, cap);
        if (d >= 0 && (best < 0 || d < best)) best = d;
    }
    return best;
}

struct StructuralReport {
    bool ok = true;
    std::vector<std::string> failures;
    TreeMeta meta; // recomputed
    bool connected = false;
    bool complete = false;
};

// Re-derives meta from scratch and checks the guarantees on k, radius and leaf distance.
inline StructuralReport check_structural_theorems(const LeafRootResult& r, const Graph& g) {
    StructuralReport s;
    auto fail = [&](std::string m) { s.ok = false, s.failures.push_back(std::move(m)); };
    const std::size_t n = g.vertex_count();
    CompressedTree copy = r.tree;
    s.meta = compute_meta(copy);
    s.connected = n >= 1 && universal_vertex(g).has_value();
    s.complete = n >= 1 && g.edge_count() == n * (n - 1) / 2;
    if (odd(r.k) != r.parity) fail("odd(k) != parity");
    if (n >= 2 && r.k > std::int64_t(n) + 1) fail("k > n+1");
    if (auto v = is_k_leaf_root(r.tree, g, r.k, 1); !v.ok) fail("not a k-leaf root");
    if (s.meta.diameter != r.meta.diameter || s.meta.radius != r.meta.radius || s.meta.dmin != r.meta.dmin)
        fail("carried meta differs from recomputed meta");
    if (s.connected && n >= 2) {
        if (s.meta.radius > r.k - 1 || s.meta.diameter > 2 * r.k - 2) fail("radius above k-1");
        if (2 * s.meta.dmin > r.k) fail("leaf distance above k/2");
        if (!s.complete) {
            if (s.meta.radius != r.k - 1) fail("radius != k-1");
            if (s.meta.dmin != 1 + s.meta.parity) fail("dmin != 1+odd");
        }
    }
    return s;
}

inline std::string oracle_csv_header() { return "graph_id,n,parity,k_construct,k_oracle,agree\n"; }

inline std::string oracle_csv_row(const std::string& id, std::size_t n, int p, std::int64_t kc, std::int64_t ko) {
    return id + "," + std::to_string(n) + "," + std::to_string(p) + "," + std::to_string(kc) + "," +
           std::to_string(ko) + "," + (kc == ko ? "1" : "0") + "\n";
}

} // namespace leafroot

#endif
