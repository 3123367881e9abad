#ifndef leafroot_graph_hpp
#define leafroot_graph_hpp

#include <algorithm>
#include <charconv>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core.hpp"

namespace leafroot {

// Undirected simple graph, adjacency in one sorted CSR block.
class Graph {
public:
    Graph() : offset_(1, 0) {}
    explicit Graph(std::size_t n) : offset_(n + 1, 0) {}

    // Rejects self-loops, duplicates and out-of-range ends. O(n+m).
    static Graph from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
        Graph g;
        g.offset_.assign(n + 1, 0);
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || std::size_t(u) >= n || std::size_t(v) >= n)
                throw std::out_of_range("edge end out of range");
            if (u == v) throw std::invalid_argument("self-loop at " + std::to_string(u));
            ++g.offset_[u + 1];
            ++g.offset_[v + 1];
        }
        for (std::size_t i = 0; i < n; ++i) g.offset_[i + 1] += g.offset_[i];
        // bucket by the far end first, then stably by the near end: lists come out sorted
        std::vector<std::pair<Vertex, Vertex>> arcs(2 * edges.size()), tmp(2 * edges.size());
        for (std::size_t i = 0; i < edges.size(); ++i) {
            arcs[2 * i] = edges[i];
            arcs[2 * i + 1] = {edges[i].second, edges[i].first};
        }
        {
            std::vector<std::size_t> pos(g.offset_.begin(), g.offset_.end() - 1);
            for (auto a : arcs) tmp[pos[a.second]++] = a;
        }
        g.adj_.resize(arcs.size());
        {
            std::vector<std::size_t> pos(g.offset_.begin(), g.offset_.end() - 1);
            for (auto a : tmp) g.adj_[pos[a.first]++] = a.second;
        }
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t i = g.offset_[v] + 1; i < g.offset_[v + 1]; ++i)
                if (g.adj_[i] == g.adj_[i - 1])
                    throw std::invalid_argument("duplicate edge " + std::to_string(v) + " " +
                                                std::to_string(g.adj_[i]));
        return g;
    }

    std::size_t vertex_count() const { return offset_.size() - 1; }
    std::size_t edge_count() const { return adj_.size() / 2; }
    std::size_t degree(Vertex v) const { return offset_[v + 1] - offset_[v]; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj_.data() + offset_[v], adj_.data() + offset_[v + 1]};
    }

    bool adjacent(Vertex u, Vertex v) const {
        auto nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    // u < v, lexicographic
    std::vector<std::pair<Vertex, Vertex>> edges() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(edge_count());
        for (Vertex u = 0; std::size_t(u) < vertex_count(); ++u)
            for (Vertex v : neighbors(u))
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> l) {
        if (!l.empty() && l.size() != vertex_count()) throw std::invalid_argument("label count");
        labels_ = std::move(l);
    }
    std::string name(Vertex v) const { return labels_.empty() ? std::to_string(v) : labels_[v]; }

    bool operator==(const Graph& o) const { return offset_ == o.offset_ && adj_ == o.adj_; }

private:
    std::vector<std::size_t> offset_;
    std::vector<Vertex> adj_;
    std::vector<std::string> labels_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// whitespace-separated non-negative integers; false on anything else
inline bool parse_ints(std::string_view s, std::vector<long long>& out) {
    out.clear();
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        if (i == s.size()) break;
        long long x = 0;
        auto [p, ec] = std::from_chars(s.data() + i, s.data() + s.size(), x);
        if (ec != std::errc() || x < 0) return false;
        i = p - s.data();
        if (i < s.size() && s[i] != ' ' && s[i] != '\t') return false;
        out.push_back(x);
    }
    return true;
}

// calls f(line_no, content) for each line with comments and blanks removed
template <class F>
void for_each_content_line(std::string_view text, F&& f) {
    std::size_t line = 0, i = 0;
    while (i <= text.size()) {
        auto e = text.find('\n', i);
        if (e == std::string_view::npos) e = text.size();
        ++line;
        auto s = text.substr(i, e - i);
        if (auto h = s.find('#'); h != std::string_view::npos) s = s.substr(0, h);
        s = trim(s);
        if (!s.empty()) f(line, s);
        if (e == text.size()) break;
        i = e + 1;
    }
}

} // namespace detail

// "n m" header then m lines "u v"; '#' to end of line is ignored
inline Graph parse_graph(std::string_view text) {
    std::optional<std::pair<long long, long long>> header;
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<long long> tok;
    std::vector<std::size_t> first_seen; // per edge, line where it appeared
    detail::for_each_content_line(text, [&](std::size_t line, std::string_view s) {
        if (!detail::parse_ints(s, tok) || tok.size() != 2) throw ParseError(line, "expected two non-negative integers");
        if (!header) {
            if (tok[0] > std::numeric_limits<Vertex>::max()) throw ParseError(line, "too many vertices");
            header = {tok[0], tok[1]};
            edges.reserve(std::size_t(std::min<long long>(tok[1], 1 << 26)));
            return;
        }
        if ((long long)edges.size() == header->second) throw ParseError(line, "more edge lines than announced");
        if (tok[0] >= header->first || tok[1] >= header->first)
            throw ParseError(line, "vertex id out of range");
        if (tok[0] == tok[1]) throw ParseError(line, "self-loop");
        edges.emplace_back(Vertex(tok[0]), Vertex(tok[1]));
        first_seen.push_back(line);
    });
    if (!header) throw ParseError(0, "missing \"n m\" header");
    if ((long long)edges.size() != header->second)
        throw ParseError(0, "expected " + std::to_string(header->second) + " edges, found " +
                                std::to_string(edges.size()));
    try {
        return Graph::from_edges(std::size_t(header->first), edges);
    } catch (const std::invalid_argument&) {
        // locate the second occurrence for the message
        std::vector<std::pair<std::pair<Vertex, Vertex>, std::size_t>> keyed;
        keyed.reserve(edges.size());
        for (std::size_t i = 0; i < edges.size(); ++i) {
            auto [u, v] = edges[i];
            keyed.push_back({{std::min(u, v), std::max(u, v)}, first_seen[i]});
        }
        std::sort(keyed.begin(), keyed.end());
        std::size_t line = 0;
        for (std::size_t i = 1; i < keyed.size(); ++i)
            if (keyed[i].first == keyed[i - 1].first && (line == 0 || keyed[i].second < line)) line = keyed[i].second;
        throw ParseError(line, "duplicate edge");
    }
}

inline std::string write_graph(const Graph& g) {
    std::string out = std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + "\n";
    for (auto [u, v] : g.edges()) {
        out += std::to_string(u);
        out += ' ';
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

// Induced subgraph on `keep` (renumbered in the given order).
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
    std::vector<Vertex> idx(g.vertex_count(), no_vertex);
    for (std::size_t i = 0; i < keep.size(); ++i) idx[keep[i]] = Vertex(i);
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex v : keep)
        for (Vertex w : g.neighbors(v))
            if (idx[w] != no_vertex && v < w) e.emplace_back(idx[v], idx[w]);
    return Graph::from_edges(keep.size(), e);
}

struct Component {
    std::vector<Vertex> vertices; // ascending
    bool trivial() const { return vertices.size() == 1; }
};

// Ordered by smallest member.
inline std::vector<Component> connected_components(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<Vertex> comp(n, no_vertex), stack;
    Vertex count = 0;
    for (Vertex s = 0; std::size_t(s) < n; ++s) {
        if (comp[s] != no_vertex) continue;
        comp[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v))
                if (comp[w] == no_vertex) comp[w] = count, stack.push_back(w);
        }
        ++count;
    }
    std::vector<Component> out(count);
    for (Vertex v = 0; std::size_t(v) < n; ++v) out[comp[v]].vertices.push_back(v);
    return out;
}

// Smallest id adjacent to every other vertex.
inline std::optional<Vertex> universal_vertex(const Graph& g) {
    for (Vertex v = 0; std::size_t(v) < g.vertex_count(); ++v)
        if (g.degree(v) + 1 == g.vertex_count()) return v;
    return std::nullopt;
}

// removed vertices and where their twin class survives
struct TwinMap {
    std::size_t original_vertex_count = 0;
    std::vector<Vertex> representative; // original id -> kept original id (itself if kept)
    std::vector<Vertex> order;          // removed original ids, ascending
    std::vector<Vertex> kept;           // reduced id -> original id

    std::size_t size() const { return order.size(); }
    bool empty() const { return order.empty(); }
};

struct TwinReduction {
    Graph reduced;
    TwinMap map;
};

// Groups equal closed neighbourhoods by partition refinement, one pivot per vertex.
inline TwinReduction remove_true_twins(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<Vertex> elems(n), pos(n), cls(n, 0);
    std::vector<std::size_t> start{0}, end{n}, marked{0};
    for (Vertex v = 0; std::size_t(v) < n; ++v) elems[v] = pos[v] = v;
    std::vector<Vertex> touched;
    auto mark = [&](Vertex w) {
        Vertex c = cls[w];
        if (marked[c] == 0) touched.push_back(c);
        std::size_t to = start[c] + marked[c]++;
        Vertex other = elems[to];
        std::swap(elems[to], elems[pos[w]]);
        pos[other] = pos[w];
        pos[w] = Vertex(to);
    };
    for (Vertex x = 0; std::size_t(x) < n; ++x) {
        if (n == 0) break;
        mark(x);
        for (Vertex w : g.neighbors(x)) mark(w);
        for (Vertex c : touched) {
            std::size_t m = marked[c];
            marked[c] = 0;
            if (m == end[c] - start[c]) continue;
            Vertex nc = Vertex(start.size());
            start.push_back(start[c]);
            end.push_back(start[c] + m);
            marked.push_back(0);
            start[c] += m;
            for (std::size_t i = start[nc]; i < end[nc]; ++i) cls[elems[i]] = nc;
        }
        touched.clear();
    }
    TwinReduction r;
    TwinMap& tm = r.map;
    tm.original_vertex_count = n;
    tm.representative.assign(n, no_vertex);
    std::vector<Vertex> rep_of_class(start.size(), no_vertex);
    for (Vertex v = 0; std::size_t(v) < n; ++v) {
        Vertex& rc = rep_of_class[cls[v]];
        if (rc == no_vertex) {
            rc = v;
            tm.kept.push_back(v);
        } else {
            tm.order.push_back(v);
        }
        tm.representative[v] = rc;
    }
    r.reduced = tm.order.empty() ? g : induced_subgraph(g, tm.kept);
    if (tm.order.empty() && !g.labels().empty()) r.reduced.set_labels(g.labels());
    return r;
}

// Result of recognition. When trivially perfect, `parent` is the rooted forest whose
// ancestor/descendant pairs are exactly the edges (roots have no_vertex).
struct TpgCheck {
    bool trivially_perfect = false;
    Obstruction witness;
    std::vector<Vertex> parent;
    std::vector<Vertex> order; // parents precede children
};

namespace detail {

// N[a] and N[b] nested? If not, fill w with x-a-b-y.
inline bool nested_or_witness(const Graph& g, Vertex a, Vertex b, std::vector<std::uint32_t>& stamp,
                              std::uint32_t& clock, Obstruction& w) {
    ++clock;
    for (Vertex x : g.neighbors(b)) stamp[x] = clock;
    stamp[b] = clock;
    Vertex x = no_vertex;
    for (Vertex v : g.neighbors(a))
        if (v != b && stamp[v] != clock) { x = v; break; }
    if (x == no_vertex) return true;
    ++clock;
    for (Vertex v : g.neighbors(a)) stamp[v] = clock;
    stamp[a] = clock;
    Vertex y = no_vertex;
    for (Vertex v : g.neighbors(b))
        if (v != a && stamp[v] != clock) { y = v; break; }
    if (y == no_vertex) return true;
    w.vertices = {x, a, b, y};
    w.cycle = g.adjacent(x, y);
    return false;
}

} // namespace detail

// A graph is trivially perfect iff it is the comparability graph of a rooted forest.
// Vertices sorted by non-increasing degree; each one's parent is its latest earlier
// neighbour, and the earlier neighbours must be exactly the ancestors. O(n+m).
inline TpgCheck check_trivially_perfect(const Graph& g) {
    const std::size_t n = g.vertex_count();
    TpgCheck r;
    std::vector<std::size_t> bucket(n + 1, 0);
    for (Vertex v = 0; std::size_t(v) < n; ++v) ++bucket[n - g.degree(v)];
    for (std::size_t i = 1; i <= n; ++i) bucket[i] += bucket[i - 1];
    r.order.resize(n);
    for (Vertex v = Vertex(n) - 1; v >= 0; --v) r.order[--bucket[n - g.degree(v)]] = v;
    std::vector<Vertex> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[r.order[i]] = Vertex(i);

    // Each edge is read once, from its smaller end, so every scan below makes one random
    // access per edge; the fields it needs share a record.
    struct Up {
        Vertex rank, best; // best: largest rank among earlier neighbours
        std::uint32_t earlier;
    };
    std::vector<Up> up(n);
    for (Vertex v = 0; std::size_t(v) < n; ++v) up[v] = {rank[v], -1, 0};
    auto higher = [&](Vertex v) {
        auto nb = g.neighbors(v);
        return nb.subspan(std::size_t(std::upper_bound(nb.begin(), nb.end(), v) - nb.begin()));
    };
    for (Vertex v = 0; std::size_t(v) < n; ++v) {
        Up& a = up[v];
        for (Vertex w : higher(v)) {
            Up& b = up[w];
            Up& later = a.rank < b.rank ? b : a;
            Vertex first = a.rank < b.rank ? a.rank : b.rank;
            ++later.earlier;
            later.best = std::max(later.best, first);
        }
    }
    r.parent.assign(n, no_vertex);
    for (Vertex v = 0; std::size_t(v) < n; ++v)
        if (up[v].best >= 0) r.parent[v] = r.order[up[v].best];

    // Euler intervals of the forest with children in rank order, by two sweeps over rank
    // instead of a DFS: parents come before children, so sizes accumulate backwards and
    // each child takes the next slot of its parent going forwards.
    struct Pos {
        std::uint32_t size, next, tin, depth;
    };
    std::vector<Pos> pos(n, {1, 0, 0, 0});
    for (std::size_t i = n; i-- > 0;)
        if (Vertex p = up[r.order[i]].best; p >= 0) pos[p].size += pos[i].size;
    std::uint32_t roots_next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Pos& x = pos[i];
        if (Vertex p = up[r.order[i]].best; p >= 0) {
            x.tin = pos[p].next, x.depth = pos[p].depth + 1;
            pos[p].next += x.size;
        } else {
            x.tin = roots_next, roots_next += x.size;
        }
        x.next = x.tin + 1;
    }

    // earlier neighbours must be exactly the ancestors: as many, and each one's interval
    // holding the later end
    Vertex bad = no_vertex;
    for (Vertex v = 0; std::size_t(v) < n && bad == no_vertex; ++v)
        if (up[v].earlier != pos[rank[v]].depth) bad = v;
    struct Slot {
        Vertex rank;
        std::uint32_t tin, tout;
    };
    std::vector<Slot> slot(n);
    for (Vertex v = 0; std::size_t(v) < n; ++v) {
        const Pos& x = pos[rank[v]];
        slot[v] = {rank[v], x.tin, x.tin + x.size};
    }
    for (Vertex v = 0; std::size_t(v) < n && bad == no_vertex; ++v) {
        const Slot a = slot[v];
        for (Vertex w : higher(v)) {
            const Slot& b = slot[w];
            const Slot& first = a.rank < b.rank ? a : b;
            const Slot& later = a.rank < b.rank ? b : a;
            if (!(first.tin <= later.tin && later.tin < first.tout)) {
                bad = a.rank < b.rank ? w : v;
                break;
            }
        }
    }
    if (bad == no_vertex) {
        r.trivially_perfect = true;
        return r;
    }

    // some edge has non-nested closed neighbourhoods; try the local ones first
    r.parent.clear();
    r.order.clear();
    std::vector<std::uint32_t> stamp(n, 0);
    std::uint32_t stamp_clock = 0;
    std::vector<std::pair<Vertex, Vertex>> local;
    for (Vertex w : g.neighbors(bad)) local.emplace_back(bad, w);
    Vertex p = no_vertex;
    for (Vertex w : g.neighbors(bad))
        if (rank[w] < rank[bad] && (p == no_vertex || rank[w] > rank[p])) p = w;
    if (p != no_vertex)
        for (Vertex w : g.neighbors(p)) local.emplace_back(p, w);
    for (auto [a, b] : local)
        if (!detail::nested_or_witness(g, a, b, stamp, stamp_clock, r.witness)) return r;
    for (Vertex a = 0; std::size_t(a) < n; ++a)
        for (Vertex b : g.neighbors(a))
            if (a < b && !detail::nested_or_witness(g, a, b, stamp, stamp_clock, r.witness)) return r;
    throw InternalError("recognition rejected a graph without a non-nested edge");
}

inline bool is_trivially_perfect(const Graph& g) { return check_trivially_perfect(g).trivially_perfect; }

// Twins read off a recognition forest: a node with a single child is a true twin of
// that child, so each class is a maximal single-child chain. Returns the map and the
// forest with every chain contracted to its smallest id, in reduced ids. O(n).
inline std::pair<TwinMap, TpgCheck> forest_twin_reduction(const TpgCheck& chk) {
    if (!chk.trivially_perfect) throw std::invalid_argument("forest of a trivially perfect graph expected");
    const std::size_t n = chk.parent.size();
    std::vector<Vertex> nkids(n, 0), top(n), rep(n);
    for (Vertex v = 0; std::size_t(v) < n; ++v)
        if (chk.parent[v] != no_vertex) ++nkids[chk.parent[v]];
    for (Vertex v : chk.order) {
        Vertex p = chk.parent[v];
        top[v] = p != no_vertex && nkids[p] == 1 ? top[p] : v;
    }
    for (Vertex v = 0; std::size_t(v) < n; ++v) rep[v] = n;
    for (Vertex v = 0; std::size_t(v) < n; ++v)
        if (rep[top[v]] == Vertex(n)) rep[top[v]] = v;

    TwinMap tm;
    tm.original_vertex_count = n;
    tm.representative.resize(n);
    std::vector<Vertex> id(n, no_vertex);
    for (Vertex v = 0; std::size_t(v) < n; ++v) {
        Vertex r = rep[top[v]];
        tm.representative[v] = r;
        if (r == v) id[v] = Vertex(tm.kept.size()), tm.kept.push_back(v);
        else tm.order.push_back(v);
    }
    TpgCheck red;
    red.trivially_perfect = true;
    red.parent.assign(tm.kept.size(), no_vertex);
    red.order.reserve(tm.kept.size());
    for (Vertex v : chk.order) {
        if (top[v] != v) continue;
        Vertex me = id[rep[v]], p = chk.parent[v];
        if (p != no_vertex) red.parent[me] = id[rep[top[p]]];
        red.order.push_back(me);
    }
    return {std::move(tm), std::move(red)};
}

} // namespace leafroot

#endif
