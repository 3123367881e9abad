#ifndef leafroot_tools_cli_hpp
#define leafroot_tools_cli_hpp

// Command-line front end. run() is callable in-process so tests can drive it.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <leafroot/leafroot.hpp>

namespace leafroot::cli {

enum Exit : int { ok = 0, io_error = 1, not_tpg = 2, negative = 3 };

struct Config {
    std::string input = "-", output, tree, parity = "best", format = "edges", kind = "random";
    std::int64_t k = 0;
    std::uint64_t seed = 1;
    std::size_t max_n = 4, t = 3, n = 100, branching = 6;
    int i = 1, depth = 10;
    bool twin_free = false;
    std::vector<std::size_t> sizes;
};

inline std::string read_all(const std::string& path) {
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

// to --output if given, else to out
inline void emit(const Config& c, std::ostream& out, const std::string& doc) {
    if (c.output.empty() || c.output == "-") {
        out << doc;
        return;
    }
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + c.output);
    f << doc;
}

inline Parity parse_parity(const std::string& s) {
    if (s == "odd") return Parity::odd;
    if (s == "even") return Parity::even;
    return Parity::best;
}

inline std::string summary(const LeafRootResult& r, std::size_t n) {
    return "k=" + std::to_string(r.k) + " parity=" + std::to_string(r.parity) + " n=" + std::to_string(n) +
           " diam=" + std::to_string(r.meta.diameter) + " rad=" + std::to_string(r.meta.radius) +
           " dmin=" + std::to_string(r.meta.dmin) + "\n";
}

inline int cmd_construct(const Config& c, std::ostream& out, std::ostream&) {
    Graph g = parse_graph(read_all(c.input));
    if (c.format == "cotree") {
        if (g.vertex_count() == 0) throw std::invalid_argument("empty graph");
        auto chk = check_trivially_perfect(g);
        if (!chk.trivially_perfect) throw NotTriviallyPerfect(chk.witness);
        auto red = remove_true_twins(g);
        std::string doc;
        for (std::size_t i = 0; i < red.map.kept.size(); ++i)
            if (!red.map.empty()) doc += "# reduced " + std::to_string(i) + " is " + std::to_string(red.map.kept[i]) + "\n";
        emit(c, out, doc + dump_cotree(build_cotree(red.reduced)));
        return ok;
    }
    LeafRootResult r = optimal_leaf_root(g, parse_parity(c.parity));
    std::string doc;
    if (c.format == "dot") doc = write_dot(r.tree, &g);
    else if (c.format == "newick") doc = write_newick(r.tree, r.meta.minmax_center, &g);
    else doc = write_tree(r.tree, r.k);
    emit(c, out, doc);
    out << summary(r, g.vertex_count());
    return ok;
}

inline int cmd_recognize(const Config& c, std::ostream& out, std::ostream&) {
    Graph g = parse_graph(read_all(c.input));
    auto r = recognize(g, c.k);
    out << (r.member ? "yes" : "no") << " k=" << c.k << " kappa=" << r.kappa << "\n";
    return r.member ? ok : negative;
}

inline int cmd_verify(const Config& c, std::ostream& out, std::ostream& err) {
    Graph g = parse_graph(read_all(c.input));
    ParsedTree pt = parse_tree(read_all(c.tree));
    std::int64_t k = c.k ? c.k : pt.k;
    VerifyReport rep;
    try {
        rep = is_k_leaf_root(pt.tree, g, k);
    } catch (const LeafSetMismatch& e) {
        err << "error: " << e.what() << "\n";
        return io_error;
    }
    if (rep.ok) {
        out << "ok k=" << k << " pairs=" << rep.checked_pairs << "\n";
        return ok;
    }
    out << "violations=" << rep.violation_count << " k=" << k << " pairs=" << rep.checked_pairs << "\n";
    for (auto& v : rep.violations)
        out << v.x << " " << v.y << " dist=" << v.distance << (v.adjacent ? " edge beyond k" : " non-edge within k")
            << "\n";
    return negative;
}

inline int cmd_oracle(const Config& c, std::ostream& out, std::ostream&) {
    if (c.max_n > 7) throw LimitExceeded("oracle limited to 7 vertices");
    OracleLimits lim;
    lim.max_n = c.max_n;
    out << oracle_csv_header();
    bool all = true;
    std::size_t id = 0;
    for (auto& g : enumerate_small_tpgs(c.max_n, c.twin_free)) {
        for (int p : {1, 0}) {
            auto kc = optimal_leaf_root(g, p ? Parity::odd : Parity::even).k;
            auto ko = brute_force_optimal(g, p, lim).k;
            all &= kc == ko;
            out << oracle_csv_row("g" + std::to_string(id), g.vertex_count(), p, kc, ko);
        }
        ++id;
    }
    return all ? ok : negative;
}

inline int cmd_gen(const Config& c, std::ostream& out, std::ostream&) {
    if (c.kind == "enumerate") {
        std::string doc;
        std::size_t id = 0;
        for (auto& g : enumerate_small_tpgs(c.max_n, c.twin_free))
            doc += "# graph g" + std::to_string(id++) + "\n" + write_graph(g) + "\n";
        emit(c, out, doc);
        return ok;
    }
    Cotree ct;
    if (c.kind == "star") ct = build_cotree(gen_star(c.t));
    else if (c.kind == "family") ct = family_f_cotree(c.i);
    else ct = random_tpg_cotree(c.n, c.seed, {c.branching, c.depth});
    emit(c, out, c.format == "cotree" ? dump_cotree(ct) : write_graph(cotree_to_graph(ct)));
    return ok;
}

inline int cmd_bench(const Config& c, std::ostream& out, std::ostream&) {
    if (c.sizes.empty()) throw CLI::ValidationError("--sizes", "needs at least one size");
    using clk = std::chrono::steady_clock;
    auto secs = [](auto a, auto b) { return std::chrono::duration<double>(b - a).count(); };
    out << "n m parse_s construct_s ratio\n";
    double prev = 0, worst = 0;
    std::size_t prev_n = 0;
    for (std::size_t n : c.sizes) {
        Graph g = gen_random_tpg(n, c.seed, {c.branching, c.depth});
        std::string doc = write_graph(g);
        auto t0 = clk::now();
        Graph h = parse_graph(doc);
        auto t1 = clk::now();
        LeafRootResult r = optimal_leaf_root(h, parse_parity(c.parity));
        auto t2 = clk::now();
        double cs = secs(t1, t2);
        // growth normalized to a 10x step in n
        double ratio = prev_n ? std::pow(cs / std::max(prev, 1e-9), 1.0 / std::log10(double(n) / double(prev_n))) : 0;
        if (prev_n) worst = std::max(worst, ratio);
        char line[160];
        std::snprintf(line, sizeof line, "%zu %zu %.6f %.6f %s\n", n, g.edge_count(), secs(t0, t1), cs,
                      prev_n ? std::to_string(ratio).c_str() : "-");
        out << line;
        (void)r;
        prev = cs, prev_n = n;
    }
    out << "max_ratio_per_10x=" << worst << "\n";
    return ok;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal leaf roots of trivially perfect graphs"};
    app.require_subcommand(1);
    Config c;
    const std::vector<std::string> parities{"odd", "even", "best"};
    auto* con = app.add_subcommand("construct", "minimum-k leaf root of a graph");
    auto* rec = app.add_subcommand("recognize", "is the graph a k-leaf power");
    auto* ver = app.add_subcommand("verify", "check a tree against a graph");
    auto* ora = app.add_subcommand("oracle", "compare against exhaustive search on small graphs");
    auto* gen = app.add_subcommand("gen", "generate graphs");
    auto* ben = app.add_subcommand("bench", "time construction on random graphs");
    for (auto* s : {con, rec, ver})
        s->add_option("--input", c.input, "edge-list file, - for stdin")->capture_default_str();
    for (auto* s : {con, gen}) s->add_option("--output", c.output, "output file (default stdout)");
    for (auto* s : {con, ben}) s->add_option("--parity", c.parity)->check(CLI::IsMember(parities))->capture_default_str();
    con->add_option("--format", c.format)->check(CLI::IsMember({"edges", "dot", "newick", "cotree"}))->capture_default_str();
    rec->add_option("-k", c.k, "threshold")->required()->check(CLI::Range(std::int64_t{2}, max_weight));
    ver->add_option("--tree", c.tree, "tree file")->required();
    ver->add_option("-k", c.k, "threshold (default: the tree file's)")->check(CLI::Range(std::int64_t{1}, max_weight));
    for (auto* s : {ora, gen}) {
        s->add_option("--max-n", c.max_n)->capture_default_str();
        s->add_flag("--twin-free", c.twin_free, "only twin-free graphs");
    }
    gen->add_option("--kind", c.kind)->check(CLI::IsMember({"star", "family", "random", "enumerate"}))->capture_default_str();
    gen->add_option("--format", c.format)->check(CLI::IsMember({"edges", "cotree"}))->capture_default_str();
    gen->add_option("-t", c.t, "star leaves")->capture_default_str();
    gen->add_option("-i", c.i, "family index")->capture_default_str();
    gen->add_option("-n", c.n, "vertices")->capture_default_str()->check(CLI::PositiveNumber);
    for (auto* s : {gen, ben}) {
        s->add_option("--seed", c.seed)->capture_default_str();
        s->add_option("--branching", c.branching)->capture_default_str();
        s->add_option("--depth", c.depth)->capture_default_str();
    }
    ben->add_option("--sizes", c.sizes, "vertex counts")->delimiter(',')->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        int code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? ok : io_error;
    }
    try {
        if (con->parsed()) return cmd_construct(c, out, err);
        if (rec->parsed()) return cmd_recognize(c, out, err);
        if (ver->parsed()) return cmd_verify(c, out, err);
        if (ora->parsed()) return cmd_oracle(c, out, err);
        if (gen->parsed()) return cmd_gen(c, out, err);
        return cmd_bench(c, out, err);
    } catch (const NotTriviallyPerfect& e) {
        out << "not trivially perfect: induced " << e.witness().describe() << "\n";
        err << "error: " << e.what() << "\n";
        return not_tpg;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return io_error;
    }
}

} // namespace leafroot::cli

#endif
