#include "bfc/graph_properties.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

#include "bfc/algebraic.hpp"
#include "bfc/combinatorial.hpp"
#include "bfc/error.hpp"
#include "bfc/spectral.hpp"

namespace bfc {

namespace {

void check_vertices(int n, int cap, const char* what) {
    if (n < 1) throw PreconditionError(std::string(what) + " needs at least one vertex");
    if (n > cap) throw CapExceeded(std::string(what) + " supports at most " + std::to_string(cap) + " vertices");
}

// Neighbour masks (bit v-1 for vertex v) of a graph.
std::vector<unsigned> neighbours(int n, Input mask) {
    std::vector<unsigned> adj(static_cast<std::size_t>(n), 0);
    for (auto [i, j] : decode_graph(n, mask)) {
        adj[static_cast<std::size_t>(i - 1)] |= 1u << (j - 1);
        adj[static_cast<std::size_t>(j - 1)] |= 1u << (i - 1);
    }
    return adj;
}

bool connected(int n, Input mask) {
    auto adj = neighbours(n, mask);
    unsigned seen = 1, frontier = 1;
    while (frontier) {
        unsigned next = 0;
        for (int v = 0; v < n; ++v)
            if ((frontier >> v) & 1) next |= adj[static_cast<std::size_t>(v)];
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == (1u << n) - 1;
}

bool has_clique(int n, Input mask, int k) {
    auto adj = neighbours(n, mask);
    for (unsigned s = 0; s < (1u << n); ++s) {
        if (std::popcount(s) != k) continue;
        bool ok = true;
        for (int v = 0; v < n && ok; ++v)
            if ((s >> v) & 1) ok = (adj[static_cast<std::size_t>(v)] & s) == (s & ~(1u << v));
        if (ok) return true;
    }
    return false;
}

bool min_degree_one(int n, Input mask) {
    auto adj = neighbours(n, mask);
    return std::all_of(adj.begin(), adj.end(), [](unsigned a) { return a != 0; });
}

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Classes sorted by decreasing edge count, so covers are decided first.
std::vector<int> descending_order(const GraphClasses& c) {
    std::vector<int> order(c.canonical.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return c.edges[static_cast<std::size_t>(a)] > c.edges[static_cast<std::size_t>(b)]; });
    return order;
}

void walk_upsets(const GraphClasses& c, const std::vector<int>& order, std::size_t depth, std::vector<char>& in,
                 const std::function<void(const std::vector<char>&)>& visit) {
    if (depth == order.size()) {
        visit(in);
        return;
    }
    const auto k = static_cast<std::size_t>(order[depth]);
    walk_upsets(c, order, depth + 1, in, visit);
    const auto& up = c.up[k];
    if (std::all_of(up.begin(), up.end(), [&](int u) { return in[static_cast<std::size_t>(u)]; })) {
        in[k] = 1;
        walk_upsets(c, order, depth + 1, in, visit);
        in[k] = 0;
    }
}

bool nontrivial(const std::vector<char>& in) {
    // Class 0 is the empty graph (canonical mask 0).
    return !in[0] && std::any_of(in.begin(), in.end(), [](char b) { return b != 0; });
}

}  // namespace

int edge_variables(int n_vertices) { return n_vertices * (n_vertices - 1) / 2; }

int pair_bit(int i, int j, int n_vertices) {
    if (i > j) std::swap(i, j);
    if (i < 1 || j > n_vertices || i == j) throw PreconditionError("invalid vertex pair");
    int before = 0;
    for (int a = 1; a < i; ++a) before += n_vertices - a;
    return before + (j - i - 1);
}

std::pair<int, int> bit_pair(int bit, int n_vertices) {
    for (int i = 1; i < n_vertices; ++i) {
        if (bit < n_vertices - i) return {i, i + 1 + bit};
        bit -= n_vertices - i;
    }
    throw PreconditionError("edge variable out of range");
}

Input encode_graph(int n_vertices, const std::vector<std::pair<int, int>>& edges) {
    Input mask = 0;
    for (auto [i, j] : edges) mask |= Input{1} << pair_bit(i, j, n_vertices);
    return mask;
}

std::vector<std::pair<int, int>> decode_graph(int n_vertices, Input mask) {
    std::vector<std::pair<int, int>> edges;
    for (int b = 0; b < edge_variables(n_vertices); ++b)
        if ((mask >> b) & 1) edges.push_back(bit_pair(b, n_vertices));
    return edges;
}

Input permute_graph(Input mask, const std::vector<int>& perm, int n_vertices) {
    Input out = 0;
    for (int b = 0; b < edge_variables(n_vertices); ++b) {
        if (!((mask >> b) & 1)) continue;
        auto [i, j] = bit_pair(b, n_vertices);
        out |= Input{1} << pair_bit(perm[static_cast<std::size_t>(i - 1)], perm[static_cast<std::size_t>(j - 1)], n_vertices);
    }
    return out;
}

TruthTable permute_table(const TruthTable& f, const std::vector<int>& perm, int n_vertices) {
    if (f.arity() != edge_variables(n_vertices)) throw PreconditionError("table arity is not C(n,2)");
    std::vector<int> inverse(perm.size());
    for (std::size_t v = 0; v < perm.size(); ++v) inverse[static_cast<std::size_t>(perm[v] - 1)] = static_cast<int>(v) + 1;
    return TruthTable::from_function(f.arity(), [&](Input g) { return f(permute_graph(g, inverse, n_vertices)); });
}

bool is_graph_property(const TruthTable& f, int n_vertices) {
    check_vertices(n_vertices, kPropertyVertexCap, "is_graph_property");
    if (f.arity() != edge_variables(n_vertices)) throw PreconditionError("table arity is not C(n,2)");
    // Adjacent transpositions generate the symmetric group.
    for (int v = 1; v < n_vertices; ++v) {
        std::vector<int> swap(static_cast<std::size_t>(n_vertices));
        std::iota(swap.begin(), swap.end(), 1);
        std::swap(swap[static_cast<std::size_t>(v - 1)], swap[static_cast<std::size_t>(v)]);
        for (Input g = 0; g < f.size(); ++g)
            if (f(permute_graph(g, swap, n_vertices)) != f(g)) return false;
    }
    return true;
}

bool is_monotone(const TruthTable& f) {
    for (Input x = 0; x < f.size(); ++x)
        if (f(x))
            for (int i = 0; i < f.arity(); ++i)
                if (!f(x | (Input{1} << i))) return false;
    return true;
}

GraphClasses graph_classes(int n_vertices) {
    check_vertices(n_vertices, kEnumerationVertexCap, "graph_classes");
    GraphClasses c;
    c.n_vertices = n_vertices;
    const int m = edge_variables(n_vertices);
    const Input graphs = Input{1} << m;
    const auto perms = all_permutations(n_vertices);
    std::vector<Input> canon(graphs);
    for (Input g = 0; g < graphs; ++g) {
        Input best = g;
        for (const auto& p : perms) best = std::min(best, permute_graph(g, p, n_vertices));
        canon[g] = best;
    }
    c.canonical = canon;
    std::sort(c.canonical.begin(), c.canonical.end());
    c.canonical.erase(std::unique(c.canonical.begin(), c.canonical.end()), c.canonical.end());
    c.class_of.resize(graphs);
    for (Input g = 0; g < graphs; ++g)
        c.class_of[g] = static_cast<int>(std::lower_bound(c.canonical.begin(), c.canonical.end(), canon[g]) - c.canonical.begin());
    for (auto rep : c.canonical) {
        c.edges.push_back(popcount(rep));
        std::vector<int> up;
        for (int b = 0; b < m; ++b)
            if (!((rep >> b) & 1)) up.push_back(c.class_of[rep | (Input{1} << b)]);
        std::sort(up.begin(), up.end());
        up.erase(std::unique(up.begin(), up.end()), up.end());
        c.up.push_back(std::move(up));
    }
    return c;
}

std::vector<GraphProperty> enumerate_monotone_properties(int n_vertices) {
    auto c = graph_classes(n_vertices);
    const auto order = descending_order(c);
    std::vector<char> in(c.canonical.size(), 0);
    std::vector<GraphProperty> out;
    walk_upsets(c, order, 0, in, [&](const std::vector<char>& set) {
        if (!nontrivial(set)) return;
        GraphProperty p;
        p.n_vertices = n_vertices;
        p.id = "upset-" + std::to_string(out.size());
        for (std::size_t k = 0; k < set.size(); ++k)
            if (set[k]) p.upset.push_back(static_cast<int>(k));
        p.table = TruthTable(edge_variables(n_vertices));
        for (Input g = 0; g < p.table.size(); ++g) p.table.set(g, set[static_cast<std::size_t>(c.class_of[g])] != 0);
        out.push_back(std::move(p));
    });
    return out;
}

std::size_t count_monotone_properties(int n_vertices) {
    auto c = graph_classes(n_vertices);
    const auto order = descending_order(c);
    std::vector<char> in(c.canonical.size(), 0);
    std::size_t count = 0;
    walk_upsets(c, order, 0, in, [&](const std::vector<char>& set) { count += nontrivial(set) ? 1 : 0; });
    return count;
}

std::vector<std::string> property_names() {
    return {"connectivity", "contains-triangle", "contains-clique-K", "has-edge", "min-degree-1"};
}

GraphProperty named_property(std::string_view name, int n_vertices) {
    check_vertices(n_vertices, kPropertyVertexCap, "named_property");
    if (n_vertices < 2) throw PreconditionError("graph properties need at least two vertices");
    std::function<bool(Input)> test;
    const int n = n_vertices;
    const std::string_view clique_prefix = "contains-clique-";
    if (name == "connectivity") {
        test = [n](Input g) { return connected(n, g); };
    } else if (name == "contains-triangle") {
        test = [n](Input g) { return has_clique(n, g, 3); };
    } else if (name == "has-edge") {
        test = [](Input g) { return g != 0; };
    } else if (name == "min-degree-1") {
        test = [n](Input g) { return min_degree_one(n, g); };
    } else if (name.substr(0, clique_prefix.size()) == clique_prefix) {
        const std::string digits(name.substr(clique_prefix.size()));
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
            throw PreconditionError("clique size must be an integer: " + std::string(name));
        const int k = std::stoi(digits);
        if (k < 2 || k > n) throw PreconditionError("clique size must lie in [2, n] for a nontrivial property");
        test = [n, k](Input g) { return has_clique(n, g, k); };
    } else {
        throw PreconditionError("unknown graph property: " + std::string(name));
    }

    GraphProperty p;
    p.n_vertices = n;
    p.id = std::string(name);
    p.table = TruthTable::from_function(edge_variables(n), test);
    if (p.table.is_constant()) throw PreconditionError(std::string(name) + " is trivial on " + std::to_string(n) + " vertices");
    if (!is_graph_property(p.table, n) || !is_monotone(p.table))
        throw Error("internal: " + std::string(name) + " failed invariance or monotonicity");
    if (n <= kEnumerationVertexCap) {
        auto c = graph_classes(n);
        for (std::size_t k = 0; k < c.canonical.size(); ++k)
            if (p.table(c.canonical[k])) p.upset.push_back(static_cast<int>(k));
    }
    return p;
}

AkrReport akr_chain_report(const GraphProperty& p, bool with_query) {
    AkrReport r;
    r.n_vertices = p.n_vertices;
    r.id = p.id;
    r.deg2 = degree_gf2(p.table);
    r.deg = degree(p.table);
    r.lambda = lambda(p.table).value;
    const int m = p.table.arity();
    if (with_query) {
        if (m <= edge_variables(kEnumerationVertexCap)) {
            if (m > kDefaultQueryCap)
                r.warning = "D computed with the query cap raised to " + std::to_string(m) + " edge variables";
            r.query = deterministic_query_complexity(p.table, QueryOptions{m});
        } else {
            r.warning = "D skipped: " + std::to_string(m) + " edge variables exceed the property query cap";
        }
    }
    r.chain_ok = r.lambda >= std::sqrt(static_cast<double>(r.deg)) - 1e-6 && r.deg >= r.deg2;
    r.evasive = r.query && *r.query == m;
    return r;
}

std::string akr_csv_header() { return "n_vertices,id,deg2,deg,lambda,D,chain_ok"; }

std::string akr_csv_row(const AkrReport& r) {
    char lam[32];
    std::snprintf(lam, sizeof lam, "%.10g", r.lambda);
    return std::to_string(r.n_vertices) + "," + r.id + "," + std::to_string(r.deg2) + "," + std::to_string(r.deg) + "," + lam +
           "," + (r.query ? std::to_string(*r.query) : std::string()) + "," + (r.chain_ok ? "true" : "false");
}

}  // namespace bfc
