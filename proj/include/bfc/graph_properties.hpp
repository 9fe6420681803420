#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bfc/truth_table.hpp"

namespace bfc {

inline constexpr int kEnumerationVertexCap = 5;
inline constexpr int kPropertyVertexCap = 6;  // C(6,2) = 15 edge variables

int edge_variables(int n_vertices);

/// Pairs {i<j} (1-based) in lexicographic order; pair k is bit k-1.
int pair_bit(int i, int j, int n_vertices);
std::pair<int, int> bit_pair(int bit, int n_vertices);
Input encode_graph(int n_vertices, const std::vector<std::pair<int, int>>& edges);
std::vector<std::pair<int, int>> decode_graph(int n_vertices, Input mask);

/// Relabels vertex v as perm[v-1] (perm is a permutation of 1..n).
Input permute_graph(Input mask, const std::vector<int>& perm, int n_vertices);
/// (sigma . f)(G) = f(sigma^-1 G), a left action on tables.
TruthTable permute_table(const TruthTable& f, const std::vector<int>& perm, int n_vertices);

bool is_graph_property(const TruthTable& f, int n_vertices);
bool is_monotone(const TruthTable& f);

/// Isomorphism classes, ordered by canonical mask (the minimum over all
/// relabelings).
struct GraphClasses {
    int n_vertices = 0;
    std::vector<Input> canonical;
    std::vector<int> edges;              // edge count per class
    std::vector<int> class_of;           // per graph mask
    std::vector<std::vector<int>> up;    // classes reachable by adding one edge
};

GraphClasses graph_classes(int n_vertices);

struct GraphProperty {
    int n_vertices = 0;
    std::string id;
    TruthTable table;
    std::vector<int> upset;  // class ids, ascending
};

/// Every nontrivial monotone property: nonempty up-sets of the class poset
/// that leave out the empty graph.
std::vector<GraphProperty> enumerate_monotone_properties(int n_vertices);
std::size_t count_monotone_properties(int n_vertices);

/// connectivity, contains-triangle, contains-clique-K, has-edge, min-degree-1.
GraphProperty named_property(std::string_view name, int n_vertices);
std::vector<std::string> property_names();

struct AkrReport {
    int n_vertices = 0;
    std::string id;
    int deg2 = 0;
    int deg = 0;
    double lambda = 0.0;
    std::optional<int> query;  // D(f); empty if it was not computed
    bool chain_ok = false;     // lambda >= sqrt(deg) - 1e-6 and deg >= deg2
    bool evasive = false;      // D == C(n,2)
    std::string warning;
};

AkrReport akr_chain_report(const GraphProperty& p, bool with_query = true);

std::string akr_csv_header();
std::string akr_csv_row(const AkrReport& r);

}  // namespace bfc
