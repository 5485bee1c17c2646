#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ffpos/gf.hpp"

namespace ffpos {

/// Small dense graph on at most a few hundred vertices, adjacency kept as a
/// bit matrix for O(1) edge tests and word-wise neighborhood intersection.
/// Vertices carry element-code labels so induced subgraphs stay meaningful.
class Graph {
 public:
  Graph(std::uint32_t n, bool directed, std::vector<Elem> labels);

  std::uint32_t n() const { return n_; }
  bool directed() const { return directed_; }
  const std::vector<Elem>& labels() const { return labels_; }

  bool adjacent(std::uint32_t u, std::uint32_t v) const {
    return (row(u)[v >> 6] >> (v & 63)) & 1;
  }
  void add_edge(std::uint32_t u, std::uint32_t v);

  std::uint32_t degree(std::uint32_t u) const;  // out-degree when directed
  std::uint32_t common_neighbors(std::uint32_t u, std::uint32_t v) const;

  /// Vertex index of the given label; throws BadInput if absent.
  std::uint32_t index_of(Elem label) const;

 private:
  const std::uint64_t* row(std::uint32_t u) const { return bits_.data() + u * words_; }
  std::uint64_t* row(std::uint32_t u) { return bits_.data() + u * words_; }

  std::uint32_t n_;
  bool directed_;
  std::uint32_t words_;
  std::vector<std::uint64_t> bits_;
  std::vector<Elem> labels_;
};

struct SrgParams {
  std::uint32_t v = 0, k = 0, lambda = 0, mu = 0;
  bool operator==(const SrgParams&) const = default;
};

/// P(q): vertices F_q, edge (a,b) iff a-b is a nonzero square. Directed
/// tournament when q = 3 (mod 4). Requires odd q.
Graph paley_graph(const FieldSpec& f);

/// Measured strongly-regular parameters; NotStronglyRegular if any pair
/// deviates, NotApplicable on directed graphs.
SrgParams srg_params(const Graph& g);

/// Subgraph of P(q) induced by F_q^+ (q = 1 mod 4).
Graph gamma_subgraph(const FieldSpec& f);

/// All automorphisms as vertex permutations in lexicographic order.
/// Backtracking with degree and adjacency-consistency pruning; vertex count
/// capped (default 16).
std::vector<std::vector<std::uint32_t>> graph_automorphisms(const Graph& g,
                                                            std::uint32_t max_vertices = 16);

/// |N(u) ∩ target| with u and the target given as element labels.
std::uint32_t neighborhood_count(const Graph& g, Elem u, std::span<const Elem> target);

/// All maximum cliques, as sorted label sets in lexicographic order.
/// Bron-Kerbosch with pivoting; vertex count capped at 64.
std::vector<std::vector<Elem>> max_cliques(const Graph& g);

/// The square cosets C_i = g^{2i} F_r^* of F_{r^2}, i = 0..(r-1)/2.
struct CosetFamily {
  std::uint32_t r = 0;
  std::vector<Elem> representatives;        // g^{2i}
  std::vector<std::vector<Elem>> cosets;    // sorted element codes
};
CosetFamily square_cosets(const FieldSpec& f);

enum class OvalKind { Independent, Clique };

/// The powers of an element of order (r+1)/2: a maximal independent set when
/// r = 1 (mod 4), or (with 0 adjoined) a maximal clique when r = 3 (mod 4).
/// Maximality is verified by attempted extension.
std::pair<std::vector<Elem>, OvalKind> oval_set(const FieldSpec& f);

/// t_q(a,b,c) = #{x : eta(x-a) = eta(x-b) = eta(x-c) = 1}, a,b,c distinct.
std::uint32_t triple_count(const FieldSpec& f, Elem a, Elem b, Elem c);

/// |F_q^+ ∩ (a + F_q^+)| for q = 3 (mod 4) and a != 0.
std::uint32_t translate_intersection(const FieldSpec& f, Elem a);

/// Pairs u < v outside F_r with identical neighborhoods inside F_r, for
/// q = r^2 and r = 1 (mod 4). Such pairs are Frobenius-conjugate.
std::vector<std::pair<Elem, Elem>> same_subfield_neighborhood_pairs(const FieldSpec& f);

/// DOT rendering; directed graphs use ->, undirected -- with each edge once.
std::string to_dot(const Graph& g);

}  // namespace ffpos
