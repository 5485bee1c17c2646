#include "ffpos/paley.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

namespace ffpos {

Graph::Graph(std::uint32_t n, bool directed, std::vector<Elem> labels)
    : n_(n), directed_(directed), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0),
      labels_(std::move(labels)) {
  if (labels_.size() != n_) throw Error(Errc::BadInput, "label count must equal vertex count");
}

void Graph::add_edge(std::uint32_t u, std::uint32_t v) {
  row(u)[v >> 6] |= 1ull << (v & 63);
  if (!directed_) row(v)[u >> 6] |= 1ull << (u & 63);
}

std::uint32_t Graph::degree(std::uint32_t u) const {
  std::uint32_t d = 0;
  for (std::uint32_t w = 0; w < words_; ++w) d += std::popcount(row(u)[w]);
  return d;
}

std::uint32_t Graph::common_neighbors(std::uint32_t u, std::uint32_t v) const {
  std::uint32_t d = 0;
  for (std::uint32_t w = 0; w < words_; ++w) d += std::popcount(row(u)[w] & row(v)[w]);
  return d;
}

std::uint32_t Graph::index_of(Elem label) const {
  for (std::uint32_t i = 0; i < n_; ++i)
    if (labels_[i] == label) return i;
  throw Error(Errc::BadInput, "no vertex with label " + std::to_string(label));
}

Graph paley_graph(const FieldSpec& f) {
  if (f.p() == 2) throw Error(Errc::EvenCharacteristic, "Paley graphs need odd q");
  const std::uint32_t q = f.q();
  std::vector<Elem> labels(q);
  for (Elem x = 0; x < q; ++x) labels[x] = x;
  Graph g(q, q % 4 == 3, std::move(labels));
  for (Elem a = 0; a < q; ++a)
    for (Elem b = 0; b < q; ++b)
      if (a != b && f.eta(f.sub(a, b)) == Sign::Positive) g.add_edge(a, b);
  return g;
}

SrgParams srg_params(const Graph& g) {
  if (g.directed()) throw Error(Errc::NotApplicable, "srg parameters need an undirected graph");
  const std::uint32_t n = g.n();
  if (n < 2) throw Error(Errc::BadInput, "graph too small");
  SrgParams out;
  out.v = n;
  out.k = g.degree(0);
  bool have_lambda = false, have_mu = false;
  for (std::uint32_t u = 0; u < n; ++u) {
    if (g.degree(u) != out.k)
      throw Error(Errc::NotStronglyRegular, "degrees are not constant");
    for (std::uint32_t v = u + 1; v < n; ++v) {
      std::uint32_t c = g.common_neighbors(u, v);
      if (g.adjacent(u, v)) {
        if (!have_lambda) {
          out.lambda = c;
          have_lambda = true;
        } else if (out.lambda != c) {
          throw Error(Errc::NotStronglyRegular, "adjacent pairs disagree on lambda");
        }
      } else {
        if (!have_mu) {
          out.mu = c;
          have_mu = true;
        } else if (out.mu != c) {
          throw Error(Errc::NotStronglyRegular, "non-adjacent pairs disagree on mu");
        }
      }
    }
  }
  return out;
}

Graph gamma_subgraph(const FieldSpec& f) {
  if (f.q() % 4 != 1) throw Error(Errc::NotApplicable, "Gamma(q) needs q = 1 (mod 4)");
  const auto& pos = f.positives();
  Graph g(static_cast<std::uint32_t>(pos.size()), false, pos);
  for (std::uint32_t i = 0; i < pos.size(); ++i)
    for (std::uint32_t j = i + 1; j < pos.size(); ++j)
      if (f.eta(f.sub(pos[i], pos[j])) == Sign::Positive) g.add_edge(i, j);
  return g;
}

namespace {

struct AutomorphismSearch {
  const Graph& g;
  std::vector<std::uint32_t> perm;
  std::vector<bool> used;
  std::vector<std::uint32_t> deg;
  std::vector<std::vector<std::uint32_t>>& out;

  AutomorphismSearch(const Graph& graph, std::vector<std::vector<std::uint32_t>>& sink)
      : g(graph), perm(graph.n()), used(graph.n(), false), deg(graph.n()), out(sink) {
    for (std::uint32_t v = 0; v < g.n(); ++v) deg[v] = g.degree(v);
  }

  void run(std::uint32_t d) {
    if (d == g.n()) {
      out.push_back(perm);
      return;
    }
    for (std::uint32_t u = 0; u < g.n(); ++u) {
      if (used[u] || deg[u] != deg[d]) continue;
      bool ok = true;
      for (std::uint32_t e = 0; e < d && ok; ++e)
        ok = g.adjacent(e, d) == g.adjacent(perm[e], u) &&
             g.adjacent(d, e) == g.adjacent(u, perm[e]);
      if (!ok) continue;
      perm[d] = u;
      used[u] = true;
      run(d + 1);
      used[u] = false;
    }
  }
};

}  // namespace

std::vector<std::vector<std::uint32_t>> graph_automorphisms(const Graph& g,
                                                            std::uint32_t max_vertices) {
  if (g.n() > max_vertices)
    throw Error(Errc::SizeExceeded, "automorphism search capped at " +
                                        std::to_string(max_vertices) + " vertices");
  std::vector<std::vector<std::uint32_t>> out;
  AutomorphismSearch s(g, out);
  s.run(0);
  return out;  // DFS over ascending images yields lexicographic order
}

std::uint32_t neighborhood_count(const Graph& g, Elem u, std::span<const Elem> target) {
  std::uint32_t ui = g.index_of(u);
  std::uint32_t c = 0;
  for (Elem t : target)
    if (g.adjacent(ui, g.index_of(t))) ++c;
  return c;
}

namespace {

// Bron-Kerbosch with pivoting over 64-bit vertex masks.
void bron_kerbosch(const Graph& g, const std::vector<std::uint64_t>& adj, std::uint64_t r,
                   std::uint64_t p, std::uint64_t x, std::vector<std::uint64_t>& cliques) {
  if (p == 0 && x == 0) {
    cliques.push_back(r);
    return;
  }
  std::uint64_t px = p | x;
  std::uint32_t pivot = std::countr_zero(px);
  std::uint32_t best = 0;
  for (std::uint64_t m = px; m;) {
    std::uint32_t v = std::countr_zero(m);
    m &= m - 1;
    std::uint32_t cnt = std::popcount(p & adj[v]);
    if (cnt >= best) {
      best = cnt;
      pivot = v;
    }
  }
  std::uint64_t cand = p & ~adj[pivot];
  while (cand) {
    std::uint32_t v = std::countr_zero(cand);
    std::uint64_t bit = 1ull << v;
    cand &= cand - 1;
    bron_kerbosch(g, adj, r | bit, p & adj[v], x & adj[v], cliques);
    p &= ~bit;
    x |= bit;
  }
}

}  // namespace

std::vector<std::vector<Elem>> max_cliques(const Graph& g) {
  if (g.directed()) throw Error(Errc::NotApplicable, "clique search needs an undirected graph");
  if (g.n() > 64) throw Error(Errc::SizeExceeded, "clique search capped at 64 vertices");
  std::vector<std::uint64_t> adj(g.n(), 0);
  for (std::uint32_t u = 0; u < g.n(); ++u)
    for (std::uint32_t v = 0; v < g.n(); ++v)
      if (u != v && g.adjacent(u, v)) adj[u] |= 1ull << v;
  std::vector<std::uint64_t> cliques;
  std::uint64_t full = g.n() == 64 ? ~0ull : (1ull << g.n()) - 1;
  bron_kerbosch(g, adj, 0, full, 0, cliques);

  std::uint32_t best = 0;
  for (std::uint64_t c : cliques) best = std::max(best, static_cast<std::uint32_t>(std::popcount(c)));
  std::vector<std::vector<Elem>> out;
  for (std::uint64_t c : cliques) {
    if (static_cast<std::uint32_t>(std::popcount(c)) != best) continue;
    std::vector<Elem> labels;
    for (std::uint64_t m = c; m;) {
      std::uint32_t v = std::countr_zero(m);
      m &= m - 1;
      labels.push_back(g.labels()[v]);
    }
    std::sort(labels.begin(), labels.end());
    out.push_back(std::move(labels));
  }
  std::sort(out.begin(), out.end());
  return out;
}

CosetFamily square_cosets(const FieldSpec& f) {
  const std::uint32_t q = f.q();
  std::uint32_t r = 0;
  for (std::uint32_t c = 2; static_cast<std::uint64_t>(c) * c <= q; ++c)
    if (static_cast<std::uint64_t>(c) * c == q) r = c;
  if (r == 0) throw Error(Errc::NotSquareOrder, "q is not a square");

  auto subfield = f.subfield_elements(r);
  std::vector<Elem> sub_star;
  for (Elem x : subfield)
    if (x != 0) sub_star.push_back(x);

  CosetFamily fam;
  fam.r = r;
  Elem g2 = f.mul(f.generator(), f.generator());
  Elem rep = 1;
  for (std::uint32_t i = 0; i <= (r - 1) / 2; ++i) {
    std::vector<Elem> coset;
    for (Elem x : sub_star) coset.push_back(f.mul(rep, x));
    std::sort(coset.begin(), coset.end());
    fam.representatives.push_back(rep);
    fam.cosets.push_back(std::move(coset));
    rep = f.mul(rep, g2);
  }
  return fam;
}

std::pair<std::vector<Elem>, OvalKind> oval_set(const FieldSpec& f) {
  const std::uint32_t q = f.q();
  std::uint32_t r = 0;
  for (std::uint32_t c = 2; static_cast<std::uint64_t>(c) * c <= q; ++c)
    if (static_cast<std::uint64_t>(c) * c == q) r = c;
  if (r == 0) throw Error(Errc::NotSquareOrder, "q is not a square");

  Elem delta = f.pow(f.generator(), 2 * (r - 1));
  if (f.elem_order(delta) != (r + 1) / 2)
    throw Error(Errc::VerificationFailed, "oval generator has wrong order");
  std::vector<Elem> set;
  Elem cur = 1;
  for (std::uint32_t i = 0; i <= (r - 1) / 2; ++i) {
    set.push_back(cur);
    cur = f.mul(cur, delta);
  }

  OvalKind kind = r % 4 == 1 ? OvalKind::Independent : OvalKind::Clique;
  if (kind == OvalKind::Clique) set.push_back(0);
  std::sort(set.begin(), set.end());

  auto adjacent = [&](Elem a, Elem b) { return f.eta(f.sub(a, b)) == Sign::Positive; };
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      bool adj = adjacent(set[i], set[j]);
      if (kind == OvalKind::Clique ? !adj : adj)
        throw Error(Errc::VerificationFailed, "oval set has the wrong internal adjacency");
    }
  for (Elem v = 0; v < q; ++v) {
    if (std::binary_search(set.begin(), set.end(), v)) continue;
    bool extends = true;
    for (Elem s : set) {
      bool adj = adjacent(v, s);
      if (kind == OvalKind::Clique ? !adj : adj) {
        extends = false;
        break;
      }
    }
    if (extends) throw Error(Errc::VerificationFailed, "oval set is not maximal");
  }
  return {set, kind};
}

std::uint32_t triple_count(const FieldSpec& f, Elem a, Elem b, Elem c) {
  if (a == b || a == c || b == c)
    throw Error(Errc::PreconditionViolated, "triple_count needs distinct elements");
  std::uint32_t count = 0;
  for (Elem x = 0; x < f.q(); ++x)
    if (f.eta(f.sub(x, a)) == Sign::Positive && f.eta(f.sub(x, b)) == Sign::Positive &&
        f.eta(f.sub(x, c)) == Sign::Positive)
      ++count;
  return count;
}

std::uint32_t translate_intersection(const FieldSpec& f, Elem a) {
  if (f.q() % 4 != 3)
    throw Error(Errc::NotApplicable, "translate counts are stated for q = 3 (mod 4)");
  if (a == 0) throw Error(Errc::PreconditionViolated, "a must be nonzero");
  std::uint32_t count = 0;
  for (Elem y : f.positives())
    if (f.eta(f.add(a, y)) == Sign::Positive) ++count;
  return count;
}

std::vector<std::pair<Elem, Elem>> same_subfield_neighborhood_pairs(const FieldSpec& f) {
  const std::uint32_t q = f.q();
  std::uint32_t r = 0;
  for (std::uint32_t c = 2; static_cast<std::uint64_t>(c) * c <= q; ++c)
    if (static_cast<std::uint64_t>(c) * c == q) r = c;
  if (r == 0) throw Error(Errc::NotSquareOrder, "q is not a square");
  if (r % 4 != 1) throw Error(Errc::NotApplicable, "stated for r = 1 (mod 4)");

  auto subfield = f.subfield_elements(r);
  std::vector<bool> in_subfield(q, false);
  for (Elem x : subfield) in_subfield[x] = true;

  // L(u): neighbors of u inside F_r, packed as a bitmask over the subfield.
  std::map<std::vector<bool>, std::vector<Elem>> by_mask;
  for (Elem u = 0; u < q; ++u) {
    if (in_subfield[u]) continue;
    std::vector<bool> mask(subfield.size(), false);
    for (std::size_t i = 0; i < subfield.size(); ++i)
      mask[i] = f.eta(f.sub(u, subfield[i])) == Sign::Positive;
    by_mask[mask].push_back(u);
  }
  std::vector<std::pair<Elem, Elem>> out;
  for (const auto& [mask, members] : by_mask)
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        out.emplace_back(members[i], members[j]);
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_dot(const Graph& g) {
  std::ostringstream os;
  os << (g.directed() ? "digraph paley {\n" : "graph paley {\n");
  for (std::uint32_t v = 0; v < g.n(); ++v) os << "  " << g.labels()[v] << ";\n";
  for (std::uint32_t u = 0; u < g.n(); ++u)
    for (std::uint32_t v = 0; v < g.n(); ++v) {
      if (!g.adjacent(u, v)) continue;
      if (!g.directed() && v < u) continue;
      os << "  " << g.labels()[u] << (g.directed() ? " -> " : " -- ") << g.labels()[v] << ";\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace ffpos
