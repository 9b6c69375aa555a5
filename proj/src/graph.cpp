#include "distmod/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace distmod {

namespace {

std::string bad_line(const std::string& path, long line_no, const std::string& why) {
  std::ostringstream os;
  os << path << ":" << line_no << ": " << why;
  return os.str();
}

}  // namespace

Graph Graph::from_edges(const std::vector<RawEdge>& raw, long long declared_nodes) {
  if (declared_nodes < 0) throw input_error("declared node count must be non-negative");
  if (raw.empty() && declared_nodes == 0)
    throw input_error("empty edge list and no declared node count");

  for (const RawEdge& e : raw) {
    if (e.u < 0 || e.v < 0) throw input_error("negative node id in edge list");
    if (!std::isfinite(e.w)) throw input_error("non-finite edge weight");
    if (e.w < 0.0) throw input_error("negative edge weight");
  }

  Graph g;
  if (declared_nodes > 0) {
    for (const RawEdge& e : raw) {
      if (e.u >= declared_nodes || e.v >= declared_nodes)
        throw input_error("edge endpoint exceeds declared node count");
    }
    g.n_ = static_cast<int>(declared_nodes);
    g.original_ids_.resize(static_cast<std::size_t>(g.n_));
    for (int i = 0; i < g.n_; ++i) g.original_ids_[static_cast<std::size_t>(i)] = i;
  } else {
    std::vector<long long> ids;
    ids.reserve(raw.size() * 2);
    for (const RawEdge& e : raw) {
      ids.push_back(e.u);
      ids.push_back(e.v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    g.original_ids_ = std::move(ids);
    g.n_ = static_cast<int>(g.original_ids_.size());
  }

  // Accumulate parallel and reversed duplicates into one undirected edge.
  std::map<std::pair<int, int>, double> acc;
  for (const RawEdge& e : raw) {
    int u = g.dense_id(e.u);
    int v = g.dense_id(e.v);
    if (u > v) std::swap(u, v);
    acc[{u, v}] += e.w;
  }

  g.edges_.reserve(acc.size());
  g.adj_.assign(static_cast<std::size_t>(g.n_), {});
  g.strength_.assign(static_cast<std::size_t>(g.n_), 0.0);
  for (const auto& [key, w] : acc) {
    const auto [u, v] = key;
    g.edges_.push_back({u, v, w});
    if (u == v) {
      g.adj_[static_cast<std::size_t>(u)].push_back({u, 2.0 * w});
      g.strength_[static_cast<std::size_t>(u)] += 2.0 * w;
      g.two_m_ += 2.0 * w;
    } else {
      g.adj_[static_cast<std::size_t>(u)].push_back({v, w});
      g.adj_[static_cast<std::size_t>(v)].push_back({u, w});
      g.strength_[static_cast<std::size_t>(u)] += w;
      g.strength_[static_cast<std::size_t>(v)] += w;
      g.two_m_ += 2.0 * w;
    }
  }
  return g;
}

Graph Graph::load_edge_list(const std::string& path, long long declared_nodes) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open edge list: " + path);

  std::vector<RawEdge> raw;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    long long u, v;
    if (!(ss >> u)) continue;  // blank or comment-only line
    if (!(ss >> v)) throw input_error(bad_line(path, line_no, "expected 'u v [w]'"));
    double w = 1.0;
    if (ss >> w) {
      std::string trailing;
      if (ss >> trailing) throw input_error(bad_line(path, line_no, "trailing tokens"));
    } else if (!ss.eof()) {
      throw input_error(bad_line(path, line_no, "malformed weight"));
    }
    raw.push_back({u, v, w});
  }
  try {
    return from_edges(raw, declared_nodes);
  } catch (const input_error& e) {
    throw input_error(path + ": " + e.what());
  }
}

Graph Graph::from_matrix_adjacency(std::vector<std::vector<Neighbor>> adj) {
  Graph g;
  g.n_ = static_cast<int>(adj.size());
  g.adj_ = std::move(adj);
  g.strength_.assign(static_cast<std::size_t>(g.n_), 0.0);
  g.original_ids_.resize(static_cast<std::size_t>(g.n_));
  for (int i = 0; i < g.n_; ++i) {
    g.original_ids_[static_cast<std::size_t>(i)] = i;
    for (const Neighbor& nb : g.adj_[static_cast<std::size_t>(i)]) {
      g.strength_[static_cast<std::size_t>(i)] += nb.weight;
      if (nb.node >= i)
        g.edges_.push_back({i, nb.node, nb.node == i ? nb.weight / 2.0 : nb.weight});
    }
    g.two_m_ += g.strength_[static_cast<std::size_t>(i)];
  }
  return g;
}

double Graph::self_loop(int i) const {
  for (const Neighbor& nb : adj_[static_cast<std::size_t>(i)])
    if (nb.node == i) return nb.weight;
  return 0.0;
}

int Graph::dense_id(long long original) const {
  const auto it = std::lower_bound(original_ids_.begin(), original_ids_.end(), original);
  if (it == original_ids_.end() || *it != original) return -1;
  return static_cast<int>(it - original_ids_.begin());
}

Partition Partition::singletons(const Graph& g) {
  Partition p;
  const auto n = static_cast<std::size_t>(g.size());
  p.labels_.resize(n);
  p.strength_.resize(n);
  p.internal_.resize(n);
  p.sizes_.assign(n, 1);
  p.communities_ = g.size();
  for (int i = 0; i < g.size(); ++i) {
    p.labels_[static_cast<std::size_t>(i)] = i;
    p.strength_[static_cast<std::size_t>(i)] = g.strength(i);
    p.internal_[static_cast<std::size_t>(i)] = g.self_loop(i);
  }
  return p;
}

Partition Partition::from_labels(const Graph& g, std::vector<int> labels) {
  if (static_cast<int>(labels.size()) != g.size())
    throw input_error("label vector length does not match node count");
  const auto n = static_cast<std::size_t>(g.size());
  for (int l : labels)
    if (l < 0 || l >= g.size()) throw input_error("community label out of range");

  Partition p;
  p.labels_ = std::move(labels);
  p.strength_.assign(n, 0.0);
  p.internal_.assign(n, 0.0);
  p.sizes_.assign(n, 0);
  for (int i = 0; i < g.size(); ++i) {
    const auto l = static_cast<std::size_t>(p.labels_[static_cast<std::size_t>(i)]);
    p.strength_[l] += g.strength(i);
    if (p.sizes_[l] == 0) ++p.communities_;
    ++p.sizes_[l];
    for (const Neighbor& nb : g.neighbors(i))
      if (p.labels_[static_cast<std::size_t>(nb.node)] ==
          p.labels_[static_cast<std::size_t>(i)])
        p.internal_[l] += nb.weight;
  }
  return p;
}

void Partition::move(const Graph& g, int i, int new_label) {
  const int old_label = labels_[static_cast<std::size_t>(i)];
  if (old_label == new_label) return;
  const auto a = static_cast<std::size_t>(old_label);
  const auto b = static_cast<std::size_t>(new_label);

  double to_old = 0.0, to_new = 0.0, diag = 0.0;
  for (const Neighbor& nb : g.neighbors(i)) {
    if (nb.node == i) {
      diag = nb.weight;
      continue;
    }
    const int l = labels_[static_cast<std::size_t>(nb.node)];
    if (l == old_label) to_old += nb.weight;
    else if (l == new_label) to_new += nb.weight;
  }

  internal_[a] -= 2.0 * to_old + diag;
  internal_[b] += 2.0 * to_new + diag;
  strength_[a] -= g.strength(i);
  strength_[b] += g.strength(i);
  if (--sizes_[a] == 0) --communities_;
  if (sizes_[b]++ == 0) ++communities_;
  labels_[static_cast<std::size_t>(i)] = new_label;
}

void Partition::merge(const Graph& g, int into, int from) {
  if (into == from) return;
  const auto a = static_cast<std::size_t>(into);
  const auto b = static_cast<std::size_t>(from);
  if (sizes_[b] == 0) return;

  // Ordered cross weight between the two communities, before relabeling.
  double cross = 0.0;
  std::vector<int> members;
  members.reserve(static_cast<std::size_t>(sizes_[b]));
  for (int i = 0; i < g.size(); ++i) {
    if (labels_[static_cast<std::size_t>(i)] != from) continue;
    members.push_back(i);
    for (const Neighbor& nb : g.neighbors(i))
      if (labels_[static_cast<std::size_t>(nb.node)] == into) cross += nb.weight;
  }
  for (int i : members) labels_[static_cast<std::size_t>(i)] = into;
  internal_[a] += internal_[b] + 2.0 * cross;
  internal_[b] = 0.0;
  strength_[a] += strength_[b];
  strength_[b] = 0.0;
  if (sizes_[a] == 0) ++communities_;
  sizes_[a] += sizes_[b];
  sizes_[b] = 0;
  --communities_;
}

std::vector<int> Partition::compact_labels() const {
  std::vector<int> remap(labels_.size(), -1);
  std::vector<int> out(labels_.size());
  int next = 0;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const auto l = static_cast<std::size_t>(labels_[i]);
    if (remap[l] < 0) remap[l] = next++;
    out[i] = remap[l];
  }
  return out;
}

std::vector<std::vector<int>> Partition::member_lists() const {
  std::vector<std::vector<int>> lists(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i)
    lists[static_cast<std::size_t>(labels_[i])].push_back(static_cast<int>(i));
  return lists;
}

}  // namespace distmod
