#include "distmod/modularity.hpp"

#include <algorithm>
#include <map>

namespace distmod {

double modularity(const Graph& g, const NullModel& model, const Partition& p) {
  const double two_m = g.total_weight();
  if (two_m <= 0.0) throw degeneracy_error("graph has no edges");
  if (model.size() != g.size() || p.size() != g.size())
    throw input_error("graph, model, and partition sizes disagree");

  double observed = 0.0;
  for (int i = 0; i < g.size(); ++i)
    for (const Neighbor& nb : g.neighbors(i))
      if (p.label(i) == p.label(nb.node)) observed += nb.weight;

  double expected = 0.0;
  if (const auto* ng = dynamic_cast<const NgModel*>(&model)) {
    for (int l = 0; l < g.size(); ++l)
      if (p.community_size(l) > 0) {
        const double s = p.community_strength(l);
        expected += s * s / ng->total_weight();
      }
  } else {
    const auto lists = p.member_lists();
    for (const auto& members : lists) {
      for (int i : members) {
        const double* row = model.dense_row(i);
        for (int j : members)
          expected += row ? row[j] : model.expected(i, j);
      }
    }
  }
  return (observed - expected) / two_m;
}

CommunityAggregates::CommunityAggregates(const Graph& g, const NullModel& model,
                                         const Partition& p)
    : g_(&g), model_(&model), ng_(dynamic_cast<const NgModel*>(&model)) {
  if (model.size() != g.size() || p.size() != g.size())
    throw input_error("graph, model, and partition sizes disagree");
  const auto n = static_cast<std::size_t>(g.size());
  acc_.assign(n, 0.0);
  seen_.assign(n, 0);
  touched_.reserve(n);
  if (ng_) return;

  pbar_.assign(n * n, 0.0);
  expected_internal_.assign(n, 0.0);
  for (int i = 0; i < g.size(); ++i) {
    const auto base = static_cast<std::size_t>(i) * n;
    const double* row = model.dense_row(i);
    for (int j = 0; j < g.size(); ++j) {
      if (j == i) continue;
      pbar_[base + static_cast<std::size_t>(p.label(j))] +=
          row ? row[j] : model.expected(i, j);
    }
  }
  for (int i = 0; i < g.size(); ++i) {
    const auto l = static_cast<std::size_t>(p.label(i));
    expected_internal_[l] +=
        pbar_[static_cast<std::size_t>(i) * n + l] + model.expected(i, i);
  }
}

double CommunityAggregates::pbar(const Partition& p, int i, int l) const {
  if (ng_) {
    const double k = ng_->strength(i);
    const double s = p.community_strength(l) - (p.label(i) == l ? k : 0.0);
    return k * s / ng_->total_weight();
  }
  return pbar_[static_cast<std::size_t>(i) * static_cast<std::size_t>(g_->size()) +
               static_cast<std::size_t>(l)];
}

double CommunityAggregates::expected_internal(const Partition& p, int l) const {
  if (ng_) {
    const double s = p.community_strength(l);
    return s * s / ng_->total_weight();
  }
  return expected_internal_[static_cast<std::size_t>(l)];
}

double CommunityAggregates::q_times_total(const Partition& p) const {
  double q = 0.0;
  for (int l = 0; l < p.size(); ++l)
    if (p.community_size(l) > 0)
      q += p.community_internal(l) - expected_internal(p, l);
  return q;
}

CommunityAggregates::Move CommunityAggregates::best_move(const Partition& p,
                                                         int i) const {
  const int cur = p.label(i);
  touched_.clear();
  for (const Neighbor& nb : g_->neighbors(i)) {
    if (nb.node == i) continue;
    const auto l = static_cast<std::size_t>(p.label(nb.node));
    if (!seen_[l]) {
      seen_[l] = 1;
      touched_.push_back(static_cast<int>(l));
    }
    acc_[l] += nb.weight;
  }
  std::sort(touched_.begin(), touched_.end());

  const double cur_score = acc_[static_cast<std::size_t>(cur)] - pbar(p, i, cur);
  int best_label = cur;
  double best_score = cur_score;
  for (int l : touched_) {
    if (l == cur) continue;
    const double score = acc_[static_cast<std::size_t>(l)] - pbar(p, i, l);
    if (score > best_score) {
      best_score = score;
      best_label = l;
    }
  }
  for (int l : touched_) {
    acc_[static_cast<std::size_t>(l)] = 0.0;
    seen_[static_cast<std::size_t>(l)] = 0;
  }
  // A node attached below expectation can leave for an empty community
  // (score exactly 0); one always exists since its community has >= 2
  // members. Joining wins ties against leaving.
  if (best_score < 0.0) {
    for (int l = 0; l < p.size(); ++l)
      if (p.community_size(l) == 0) {
        best_label = l;
        best_score = 0.0;
        break;
      }
  }
  return {best_label, 2.0 * (best_score - cur_score)};
}

void CommunityAggregates::apply_move(Partition& p, int i, int new_label) {
  const int old_label = p.label(i);
  if (old_label == new_label) return;
  if (!ng_) {
    const auto n = static_cast<std::size_t>(g_->size());
    const auto a = static_cast<std::size_t>(old_label);
    const auto b = static_cast<std::size_t>(new_label);
    const auto base = static_cast<std::size_t>(i) * n;
    const double p_ii = model_->expected(i, i);
    expected_internal_[a] -= 2.0 * pbar_[base + a] + p_ii;
    expected_internal_[b] += 2.0 * pbar_[base + b] + p_ii;
    const double* row = model_->dense_row(i);
    for (int j = 0; j < g_->size(); ++j) {
      if (j == i) continue;
      const double p_ij = row ? row[j] : model_->expected(i, j);
      const auto jbase = static_cast<std::size_t>(j) * n;
      pbar_[jbase + a] -= p_ij;
      pbar_[jbase + b] += p_ij;
    }
  }
  p.move(*g_, i, new_label);
}

CommunityAggregates::Merge CommunityAggregates::best_merge(const Partition& p) const {
  // One-direction cross weights between connected community pairs.
  std::map<std::pair<int, int>, double> cross;
  for (const Edge& e : g_->edges()) {
    int a = p.label(e.u);
    int b = p.label(e.v);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    cross[{a, b}] += e.w;
  }
  if (cross.empty()) return {};

  std::vector<std::vector<int>> lists;
  if (!ng_) lists = p.member_lists();

  Merge best;
  for (const auto& [pair, w] : cross) {
    const auto [a, b] = pair;
    double p_cross_ord;
    if (ng_) {
      p_cross_ord = 2.0 * p.community_strength(a) * p.community_strength(b) /
                    ng_->total_weight();
    } else {
      const auto n = static_cast<std::size_t>(g_->size());
      double one_way = 0.0;
      for (int i : lists[static_cast<std::size_t>(a)])
        one_way += pbar_[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(b)];
      p_cross_ord = 2.0 * one_way;
    }
    const double gain = 2.0 * w - p_cross_ord;
    if (gain > best.gain_times_total) {
      best.into = a;
      best.from = b;
      best.gain_times_total = gain;
    }
  }
  return best;
}

void CommunityAggregates::apply_merge(Partition& p, int into, int from) {
  if (into == from) return;
  if (!ng_) {
    const auto n = static_cast<std::size_t>(g_->size());
    const auto a = static_cast<std::size_t>(into);
    const auto b = static_cast<std::size_t>(from);
    double one_way = 0.0;
    for (int i = 0; i < g_->size(); ++i)
      if (p.label(i) == into)
        one_way += pbar_[static_cast<std::size_t>(i) * n + b];
    expected_internal_[a] += expected_internal_[b] + 2.0 * one_way;
    expected_internal_[b] = 0.0;
    for (int j = 0; j < g_->size(); ++j) {
      const auto jbase = static_cast<std::size_t>(j) * n;
      pbar_[jbase + a] += pbar_[jbase + b];
      pbar_[jbase + b] = 0.0;
    }
  }
  p.merge(*g_, into, from);
}

CommunityAggregates::PairMove CommunityAggregates::best_pair_move(
    const Partition& p) const {
  // Each node's attachment surplus within its own community (partner
  // included): relocating the pair out of c and into t gains
  // 2(s_it + s_jt) - 2(s_ic + s_jc) + 4(A_ij - P_ij), with the mutual
  // term halved when the pair starts split and only reunites.
  const int n = g_->size();
  std::vector<double> score(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int l = p.label(i);
    double acc = 0.0;
    for (const Neighbor& nb : g_->neighbors(i))
      if (nb.node != i && p.label(nb.node) == l) acc += nb.weight;
    score[static_cast<std::size_t>(i)] = acc - pbar(p, i, l);
  }

  std::vector<double> acc_u(static_cast<std::size_t>(n), 0.0);
  std::vector<double> acc_v(static_cast<std::size_t>(n), 0.0);
  PairMove best;
  for (const Edge& e : g_->edges()) {
    if (e.u == e.v) continue;
    const int lu = p.label(e.u);
    const int lv = p.label(e.v);
    const double mutual = e.w - model_->expected(e.u, e.v);
    const double out_cost = 2.0 * (score[static_cast<std::size_t>(e.u)] +
                                   score[static_cast<std::size_t>(e.v)]);
    if (lu != lv) {
      // Reunite in a fresh community; a singleton pair would be a plain
      // single-node move, and the fresh label only exists when some
      // community keeps >= 2 members.
      if (p.community_size(lu) > 1 || p.community_size(lv) > 1) {
        const double gain = 2.0 * mutual - out_cost;
        if (gain > best.gain_times_total)
          best = {e.u, e.v, -1, gain};
      }
      continue;
    }

    touched_.clear();
    for (const Neighbor& nb : g_->neighbors(e.u)) {
      if (nb.node == e.u) continue;
      const auto l = static_cast<std::size_t>(p.label(nb.node));
      if (!seen_[l]) {
        seen_[l] = 1;
        touched_.push_back(static_cast<int>(l));
      }
      acc_u[l] += nb.weight;
    }
    for (const Neighbor& nb : g_->neighbors(e.v)) {
      if (nb.node == e.v) continue;
      const auto l = static_cast<std::size_t>(p.label(nb.node));
      if (!seen_[l]) {
        seen_[l] = 1;
        touched_.push_back(static_cast<int>(l));
      }
      acc_v[l] += nb.weight;
    }
    std::sort(touched_.begin(), touched_.end());
    for (int t : touched_) {
      if (t == lu) continue;
      const double s_ut = acc_u[static_cast<std::size_t>(t)] - pbar(p, e.u, t);
      const double s_vt = acc_v[static_cast<std::size_t>(t)] - pbar(p, e.v, t);
      const double gain = 2.0 * (s_ut + s_vt) - out_cost + 4.0 * mutual;
      if (gain > best.gain_times_total)
        best = {e.u, e.v, t, gain};
    }
    if (p.community_size(lu) > 2) {
      const double gain = 4.0 * mutual - out_cost;
      if (gain > best.gain_times_total)
        best = {e.u, e.v, -1, gain};
    }
    for (int l : touched_) {
      acc_u[static_cast<std::size_t>(l)] = 0.0;
      acc_v[static_cast<std::size_t>(l)] = 0.0;
      seen_[static_cast<std::size_t>(l)] = 0;
    }
  }
  return best;
}

void CommunityAggregates::apply_pair_move(Partition& p, const PairMove& mv) {
  int target = mv.label;
  if (target < 0) {
    for (int l = 0; l < p.size(); ++l)
      if (p.community_size(l) == 0) {
        target = l;
        break;
      }
    if (target < 0) throw input_error("no empty community to move the pair into");
  }
  apply_move(p, mv.i, target);
  apply_move(p, mv.j, target);
}

}  // namespace distmod
