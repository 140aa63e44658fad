#include "vnk/engine.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vnk {

namespace {
[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("engine: " + msg); }
}  // namespace

void TensorStore::add(uint64_t key, const Laurent& v) {
  if (v.is_zero()) return;
  auto [it, fresh] = sparse_.emplace(key, v);
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) sparse_.erase(it);
  }
}

void TensorStore::set(uint64_t key, Laurent v) {
  if (!v.is_zero()) sparse_[key] = std::move(v);
}

uint64_t TensorStore::pack_set(const std::vector<int>& values0) {
  uint64_t k = 0;
  for (size_t i = 0; i < values0.size(); i++) k |= uint64_t(values0[i] & 63) << (6 * i);
  return k;
}

TensorNetwork build_network(const LongDiagram& ld, const RMatrixBundle& b, bool restrict_boundary) {
  TensorNetwork net;
  net.dim = b.dim;
  net.entrance = ld.entrance;
  net.exit = ld.exit;
  net.boundary_factor = Laurent(1);
  if (ld.crossings.empty()) {
    if (restrict_boundary) {
      int r = ld.rot.count(ld.entrance) ? ld.rot.at(ld.entrance) : 0;
      net.boundary_factor *= b.curl_power(1, r);
      if (ld.exit != ld.entrance && ld.rot.count(ld.exit))
        net.boundary_factor *= b.curl_power(1, ld.rot.at(ld.exit));
    }
    return net;
  }
  if (b.dim > 63) fail("dimension too large for packed keys");

  for (const auto& lc : ld.crossings) {
    const SparseTensor4& src = lc.sign > 0 ? b.r_pos : b.r_neg;
    // legs in slot order (SW, SE, NW, NE); producers are NW/NE
    std::array<int, 4> arcs = {lc.sw, lc.se, lc.nw, lc.ne};
    std::array<bool, 4> restricted{};
    if (restrict_boundary) {
      restricted[0] = arcs[0] == ld.entrance;
      restricted[1] = arcs[1] == ld.entrance;
      restricted[2] = arcs[2] == ld.exit;
      restricted[3] = arcs[3] == ld.exit;
    }
    std::vector<int> keep;
    for (int pos = 0; pos < 4; pos++)
      if (!restricted[pos]) keep.push_back(pos);
    TensorStore store(b.dim, int(keep.size()));
    for (const auto& [key, poly] : src.entries()) {
      auto ix = SparseTensor4::unkey(key, b.dim);  // 1-based (SW,SE,NW,NE)
      bool ok = true;
      for (int pos = 0; pos < 4; pos++)
        if (restricted[pos] && ix[pos] != 1) ok = false;
      if (!ok) continue;
      Laurent v = poly;
      // producer-side curl on the outgoing legs; boundary curls are applied
      // once via boundary_factor instead
      for (int pos : {2, 3}) {
        int arc = arcs[pos];
        if (restricted[pos] || arc == ld.exit || arc == ld.entrance) continue;
        int r = ld.rot.count(arc) ? ld.rot.at(arc) : 0;
        if (r != 0) v *= b.curl_power(ix[pos], r);
      }
      std::vector<int> vals;
      for (int pos : keep) vals.push_back(ix[pos] - 1);
      store.add(TensorStore::pack_set(vals), v);
    }
    TNode out;
    out.tensor = std::move(store);
    for (int pos : keep) out.legs.push_back(arcs[pos]);
    net.nodes.push_back(std::move(out));
  }
  if (restrict_boundary) {
    // boundary curls act on index 1
    for (int arc : {ld.entrance, ld.exit}) {
      auto it = ld.rot.find(arc);
      if (it != ld.rot.end() && it->second != 0)
        net.boundary_factor *= b.curl_power(1, it->second);
    }
  }
  // trace self-loops produced by kinks
  for (auto& node : net.nodes) {
    std::map<int, int> count;
    for (int a : node.legs) count[a]++;
    std::vector<int> loops;
    for (auto [a, c] : count)
      if (c == 2) loops.push_back(a);
    for (int a : loops) {
      int p1 = -1, p2 = -1;
      for (size_t i = 0; i < node.legs.size(); i++)
        if (node.legs[i] == a) (p1 < 0 ? p1 : p2) = int(i);
      // the curl for this arc is already absorbed on the producer leg
      TensorStore traced(net.dim, node.tensor.rank() - 2);
      for (const auto& [key, v] : node.tensor.entries()) {
        if (TensorStore::slot_of(key, p1) != TensorStore::slot_of(key, p2)) continue;
        std::vector<int> vals;
        for (int i = 0; i < node.tensor.rank(); i++)
          if (i != p1 && i != p2) vals.push_back(TensorStore::slot_of(key, i));
        traced.add(TensorStore::pack_set(vals), v);
      }
      std::vector<int> legs;
      for (int x : node.legs)
        if (x != a) legs.push_back(x);
      node.legs = std::move(legs);
      node.tensor = std::move(traced);
    }
  }
  return net;
}

int ContractionPlan::max_log_cost() const {
  int m = 0;
  for (const auto& s : steps) m = std::max(m, s.log_cost);
  return m;
}

std::string ContractionPlan::explain(const LongDiagram& ld) const {
  std::ostringstream os;
  os << "cut-arc " << ld.cut_arc << (ld.reversed ? " reversed" : " forward") << "\n";
  for (size_t i = 0; i < steps.size(); i++) {
    const auto& s = steps[i];
    os << "step " << (i + 1) << ": contract nodes " << s.node_a << " x " << s.node_b << " over {";
    for (size_t j = 0; j < s.arcs.size(); j++) os << (j ? "," : "") << s.arcs[j];
    os << "} log-cost " << s.log_cost << "\n";
  }
  os << "max log-cost " << max_log_cost() << "\n";
  return os.str();
}

namespace {

struct FormalNode {
  std::multiset<int> legs;
  bool alive = false;
};

ContractionPlan plan_from_order(const TensorNetwork& net, bool greedy) {
  ContractionPlan plan;
  std::vector<FormalNode> nodes;
  for (const auto& n : net.nodes) {
    FormalNode f;
    f.alive = true;
    for (int a : n.legs) f.legs.insert(a);
    nodes.push_back(std::move(f));
  }
  auto shared_arcs = [&](int i, int j) {
    std::vector<int> out;
    for (auto it = nodes[i].legs.begin(); it != nodes[i].legs.end(); ++it)
      if (nodes[j].legs.count(*it) && (out.empty() || out.back() != *it)) out.push_back(*it);
    return out;
  };
  size_t alive = nodes.size();
  while (alive > 1) {
    int best_i = -1, best_j = -1, best_cost = 0;
    for (size_t i = 0; i < nodes.size(); i++) {
      if (!nodes[i].alive) continue;
      for (size_t j = i + 1; j < nodes.size(); j++) {
        if (!nodes[j].alive) continue;
        auto sh = shared_arcs(int(i), int(j));
        if (sh.empty()) continue;
        int pairs = 0;
        for (int a : sh)
          pairs += int(std::min(nodes[i].legs.count(a), nodes[j].legs.count(a)));
        int cost = int(nodes[i].legs.size() + nodes[j].legs.size()) - pairs;
        if (best_i < 0 || cost < best_cost) {
          best_i = int(i);
          best_j = int(j);
          best_cost = cost;
        }
        if (!greedy && best_i >= 0) break;  // first pair in index order
      }
      if (!greedy && best_i >= 0) break;
    }
    if (best_i < 0) fail("disconnected network");
    auto sh = shared_arcs(best_i, best_j);
    PlanStep step{best_i, best_j, sh, best_cost};
    plan.steps.push_back(step);
    // merge into a fresh node at the end (stable indices for determinism)
    FormalNode merged;
    merged.alive = true;
    for (int which : {best_i, best_j}) {
      for (int a : nodes[which].legs) merged.legs.insert(a);
      nodes[which].alive = false;
    }
    for (int a : sh) {
      auto n1 = merged.legs.count(a);
      // remove matched pairs (all of them for this arc)
      merged.legs.erase(a);
      (void)n1;
    }
    nodes.push_back(std::move(merged));
    alive--;
  }
  return plan;
}

}  // namespace

ContractionPlan plan_greedy(const TensorNetwork& net) { return plan_from_order(net, true); }
ContractionPlan plan_naive(const TensorNetwork& net) { return plan_from_order(net, false); }

namespace {

TNode contract_pair(const TNode& A, const TNode& B, const std::vector<int>& arcs, int dim,
                    EvalStats* stats) {
  // positions of shared arcs in each node, aligned by ascending arc id
  std::vector<int> sharedA, sharedB;
  std::vector<int> sorted_arcs = arcs;
  std::sort(sorted_arcs.begin(), sorted_arcs.end());
  for (int a : sorted_arcs) {
    for (size_t i = 0; i < A.legs.size(); i++)
      if (A.legs[i] == a) sharedA.push_back(int(i));
    for (size_t i = 0; i < B.legs.size(); i++)
      if (B.legs[i] == a) sharedB.push_back(int(i));
  }
  if (sharedA.size() != sharedB.size() || sharedA.empty()) fail("contract: no common arc");
  std::vector<int> freeA, freeB;
  for (size_t i = 0; i < A.legs.size(); i++)
    if (std::find(sharedA.begin(), sharedA.end(), int(i)) == sharedA.end()) freeA.push_back(int(i));
  for (size_t i = 0; i < B.legs.size(); i++)
    if (std::find(sharedB.begin(), sharedB.end(), int(i)) == sharedB.end()) freeB.push_back(int(i));

  // bucket B by shared part
  std::unordered_map<uint64_t, std::vector<std::pair<uint64_t, const Laurent*>>> buckets;
  buckets.reserve(B.tensor.entry_count());
  for (const auto& [key, v] : B.tensor.entries()) {
    std::vector<int> sh;
    sh.reserve(sharedB.size());
    for (int pos : sharedB) sh.push_back(TensorStore::slot_of(key, pos));
    std::vector<int> fr;
    fr.reserve(freeB.size());
    for (int pos : freeB) fr.push_back(TensorStore::slot_of(key, pos));
    buckets[TensorStore::pack_set(sh)].push_back({TensorStore::pack_set(fr), &v});
  }
  TNode out;
  for (int pos : freeA) out.legs.push_back(A.legs[pos]);
  for (int pos : freeB) out.legs.push_back(B.legs[pos]);
  out.tensor = TensorStore(dim, int(out.legs.size()));
  for (const auto& [key, v] : A.tensor.entries()) {
    std::vector<int> sh;
    sh.reserve(sharedA.size());
    for (int pos : sharedA) sh.push_back(TensorStore::slot_of(key, pos));
    auto it = buckets.find(TensorStore::pack_set(sh));
    if (it == buckets.end()) continue;
    std::vector<int> fr;
    fr.reserve(freeA.size());
    for (int pos : freeA) fr.push_back(TensorStore::slot_of(key, pos));
    uint64_t keyA = TensorStore::pack_set(fr);
    int shiftB = 6 * int(freeA.size());
    for (const auto& [keyB, pv] : it->second) {
      Laurent prod = v * (*pv);
      if (stats) {
        stats->entry_mults++;
        stats->term_mults += uint64_t(v.term_count()) * pv->term_count();
      }
      out.tensor.add(keyA | (keyB << shiftB), prod);
    }
  }
  return out;
}

}  // namespace

Laurent execute_plan(TensorNetwork net, const ContractionPlan& plan, EvalStats* stats) {
  std::vector<TNode> nodes = std::move(net.nodes);
  for (const auto& step : plan.steps) {
    if (stats) stats->max_log_cost = std::max(stats->max_log_cost, step.log_cost);
    TNode merged =
        contract_pair(nodes.at(step.node_a), nodes.at(step.node_b), step.arcs, net.dim, stats);
    nodes[step.node_a].alive = false;
    nodes[step.node_b].alive = false;
    nodes[step.node_a].tensor = TensorStore();
    nodes[step.node_b].tensor = TensorStore();
    nodes.push_back(std::move(merged));
  }
  Laurent result = net.boundary_factor;
  Laurent scalar;
  bool found = false;
  for (const auto& n : nodes) {
    if (!n.alive) continue;
    if (!n.legs.empty()) fail("execute: non-scalar residue");
    Laurent val;
    auto& e = n.tensor.entries();
    if (!e.empty()) {
      if (e.size() != 1) fail("execute: scalar with several entries");
      val = e.begin()->second;
    }
    if (found) fail("execute: plan left several nodes");
    scalar = val;
    found = true;
  }
  if (!found) scalar = Laurent(1);  // empty network (0-crossing unknot)
  return result * scalar;
}

std::vector<std::vector<Laurent>> execute_open(TensorNetwork net, const ContractionPlan& plan) {
  std::vector<TNode> nodes = std::move(net.nodes);
  for (const auto& step : plan.steps) {
    TNode merged =
        contract_pair(nodes.at(step.node_a), nodes.at(step.node_b), step.arcs, net.dim, nullptr);
    nodes[step.node_a].alive = false;
    nodes[step.node_b].alive = false;
    nodes.push_back(std::move(merged));
  }
  const TNode* last = nullptr;
  for (const auto& n : nodes)
    if (n.alive) last = &n;
  if (!last || last->legs.size() != 2) fail("execute_open: expected a 2-tensor");
  bool entrance_first = last->legs[0] == net.entrance;
  std::vector<std::vector<Laurent>> out(net.dim, std::vector<Laurent>(net.dim));
  for (const auto& [key, v] : last->tensor.entries()) {
    int a = TensorStore::slot_of(key, entrance_first ? 0 : 1);
    int bb = TensorStore::slot_of(key, entrance_first ? 1 : 0);
    out[a][bb] = v;
  }
  return out;
}

std::pair<LongDiagram, ContractionPlan> choose_best_long(const PDCode& pd, const RMatrixBundle& b) {
  auto lds = to_long_diagrams(pd);
  const LongDiagram* best = nullptr;
  ContractionPlan best_plan;
  int best_score = 0;
  for (const auto& ld : lds) {
    TensorNetwork formal;
    formal.dim = b.dim;
    formal.entrance = ld.entrance;
    formal.exit = ld.exit;
    for (const auto& lc : ld.crossings) {
      TNode n;
      for (int arc : {lc.sw, lc.se, lc.nw, lc.ne})
        if (!(arc == ld.entrance || arc == ld.exit)) n.legs.push_back(arc);
      // formal self-trace
      std::vector<int> legs;
      std::map<int, int> cnt;
      for (int a : n.legs) cnt[a]++;
      for (int a : n.legs)
        if (cnt[a] == 1) legs.push_back(a);
      n.legs = legs;
      formal.nodes.push_back(std::move(n));
    }
    ContractionPlan plan = formal.nodes.empty() ? ContractionPlan{} : plan_greedy(formal);
    int score = plan.max_log_cost();
    if (!best || score < best_score) {
      best = &ld;
      best_plan = plan;
      best_score = score;
    }
  }
  if (!best) fail("no long diagrams");
  return {*best, best_plan};
}

Laurent evaluate_long(const LongDiagram& ld, const RMatrixBundle& b, const ContractionPlan* plan,
                      EvalStats* stats) {
  TensorNetwork net = build_network(ld, b, true);
  ContractionPlan p = plan ? *plan : plan_greedy(net);
  Laurent raw = execute_plan(std::move(net), p, stats);
  if (b.exp_unit == 2) {
    auto halved = raw.halve_exponents();
    if (!halved) fail("half-exponent bundle produced odd exponents");
    return *halved;
  }
  return raw;
}

Laurent evaluate(const PDCode& pd, const RMatrixBundle& b, EvalStats* stats) {
  auto [ld, plan] = choose_best_long(pd, b);
  if (stats) {
    stats->chosen_cut = ld.cut_arc;
    stats->chosen_reversed = ld.reversed;
  }
  // the formal plan was computed on the self-traced legs; rebuild on the real
  // network to be safe
  TensorNetwork net = build_network(ld, b, true);
  ContractionPlan p = plan_greedy(net);
  Laurent raw = execute_plan(std::move(net), p, stats);
  if (b.exp_unit == 2) {
    auto halved = raw.halve_exponents();
    if (!halved) fail("half-exponent bundle produced odd exponents");
    return *halved;
  }
  return raw;
}

}  // namespace vnk
