#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "vnk/diagram.hpp"
#include "vnk/poly.hpp"
#include "vnk/rmatrix.hpp"

namespace vnk {

/// Multi-leg sparse tensor over Laurent polynomials; all legs share one
/// dimension. Keys pack per-leg values, 6 bits each.
class TensorStore {
 public:
  TensorStore() = default;
  TensorStore(int dim, int rank) : dim_(dim), rank_(rank) {}
  int dim() const { return dim_; }
  int rank() const { return rank_; }
  size_t entry_count() const { return sparse_.size(); }

  void add(uint64_t key, const Laurent& v);
  void set(uint64_t key, Laurent v);
  const std::unordered_map<uint64_t, Laurent>& entries() const { return sparse_; }

  static uint64_t pack_set(const std::vector<int>& values0);  // 0-based values
  static int slot_of(uint64_t key, int pos) { return int((key >> (6 * pos)) & 63); }

 private:
  int dim_ = 0;
  int rank_ = 0;
  std::unordered_map<uint64_t, Laurent> sparse_;
};

/// A node of the contraction graph: a tensor with one leg per incident arc.
struct TNode {
  std::vector<int> legs;  // arc ids, position-aligned with tensor keys
  TensorStore tensor;
  bool alive = true;
};

struct TensorNetwork {
  int dim = 0;
  std::vector<TNode> nodes;
  int entrance = 0, exit = 0;  // open arc ids (already reduced to index 1)
  Laurent boundary_factor;     // curl monomials from the boundary arcs
};

struct PlanStep {
  int node_a = 0, node_b = 0;
  std::vector<int> arcs;
  int log_cost = 0;
};

struct ContractionPlan {
  std::vector<PlanStep> steps;
  int max_log_cost() const;
  std::string explain(const LongDiagram& ld) const;
};

struct EvalStats {
  int max_log_cost = 0;
  uint64_t term_mults = 0;     // Laurent term-pair multiplications
  uint64_t entry_mults = 0;    // tensor entry-pair multiplications
  int chosen_cut = 0;
  bool chosen_reversed = false;
};

/// Network from a long diagram: one node per crossing, curls absorbed on the
/// producer side, boundary legs restricted to index 1.
/// `restrict_boundary=false` keeps the two boundary legs open (for the
/// diagonal-matrix cross-check).
TensorNetwork build_network(const LongDiagram& ld, const RMatrixBundle& b,
                            bool restrict_boundary = true);

/// Greedy pairing on the leg structure only (no tensor data needed).
ContractionPlan plan_greedy(const TensorNetwork& net);

/// Left-to-right order, for the plan-independence tests.
ContractionPlan plan_naive(const TensorNetwork& net);

/// Execute a plan; network is consumed. Returns the scalar result
/// (exponents still in bundle units).
Laurent execute_plan(TensorNetwork net, const ContractionPlan& plan, EvalStats* stats = nullptr);

/// Full-dimension variant: returns the open-legs 2-tensor as a dense matrix
/// (row = entrance index, col = exit index).
std::vector<std::vector<Laurent>> execute_open(TensorNetwork net, const ContractionPlan& plan);

/// Formal planning over every long diagram; returns the best one with plan.
std::pair<LongDiagram, ContractionPlan> choose_best_long(const PDCode& pd, const RMatrixBundle& b);

/// The invariant: plan over all cuts, evaluate exactly, halve exponents when
/// the bundle stores half-unit exponents.
Laurent evaluate(const PDCode& pd, const RMatrixBundle& b, EvalStats* stats = nullptr);

/// Evaluate one specific long diagram (used by the invariance suites).
Laurent evaluate_long(const LongDiagram& ld, const RMatrixBundle& b,
                      const ContractionPlan* plan = nullptr, EvalStats* stats = nullptr);

}  // namespace vnk
