#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace vnk {

/// One crossing of a planar diagram, census convention: arcs[0] is the
/// incoming under-strand, slots listed counterclockwise.
struct Crossing {
  std::array<int, 4> arcs{};
  int sign = 0;  // +1 or -1, inferred from strand ordering

  /// Slot (1 or 3) where the over-strand enters.
  int over_in_slot() const { return sign > 0 ? 3 : 1; }
  int over_out_slot() const { return sign > 0 ? 1 : 3; }
};

/// A validated single-component planar diagram.
class PDCode {
 public:
  PDCode() = default;  // 0-crossing unknot

  /// Parse `PD[X[a,b,c,d],...]` or one `a,b,c,d` line per crossing.
  /// Throws std::runtime_error with a descriptive message.
  static PDCode parse(std::string_view text);

  /// Build from slot tuples; infers signs, validates connectivity.
  static PDCode from_tuples(const std::vector<std::array<int, 4>>& tuples);

  size_t crossing_count() const { return crossings_.size(); }
  size_t arc_count() const { return 2 * crossings_.size(); }
  const std::vector<Crossing>& crossings() const { return crossings_; }

  int writhe() const;

  /// Over/under exchanged at every crossing (mirror image; signs negate).
  PDCode mirrored() const;

  /// Same diagram with the strand orientation reversed; arcs relabeled
  /// along the new traversal.
  PDCode reversed() const;

  /// Arc following `arc` along the strand orientation.
  int next_arc(int arc) const;

  /// True if the diagram alternates over/under along the strand.
  bool alternating() const;

  std::string text() const;

  /// Blackboard 2-parallel with framing twists inserted so the companion
  /// pattern is the (2,1)-torus knot.
  PDCode cable_2_1() const;

  /// Untwisted (0-framed) double closed with a positive clasp.
  PDCode whitehead_double() const;

 private:
  void validate_and_index();
  std::vector<Crossing> crossings_;
  // arc -> (crossing, slot) of the two endpoints; in = strand enters crossing
  struct ArcEnds {
    int in_c = -1, in_slot = -1;
    int out_c = -1, out_slot = -1;
  };
  std::vector<ArcEnds> ends_;  // 1-based arc labels; ends_[0] unused
  friend struct RotSolver;
};

/// One up-pointing crossing of a long diagram; arc ids by leg role.
struct LongCrossing {
  int sign = 0;
  int sw = 0, se = 0, nw = 0, ne = 0;
};

/// Long (1,1-tangle) diagram: up-pointing crossings, per-arc rotation
/// numbers, entrance and exit arcs.
struct LongDiagram {
  std::vector<LongCrossing> crossings;
  std::map<int, int> rot;
  int entrance = 0;
  int exit = 0;
  int cut_arc = 0;     // provenance: which arc of the PD was cut
  bool reversed = false;
};

/// One long diagram per (cut arc, traversal direction): 2*arcs outputs.
std::vector<LongDiagram> to_long_diagrams(const PDCode& pd);

/// Single cut (forward direction).
LongDiagram to_long_diagram(const PDCode& pd, int cut_arc);

}  // namespace vnk
