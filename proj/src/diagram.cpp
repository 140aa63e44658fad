#include "vnk/diagram.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vnk {

namespace {

int succ(int a, int n2) { return a % n2 + 1; }

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("pd: " + msg); }

}  // namespace

PDCode PDCode::parse(std::string_view text) {
  std::vector<std::array<int, 4>> tuples;
  // strip whitespace once
  std::string s;
  s.reserve(text.size());
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.rfind("PD[", 0) == 0) {
    if (s.back() != ']') fail("missing closing ] in PD[...]");
    std::string_view body(s);
    body.remove_prefix(3);
    body.remove_suffix(1);
    while (!body.empty()) {
      if (body.front() == ',') body.remove_prefix(1);
      if (body.rfind("X[", 0) != 0) fail("expected X[a,b,c,d]");
      body.remove_prefix(2);
      auto close = body.find(']');
      if (close == std::string_view::npos) fail("missing ] in X[...]");
      std::string nums(body.substr(0, close));
      body.remove_prefix(close + 1);
      std::array<int, 4> t{};
      std::istringstream is(nums);
      for (int i = 0; i < 4; i++) {
        std::string tok;
        if (!std::getline(is, tok, ',') || tok.empty()) fail("X[...] needs 4 arc labels");
        t[i] = std::stoi(tok);
      }
      std::string extra;
      if (std::getline(is, extra, ',')) fail("X[...] needs exactly 4 arc labels");
      tuples.push_back(t);
    }
  } else if (!s.empty()) {
    // CSV: one a,b,c,d line per crossing (original text, line-split)
    std::istringstream lines{std::string(text)};
    std::string line;
    tuples.clear();
    while (std::getline(lines, line)) {
      std::string trimmed;
      for (char ch : line)
        if (!std::isspace(static_cast<unsigned char>(ch))) trimmed.push_back(ch);
      if (trimmed.empty() || trimmed[0] == '#') continue;
      std::array<int, 4> t{};
      std::istringstream is(trimmed);
      for (int i = 0; i < 4; i++) {
        std::string tok;
        if (!std::getline(is, tok, ',') || tok.empty()) fail("CSV row needs 4 arc labels");
        t[i] = std::stoi(tok);
      }
      tuples.push_back(t);
    }
  }
  return from_tuples(tuples);
}

PDCode PDCode::from_tuples(const std::vector<std::array<int, 4>>& tuples) {
  PDCode pd;
  const int n2 = int(2 * tuples.size());
  for (const auto& t : tuples) {
    Crossing c;
    c.arcs = t;
    for (int a : t)
      if (a < 1 || a > n2) fail("arc label out of range: " + std::to_string(a));
    if (t[2] != succ(t[0], n2)) fail("under-strand not consecutive at X starting " + std::to_string(t[0]));
    const int b = t[1], d = t[3];
    const bool fwd_bd = (d == succ(b, n2));  // over enters at b -> sign -1
    const bool fwd_db = (b == succ(d, n2));  // over enters at d -> sign +1
    if (!fwd_bd && !fwd_db) fail("over-strand not consecutive at X starting " + std::to_string(t[0]));
    if (fwd_bd && fwd_db) {
      // 1-crossing diagrams satisfy both; the over-strand continues from the
      // under-strand exit, so the over entry is the slot equal to arcs[2]
      c.sign = (d == t[2]) ? +1 : -1;
    } else {
      c.sign = fwd_db ? +1 : -1;
    }
    pd.crossings_.push_back(c);
  }
  pd.validate_and_index();
  return pd;
}

void PDCode::validate_and_index() {
  const int n2 = int(arc_count());
  ends_.assign(n2 + 1, {});
  for (size_t ci = 0; ci < crossings_.size(); ci++) {
    const Crossing& c = crossings_[ci];
    auto set_in = [&](int arc, int slot) {
      if (ends_[arc].in_c >= 0) fail("arc " + std::to_string(arc) + " enters two crossings");
      ends_[arc].in_c = int(ci);
      ends_[arc].in_slot = slot;
    };
    auto set_out = [&](int arc, int slot) {
      if (ends_[arc].out_c >= 0) fail("arc " + std::to_string(arc) + " leaves two crossings");
      ends_[arc].out_c = int(ci);
      ends_[arc].out_slot = slot;
    };
    set_in(c.arcs[0], 0);
    set_out(c.arcs[2], 2);
    set_in(c.arcs[c.over_in_slot()], c.over_in_slot());
    set_out(c.arcs[c.over_out_slot()], c.over_out_slot());
  }
  for (int a = 1; a <= n2; a++) {
    if (ends_[a].in_c < 0 || ends_[a].out_c < 0)
      fail("arc " + std::to_string(a) + " does not appear exactly twice");
  }
  // single component: follow the strand
  if (n2 > 0) {
    int seen = 0;
    int a = 1;
    std::vector<bool> visited(n2 + 1, false);
    while (!visited[a]) {
      visited[a] = true;
      seen++;
      a = next_arc(a);
    }
    if (seen != n2) fail("diagram has more than one component");
  }
}

int PDCode::next_arc(int arc) const {
  const auto& e = ends_[arc];
  const Crossing& c = crossings_[e.in_c];
  if (e.in_slot == 0) return c.arcs[2];
  return c.arcs[c.over_out_slot()];
}

int PDCode::writhe() const {
  int w = 0;
  for (const auto& c : crossings_) w += c.sign;
  return w;
}

PDCode PDCode::mirrored() const {
  std::vector<std::array<int, 4>> tuples;
  tuples.reserve(crossings_.size());
  for (const auto& c : crossings_) {
    const auto& a = c.arcs;
    if (c.sign > 0)
      tuples.push_back({a[3], a[0], a[1], a[2]});
    else
      tuples.push_back({a[1], a[2], a[3], a[0]});
  }
  return from_tuples(tuples);
}

PDCode PDCode::reversed() const {
  const int n2 = int(arc_count());
  auto rev = [&](int a) { return n2 + 1 - a; };
  std::vector<std::array<int, 4>> tuples;
  tuples.reserve(crossings_.size());
  for (const auto& c : crossings_) {
    const auto& a = c.arcs;
    tuples.push_back({rev(a[2]), rev(a[3]), rev(a[0]), rev(a[1])});
  }
  return from_tuples(tuples);
}

bool PDCode::alternating() const {
  if (crossings_.empty()) return true;
  // every arc must leave an under-pass and enter an over-pass, or vice versa
  for (int a = 1; a <= int(arc_count()); a++) {
    const auto& e = ends_[a];
    bool out_under = (e.out_slot == 2);
    bool in_under = (e.in_slot == 0);
    if (out_under == in_under) return false;
  }
  return true;
}

std::string PDCode::text() const {
  std::ostringstream os;
  os << "PD[";
  for (size_t i = 0; i < crossings_.size(); i++) {
    if (i) os << ",";
    const auto& a = crossings_[i].arcs;
    os << "X[" << a[0] << "," << a[1] << "," << a[2] << "," << a[3] << "]";
  }
  os << "]";
  return os.str();
}

namespace {

/// Assembles a diagram from crossings given as strand-role records over free
/// arc ids, then renumbers arcs along the traversal into census labels.
struct Assembler {
  struct Rec {
    int u_in, u_out, o_in, o_out, sign;
  };
  std::vector<Rec> recs;
  int next_id = 1;

  int fresh() { return next_id++; }

  void add(int u_in, int u_out, int o_in, int o_out, int sign) {
    recs.push_back({u_in, u_out, o_in, o_out, sign});
  }

  PDCode finish() {
    if (recs.empty()) fail("assembler: empty diagram");
    // arc -> continuation (arc entering a crossing continues as its exit arc)
    std::map<int, int> next;
    std::map<int, std::pair<int, bool>> in_at;  // arc -> (rec index, under?)
    for (size_t i = 0; i < recs.size(); i++) {
      const auto& r = recs[i];
      if (!next.emplace(r.u_in, r.u_out).second) fail("assembler: arc enters twice");
      if (!next.emplace(r.o_in, r.o_out).second) fail("assembler: arc enters twice");
    }
    // relabel along the strand
    std::map<int, int> label;
    int a = recs[0].u_in;
    int n2 = int(2 * recs.size());
    for (int k = 1; k <= n2; k++) {
      if (label.count(a)) fail("assembler: traversal closed early (multiple components?)");
      label[a] = k;
      auto it = next.find(a);
      if (it == next.end()) fail("assembler: dangling arc");
      a = it->second;
    }
    if (a != recs[0].u_in || int(label.size()) != n2) fail("assembler: not a single closed strand");
    std::vector<std::array<int, 4>> tuples;
    tuples.reserve(recs.size());
    for (const auto& r : recs) {
      int ui = label.at(r.u_in), uo = label.at(r.u_out);
      int oi = label.at(r.o_in), oo = label.at(r.o_out);
      if (r.sign > 0)
        tuples.push_back({ui, oo, uo, oi});
      else
        tuples.push_back({ui, oi, uo, oo});
    }
    PDCode pd = PDCode::from_tuples(tuples);
    // from_tuples re-infers signs from strand ordering; they must agree
    for (size_t i = 0; i < recs.size(); i++)
      if (pd.crossings()[i].sign != recs[i].sign) fail("assembler: sign inference mismatch");
    return pd;
  }
};

/// Blackboard double of every crossing. `reverse_r` runs the R copy (right of
/// the strand direction) backwards, as the Whitehead pattern requires.
/// L/R copy of original arc a get ids from `lcopy`/`rcopy`.
struct Doubler {
  const PDCode& pd;
  bool reverse_r;
  Assembler& as;
  std::map<int, int> lcopy, rcopy;

  Doubler(const PDCode& pd_, bool rev, Assembler& a_) : pd(pd_), reverse_r(rev), as(a_) {
    for (int arc = 1; arc <= int(pd.arc_count()); arc++) {
      lcopy[arc] = as.fresh();
      rcopy[arc] = as.fresh();
    }
  }

  void emit() {
    for (const auto& c : pd.crossings()) {
      int o = c.arcs[c.over_in_slot()];
      int op = c.arcs[c.over_out_slot()];
      int u = c.arcs[0];
      int up = c.arcs[2];
      int m1 = as.fresh(), m2 = as.fresh(), m3 = as.fresh(), m4 = as.fresh();
      int s = c.sign;
      if (!reverse_r) {
        if (s > 0) {
          // over L: oL -> A -> m2 -> B -> o'L ; over R: oR -> C -> m4 -> D -> o'R
          // under L: uL -> C -> m1 -> A -> u'L ; under R: uR -> D -> m3 -> B -> u'R
          as.add(m1, lcopy[up], lcopy[o], m2, +1);            // A
          as.add(m3, rcopy[up], m2, lcopy[op], +1);           // B
          as.add(lcopy[u], m1, rcopy[o], m4, +1);             // C
          as.add(rcopy[u], m3, m4, rcopy[op], +1);            // D
        } else {
          // over L: oL -> X1 -> m2 -> X2 -> o'L ; over R: oR -> Y1 -> m4 -> Y2 -> o'R
          // under L: uL -> X2 -> m1 -> Y2 -> u'L ; under R: uR -> X1 -> m3 -> Y1 -> u'R
          as.add(rcopy[u], m3, lcopy[o], m2, -1);             // X1
          as.add(lcopy[u], m1, m2, lcopy[op], -1);            // X2
          as.add(m3, rcopy[up], rcopy[o], m4, -1);            // Y1
          as.add(m1, lcopy[up], m4, rcopy[op], -1);           // Y2
        }
      } else {
        // R copy reversed: rcopy[a] runs against a; self crossings keep the
        // original sign, mixed ones flip.
        if (s > 0) {
          as.add(m1, lcopy[up], lcopy[o], m2, +1);            // A   (L x L)
          as.add(rcopy[up], m3, m2, lcopy[op], -1);           // B   (L x Rbar)
          as.add(lcopy[u], m1, m4, rcopy[o], -1);             // C   (Rbar x L)
          as.add(m3, rcopy[u], rcopy[op], m4, +1);            // D   (Rbar x Rbar)
        } else {
          as.add(m3, rcopy[u], lcopy[o], m2, +1);             // X1
          as.add(lcopy[u], m1, m2, lcopy[op], -1);            // X2
          as.add(rcopy[up], m3, m4, rcopy[o], -1);            // Y1
          as.add(m1, lcopy[up], rcopy[op], m4, +1);           // Y2
        }
      }
    }
  }
};

}  // namespace

PDCode PDCode::cable_2_1() const {
  Assembler as;
  const int w = writhe();
  const int half_twists = 1 - 2 * w;  // odd, so the parallel closes to a knot
  if (crossings_.empty()) {
    // doubled unknot: one twist region on two free lanes
    int l = as.fresh(), r = as.fresh();
    int cl = l, cr = r;
    int m = half_twists;
    for (int k = 0; k < std::abs(m); k++) {
      int nl = as.fresh(), nr = as.fresh();
      if (m > 0)
        as.add(cr, nl, cl, nr, +1);
      else
        as.add(cl, nr, cr, nl, -1);
      cl = nl;
      cr = nr;
    }
    // close lanes (swap parity is odd, so this is a single strand)
    auto unify = [&](int from, int to) {
      for (auto& rec : as.recs)
        for (int* f : {&rec.u_in, &rec.u_out, &rec.o_in, &rec.o_out})
          if (*f == from) *f = to;
    };
    unify(cl, l);
    unify(cr, r);
    return as.finish();
  }
  Doubler db(*this, /*reverse_r=*/false, as);
  db.emit();
  // splice the twist region into the two copies of arc 1
  int cut = 1;
  int l_old = db.lcopy[cut], r_old = db.rcopy[cut];
  // producer ends keep the old ids; consumers get fresh stubs
  int l_end = as.fresh(), r_end = as.fresh();
  // retarget the consumer occurrences of l_old/r_old (each enters exactly one
  // crossing complex); producers keep the old ids and feed the twist chain
  {
    int replaced = 0;
    for (auto& rec : as.recs) {
      for (int* f : {&rec.u_in, &rec.o_in}) {
        if (*f == l_old) {
          *f = l_end;
          replaced++;
        } else if (*f == r_old) {
          *f = r_end;
          replaced++;
        }
      }
    }
    if (replaced != 2) fail("cable: splice failed");
  }
  int cl = l_old, cr = r_old;
  for (int k = 0; k < std::abs(half_twists); k++) {
    int nl = as.fresh(), nr = as.fresh();
    if (half_twists > 0)
      as.add(cr, nl, cl, nr, +1);
    else
      as.add(cl, nr, cr, nl, -1);
    cl = nl;
    cr = nr;
  }
  auto unify = [&](int from, int to) {
    for (auto& rec : as.recs)
      for (int* f : {&rec.u_in, &rec.u_out, &rec.o_in, &rec.o_out})
        if (*f == from) *f = to;
  };
  unify(cl, l_end);
  unify(cr, r_end);
  return as.finish();
}

PDCode PDCode::whitehead_double() const {
  Assembler as;
  const int w = writhe();
  int l_in, l_out, r_in, r_out;  // assembly stubs: L lane flows in->out upward,
                                 // R lane flows r_in->r_out downward
  if (crossings_.empty()) {
    // lanes are free: L output loops to L input, same for R
    l_in = as.fresh();
    l_out = l_in;
    r_in = as.fresh();
    r_out = r_in;
  } else {
    Doubler db(*this, /*reverse_r=*/true, as);
    db.emit();
    int cut = 1;
    int l_old = db.lcopy[cut], r_old = db.rcopy[cut];
    int l_stub = as.fresh(), r_stub = as.fresh();
    int replaced = 0;
    for (auto& rec : as.recs) {
      for (int* f : {&rec.u_in, &rec.o_in}) {
        if (*f == l_old) {
          *f = l_stub;
          replaced++;
        } else if (*f == r_old) {
          *f = r_stub;
          replaced++;
        }
      }
    }
    if (replaced != 2) fail("whitehead: splice failed");
    // L copy of arc 1 flows producer->consumer: assembly input l_old, output l_stub.
    // Reversed R copy flows consumer->producer: input r_old, output r_stub.
    l_in = l_old;
    l_out = l_stub;
    r_in = r_old;
    r_out = r_stub;
  }
  // framing correction: inter-strand crossing sum from the reversed double is
  // -2w, so insert 2w signed anti-parallel half twists (sign of w).
  int cl = l_in;      // L lane, flowing up
  int cr = r_out;     // R lane, flowing down: we build it from the bottom up,
                      // so track the arc that will *leave* the twist region.
  // Walk the twist region bottom-up on the L side, top-down on the R side.
  // Each positive anti-parallel half twist: R (down) passes over L (moving right).
  std::vector<std::array<int, 5>> twist_recs;  // u_in,u_out,o_in,o_out,sign
  int m = 2 * w;
  int rl = cl;
  int rr_below = cr;  // arc of R lane below the current twist
  for (int k = 0; k < std::abs(m); k++) {
    int nl = as.fresh(), nr = as.fresh();
    if (m > 0) {
      // over: R lane heading down (enters from N), under: L lane heading E
      as.add(rl, nl, nr, rr_below, +1);
    } else {
      // mirror: L passes over R
      as.add(nr, rr_below, rl, nl, -1);
    }
    rl = nl;
    rr_below = nr;
  }
  // after the twist region: L lane continues as rl into the clasp; the R-lane
  // arc entering the twist region from above is rr_below's chain top = r-side
  // clasp output.
  int clasp_l_in = rl;        // cap input (going up)
  int clasp_r_out = rr_below; // cap output continues down through twists
  // clasp: cap (clasp_l_in -> ... -> clasp_r_out, turning down) hooked with
  // cup (r_in -> ... -> l_out, turning up); both crossings positive.
  int cap_mid = as.fresh(), cup_mid = as.fresh();
  // crossing 1: cap over cup:  X[u=cup_mid -> l_out, o=cap: clasp_l_in -> cap_mid]
  as.add(cup_mid, l_out, clasp_l_in, cap_mid, +1);
  // crossing 2: cup over cap:  X[u=cap_mid -> clasp_r_out, o=cup: r_in -> cup_mid]
  as.add(cap_mid, clasp_r_out, r_in, cup_mid, +1);
  return as.finish();
}

}  // namespace vnk
