#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <stdexcept>
#include <vector>

#include "vnk/diagram.hpp"

// Long-diagram conversion. The diagram is drawn orthogonally (a combinatorial
// orthogonal representation solved on the faces), every crossing is rotated
// rigidly into the diagonal up-pointing pose, and each arc's rotation number
// is the total tangent turning it absorbs, in full turns. Entrance and exit
// rays are straight verticals, so their rotation numbers are zero by
// construction unless a crossing rotation leaks onto them.

namespace vnk {

namespace {

// leg roles of an up-pointing crossing
enum class Role { SWin, SEin, NWout, NEout };

Role role_of_slot(int sign, int slot) {
  if (sign > 0) {
    switch (slot) {
      case 0: return Role::SEin;
      case 1: return Role::NEout;
      case 2: return Role::NWout;
      default: return Role::SWin;
    }
  }
  switch (slot) {
    case 0: return Role::SWin;
    case 1: return Role::SEin;
    case 2: return Role::NEout;
    default: return Role::NWout;
  }
}

// travel direction of the strand at a leg, in eighth-turns CCW from east
int travel_eighth(Role r) {
  switch (r) {
    case Role::NEout: return 1;
    case Role::NWout: return 3;
    case Role::SWin: return 1;  // enters heading NE
    case Role::SEin: return 3;  // enters heading NW
  }
  return 0;
}

int wrap8(int x) {
  int m = ((x % 8) + 8) % 8;
  return m > 4 ? m - 8 : m;  // representative in (-4, 4]
}

struct RotBuild {
  const PDCode& pd;
  int cut;
  std::vector<int> bends;          // per arc, quarter turns (forward traversal)
  std::vector<int> face_of_dart;   // dart = 2*arc (+1 for reverse)
  std::vector<int> pose;           // per crossing, quarter direction of slot 0
  std::vector<int> rho;            // per crossing, eighths, odd representative

  explicit RotBuild(const PDCode& p, int cut_arc) : pd(p), cut(cut_arc) {}

  bool solve();
  LongDiagram emit();
};

bool RotBuild::solve() {
  const int n = int(pd.crossing_count());
  const int n2 = 2 * n;
  // leave[c][s]: dart leaving crossing c through slot s
  std::vector<std::array<int, 4>> leave(n);
  std::vector<std::pair<int, int>> head(2 * (n2 + 1), {-1, -1});  // dart -> (crossing, slot)
  for (int a = 1; a <= n2; a++) {
    // forward dart 2a ends where the arc enters; reverse dart ends at producer
    // find endpoints via crossings table
    ;
  }
  for (int ci = 0; ci < n; ci++) {
    const Crossing& c = pd.crossings()[ci];
    auto mark = [&](int arc, int slot, bool is_in) {
      if (is_in) {
        head[2 * arc] = {ci, slot};
        leave[ci][slot] = 2 * arc + 1;
      } else {
        head[2 * arc + 1] = {ci, slot};
        leave[ci][slot] = 2 * arc;
      }
    };
    mark(c.arcs[0], 0, true);
    mark(c.arcs[2], 2, false);
    mark(c.arcs[c.over_in_slot()], c.over_in_slot(), true);
    mark(c.arcs[c.over_out_slot()], c.over_out_slot(), false);
  }
  // faces: orbits of phi(d) = leave[head(d)][slot(head(d)) + 3 mod 4]
  face_of_dart.assign(2 * (n2 + 1), -1);
  std::vector<int> corners;  // per face
  int nfaces = 0;
  for (int a = 1; a <= n2; a++) {
    for (int d : {2 * a, 2 * a + 1}) {
      if (face_of_dart[d] >= 0) continue;
      int cur = d;
      int cnt = 0;
      do {
        face_of_dart[cur] = nfaces;
        auto [hc, hs] = head[cur];
        cur = leave[hc][(hs + 3) & 3];
        cnt++;
      } while (cur != d);
      corners.push_back(cnt);
      nfaces++;
    }
  }
  // dual solve for bends; try (outer, beta) combos
  const int f_plus = face_of_dart[2 * cut];
  const int f_minus = face_of_dart[2 * cut + 1];
  for (int outer : {f_plus, f_minus}) {
    for (int beta : {4, -4}) {
      // rhs per face
      std::vector<int> rhs(nfaces);
      for (int f = 0; f < nfaces; f++) rhs[f] = (f == outer ? -4 : 4) - corners[f];
      // spanning tree of the dual avoiding the cut arc's edge if possible
      std::vector<int> tree_arc(nfaces, 0);   // arc connecting face to parent
      std::vector<int> parent(nfaces, -1);
      std::vector<bool> seen(nfaces, false);
      std::vector<std::vector<std::pair<int, int>>> adj(nfaces);  // (other face, arc)
      for (int a = 1; a <= n2; a++) {
        if (a == cut) continue;
        int fa = face_of_dart[2 * a], fb = face_of_dart[2 * a + 1];
        if (fa != fb) {
          adj[fa].push_back({fb, a});
          adj[fb].push_back({fa, a});
        }
      }
      std::queue<int> bfs;
      bfs.push(outer);
      seen[outer] = true;
      int nseen = 1;
      std::vector<int> order{outer};
      while (!bfs.empty()) {
        int f = bfs.front();
        bfs.pop();
        for (auto [g, arc] : adj[f]) {
          if (!seen[g]) {
            seen[g] = true;
            parent[g] = f;
            tree_arc[g] = arc;
            order.push_back(g);
            bfs.push(g);
            nseen++;
          }
        }
      }
      bool cut_in_tree = false;
      if (nseen != nfaces) {
        // dual is disconnected without the cut arc: put it in the tree
        int fa = face_of_dart[2 * cut], fb = face_of_dart[2 * cut + 1];
        if (fa == fb || seen[fa] == seen[fb]) continue;  // cannot connect
        int g = seen[fa] ? fb : fa;
        parent[g] = seen[fa] ? fa : fb;
        tree_arc[g] = cut;
        seen[g] = true;
        order.push_back(g);
        cut_in_tree = true;
        bfs.push(g);
        nseen++;
        while (!bfs.empty()) {
          int f = bfs.front();
          bfs.pop();
          for (auto [h, arc] : adj[f]) {
            if (!seen[h]) {
              seen[h] = true;
              parent[h] = f;
              tree_arc[h] = arc;
              order.push_back(h);
              bfs.push(h);
              nseen++;
            }
          }
        }
        if (nseen != nfaces) continue;
      }
      // peel leaves: process faces in reverse BFS order, solving the tree edge
      bends.assign(n2 + 1, 0);
      bends[cut] = beta;
      std::vector<int> residual = rhs;
      // subtract contributions of fixed arcs as we go; accumulate per face
      // residual(f) = rhs(f) - sum over darts of face of sgn*b(arc)
      auto apply_arc = [&](int a) {
        int fa = face_of_dart[2 * a], fb = face_of_dart[2 * a + 1];
        residual[fa] -= bends[a];
        residual[fb] += bends[a];
      };
      if (!cut_in_tree) apply_arc(cut);
      for (int i = int(order.size()) - 1; i >= 1; i--) {
        int f = order[i];
        int a = tree_arc[f];
        if (cut_in_tree && a == cut) {
          // forced value; check against beta
          int fa = face_of_dart[2 * a];
          int needed = (fa == f) ? residual[f] : -residual[f];
          if (needed != beta) goto next_combo;
          bends[a] = beta;
        } else {
          int fa = face_of_dart[2 * a];
          bends[a] = (fa == f) ? residual[f] : -residual[f];
        }
        apply_arc(a);
        if (residual[f] != 0) goto next_combo;
      }
      if (residual[order[0]] != 0) goto next_combo;
      // direction BFS: pose per crossing (quarter direction of slot 0)
      {
        auto mod4 = [](int x) { return ((x % 4) + 4) % 4; };
        pose.assign(n, -1);
        auto producer = [&](int a) { return head[2 * a + 1]; };
        auto consumer = [&](int a) { return head[2 * a]; };
        auto ccut = consumer(cut);
        pose[ccut.first] = mod4(1 + 2 - ccut.second);  // entrance travels north
        std::queue<int> q;
        q.push(ccut.first);
        bool ok = true;
        while (!q.empty() && ok) {
          int ci = q.front();
          q.pop();
          for (int s = 0; s < 4 && ok; s++) {
            int a = leave[ci][s] / 2;
            if (a == cut) continue;  // boundary rays do not wrap around infinity
            auto pc = producer(a);
            auto cc = consumer(a);
            // travel_end = travel_start + b(a):
            //   pose[cc] + cc.slot + 2 = pose[pc] + pc.slot + b(a)  (mod 4)
            int other, want;
            if (pose[pc.first] >= 0) {
              other = cc.first;
              want = mod4(pose[pc.first] + pc.second + bends[a] - 2 - cc.second);
            } else if (pose[cc.first] >= 0) {
              other = pc.first;
              want = mod4(pose[cc.first] + cc.second + 2 - bends[a] - pc.second);
            } else {
              continue;
            }
            if (pose[other] < 0) {
              pose[other] = want;
              q.push(other);
            } else if (pose[other] != want) {
              ok = false;
            }
          }
        }
        if (!ok) goto next_combo;
        for (int ci = 0; ci < n; ci++)
          if (pose[ci] < 0) goto next_combo;
        // every arc's direction relation must close; exit must point north
        for (int a = 1; a <= n2; a++) {
          if (a == cut) continue;
          auto pc = producer(a);
          auto cc = consumer(a);
          if (mod4(pose[pc.first] + pc.second + bends[a]) != mod4(pose[cc.first] + cc.second + 2))
            goto next_combo;
        }
        {
          auto pc = producer(cut);
          if (mod4(pose[pc.first] + pc.second) != 1) goto next_combo;
        }
      }
      // crossing rotations
      rho.assign(n, 0);
      for (int ci = 0; ci < n; ci++) {
        int canon = pd.crossings()[ci].sign > 0 ? 3 : 1;  // travel at slot 0 (under-in)
        int phys = 2 * ((pose[ci] + 0 + 2) % 4);
        int r = ((canon - phys) % 8 + 8) % 8;
        if (!(r & 1)) throw std::logic_error("rot: even crossing rotation");
        rho[ci] = r;
      }
      return true;
    next_combo:;
    }
  }
  return false;
}

LongDiagram RotBuild::emit() {
  const int n = int(pd.crossing_count());
  const int n2 = 2 * n;
  LongDiagram ld;
  ld.cut_arc = cut;
  ld.entrance = cut;
  ld.exit = n2 + 1;
  // crossing legs by role; the producer occurrence of the cut arc becomes exit
  for (int ci = 0; ci < n; ci++) {
    const Crossing& c = pd.crossings()[ci];
    LongCrossing lc;
    lc.sign = c.sign;
    for (int s = 0; s < 4; s++) {
      int arc = c.arcs[s];
      bool is_out = (s == 2) || (s == c.over_out_slot());
      int id = (arc == cut && is_out) ? ld.exit : arc;
      switch (role_of_slot(c.sign, s)) {
        case Role::SWin: lc.sw = id; break;
        case Role::SEin: lc.se = id; break;
        case Role::NWout: lc.nw = id; break;
        case Role::NEout: lc.ne = id; break;
      }
    }
    ld.crossings.push_back(lc);
  }
  // rotation numbers
  auto ends_of = [&](int a) {
    // recompute endpoints from crossings (producer, consumer) with slots
    std::pair<int, int> prod{-1, -1}, cons{-1, -1};
    for (int ci = 0; ci < n; ci++) {
      const Crossing& c = pd.crossings()[ci];
      for (int s = 0; s < 4; s++) {
        if (c.arcs[s] != a) continue;
        bool is_out = (s == 2) || (s == c.over_out_slot());
        bool is_in = (s == 0) || (s == c.over_in_slot());
        if (is_out && prod.first < 0) prod = {ci, s};
        else if (is_in) cons = {ci, s};
      }
    }
    return std::pair(prod, cons);
  };
  for (int a = 1; a <= n2; a++) {
    auto [prod, cons] = ends_of(a);
    Role r_out = role_of_slot(pd.crossings()[prod.first].sign, prod.second);
    Role r_in = role_of_slot(pd.crossings()[cons.first].sign, cons.second);
    if (a == cut) {
      int base_in = wrap8(travel_eighth(r_in) - 2);
      int tau_ent = rho[cons.first] - base_in;
      if (tau_ent % 8) throw std::logic_error("rot: fractional entrance rotation");
      ld.rot[ld.entrance] = tau_ent / 8;
      int base_out = wrap8(2 - travel_eighth(r_out));
      int tau_exit = -rho[prod.first] - base_out;
      if (tau_exit % 8) throw std::logic_error("rot: fractional exit rotation");
      ld.rot[ld.exit] = tau_exit / 8;
    } else {
      int base = wrap8(travel_eighth(r_in) - travel_eighth(r_out));
      int tau = 2 * bends[a] + rho[cons.first] - rho[prod.first] - base;
      if (tau % 8) throw std::logic_error("rot: fractional rotation");
      ld.rot[a] = tau / 8;
    }
  }
  return ld;
}

}  // namespace

LongDiagram to_long_diagram(const PDCode& pd, int cut_arc) {
  if (pd.crossing_count() == 0) {
    LongDiagram ld;
    ld.entrance = 1;
    ld.exit = 1;
    ld.cut_arc = 1;
    ld.rot[1] = 0;
    return ld;
  }
  RotBuild rb(pd, cut_arc);
  if (!rb.solve()) throw std::runtime_error("rot: no orthogonal realization found");
  return rb.emit();
}

std::vector<LongDiagram> to_long_diagrams(const PDCode& pd) {
  std::vector<LongDiagram> out;
  if (pd.crossing_count() == 0) {
    out.push_back(to_long_diagram(pd, 1));
    LongDiagram rev = out[0];
    rev.reversed = true;
    out.push_back(rev);
    return out;
  }
  for (int dir = 0; dir < 2; dir++) {
    PDCode use = dir ? pd.reversed() : pd;
    for (int a = 1; a <= int(use.arc_count()); a++) {
      LongDiagram ld = to_long_diagram(use, a);
      ld.reversed = (dir == 1);
      out.push_back(ld);
    }
  }
  return out;
}

}  // namespace vnk
