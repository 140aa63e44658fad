#include "vnk/rmatrix.hpp"

#include <array>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace vnk {

namespace {
const Laurent kZero;
[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("bundle: " + msg); }
}  // namespace

uint32_t SparseTensor4::key(int i, int j, int k, int l) const {
  return uint32_t(((i - 1) * dim_ + (j - 1)) * dim_ + (k - 1)) * dim_ + (l - 1);
}

std::array<int, 4> SparseTensor4::unkey(uint32_t key, int dim) {
  std::array<int, 4> out{};
  out[3] = int(key % dim) + 1;
  key /= dim;
  out[2] = int(key % dim) + 1;
  key /= dim;
  out[1] = int(key % dim) + 1;
  out[0] = int(key / dim) + 1;
  return out;
}

void SparseTensor4::set(int i, int j, int k, int l, Laurent v) {
  for (int x : {i, j, k, l})
    if (x < 1 || x > dim_) fail("tensor index out of range");
  if (v.is_zero())
    entries_.erase(key(i, j, k, l));
  else
    entries_[key(i, j, k, l)] = std::move(v);
}

const Laurent& SparseTensor4::at(int i, int j, int k, int l) const {
  auto it = entries_.find(key(i, j, k, l));
  return it == entries_.end() ? kZero : it->second;
}

Laurent RMatrixBundle::curl_power(int index1, int power) const {
  const Laurent& base = curl.at(index1 - 1);
  if (base.term_count() != 1) fail("curl entry is not a monomial");
  const auto& t = base.terms()[0];
  if (t.c != 1 && t.c != -1) fail("curl entry is not a unit monomial");
  Int c = (t.c == -1 && (power & 1)) ? -1 : 1;
  return Laurent::monomial(c, t.te * power, t.qe * power);
}

RMatrixBundle load_bundle_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  return load_bundle(in);
}

RMatrixBundle load_bundle(std::istream& in) {
  RMatrixBundle b;
  std::string line;
  int lineno = 0;
  enum class Sec { None, Curl, RPos, RNeg } sec = Sec::None;
  bool header_seen = false;
  auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
  while (std::getline(in, line)) {
    lineno++;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    auto b0 = line.find_first_not_of(" \t\r");
    if (b0 == std::string::npos) continue;
    auto b1 = line.find_last_not_of(" \t\r");
    line = line.substr(b0, b1 - b0 + 1);
    if (line.rfind("VN-BUNDLE", 0) == 0) {
      std::istringstream hs(line.substr(9));
      std::string tok;
      while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) fail("malformed header token '" + tok + "'" + where());
        std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
        if (k == "n")
          b.n = std::stoi(v);
        else if (k == "dim")
          b.dim = std::stoi(v);
        else if (k == "convention")
          b.convention = v;
        else
          fail("unknown header key '" + k + "'" + where());
      }
      if (b.n < 1 || b.dim < 1) fail("header needs positive n and dim" + where());
      if (b.dim != 4 * b.n) fail("dim must equal 4n" + where());
      if (b.convention.find("exps=half") != std::string::npos) b.exp_unit = 2;
      b.r_pos = SparseTensor4(b.dim);
      b.r_neg = SparseTensor4(b.dim);
      b.curl.assign(b.dim, Laurent());
      header_seen = true;
      continue;
    }
    if (!header_seen) fail("missing VN-BUNDLE header" + where());
    if (line == "CURL") {
      sec = Sec::Curl;
      continue;
    }
    if (line == "RPOS") {
      sec = Sec::RPos;
      continue;
    }
    if (line == "RNEG") {
      sec = Sec::RNeg;
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) fail("expected 'indices : poly'" + where());
    std::istringstream ix(line.substr(0, colon));
    Laurent poly;
    try {
      poly = Laurent::parse(line.substr(colon + 1));
    } catch (const std::exception& e) {
      fail(std::string(e.what()) + where());
    }
    if (sec == Sec::Curl) {
      int i;
      if (!(ix >> i) || i < 1 || i > b.dim) fail("bad curl index" + where());
      b.curl[i - 1] = poly;
    } else if (sec == Sec::RPos || sec == Sec::RNeg) {
      int i, j, k, l;
      if (!(ix >> i >> j >> k >> l)) fail("bad tensor indices" + where());
      for (int x : {i, j, k, l})
        if (x < 1 || x > b.dim) fail("tensor index out of range" + where());
      (sec == Sec::RPos ? b.r_pos : b.r_neg).set(i, j, k, l, poly);
    } else {
      fail("data before any section" + where());
    }
  }
  if (!header_seen) fail("empty bundle file");
  if (b.r_pos.entries().empty() || b.r_neg.entries().empty()) fail("missing RPOS or RNEG section");
  for (int i = 0; i < b.dim; i++)
    if (b.curl[i].is_zero()) fail("curl entry " + std::to_string(i + 1) + " missing");
  return b;
}

std::string serialize_bundle(const RMatrixBundle& b) {
  std::ostringstream os;
  os << "VN-BUNDLE n=" << b.n << " dim=" << b.dim << " convention=" << b.convention << "\n";
  os << "CURL\n";
  for (int i = 0; i < b.dim; i++) os << (i + 1) << " : " << b.curl[i].text() << "\n";
  for (int which = 0; which < 2; which++) {
    os << (which == 0 ? "RPOS" : "RNEG") << "\n";
    const auto& t = which == 0 ? b.r_pos : b.r_neg;
    for (const auto& [key, poly] : t.entries()) {
      auto ix = SparseTensor4::unkey(key, b.dim);
      os << ix[0] << " " << ix[1] << " " << ix[2] << " " << ix[3] << " : " << poly.text() << "\n";
    }
  }
  return os.str();
}

bool BundleReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

// column of the braid operator sigma_pos acting at strand position p (0 or 1)
// of a 3-strand space, applied to basis column (a,b,c); accumulates results.
void apply_sigma(const SparseTensor4& t, int pos, const std::array<int, 3>& in, const Laurent& w,
                 std::map<std::array<int, 3>, Laurent>& out) {
  int d = t.dim();
  int x = in[pos], y = in[pos + 1];
  for (int k = 1; k <= d; k++) {
    for (int l = 1; l <= d; l++) {
      const Laurent& v = t.at(x, y, k, l);
      if (v.is_zero()) continue;
      std::array<int, 3> nx = in;
      nx[pos] = k;
      nx[pos + 1] = l;
      Laurent add = v * w;
      auto [it, fresh] = out.emplace(nx, add);
      if (!fresh) it->second += add;
    }
  }
}

}  // namespace

BundleReport verify_bundle(const RMatrixBundle& b, bool full) {
  BundleReport rep;
  const int d = b.dim;
  // 1. r_pos . r_neg = identity as d^2 x d^2 maps (inputs (i,j) -> outputs)
  {
    BundleCheck ck{"inverse", true, ""};
    for (int i = 1; i <= d && ck.pass; i++)
      for (int j = 1; j <= d && ck.pass; j++) {
        std::map<std::pair<int, int>, Laurent> acc;
        for (int k = 1; k <= d; k++)
          for (int l = 1; l <= d; l++) {
            const Laurent& v1 = b.r_pos.at(i, j, k, l);
            if (v1.is_zero()) continue;
            for (int m = 1; m <= d; m++)
              for (int p = 1; p <= d; p++) {
                const Laurent& v2 = b.r_neg.at(k, l, m, p);
                if (v2.is_zero()) continue;
                acc[{m, p}] += v1 * v2;
              }
          }
        for (int m = 1; m <= d && ck.pass; m++)
          for (int p = 1; p <= d && ck.pass; p++) {
            Laurent want = (m == i && p == j) ? Laurent(1) : Laurent(0);
            auto it = acc.find({m, p});
            Laurent got = it == acc.end() ? Laurent(0) : it->second;
            if (!(got == want)) {
              ck.pass = false;
              ck.detail = "violated at inputs (" + std::to_string(i) + "," + std::to_string(j) +
                          ") output (" + std::to_string(m) + "," + std::to_string(p) + ")";
            }
          }
      }
    rep.checks.push_back(ck);
  }
  // 2. Yang-Baxter: sigma1 sigma2 sigma1 = sigma2 sigma1 sigma2 on d^3
  {
    BundleCheck ck{"yang-baxter", true, ""};
    std::vector<std::array<int, 3>> columns;
    if (d <= 4 || full) {
      for (int a = 1; a <= d; a++)
        for (int bb = 1; bb <= d; bb++)
          for (int c = 1; c <= d; c++) columns.push_back({a, bb, c});
    } else {
      std::mt19937 rng(20240314);
      std::uniform_int_distribution<int> u(1, d);
      for (int s = 0; s < 40; s++) columns.push_back({u(rng), u(rng), u(rng)});
    }
    for (const auto& col : columns) {
      auto word = [&](const std::array<int, 3>& positions) {
        std::map<std::array<int, 3>, Laurent> state;
        state[col] = Laurent(1);
        for (int pos : positions) {
          std::map<std::array<int, 3>, Laurent> nxt;
          for (const auto& [ix, w] : state) apply_sigma(b.r_pos, pos, ix, w, nxt);
          state = std::move(nxt);
        }
        for (auto it = state.begin(); it != state.end();)
          it = it->second.is_zero() ? state.erase(it) : std::next(it);
        return state;
      };
      auto lhs = word({0, 1, 0});
      auto rhs = word({1, 0, 1});
      if (!(lhs == rhs)) {
        ck.pass = false;
        ck.detail = "column (" + std::to_string(col[0]) + "," + std::to_string(col[1]) + "," +
                    std::to_string(col[2]) + ")";
        break;
      }
    }
    rep.checks.push_back(ck);
  }
  // 3. curl traces: both partial traces of both crossing tensors are identity
  {
    BundleCheck ck{"curl-traces", true, ""};
    auto check_trace = [&](const SparseTensor4& t, bool second_leg, int curl_sign,
                           const std::string& label) {
      for (int i = 1; i <= d && ck.pass; i++)
        for (int j = 1; j <= d && ck.pass; j++) {
          Laurent sum;
          for (int k = 1; k <= d; k++) {
            Laurent w = b.curl_power(k, curl_sign);
            sum += (second_leg ? t.at(i, k, j, k) : t.at(k, i, k, j)) * w;
          }
          Laurent want = (i == j) ? Laurent(1) : Laurent(0);
          if (!(sum == want)) {
            ck.pass = false;
            ck.detail = label + " fails at (" + std::to_string(i) + "," + std::to_string(j) + ")";
          }
        }
    };
    check_trace(b.r_pos, true, +1, "tr2(D.r_pos)");
    check_trace(b.r_neg, true, +1, "tr2(D.r_neg)");
    check_trace(b.r_pos, false, -1, "tr1(Dinv.r_pos)");
    check_trace(b.r_neg, false, -1, "tr1(Dinv.r_neg)");
    rep.checks.push_back(ck);
  }
  return rep;
}

}  // namespace vnk
