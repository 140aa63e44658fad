#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "vnk/poly.hpp"

namespace vnk {

/// Sparse 4-tensor with equal leg dimension d; slots are (SW, SE, NW, NE)
/// with SW/SE the incoming legs. Indices are 1-based; absent entries are zero.
class SparseTensor4 {
 public:
  SparseTensor4() = default;
  explicit SparseTensor4(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  void set(int i, int j, int k, int l, Laurent v);
  const Laurent& at(int i, int j, int k, int l) const;
  const std::map<uint32_t, Laurent>& entries() const { return entries_; }
  static std::array<int, 4> unkey(uint32_t key, int dim);
  uint32_t key(int i, int j, int k, int l) const;

 private:
  int dim_ = 0;
  std::map<uint32_t, Laurent> entries_;  // ordered for stable serialization
};

/// R-matrix bundle for one V_n: crossing tensors, curl operator, conventions.
struct RMatrixBundle {
  int n = 0;
  int dim = 0;
  std::string convention;
  int exp_unit = 1;  // 2 when entries are stored with doubled exponents
  SparseTensor4 r_pos, r_neg;
  std::vector<Laurent> curl;  // 1-based values at curl[i-1]

  /// curl[i]^power (entries are unit monomials, so powers are exact).
  Laurent curl_power(int index1, int power) const;
};

struct BundleCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct BundleReport {
  std::vector<BundleCheck> checks;
  bool all_pass() const;
};

RMatrixBundle load_bundle(std::istream& in);
RMatrixBundle load_bundle_file(const std::string& path);

/// Inverse identity, Yang-Baxter, and curl trace identities.
/// `full` forces the exhaustive YBE check even for dim >= 8.
BundleReport verify_bundle(const RMatrixBundle& b, bool full);

std::string serialize_bundle(const RMatrixBundle& b);

}  // namespace vnk
