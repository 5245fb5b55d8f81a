#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace utgrad {

/// Coordinates of an element: torsion residues first, then free coordinates.
/// The derived ordering is the global lexicographic order on degrees.
struct GroupElement {
  std::vector<std::int64_t> coords;

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Z/d_1 x ... x Z/d_k x Z^m with d_1 | d_2 | ... | d_k, each d_i >= 2.
class AbelianGroup {
 public:
  AbelianGroup(std::vector<std::int64_t> invariant_factors, int free_rank = 0);

  /// Cyclic group of order d.
  static AbelianGroup cyclic(std::int64_t d) { return AbelianGroup({d}, 0); }

  const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
  int free_rank() const { return free_rank_; }
  std::size_t rank() const { return factors_.size() + free_rank_; }
  bool is_finite() const { return free_rank_ == 0; }
  std::int64_t order() const;  // finite groups only
  std::int64_t exponent() const;

  GroupElement identity() const;
  GroupElement make(std::vector<std::int64_t> coords) const;  // reduces torsion
  void check(const GroupElement& g) const;

  GroupElement compose(const GroupElement& a, const GroupElement& b) const;
  GroupElement invert(const GroupElement& a) const;
  GroupElement power(const GroupElement& a, std::int64_t k) const;
  /// Least k >= 1 with a^k = 1; nullopt (infinite) when a free coordinate is nonzero.
  std::optional<std::int64_t> element_order(const GroupElement& a) const;
  bool is_identity(const GroupElement& a) const;

  /// All elements in increasing order (finite groups only).
  std::vector<GroupElement> elements() const;
  /// Elements whose free coordinates lie in [-radius, radius], increasing order.
  std::vector<GroupElement> window(int radius) const;

  /// "C2", "C2xC2", "C2xZ", "1" for the trivial group.
  std::string name() const;
  /// Compact flag form: "2,2", "2+1".
  std::string flag() const;
  /// Parses the compact flag form.
  static AbelianGroup parse_flag(const std::string& text);

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  std::vector<std::int64_t> factors_;
  int free_rank_;
};

std::string to_string(const GroupElement& g);

}  // namespace utgrad
