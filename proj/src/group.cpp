#include "utgrad/group.hpp"

#include <numeric>

#include "utgrad/error.hpp"

namespace utgrad {

AbelianGroup::AbelianGroup(std::vector<std::int64_t> invariant_factors, int free_rank)
    : factors_(std::move(invariant_factors)), free_rank_(free_rank) {
  if (free_rank_ < 0) throw InputError("negative free rank");
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw InputError("invariant factors must be at least 2");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0)
      throw InputError("invariant factors must form a divisibility chain");
  }
}

std::int64_t AbelianGroup::order() const {
  if (!is_finite()) throw InputError("order of an infinite group");
  std::int64_t n = 1;
  for (auto d : factors_) n *= d;
  return n;
}

std::int64_t AbelianGroup::exponent() const {
  return factors_.empty() ? 1 : factors_.back();
}

GroupElement AbelianGroup::identity() const {
  return GroupElement{std::vector<std::int64_t>(rank(), 0)};
}

GroupElement AbelianGroup::make(std::vector<std::int64_t> coords) const {
  if (coords.size() != rank())
    throw MismatchError("group element has " + std::to_string(coords.size()) +
                        " coordinates, group " + name() + " needs " + std::to_string(rank()));
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    coords[i] %= factors_[i];
    if (coords[i] < 0) coords[i] += factors_[i];
  }
  return GroupElement{std::move(coords)};
}

void AbelianGroup::check(const GroupElement& g) const {
  if (g.coords.size() != rank())
    throw MismatchError("group element " + to_string(g) + " does not belong to " + name());
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (g.coords[i] < 0 || g.coords[i] >= factors_[i])
      throw MismatchError("unreduced residue in " + to_string(g) + " for " + name());
}

GroupElement AbelianGroup::compose(const GroupElement& a, const GroupElement& b) const {
  check(a);
  check(b);
  GroupElement r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) {
    r.coords[i] += b.coords[i];
    if (i < factors_.size() && r.coords[i] >= factors_[i]) r.coords[i] -= factors_[i];
  }
  return r;
}

GroupElement AbelianGroup::invert(const GroupElement& a) const {
  check(a);
  GroupElement r = a;
  for (std::size_t i = 0; i < r.coords.size(); ++i) {
    if (i < factors_.size())
      r.coords[i] = r.coords[i] == 0 ? 0 : factors_[i] - r.coords[i];
    else
      r.coords[i] = -r.coords[i];
  }
  return r;
}

GroupElement AbelianGroup::power(const GroupElement& a, std::int64_t k) const {
  check(a);
  std::vector<std::int64_t> c = a.coords;
  for (auto& x : c) x *= k;
  return make(std::move(c));
}

std::optional<std::int64_t> AbelianGroup::element_order(const GroupElement& a) const {
  check(a);
  for (std::size_t i = factors_.size(); i < a.coords.size(); ++i)
    if (a.coords[i] != 0) return std::nullopt;
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::int64_t oi = factors_[i] / std::gcd(factors_[i], a.coords[i]);
    ord = std::lcm(ord, oi);
  }
  return ord;
}

bool AbelianGroup::is_identity(const GroupElement& a) const {
  check(a);
  for (auto x : a.coords)
    if (x != 0) return false;
  return true;
}

std::vector<GroupElement> AbelianGroup::window(int radius) const {
  std::vector<GroupElement> out;
  std::vector<std::int64_t> lo(rank()), hi(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    if (i < factors_.size()) {
      lo[i] = 0;
      hi[i] = factors_[i] - 1;
    } else {
      lo[i] = -radius;
      hi[i] = radius;
    }
  }
  std::vector<std::int64_t> cur = lo;
  while (true) {
    out.push_back(GroupElement{cur});
    std::size_t i = rank();
    while (i > 0) {
      --i;
      if (cur[i] < hi[i]) {
        ++cur[i];
        break;
      }
      cur[i] = lo[i];
      if (i == 0) return out;
    }
    if (rank() == 0) return out;
  }
}

std::vector<GroupElement> AbelianGroup::elements() const {
  if (!is_finite()) throw InputError("cannot list the elements of infinite group " + name());
  return window(0);
}

std::string AbelianGroup::name() const {
  std::string s;
  for (auto d : factors_) s += (s.empty() ? "C" : "xC") + std::to_string(d);
  for (int i = 0; i < free_rank_; ++i) s += s.empty() ? "Z" : "xZ";
  return s.empty() ? "1" : s;
}

std::string AbelianGroup::flag() const {
  std::string s;
  for (auto d : factors_) s += (s.empty() ? "" : ",") + std::to_string(d);
  if (free_rank_ > 0) s += "+" + std::to_string(free_rank_);
  return s;
}

AbelianGroup AbelianGroup::parse_flag(const std::string& text) {
  auto plus = text.find('+');
  std::string tors = text.substr(0, plus);
  int free = 0;
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    if (s.empty() || s.size() > 12 || s.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("malformed group flag '" + text + "'");
    return std::stoll(s);
  };
  if (plus != std::string::npos) free = static_cast<int>(parse_int(text.substr(plus + 1)));
  std::vector<std::int64_t> factors;
  if (!tors.empty()) {
    std::size_t start = 0;
    while (true) {
      auto comma = tors.find(',', start);
      factors.push_back(parse_int(tors.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return AbelianGroup(std::move(factors), free);
}

std::string to_string(const GroupElement& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.coords.size(); ++i)
    s += (i ? "," : "") + std::to_string(g.coords[i]);
  return s + ")";
}

}  // namespace utgrad
