#ifndef COSAT_POINTSET_HPP_
#define COSAT_POINTSET_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cosat {

// Subset of the points 0..universe-1 of a carrier. Fixed universe size.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t universe) : n_(universe), w_((universe + 63) / 64, 0) {}

  static PointSet full(std::size_t universe) {
    PointSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(i);
    return s;
  }
  static PointSet of(std::size_t universe, const std::vector<std::size_t>& pts) {
    PointSet s(universe);
    for (auto p : pts) s.insert(p);
    return s;
  }

  std::size_t universe() const { return n_; }
  bool contains(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void insert(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void erase(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  bool empty() const {
    for (auto w : w_) if (w) return false;
    return true;
  }
  // Least member, or universe() if empty.
  std::size_t first() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return k * 64 + static_cast<std::size_t>(__builtin_ctzll(w_[k]));
    return n_;
  }
  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i) if (contains(i)) out.push_back(i);
    return out;
  }

  bool subset_of(const PointSet& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k) if (w_[k] & ~o.w_[k]) return false;
    return true;
  }

  PointSet& operator&=(const PointSet& o) { for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k]; return *this; }
  PointSet& operator|=(const PointSet& o) { for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k]; return *this; }
  PointSet& operator-=(const PointSet& o) { for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k]; return *this; }
  PointSet& operator^=(const PointSet& o) { for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k]; return *this; }
  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }
  friend PointSet operator^(PointSet a, const PointSet& b) { return a ^= b; }
  PointSet complement() const { return full(n_) - *this; }

  friend bool operator==(const PointSet&, const PointSet&) = default;
  // Total order: by universe, then as bit strings read from point 0 upward.
  friend bool operator<(const PointSet& a, const PointSet& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    for (std::size_t i = 0; i < a.n_; ++i) {
      bool x = a.contains(i), y = b.contains(i);
      if (x != y) return y;  // first difference: the set lacking the point is smaller
    }
    return false;
  }

  std::string str() const {
    std::string s = "{";
    bool first_ = true;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!contains(i)) continue;
      if (!first_) s += ",";
      s += std::to_string(i);
      first_ = false;
    }
    return s + "}";
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace cosat

#endif  // COSAT_POINTSET_HPP_
