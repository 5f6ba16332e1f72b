#ifndef APOLAR_HVECTOR_HPP
#define APOLAR_HVECTOR_HPP

// h-vectors and pure sequence analytics on them.

#include "apolar/monomial.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace apolar {

using Sequence = std::vector<std::int64_t>;

/// (h_0, ..., h_e) with h_0 = 1 and every entry positive.
class HVector {
 public:
  HVector() : entries_{1} {}
  explicit HVector(Sequence entries) : entries_(std::move(entries)) {
    if (entries_.empty() || entries_.front() != 1) throw std::invalid_argument("h-vector must start with h_0 = 1");
    for (auto v : entries_) {
      if (v < 1) throw std::invalid_argument("h-vector entries must be positive");
    }
  }

  const Sequence& entries() const { return entries_; }
  std::size_t socle_degree() const { return entries_.size() - 1; }
  std::int64_t operator[](std::size_t i) const { return entries_.at(i); }
  std::size_t size() const { return entries_.size(); }
  std::int64_t back() const { return entries_.back(); }
  /// h_1, or 0 when e = 0.
  std::int64_t codimension() const { return entries_.size() > 1 ? entries_[1] : 0; }

  friend bool operator==(const HVector&, const HVector&) = default;

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(entries_[i]);
    }
    return out;
  }

 private:
  Sequence entries_;
};

/// Parses comma-separated integers, e.g. "1,3,6,10".
inline Sequence parse_sequence(const std::string& text) {
  Sequence out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw std::invalid_argument("empty entry in sequence '" + text + "'");
    item = item.substr(first, last - first + 1);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not an integer: '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("not an integer: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty sequence");
  return out;
}

inline HVector parse_hvector(const std::string& text) { return HVector(parse_sequence(text)); }

/// Never strictly increases after having strictly decreased.
inline bool is_unimodal(std::span<const std::int64_t> h) {
  bool descended = false;
  for (std::size_t i = 0; i + 1 < h.size(); ++i) {
    if (h[i] > h[i + 1]) descended = true;
    if (descended && h[i] < h[i + 1]) return false;
  }
  return true;
}
inline bool is_unimodal(const HVector& h) { return is_unimodal(h.entries()); }

/// Strict local maxima, boundaries compared on one side only. Entries inside
/// a plateau are never strict maxima.
inline std::size_t count_maxima(std::span<const std::int64_t> h) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const bool left = i == 0 || h[i] > h[i - 1];
    const bool right = i + 1 == h.size() || h[i] > h[i + 1];
    if (left && right) ++n;
  }
  return n;
}
inline std::size_t count_maxima(const HVector& h) { return count_maxima(h.entries()); }

/// Maximal runs of two or more equal entries that sit strictly above both
/// neighbouring entries (or a boundary).
inline std::size_t count_plateau_maxima(std::span<const std::int64_t> h) {
  std::size_t n = 0;
  std::size_t i = 0;
  while (i < h.size()) {
    std::size_t j = i;
    while (j + 1 < h.size() && h[j + 1] == h[i]) ++j;
    if (j > i) {
      const bool left = i == 0 || h[i] > h[i - 1];
      const bool right = j + 1 == h.size() || h[j] > h[j + 1];
      if (left && right) ++n;
    }
    i = j + 1;
  }
  return n;
}

/// The i-th Macaulay representation value = C(k_i, i) + C(k_{i-1}, i-1) + ...
/// with k_i > k_{i-1} > ... >= j >= 1, computed greedily.
struct MacaulayRep {
  unsigned degree = 0;
  /// (top, bottom) pairs in decreasing order of bottom.
  std::vector<std::pair<std::int64_t, std::int64_t>> summands;

  std::int64_t value() const {
    std::int64_t v = 0;
    for (const auto& [top, bottom] : summands) v += static_cast<std::int64_t>(binomial(top, bottom));
    return v;
  }
};

inline MacaulayRep macaulay_representation(std::int64_t value, unsigned i) {
  if (value < 0) throw std::invalid_argument("value must be non-negative");
  if (i < 1) throw std::invalid_argument("degree must be at least 1");
  MacaulayRep rep{i, {}};
  std::int64_t rest = value;
  for (std::int64_t b = i; b >= 1 && rest > 0; --b) {
    std::int64_t k = b;
    while (static_cast<std::int64_t>(binomial(k + 1, b)) <= rest) ++k;
    rep.summands.emplace_back(k, b);
    rest -= static_cast<std::int64_t>(binomial(k, b));
  }
  return rep;
}

/// Largest admissible h_{i+1} given h_i = value (Macaulay's growth bound).
inline std::int64_t macaulay_next_max(std::int64_t value, unsigned i) {
  std::int64_t out = 0;
  for (const auto& [top, bottom] : macaulay_representation(value, i).summands) {
    out += static_cast<std::int64_t>(binomial(top + 1, bottom + 1));
  }
  return out;
}

/// h_0 = 1 and h_{i+1} <= h_i^<i> for every i >= 1; entries must be >= 0.
inline bool is_O_sequence(std::span<const std::int64_t> h) {
  if (h.empty() || h[0] != 1) return false;
  for (auto v : h) {
    if (v < 0) return false;
  }
  for (std::size_t i = 1; i + 1 < h.size(); ++i) {
    if (h[i + 1] > macaulay_next_max(h[i], static_cast<unsigned>(i))) return false;
  }
  return true;
}
inline bool is_O_sequence(const HVector& h) { return is_O_sequence(h.entries()); }

/// Delta_i = h_i - h_{i-1}, with h_{-1} = 0.
inline Sequence first_difference(std::span<const std::int64_t> h) {
  Sequence d;
  d.reserve(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) d.push_back(h[i] - (i ? h[i - 1] : 0));
  return d;
}

/// The entries h_0..h_{floor(e/2)}.
inline Sequence first_half(std::span<const std::int64_t> h) {
  if (h.empty()) return {};
  return Sequence(h.begin(), h.begin() + static_cast<std::ptrdiff_t>((h.size() - 1) / 2 + 1));
}

/// The first difference of the first half is an O-sequence.
inline bool is_differentiable(std::span<const std::int64_t> h) {
  const auto half = first_half(h);
  return is_O_sequence(first_difference(half));
}

inline bool is_symmetric(std::span<const std::int64_t> h) {
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] != h[h.size() - 1 - i]) return false;
  }
  return true;
}

inline bool is_si_sequence(std::span<const std::int64_t> h) { return is_symmetric(h) && is_differentiable(h); }

/// Predicted h-vector after adding a generic form of degree e to a level
/// module with h-vector h: H_i = min(h_i + C(r-1+e-i, e-i), C(r-1+i, i)).
inline HVector lemma1_predict(const HVector& h, std::size_t r) {
  if (r < 1) throw std::invalid_argument("variable count must be positive");
  const auto e = static_cast<std::int64_t>(h.socle_degree());
  Sequence out{1};
  for (std::int64_t i = 1; i <= e; ++i) {
    const auto grow = static_cast<std::int64_t>(monomial_count(r, e - i));
    const auto cap = static_cast<std::int64_t>(monomial_count(r, i));
    out.push_back(std::min(h[static_cast<std::size_t>(i)] + grow, cap));
  }
  return HVector(std::move(out));
}

/// (1, r, h_2 + r - 3, ..., h_e + r - 3): h-vector after adjoining
/// y_4^e, ..., y_r^e to a codimension-3 level module.
inline HVector lift_hvector(const HVector& h, std::size_t r_new) {
  if (h.size() > 1 && h[1] != 3) throw std::invalid_argument("lift requires h_1 = 3");
  if (h.size() < 2) throw std::invalid_argument("lift requires socle degree at least 1");
  if (r_new < 3) throw std::invalid_argument("target variable count must be at least 3");
  Sequence out = h.entries();
  const auto shift = static_cast<std::int64_t>(r_new) - 3;
  for (std::size_t i = 1; i < out.size(); ++i) out[i] += shift;
  return HVector(std::move(out));
}

}  // namespace apolar

#endif  // APOLAR_HVECTOR_HPP
