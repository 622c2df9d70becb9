#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "klsep/coxeter.hpp"

namespace klsep {

/// Lower Bruhat intervals [e, w] for every w, one bitset per element.
/// Built by [e, w] = [e, sw] union s[e, sw] for s in dL(w). Memory is
/// order^2 / 8 bytes.
class BruhatIntervals {
 public:
  explicit BruhatIntervals(const GroupTable& g)
      : n_(g.order()), words_per_row_((g.order() + 63) / 64), bits_(n_ * words_per_row_, 0) {
    set(0, 0);
    for (Element w = 1; w < n_; ++w) {
      const int s = g.left_descents(w).first();
      const Element u = g.left_mult(s, w);
      std::uint64_t* dst = row(w);
      const std::uint64_t* src = row(u);
      for (std::size_t k = 0; k < words_per_row_; ++k) dst[k] = src[k];
      for_each(u, [&](Element x) { set(w, g.left_mult(s, x)); });
    }
  }

  /// x <= w
  bool contains(Element w, Element x) const { return (row(w)[x >> 6] >> (x & 63)) & 1u; }

  template <class F>
  void for_each(Element w, F&& f) const {
    const std::uint64_t* r = row(w);
    for (std::size_t k = 0; k < words_per_row_; ++k)
      for (std::uint64_t b = r[k]; b != 0; b &= b - 1)
        f(static_cast<Element>(k * 64 + static_cast<std::size_t>(std::countr_zero(b))));
  }

  std::size_t size(Element w) const {
    std::size_t c = 0;
    const std::uint64_t* r = row(w);
    for (std::size_t k = 0; k < words_per_row_; ++k) c += static_cast<std::size_t>(std::popcount(r[k]));
    return c;
  }

 private:
  std::uint64_t* row(Element w) { return bits_.data() + static_cast<std::size_t>(w) * words_per_row_; }
  const std::uint64_t* row(Element w) const { return bits_.data() + static_cast<std::size_t>(w) * words_per_row_; }
  void set(Element w, Element x) { row(w)[x >> 6] |= std::uint64_t{1} << (x & 63); }

  std::size_t n_;
  std::size_t words_per_row_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace klsep
