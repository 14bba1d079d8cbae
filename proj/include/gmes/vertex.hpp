#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gmes {

// A vertex of the regular p-adic rooted tree, written as a word over the
// alphabet {1,...,p}.  The empty word is the root.
class VertexAddress {
 public:
  VertexAddress() = default;
  explicit VertexAddress(std::vector<uint8_t> letters) : letters_(std::move(letters)) {}

  // Parses "132" (single digits) or "1.3.2" (dot separated, needed for p > 9).
  static VertexAddress parse(const std::string& text, int p);

  size_t level() const { return letters_.size(); }
  bool is_root() const { return letters_.empty(); }
  uint8_t letter(size_t i) const { return letters_[i]; }

  void push_back(uint8_t x) { letters_.push_back(x); }
  VertexAddress prefix(size_t len) const {
    return VertexAddress(std::vector<uint8_t>(letters_.begin(), letters_.begin() + len));
  }
  VertexAddress suffix(size_t from) const {
    return VertexAddress(std::vector<uint8_t>(letters_.begin() + from, letters_.end()));
  }

  // True if *this is a prefix of other (every vertex precedes itself).
  bool precedes(const VertexAddress& other) const;
  bool incomparable(const VertexAddress& other) const {
    return !precedes(other) && !other.precedes(*this);
  }

  std::string str() const;

  bool operator==(const VertexAddress& o) const { return letters_ == o.letters_; }
  bool operator!=(const VertexAddress& o) const { return letters_ != o.letters_; }

 private:
  std::vector<uint8_t> letters_;
};

}  // namespace gmes
