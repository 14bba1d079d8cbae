#include "gmes/vertex.hpp"

#include <stdexcept>

namespace gmes {

VertexAddress VertexAddress::parse(const std::string& text, int p) {
  std::vector<uint8_t> letters;
  if (text.find('.') != std::string::npos) {
    size_t pos = 0;
    while (pos < text.size()) {
      size_t dot = text.find('.', pos);
      std::string part = text.substr(pos, dot == std::string::npos ? dot : dot - pos);
      int x = std::stoi(part);
      if (x < 1 || x > p) throw std::invalid_argument("vertex letter out of range: " + part);
      letters.push_back(static_cast<uint8_t>(x));
      if (dot == std::string::npos) break;
      pos = dot + 1;
    }
  } else {
    for (char c : text) {
      if (c < '1' || c > '9') throw std::invalid_argument("bad vertex letter in: " + text);
      int x = c - '0';
      if (x > p) throw std::invalid_argument("vertex letter exceeds p in: " + text);
      letters.push_back(static_cast<uint8_t>(x));
    }
  }
  return VertexAddress(std::move(letters));
}

bool VertexAddress::precedes(const VertexAddress& other) const {
  if (level() > other.level()) return false;
  for (size_t i = 0; i < level(); ++i)
    if (letters_[i] != other.letters_[i]) return false;
  return true;
}

std::string VertexAddress::str() const {
  if (letters_.empty()) return "";
  std::string out;
  bool wide = false;
  for (uint8_t x : letters_) wide = wide || x > 9;
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (i && wide) out += '.';
    out += std::to_string(int(letters_[i]));
  }
  return out;
}

}  // namespace gmes
