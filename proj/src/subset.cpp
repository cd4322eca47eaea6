#include "subposet/subset.hpp"

namespace subposet {

std::string Subset::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  bool leading = true;
  for (std::size_t i = words_.size(); i-- > 0;) {
    for (int shift = 60; shift >= 0; shift -= 4) {
      int nibble = static_cast<int>((words_[i] >> shift) & 0xf);
      if (leading && nibble == 0) continue;
      leading = false;
      out += digits[nibble];
    }
  }
  if (out.empty()) out = "0";
  return out;
}

Subset Subset::from_hex(int n, const std::string& hex) {
  Subset s(n);
  int pos = 0;
  for (std::size_t i = hex.size(); i-- > 0; pos += 4) {
    char c = hex[i];
    int nibble;
    if (c >= '0' && c <= '9') {
      nibble = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      nibble = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      nibble = c - 'A' + 10;
    } else {
      throw ParamError("invalid hex digit in subset encoding");
    }
    for (int b = 0; b < 4; ++b) {
      if (!((nibble >> b) & 1)) continue;
      if (pos + b >= n) throw ParamError("hex encoding sets a bit beyond the ground set");
      s.set_pos(pos + b);
    }
  }
  return s;
}

}  // namespace subposet
