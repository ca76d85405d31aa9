#include "hamdist/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "hamdist/error.hpp"

namespace hamdist {
namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

}  // namespace

IntString read_bytes_file(const std::string& path) {
  const std::string data = slurp(path);
  std::vector<std::uint8_t> bytes(data.begin(), data.end());
  return IntString::from_bytes(bytes);
}

IntString parse_ints(const std::string& content) {
  std::vector<Char> codes;
  const char* p = content.data();
  const char* end = p + content.size();
  while (p < end) {
    while (p < end && std::isspace(static_cast<unsigned char>(*p))) ++p;
    if (p == end) break;
    std::uint64_t v = 0;
    const auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || (next < end && !std::isspace(static_cast<unsigned char>(*next))))
      throw InvalidInstance("malformed integer near offset " + std::to_string(p - content.data()));
    if (v > 0xffffffffULL) throw InvalidInstance("character code " + std::to_string(v) + " too large");
    codes.push_back(static_cast<Char>(v));
    p = next;
  }
  return IntString::from_codes(std::move(codes));
}

IntString read_ints_file(const std::string& path) { return parse_ints(slurp(path)); }

void write_bytes_file(const std::string& path, const IntString& s) {
  if (s.sigma() > 256) throw InvalidParameter("alphabet too large for byte output");
  std::ofstream out = open_out(path);
  for (Char c : s.chars()) out.put(static_cast<char>(c));
}

void write_ints_file(const std::string& path, const IntString& s) {
  std::ofstream out = open_out(path);
  for (std::size_t i = 0; i < s.size(); ++i) out << s[i] << (i + 1 == s.size() ? '\n' : ' ');
}

void write_distance_csv(std::ostream& out, const DistanceVector& d) {
  out << "shift,distance\n";
  for (std::size_t i = 0; i < d.size(); ++i) out << i << ',' << d[i] << '\n';
}

}  // namespace hamdist
