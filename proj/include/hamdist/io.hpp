#pragma once

#include <iosfwd>
#include <string>

#include "hamdist/error.hpp"
#include "hamdist/strings.hpp"

namespace hamdist {

class IoError : public Error {
 public:
  using Error::Error;
};

// Raw bytes, alphabet [256].
IntString read_bytes_file(const std::string& path);

// Whitespace-separated decimal codes; sigma = max code + 1.
IntString read_ints_file(const std::string& path);
IntString parse_ints(const std::string& content);

void write_bytes_file(const std::string& path, const IntString& s);
void write_ints_file(const std::string& path, const IntString& s);

// "shift,distance" header, one row per shift, LF endings.
void write_distance_csv(std::ostream& out, const DistanceVector& d);

}  // namespace hamdist
