#pragma once

#include <string>
#include <string_view>

#include "multispread/multispread.hpp"

namespace mspread {

// Line-oriented text formats.
//
//   multispread v1
//   q=2 m=3 t=2 lambda=1 mu=2 n=5
//   sub mult=1 : 0x7
//   sub mult=1 : 0x6 0x3
//
// The header may carry modulus=0x.. (needed when q is not prime) and the
// optional checks lambda=, mu=, n=. Vectors use the integer vector form
// (hex with 0x, or decimal). '#' starts a comment. Partitions use
// "partition v1" and nu= in the header.

Multispread parse_multispread(std::string_view text);
std::string serialize_multispread(const Multispread& ms);

MultifoldPartition parse_partition(std::string_view text);
std::string serialize_partition(const MultifoldPartition& part);

/// Reads a whole file; throws Error(InvalidArgument) if it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace mspread
