#pragma once

#include <iosfwd>
#include <string>

#include "rlldpc/code.hpp"
#include "rlldpc/sparse.hpp"

namespace rlldpc {

// Standard alist text format: "N M", max column/row degree, per-column and
// per-row degree lists, then 1-indexed adjacency lists. The reader accepts
// zero-padded entries and reports malformed input with a line number.
void write_alist(const SparseBinaryMatrix& m, std::ostream& out);
void write_alist(const SparseBinaryMatrix& m, const std::string& path);
SparseBinaryMatrix read_alist(std::istream& in, const std::string& name = "<stream>");
SparseBinaryMatrix read_alist(const std::string& path);

// Sidecar with layout and provenance, so adapted codes can be reloaded.
// Key=value lines; see write_code/read_code.
void write_code(const RLLDPCCode& code, const std::string& path_prefix);
RLLDPCCode read_code(const std::string& path_prefix);

}  // namespace rlldpc
