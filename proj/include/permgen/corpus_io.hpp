#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "permgen/geometry.hpp"

namespace permgen {

/// Reads rows of comma-separated reals, one creation per row. A first row
/// containing any non-numeric field is a header naming the columns. Blank
/// lines and lines starting with '#' are skipped. Errors are ParseError with
/// 1-based row and column numbers; duplicate rows name both rows.
Corpus parse_corpus_csv(std::istream& in);
Corpus read_corpus_csv(const std::string& path);

/// "x1,x2,...,xd"; throws ParseError on malformed text or a dimension other
/// than `dim` (when nonzero).
Creation parse_point(std::string_view text, std::size_t dim = 0);

}  // namespace permgen
