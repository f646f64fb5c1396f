#include "permgen/corpus_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <unordered_map>
#include <vector>

namespace permgen {
namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto comma = line.find(',');
    out.push_back(strip(line.substr(0, comma)));
    if (comma == std::string_view::npos) return out;
    line.remove_prefix(comma + 1);
  }
}

/// nullopt when the field is not a number at all; throws on NaN or Inf.
std::optional<double> number(std::string_view field, std::size_t row, std::size_t col) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::ParseError,
                "row " + std::to_string(row) + ", column " + std::to_string(col) + ": non-finite value");
  }
  return v;
}

}  // namespace

Corpus parse_corpus_csv(std::istream& in) {
  std::string line;
  std::size_t row = 0;
  std::size_t dim = 0;
  bool first = true;
  std::vector<Creation> items;
  std::unordered_map<Creation, std::size_t, CreationHash> seen;
  while (std::getline(in, line)) {
    ++row;
    const std::string_view text = strip(line);
    if (text.empty() || text.front() == '#') continue;
    const auto fields = split(text);

    std::vector<double> coords;
    std::optional<std::size_t> bad_col;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto v = number(fields[c], row, c + 1);
      if (!v) {
        if (!bad_col) bad_col = c + 1;
        continue;
      }
      coords.push_back(*v);
    }
    if (first) {
      first = false;
      dim = fields.size();
      if (bad_col) continue;  // header
    }
    if (fields.size() != dim) {
      throw Error(ErrorCode::ParseError, "row " + std::to_string(row) + ": expected " + std::to_string(dim) +
                                             " columns, found " + std::to_string(fields.size()));
    }
    if (bad_col) {
      throw Error(ErrorCode::ParseError, "row " + std::to_string(row) + ", column " + std::to_string(*bad_col) +
                                             ": not a number: '" + std::string(fields[*bad_col - 1]) + "'");
    }
    Creation c(std::move(coords));
    const auto [it, fresh] = seen.emplace(c, row);
    if (!fresh) {
      throw Error(ErrorCode::ParseError,
                  "row " + std::to_string(row) + " duplicates row " + std::to_string(it->second));
    }
    items.push_back(std::move(c));
  }
  if (items.empty()) throw Error(ErrorCode::EmptyCorpus, "corpus file has no data rows");
  return Corpus(dim, std::move(items));
}

Corpus read_corpus_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open corpus file '" + path + "'");
  return parse_corpus_csv(in);
}

Creation parse_point(std::string_view text, std::size_t dim) {
  std::vector<double> coords;
  const auto fields = split(strip(text));
  for (std::size_t c = 0; c < fields.size(); ++c) {
    const auto v = number(fields[c], 1, c + 1);
    if (!v) throw Error(ErrorCode::ParseError, "point '" + std::string(text) + "': not a number in column " +
                                                   std::to_string(c + 1));
    coords.push_back(*v);
  }
  if (dim != 0 && coords.size() != dim) {
    throw Error(ErrorCode::ParseError, "point '" + std::string(text) + "' has " + std::to_string(coords.size()) +
                                           " coordinates, corpus has " + std::to_string(dim));
  }
  return Creation(std::move(coords));
}

}  // namespace permgen
