#include <doctest.h>

#include <sstream>

#include "permgen/corpus_io.hpp"

using namespace permgen;

namespace {

Corpus parse(const std::string& text) {
  std::istringstream in(text);
  return parse_corpus_csv(in);
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("corpus files") {
  const Corpus c = parse("x,y\n0,0\n\n# comment\n1,2.5\n");
  CHECK(c.dim() == 2);
  CHECK(c == Corpus::of({{0, 0}, {1, 2.5}}));
  CHECK(parse("0\n1\n").size() == 2);
}

TEST_CASE("corpus file errors name the offending row") {
  CHECK(error_of("0,0\n1\n").find("row 2") != std::string::npos);
  CHECK(error_of("0,0\n1,abc\n").find("row 2, column 2") != std::string::npos);
  CHECK(error_of("0,0\n1,inf\n").find("non-finite") != std::string::npos);
  CHECK(error_of("0,0\n1,1\n0,0\n").find("row 3 duplicates row 1") != std::string::npos);
  try {
    parse("x,y\n");
    FAIL("expected EmptyCorpus");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyCorpus);
  }
}

TEST_CASE("points on the command line") {
  CHECK(parse_point("0.5, 1", 2) == Creation{0.5, 1});
  CHECK_THROWS_AS(parse_point("0.5", 2), Error);
  CHECK_THROWS_AS(parse_point("a,b"), Error);
}
