#include <cstdlib>

#include "doctest.h"
#include "flatfront/config.hpp"
#include "flatfront/error.hpp"

using namespace flatfront;

TEST_CASE("tolerance file overrides selected keys") {
  const Tolerances t = parse_tolerances(
      "# comment\n"
      "root = 1e-8\n"
      "\n"
      "cauchy=2e-6   # trailing\n");
  CHECK(t.root == 1e-8);
  CHECK(t.cauchy == 2e-6);
  CHECK(t.sing == Tolerances{}.sing);
}

TEST_CASE("malformed tolerance files are parse errors") {
  CHECK_THROWS_AS(parse_tolerances("nonsense = 1"), Error);
  CHECK_THROWS_AS(parse_tolerances("root = abc"), Error);
  CHECK_THROWS_AS(parse_tolerances("root 1e-3"), Error);
  try {
    parse_tolerances("root = abc");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParseError);
    CHECK(is_validation_error(e.code()));
  }
}

TEST_CASE("missing config file is an io error") {
  CHECK_THROWS_AS(load_tolerances("/nonexistent/flatfront.conf"), Error);
}

TEST_CASE("thread count honours the environment") {
  setenv("FLATFRONT_THREADS", "3", 1);
  CHECK(worker_threads() == 3u);
  setenv("FLATFRONT_THREADS", "0", 1);
  CHECK(worker_threads() >= 1u);
  unsetenv("FLATFRONT_THREADS");
}

TEST_CASE("error names are stable identifiers") {
  CHECK(error_name(ErrorCode::kTooManyPoints) == "TooManyPoints");
  CHECK(error_name(ErrorCode::kPoleOnPath) == "PoleOnPath");
  CHECK_FALSE(is_validation_error(ErrorCode::kQuadratureFailure));
}
