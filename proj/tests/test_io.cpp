#include <doctest.h>

#include <random>

#include "crs/io.hpp"

using namespace crs;

TEST_CASE("exact field round trip") {
  std::mt19937_64 rng(11);
  HarmonicField f = random_field(rng, 5, 7);
  json j = to_json(f);
  ParsedField back = parse_field_text(j.dump(), ValueMode::Exact);
  REQUIRE(std::holds_alternative<HarmonicField>(back));
  CHECK(std::get<HarmonicField>(back) == f);
  CHECK(j["coefficients"][0]["re"].is_string());
}

TEST_CASE("value modes") {
  const std::string text = R"({"truncation": 3, "coefficients": [{"p": 1, "q": 0, "m": 0, "re": 0.5, "im": "1/3"}]})";
  CHECK_THROWS_WITH_AS(parse_field_text(text, ValueMode::Exact), doctest::Contains("grid mode"), InputError);
  ParsedField g = parse_field_text(text, ValueMode::Grid);
  REQUIRE(std::holds_alternative<NumericField>(g));
  CHECK(std::get<NumericField>(g).get({1, 0, 0}).real() == doctest::Approx(0.5));
  CHECK(std::get<NumericField>(g).get({1, 0, 0}).imag() == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(require_exact(g), InputError);

  ParsedField e = parse_field_text(R"({"truncation": 2, "coefficients": [{"p": 0, "q": 1, "m": -1, "re": 2, "im": "-0.25"}]})",
                                   ValueMode::Exact);
  CHECK(require_exact(e).get({0, 1, -1}) == GaussianRational(mpq_class(2), mpq_class(-1, 4)));
}

TEST_CASE("input errors name their location") {
  CHECK_THROWS_WITH_AS(parse_field_text("{\n  \"truncation\": 3,\n  \"coefficients\": [ oops ]\n}", ValueMode::Exact),
                       doctest::Contains("line 3"), InputError);
  auto bad = [](const std::string& entry) {
    return R"({"truncation": 3, "coefficients": [)" + entry + "]}";
  };
  CHECK_THROWS_WITH_AS(parse_field_text(bad(R"({"p": 1, "q": 0, "m": 2, "re": "1"})"), ValueMode::Exact),
                       doctest::Contains("coefficients[0]"), InputError);
  CHECK_THROWS_AS(parse_field_text(bad(R"({"p": 3, "q": 1, "m": 0, "re": "1"})"), ValueMode::Exact), InputError);
  CHECK_THROWS_WITH_AS(
      parse_field_text(bad(R"({"p": 1, "q": 0, "m": 0, "re": "1"}, {"p": 1, "q": 0, "m": 0, "im": "2"})"), ValueMode::Exact),
      doctest::Contains("duplicate"), InputError);
  CHECK_THROWS_AS(parse_field_text(bad(R"({"p": 1, "q": 0, "m": 0, "re": "1/0"})"), ValueMode::Exact), InputError);
  CHECK_THROWS_AS(parse_field_text(bad(R"({"p": 1, "q": 0, "re": "1"})"), ValueMode::Exact), InputError);
  CHECK_THROWS_AS(parse_field_text(R"({"coefficients": []})", ValueMode::Exact), InputError);
  CHECK_THROWS_AS(parse_field_text(R"({"truncation": -1})", ValueMode::Exact), InputError);
  CHECK_THROWS_AS(read_field_file("/nonexistent/field.json", ValueMode::Exact), InputError);
}
