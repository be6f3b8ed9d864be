#include <doctest.h>

#include <cmath>

#include "corrsep/error.hpp"
#include "corrsep/serialization.hpp"

using namespace corrsep;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("state JSON round trip is bit-exact") {
  const DensityMatrix rho = random_separable_state({2, 3}, 4, 99);
  const DensityMatrix back = state_from_json(parse_json(state_to_json(rho).dump()));
  CHECK(back.dims() == rho.dims());
  CHECK(back.matrix() == rho.matrix());
}

TEST_CASE("state JSON layout") {
  const Json j = state_to_json(bell_state());
  CHECK(j.at("dims") == Json::array({2, 2}));
  CHECK(j.at("re").size() == 4);
  CHECK(std::abs(j.at("re")[0][3].get<double>() - 0.5) < 1e-15);
  CHECK(j.at("im")[1][1].get<double>() == 0.0);
}

TEST_CASE("imaginary part is optional") {
  const Json j = parse_json(R"({"dims": [2], "re": [[0.5, 0], [0, 0.5]]})");
  CHECK(state_from_json(j).matrix()(0, 0).real() == 0.5);
}

TEST_CASE("parse and validation errors") {
  CHECK(code_of([] { parse_json("{not json"); }) == ErrorCode::Parse);
  CHECK(code_of([] { state_from_json(parse_json(R"({"re": [[1]]})")); }) == ErrorCode::Parse);
  CHECK(code_of([] { state_from_json(parse_json(R"({"dims": [2], "re": [[1, 0]]})")); }) ==
        ErrorCode::Parse);
  CHECK(code_of([] {
          state_from_json(parse_json(R"({"dims": [2], "re": [[1, 0], [0, 1]]})"));
        }) == ErrorCode::Domain);
  CHECK(code_of([] {
          state_from_json(parse_json(R"({"dims": [0], "re": []})"));
        }) == ErrorCode::Parse);
}

TEST_CASE("rounded mode accepts four-decimal matrices") {
  // Trace 1.0004 after rounding.
  const Json j = parse_json(R"({"dims": [2], "re": [[0.3335, 0], [0, 0.6669]]})");
  CHECK(code_of([&] { state_from_json(j); }) == ErrorCode::Domain);
  CHECK(state_from_json(j, true).dims() == Dims{2});
}

TEST_CASE("report JSON") {
  const Json j = report_to_json(family_gap(bell_state(), 1, 1));
  CHECK(j.at("criterion") == "family");
  CHECK(j.at("detected") == true);
  CHECK(j.at("gap").get<double>() == doctest::Approx(-1.0));
}

TEST_CASE("witness JSON with a tampered operator is rejected") {
  Json j = witness_to_json(build_witness(bell_state(), 1, 1));
  j["operator"]["re"][0][0] = 42.0;
  CHECK(code_of([&] { witness_from_json(j); }) == ErrorCode::Parse);
}
