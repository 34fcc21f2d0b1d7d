#include <filesystem>
#include <string>

#include "doctest.h"
#include "flatfront/error.hpp"
#include "flatfront/json_io.hpp"

using namespace flatfront;
using nlohmann::json;

namespace {

const SpherePoint kInf = SpherePoint::infinity();

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kBadParams;
}

void check_same(const WeierstrassData& a, const WeierstrassData& b) {
  CHECK(a.family == b.family);
  CHECK(a.chart == b.chart);
  CHECK(a.ends == b.ends);
  for (Complex w : {Complex(0.3, 0.7), Complex(-1.4, 0.2), Complex(2.5, -1.5)}) {
    CHECK(std::abs(a.omega_at(w) - b.omega_at(w)) <= 1e-14 * (1.0 + std::abs(a.omega_at(w))));
    CHECK(std::abs(a.theta_at(w) - b.theta_at(w)) <= 1e-14 * (1.0 + std::abs(a.theta_at(w))));
  }
}

}  // namespace

TEST_CASE("data round trips") {
  for (const WeierstrassData& d :
       {revolution_data({1.0 / 3.0, 1.0}), revolution_data({-1.0, 2.0}),
        voss_data({1.0, -1.0, kInf}), voss_data({Complex(0.0, 1.0), 2.0, 3.0}),
        voss_data({1.0, -1.0, 2.0, kInf}, false)}) {
    const WeierstrassData back = data_from_json(json::parse(dump(to_json(d))));
    check_same(d, back);
    CHECK(dump(to_json(back)) == dump(to_json(d)));
  }
}

TEST_CASE("custom data keep t verbatim") {
  WeierstrassData d = voss_data({0.0, kInf});
  d.t = Complex(2.0) * d.t;
  json j = to_json(d);
  j["family"] = "custom";
  const WeierstrassData back = data_from_json(j);
  CHECK(back.family == Family::kCustom);
  CHECK(std::abs(back.theta_at(Complex(0.5)) - d.theta_at(Complex(0.5))) < 1e-15);
}

TEST_CASE("mero and domain round trips") {
  const MeroFn f = MeroFn(Polynomial({1.0, Complex(0.0, 2.0)}), Polynomial::from_roots({3.0}))
                       .with_domain(Domain::sphere_minus({3.0, kInf}));
  const MeroFn g = mero_from_json(to_json(f));
  CHECK(g.value(Complex(0.5, 0.5)) == f.value(Complex(0.5, 0.5)));
  CHECK(g.domain().removed == f.domain().removed);
  const Domain disk = domain_from_json(to_json(Domain::disk(0.5)));
  CHECK(disk.kind == Domain::Kind::kDisk);
  CHECK(disk.radius == 0.5);
}

TEST_CASE("malformed input") {
  CHECK(code_of([] { data_from_json(json::parse(R"({"params":{}})")); }) ==
        ErrorCode::kParseError);
  CHECK(code_of([] { data_from_json(json::parse(R"({"family":"spiral"})")); }) ==
        ErrorCode::kParseError);
  CHECK(code_of([] {
          data_from_json(json::parse(R"({"family":"revolution","params":{"alpha":"x","c":1}})"));
        }) == ErrorCode::kParseError);
  CHECK(code_of([] {
          data_from_json(json::parse(R"({"family":"revolution","params":{"alpha":1,"c":1}})"));
        }) == ErrorCode::kBadParams);
  CHECK(code_of([] { domain_from_json(json::parse(R"({"kind":"annulus"})")); }) ==
        ErrorCode::kParseError);
  CHECK(code_of([] { read_data("/nonexistent/data.json"); }) == ErrorCode::kIoError);
  const auto path = std::filesystem::temp_directory_path() / "flatfront_bad.json";
  write_text(path.string(), "{ not json");
  CHECK(code_of([&] { read_data(path.string()); }) == ErrorCode::kParseError);
  std::filesystem::remove(path);
}

TEST_CASE("read and write through files") {
  const auto path = std::filesystem::temp_directory_path() / "flatfront_data.json";
  const WeierstrassData d = voss_data({1.0, -1.0, kInf});
  write_text(path.string(), dump(to_json(d)));
  check_same(read_data(path.string()), d);
  std::filesystem::remove(path);
  CHECK(code_of([] { write_text("/nonexistent/dir/x.json", "{}"); }) == ErrorCode::kIoError);
}

TEST_CASE("verification report") {
  ReportOptions opts;
  opts.flatness_samples = 10;
  const WeierstrassData d = voss_data({1.0, -1.0, kInf});
  const json r = verification_report(d, opts);
  for (const char* key : {"data", "ends", "completeness", "classification", "flatness",
                          "singular_curves", "monodromy"}) {
    CHECK(r.contains(key));
  }
  CHECK(r["classification"]["verdict"] == "nontrivial");
  CHECK(r["flatness"]["max_K"].size() == 2);
  CHECK(r["monodromy"].size() == 2);
  CHECK(dump(r) == dump(verification_report(d, opts)));
  CHECK(dump(r).ends_with("\n"));
}

TEST_CASE("report on incomplete data") {
  ReportOptions opts;
  opts.flatness_samples = 5;
  opts.monodromy = false;
  const json r = verification_report(voss_data({1.0, -1.0, 2.0, kInf}, false), opts);
  CHECK(r["classification"]["error"] == "NotWeaklyComplete");
  const bool has_monodromy = r.contains("monodromy") && !r["monodromy"].empty();
  CHECK_FALSE(has_monodromy);
}
