#include <doctest.h>

#include <set>

#include "kluyver/errors.hpp"
#include "kluyver/verify.hpp"

namespace vf = kluyver::verify;

namespace {

vf::RunConfig config(int threads, double tol = 1e-9) {
  vf::RunConfig c;
  c.threads = threads;
  c.tol = tol;
  return c;
}

}  // namespace

TEST_CASE("groups and filters") {
  CHECK(vf::groups() == std::vector<std::string>{"borwein", "theorem41", "sumrule", "routes", "wick"});
  auto b = vf::run("borwein", config(1));
  CHECK_FALSE(b.empty());
  for (const auto& c : b) CHECK(c.group == "borwein");
  CHECK_THROWS_AS(vf::run("nonsense", config(1)), kluyver::DomainError);
}

TEST_CASE("every check names its identity") {
  std::set<std::string> tags;
  for (const auto& c : vf::run("theorem41", config(1))) {
    CHECK_FALSE(c.tag.empty());
    CHECK_FALSE(c.identity.empty());
    CHECK(tags.insert(c.tag).second);
    CHECK(c.status == vf::Status::pass);
  }
}

TEST_CASE("output does not depend on the thread count") {
  auto a = vf::run("all", config(1));
  auto b = vf::run("all", config(4));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].tag == b[i].tag);
    CHECK(a[i].value == b[i].value);
    CHECK(a[i].status == b[i].status);
  }
  // Only the small-x p4 ratio is off, and it is reported as a failure.
  int failures = 0;
  for (const auto& c : a)
    if (c.status != vf::Status::pass) {
      ++failures;
      CHECK(c.tag == "p4_small_x_asymptotic");
      CHECK(c.status == vf::Status::fail);
    }
  CHECK(failures == 1);
  CHECK(vf::exit_code(a) == 1);
}

TEST_CASE("a tolerance beyond reach is an accuracy error") {
  auto r = vf::run("sumrule", config(1, 1e-13));
  bool any = false;
  for (const auto& c : r) any = any || c.status == vf::Status::accuracy_error;
  CHECK(any);
  CHECK(vf::exit_code(r) == 3);
}

TEST_CASE("exit codes") {
  std::vector<vf::Check> v(2);
  CHECK(vf::exit_code(v) == 0);
  v[0].status = vf::Status::fail;
  CHECK(vf::exit_code(v) == 1);
  v[1].status = vf::Status::accuracy_error;
  CHECK(vf::exit_code(v) == 3);
  CHECK(vf::status_name(vf::Status::accuracy_error) == "accuracy_error");
}

TEST_CASE("configuration is validated") {
  using kluyver::DomainError;
  CHECK_NOTHROW(vf::validate(config(0)));
  CHECK_THROWS_AS(vf::validate(config(-1)), DomainError);
  CHECK_THROWS_AS(vf::validate(config(1, 0.0)), DomainError);
  CHECK_THROWS_AS(vf::validate(config(1, 1e-15)), DomainError);
  CHECK_THROWS_AS(vf::validate(config(1, 0.1)), DomainError);
}
