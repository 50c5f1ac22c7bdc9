#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kluyver::verify {

struct RunConfig {
  double tol = 1e-9;  // handed to the quadrature routines; must lie in (1e-14, 1e-3)
  int threads = 0;    // 0: KLUYVER_THREADS or hardware concurrency
  std::uint64_t seed = 20170801;
};

// Throws DomainError for out-of-range settings.
void validate(const RunConfig& cfg);

enum class Status { pass, fail, accuracy_error, error };
std::string status_name(Status s);

struct Check {
  std::string group;
  std::string tag;       // names the identity being checked
  std::string identity;  // the identity in words
  double value = 0.0;
  double target = 0.0;
  double residual = 0.0;
  double tol = 0.0;
  Status status = Status::pass;
  std::string note;
};

// Groups in run order: borwein, theorem41, sumrule, routes, wick.
const std::vector<std::string>& groups();

// Runs every group whose name matches the filter ("all" or "" runs all).
// Failures are collected, never thrown. Groups run concurrently when more
// than one thread is available; the result order does not depend on it.
std::vector<Check> run(const std::string& filter, const RunConfig& cfg);

// 0 all pass, 3 if any accuracy error, otherwise 1 if anything failed.
int exit_code(const std::vector<Check>& checks);

}  // namespace kluyver::verify
