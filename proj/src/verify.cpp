#include "kluyver/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <future>
#include <map>
#include <numbers>
#include <thread>

#include "kluyver/errors.hpp"
#include "kluyver/lseries.hpp"
#include "kluyver/moments.hpp"
#include "kluyver/ramble.hpp"
#include "kluyver/walks.hpp"
#include "kluyver/wick.hpp"

namespace kluyver::verify {

namespace {

constexpr double pi = std::numbers::pi;

using Sink = std::vector<Check>;

void record(Sink& out, const std::string& group, std::string tag, std::string identity, double value,
            double target, double tol) {
  Check c;
  c.group = group;
  c.tag = std::move(tag);
  c.identity = std::move(identity);
  c.value = value;
  c.target = target;
  c.residual = std::abs(value - target);
  c.tol = tol;
  c.status = (c.residual < tol) ? Status::pass : Status::fail;
  out.push_back(std::move(c));
}

// Runs one check body; numerical failures become records instead of exceptions.
void guarded(Sink& out, const std::string& group, const std::string& tag, const std::string& identity, double tol,
             const std::function<void()>& body) {
  auto fail = [&](Status s, const std::string& what) {
    Check c;
    c.group = group;
    c.tag = tag;
    c.identity = identity;
    c.tol = tol;
    c.status = s;
    c.residual = std::nan("");
    c.note = what;
    out.push_back(std::move(c));
  };
  try {
    body();
  } catch (const AccuracyError& e) {
    fail(Status::accuracy_error, e.what());
  } catch (const std::exception& e) {
    fail(Status::error, e.what());
  }
}

const std::map<std::string, std::string> borwein_identities = {
    {"r51_quadratic_relation", "r51 = (13/225) r50 - 2/(5 pi^4 r50)"},
    {"j1_fifth_power_moment", "8 int J1^5/t^2 dt = r50/6 + 105/(16 pi^4 r50)"},
    {"r50_gamma_product", "r50 = 30 C/pi^2"},
    {"r51_gamma_product", "r51 = (13C - 1/(10C)) 2/(15 pi^2)"},
    {"r52_gamma_product", "r52 = (43C - 19/(40C)) 2/(225 pi^2)"},
    {"fettis_gap", "p5(1) - p5'(0+) = 0.006894160706"},
    {"fettis_gap_exceeds_r51", "p5(1) - p5'(0+) > r51 (strict)"},
};

Sink run_borwein(const RunConfig&) {
  Sink out;
  const std::string g = "borwein";
  guarded(out, g, "borwein_battery", "five-step constants", 1e-9, [&] {
    for (const auto& r : moments::borwein_checks(1e-9)) {
      Check c;
      c.group = g;
      c.tag = r.tag;
      auto it = borwein_identities.find(r.tag);
      c.identity = it != borwein_identities.end() ? it->second : r.tag;
      c.value = r.lhs;
      c.target = r.rhs;
      c.residual = std::abs(r.residual);
      c.tol = r.tol;
      c.status = r.pass ? Status::pass : Status::fail;
      out.push_back(c);
    }
  });
  guarded(out, g, "fettis_chain", "p5'(0+) < p5(1)", 0.0, [&] {
    double slope = walks::slope_at_zero(5);
    double p51 = walks::density(5, 1.0, walks::Route::feynman).value;
    Check c;
    c.group = g;
    c.tag = "fettis_chain";
    c.identity = "p5'(0+) < p5(1)";
    c.value = slope;
    c.target = p51;
    c.residual = p51 - slope;
    c.status = slope < p51 ? Status::pass : Status::fail;
    out.push_back(c);
  });
  return out;
}

Sink run_theorem41(const RunConfig&) {
  Sink out;
  const std::string g = "theorem41";
  guarded(out, g, "theorem41_battery", "slopes and moments as critical L-values", 1e-7, [&] {
    for (const auto& r : lseries::theorem41_report(1e-7)) {
      Check c;
      c.group = g;
      c.tag = r.tag;
      c.identity = r.tag.rfind("fricke", 0) == 0 ? "Fricke modularity" : "critical L-value identity";
      c.value = r.lhs;
      c.target = r.rhs;
      c.residual = std::abs(r.residual);
      c.tol = r.tol;
      c.status = r.pass ? Status::pass : Status::fail;
      out.push_back(c);
    }
  });
  return out;
}

Sink run_sumrule(const RunConfig& cfg) {
  Sink out;
  const std::string g = "sumrule";
  for (int n = 3; n <= 8; ++n) {
    const std::string sn = std::to_string(n);
    guarded(out, g, "ramble_W" + sn + "_0", "W_n(0) = 1", 1e-6, [&] {
      record(out, g, "ramble_W" + sn + "_0", "W_n(0) = 1", ramble::ramble_direct(n, 0.0, cfg.tol).value.real(), 1.0,
             1e-6);
    });
    guarded(out, g, "ramble_W" + sn + "_2", "W_n(2) = n", 1e-6, [&] {
      record(out, g, "ramble_W" + sn + "_2", "W_n(2) = n", ramble::ramble_direct(n, 2.0, cfg.tol).value.real(), n,
             1e-6);
    });
  }
  guarded(out, g, "continuation_W5_1", "continued W_5(1) = direct W_5(1)", 1e-7, [&] {
    record(out, g, "continuation_W5_1", "continued W_5(1) = direct W_5(1)",
           ramble::ramble_continued(2, -1.0, cfg.tol).value.real(), ramble::ramble_direct(5, 1.0, cfg.tol).value.real(),
           1e-7);
  });
  for (int j = 1; j <= 3; ++j)
    for (int k = 0; k <= 2; ++k) {
      std::string tag = "pole_residue_j" + std::to_string(j) + "_k" + std::to_string(k);
      guarded(out, g, tag, "simple pole of W_{2j+1}(-z) at 2k+2 with residue -r_k", 1e-5, [&] {
        double oracle = moments::maclaurin_table(j, k, 1e-13).r[k];
        record(out, g, tag, "simple pole of W_{2j+1}(-z) at 2k+2 with residue -r_k", ramble::pole_limit(j, k), oracle,
               1e-5);
      });
    }
  struct Case {
    int j;
    double nu;
  };
  for (Case c : {Case{1, 0.0}, Case{1, 0.5}, Case{1, 1.0}, Case{1, 1.5}, Case{1, 2.0}, Case{1, 3.0}, Case{2, 0.5},
                 Case{2, 1.0}}) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "sum_rule_j%d_nu%g", c.j, c.nu);
    guarded(out, g, buf, "W_{2j+2}(nu) = sum_m C(nu/2,m)^2 W_{2j+1}(nu-2m)", 1e-5, [&] {
      auto r = ramble::sum_rule_check(c.j, c.nu, 40, 1e-5);
      record(out, g, buf, "W_{2j+2}(nu) = sum_m C(nu/2,m)^2 W_{2j+1}(nu-2m)", r.rhs.real(), r.lhs.real(), 1e-5);
      char note[96];
      std::snprintf(note, sizeof note, "tail %.3e over m_max %d", r.tail_estimate, r.m_max);
      out.back().note = note;
    });
  }
  return out;
}

Sink run_routes(const RunConfig& cfg) {
  Sink out;
  const std::string g = "routes";
  for (int n : {3, 5, 7, 9}) {
    std::string tag = "direct_vs_feynman_n" + std::to_string(n);
    guarded(out, g, tag, "oscillatory integral = Feynman diagram form on [0.05, 0.95]", 1e-7, [&] {
      double worst = 0.0, at = 0.0, vd = 0.0, vf = 0.0;
      for (int i = 1; i <= 19; ++i) {
        double x = 0.05 * i;
        double d = walks::density(n, x, walks::Route::direct, cfg.tol).value;
        double f = walks::density(n, x, walks::Route::feynman, cfg.tol).value;
        if (std::abs(d - f) >= worst) {
          worst = std::abs(d - f);
          at = x;
          vd = d;
          vf = f;
        }
      }
      record(out, g, tag, "oscillatory integral = Feynman diagram form on [0.05, 0.95]", vd, vf, 1e-7);
      char note[48];
      std::snprintf(note, sizeof note, "worst at x = %.2f", at);
      out.back().note = note;
    });
  }
  for (double x : {0.5, 1.0, 1.5}) {
    char tag[48];
    std::snprintf(tag, sizeof tag, "p4_moment_identity_x%.1f", x);
    guarded(out, g, tag, "p4 = Bessel moment form on (0, 2)", 1e-7, [&] {
      record(out, g, tag, "p4 = Bessel moment form on (0, 2)", walks::p4_identity_residual(x, cfg.tol), 0.0, 1e-7);
    });
  }
  for (double x : {0.3, 0.7}) {
    char tag[48];
    std::snprintf(tag, sizeof tag, "p3_series_vs_direct_x%.1f", x);
    guarded(out, g, tag, "p3 integer series = oscillatory integral", 1e-7, [&] {
      record(out, g, tag, "p3 integer series = oscillatory integral",
             walks::density(3, x, walks::Route::closed_form, cfg.tol).value,
             walks::density(3, x, walks::Route::direct, cfg.tol).value, 1e-7);
    });
  }
  for (int j : {2, 3}) {
    std::string tag = "series_vs_feynman_n" + std::to_string(2 * j + 1) + "_x0.9";
    guarded(out, g, tag, "Maclaurin series = Feynman form inside the unit interval", 1e-7, [&] {
      record(out, g, tag, "Maclaurin series = Feynman form inside the unit interval",
             walks::density(2 * j + 1, 0.9, walks::Route::series, cfg.tol).value,
             walks::density(2 * j + 1, 0.9, walks::Route::feynman, cfg.tol).value, 1e-7);
    });
  }
  guarded(out, g, "p4_small_x_asymptotic", "p4(x) / (-(3x/2pi^2) log x) at x = 1e-4", 0.05, [&] {
    const double x = 1e-4;
    double p = walks::density(4, x, walks::Route::direct, cfg.tol).value;
    record(out, g, "p4_small_x_asymptotic", "p4(x) / (-(3x/2pi^2) log x) at x = 1e-4",
           p / (-(3.0 * x / (2.0 * pi * pi)) * std::log(x)), 1.0, 0.05);
    out.back().note = "the O(x) correction is still 22.6% of the log term at x = 1e-4";
  });
  for (int n = 3; n <= 9; ++n) {
    std::string tag = "normalisation_n" + std::to_string(n);
    guarded(out, g, tag, "int p_n = 1", 1e-6, [&] {
      const auto& t = walks::density_table(n);
      double s = 0.0;
      for (std::size_t i = 0; i < t.x.size(); ++i) s += t.w[i] * t.p[i];
      record(out, g, tag, "int p_n = 1", s, 1.0, 1e-6);
    });
  }
  return out;
}

Sink run_wick(const RunConfig&) {
  Sink out;
  const std::string g = "wick";
  for (int j = 1; j <= wick::default_j_limit; ++j) {
    std::string tag = "wick_reconstruction_j" + std::to_string(j);
    guarded(out, g, tag, "J^(2j+1) rebuilt exactly from the basis", 0.5, [&] {
      auto d = wick::wick_decompose(j);
      auto diff = wick::wick_reconstruct(d) - wick::RationalPolyJY::monomial(2 * j + 1, 0);
      record(out, g, tag, "J^(2j+1) rebuilt exactly from the basis", static_cast<double>(diff.terms().size()), 0.0,
             0.5);
      out.back().note = "value counts nonzero monomials of the difference";
    });
  }
  const std::vector<std::vector<long>> expected{{6}, {30}, {140, -70}, {630, -840}};
  for (int j = 1; j <= 4; ++j) {
    std::string tag = "feynman_set_j" + std::to_string(j);
    guarded(out, g, tag, "Feynman coefficient set", 0.5, [&] {
      std::vector<long> got;
      for (const auto& t : wick::feynman_coefficients(j))
        if (t.q != 0) got.push_back(t.q.get_den() == 1 ? t.q.get_num().get_si() : 0);
      const bool same = got == expected[j - 1];
      record(out, g, tag, "Feynman coefficient set", same ? 0.0 : 1.0, 0.0, 0.5);
    });
  }
  return out;
}

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("KLUYVER_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (!(cfg.tol > 1e-14 && cfg.tol < 1e-3)) throw DomainError("config: tol must lie in (1e-14, 1e-3)");
  if (cfg.threads < 0) throw DomainError("config: threads must be >= 1 (or 0 for automatic)");
}

std::string status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::accuracy_error: return "accuracy_error";
    case Status::error: return "error";
  }
  return "error";
}

const std::vector<std::string>& groups() {
  static const std::vector<std::string> g{"borwein", "theorem41", "sumrule", "routes", "wick"};
  return g;
}

std::vector<Check> run(const std::string& filter, const RunConfig& cfg) {
  validate(cfg);
  using Runner = Sink (*)(const RunConfig&);
  const std::vector<std::pair<std::string, Runner>> all{{"borwein", run_borwein},
                                                        {"theorem41", run_theorem41},
                                                        {"sumrule", run_sumrule},
                                                        {"routes", run_routes},
                                                        {"wick", run_wick}};
  std::vector<std::pair<std::string, Runner>> chosen;
  for (const auto& [name, fn] : all)
    if (filter.empty() || filter == "all" || filter == name) chosen.emplace_back(name, fn);
  if (chosen.empty()) throw DomainError("verify: unknown group '" + filter + "'");

  std::vector<Sink> results(chosen.size());
  if (thread_count(cfg.threads) > 1 && chosen.size() > 1) {
    std::vector<std::future<Sink>> futs;
    for (const auto& c : chosen) futs.push_back(std::async(std::launch::async, c.second, std::cref(cfg)));
    for (std::size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
  } else {
    for (std::size_t i = 0; i < chosen.size(); ++i) results[i] = chosen[i].second(cfg);
  }
  std::vector<Check> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  return out;
}

int exit_code(const std::vector<Check>& checks) {
  bool accuracy = false, failed = false;
  for (const auto& c : checks) {
    if (c.status == Status::accuracy_error) accuracy = true;
    if (c.status != Status::pass) failed = true;
  }
  return accuracy ? 3 : failed ? 1 : 0;
}

}  // namespace kluyver::verify
