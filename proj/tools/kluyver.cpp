#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <regex>
#include <sstream>
#include <string>

#include "kluyver/errors.hpp"
#include "kluyver/lseries.hpp"
#include "kluyver/moments.hpp"
#include "kluyver/ramble.hpp"
#include "kluyver/verify.hpp"
#include "kluyver/walks.hpp"
#include "kluyver/wick.hpp"

using json = nlohmann::ordered_json;
using cplx = std::complex<double>;
namespace kw = kluyver::walks;

namespace {

constexpr int exit_ok = 0, exit_residual = 1, exit_usage = 2, exit_accuracy = 3;

struct Global {
  double tol = 1e-9;
  int threads = 0;
  std::uint64_t seed = 20170801;
  std::string format = "json";
  std::string output;
};

class Out {
 public:
  explicit Out(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw kluyver::DomainError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& operator()() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json rational(const mpq_class& q) {
  auto part = [](const mpz_class& z) -> json {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
  };
  return json::array({part(q.get_num()), part(q.get_den())});
}

json cjson(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cplx parse_complex(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  static const std::regex full(R"(^([+-]?[0-9.]+(?:[eE][+-]?[0-9]+)?)?(?:([+-])([0-9.]*(?:[eE][+-]?[0-9]+)?)i)?$)");
  static const std::regex imag_only(R"(^([+-]?[0-9.]*(?:[eE][+-]?[0-9]+)?)i$)");
  std::smatch m;
  auto coef = [](const std::string& t) { return (t.empty() || t == "+") ? 1.0 : t == "-" ? -1.0 : std::stod(t); };
  if (std::regex_match(s, m, imag_only)) return {0.0, coef(m[1].str())};
  if (!s.empty() && std::regex_match(s, m, full)) {
    double re = m[1].matched ? std::stod(m[1].str()) : 0.0;
    double im = 0.0;
    if (m[2].matched) im = (m[2].str() == "-" ? -1.0 : 1.0) * coef(m[3].str());
    return {re, im};
  }
  throw kluyver::DomainError("cannot parse complex number '" + s + "' (expected a+bi)");
}

// "a:b:h" -> grid points.
std::vector<double> parse_grid(const std::string& g) {
  double a, b, h;
  char c1, c2;
  std::istringstream is(g);
  if (!(is >> a >> c1 >> b >> c2 >> h) || c1 != ':' || c2 != ':' || !(h > 0.0) || b < a)
    throw kluyver::DomainError("grid must be a:b:h with a <= b and h > 0");
  std::vector<double> x;
  const long n = std::lround(std::floor((b - a) / h + 1e-9));
  for (long i = 0; i <= n; ++i) x.push_back(a + i * h);
  return x;
}

// ---- wick

int cmd_wick(const Global& G, int j) {
  auto d = kluyver::wick::wick_decompose(j);
  bool exact = kluyver::wick::wick_reconstruct(d) == kluyver::wick::RationalPolyJY::monomial(2 * j + 1, 0);
  json lam = json::array();
  for (std::size_t k = 0; k < d.lambda.size(); ++k) lam.push_back(json{{"k", k}, {"value", rational(d.lambda[k])}});
  json q = json::array();
  for (const auto& t : kluyver::wick::feynman_coefficients(j))
    q.push_back(json{{"m", t.m}, {"value", rational(t.q)}, {"i0_power", t.i0_power}, {"k0_power", t.k0_power}});
  json doc{{"schema", 1}, {"command", "wick"},  {"identity", "odd power of J in the Hankel basis"},
           {"j", j},      {"lambda", lam},      {"q", q},
           {"reconstruction_exact", exact}};
  Out out(G.output);
  out() << doc.dump(2) << "\n";
  return exact ? exit_ok : exit_residual;
}

// ---- moments

int cmd_moments(const Global& G, int j, int kmax, double tol) {
  auto tab = kluyver::moments::maclaurin_table(j, kmax, tol);
  Out out(G.output);
  auto& os = out();
  os << "k,r,err,underflow";
  for (std::size_t m = 0; m < tab.parts.size(); ++m) os << ",part_m" << m;
  os << "\n";
  for (int k = 0; k <= kmax; ++k) {
    double mag = 0.0;
    for (const auto& p : tab.parts) mag += std::abs(p[k]);
    os << k << "," << num(tab.r[k]) << "," << num(std::max(tol, 1e-15) * mag) << "," << (tab.underflow[k] ? 1 : 0);
    for (const auto& p : tab.parts) os << "," << num(p[k]);
    os << "\n";
  }
  return exit_ok;
}

// ---- walks

int cmd_density(const Global& G, int n, const std::string& route_s, const std::string& grid) {
  const kw::Route route = kw::parse_route(route_s);
  Out out(G.output);
  auto& os = out();
  os << "x,p,err\n";
  int code = exit_ok;
  for (double x : parse_grid(grid)) {
    try {
      auto v = kw::density(n, x, route, G.tol);
      os << num(x) << "," << num(v.value) << "," << num(v.err) << "\n";
    } catch (const kluyver::AccuracyError& e) {
      os << num(x) << "," << num(e.estimate()) << "," << num(e.error()) << "\n";
      std::cerr << "x=" << num(x) << ": " << e.what() << "\n";
      code = exit_accuracy;
    } catch (const kluyver::DomainError& e) {
      os << num(x) << ",nan,nan\n";
      std::cerr << "x=" << num(x) << ": " << e.what() << "\n";
      if (code == exit_ok) code = exit_usage;
    }
  }
  return code;
}

json histogram_json(const kw::Histogram& h) {
  return json{{"lo", h.lo},         {"width", h.width},     {"iqr", h.iqr},
              {"counts", h.counts}, {"density", h.density}, {"sturges_fallback", h.sturges_fallback}};
}

int cmd_simulate(const Global& G, int n, std::size_t samples, const std::string& prefix) {
  auto s = kw::simulate(n, samples, G.seed, G.threads);
  const std::string base = prefix.empty() ? "walk_n" + std::to_string(n) : prefix;
  {
    std::ofstream csv(base + "_distances.csv");
    if (!csv) throw kluyver::DomainError("cannot write " + base + "_distances.csv");
    csv << "distance\n";
    for (double d : s.distances) csv << num(d) << "\n";
  }
  json doc{{"schema", 1},
           {"command", "walks simulate"},
           {"n", n},
           {"samples", samples},
           {"seed", G.seed},
           {"generator", s.generator},
           {"histogram", histogram_json(kw::histogram_fd(s.distances))},
           {"distances_csv", base + "_distances.csv"}};
  if (n >= 2 && n <= 16) doc["ks_distance"] = kw::ks_distance(s.distances, kw::cdf_grid(n));
  {
    std::ofstream js(base + "_histogram.json");
    js << doc.dump(2) << "\n";
  }
  Out out(G.output);
  out() << doc.dump(2) << "\n";
  return exit_ok;
}

struct Series {
  std::string name, colour;
  bool dashed = false;
  std::vector<double> y;
};

void write_svg(const std::string& path, const std::string& title, const std::vector<double>& x,
               const std::vector<Series>& curves, const kw::Histogram* hist) {
  const double W = 640, H = 400, L = 50, R = 20, T = 30, B = 40;
  double xmin = x.front(), xmax = x.back(), ymax = 0.0;
  for (const auto& c : curves)
    for (double v : c.y)
      if (std::isfinite(v)) ymax = std::max(ymax, v);
  if (hist) {
    xmin = std::min(xmin, hist->lo);
    xmax = std::max(xmax, hist->lo + hist->width * hist->counts.size());
    for (double v : hist->density) ymax = std::max(ymax, v);
  }
  ymax = std::min(ymax * 1.05, 4.0);
  auto px = [&](double v) { return L + (v - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double v) { return H - B - std::clamp(v / ymax, 0.0, 1.0) * (H - T - B); };
  std::ofstream os(path);
  if (!os) throw kluyver::DomainError("cannot write " + path);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << L << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    double xv = xmin + i * (xmax - xmin) / 4, yv = i * ymax / 4;
    os << "<text x=\"" << px(xv) - 8 << "\" y=\"" << H - B + 16 << "\" font-size=\"11\">" << std::setprecision(3)
       << xv << "</text>\n";
    os << "<text x=\"5\" y=\"" << py(yv) + 4 << "\" font-size=\"11\">" << yv << "</text>\n";
  }
  if (hist)
    for (std::size_t b = 0; b < hist->counts.size(); ++b) {
      double x0 = hist->lo + b * hist->width;
      os << "<rect x=\"" << px(x0) << "\" y=\"" << py(hist->density[b]) << "\" width=\""
         << px(x0 + hist->width) - px(x0) << "\" height=\"" << H - B - py(hist->density[b])
         << "\" fill=\"#9bb7e0\" stroke=\"#3060b0\" stroke-width=\"0.3\"/>\n";
    }
  int legend = 0;
  for (const auto& c : curves) {
    os << "<polyline fill=\"none\" stroke=\"" << c.colour << "\" stroke-width=\"1.6\"";
    if (c.dashed) os << " stroke-dasharray=\"5,3\"";
    os << " points=\"";
    for (std::size_t i = 0; i < x.size(); ++i)
      if (std::isfinite(c.y[i])) os << px(x[i]) << "," << py(c.y[i]) << " ";
    os << "\"/>\n";
    os << "<text x=\"" << W - R - 150 << "\" y=\"" << T + 15 * ++legend << "\" font-size=\"12\" fill=\"" << c.colour
       << "\">" << c.name << "</text>\n";
  }
  os << "</svg>\n";
}

int cmd_figure(const Global& G, const std::string& id, std::size_t samples, const std::string& svg) {
  struct Fig {
    int n;
    bool taylor;
    bool rayleigh;
  };
  static const std::map<std::string, Fig> figs{{"1b", {5, false, false}},      {"3a", {3, false, false}},
                                               {"3b", {4, false, false}},      {"5a", {6, false, true}},
                                               {"5b", {7, false, true}},       {"5c", {8, false, true}},
                                               {"p5taylor", {5, true, false}}, {"p9taylor", {9, true, false}}};
  auto it = figs.find(id);
  if (it == figs.end()) throw kluyver::DomainError("unknown figure id '" + id + "'");
  const Fig f = it->second;
  Out out(G.output);
  auto& os = out();
  std::vector<double> x;
  std::vector<Series> curves;
  if (f.taylor) {
    // Step 0.05 on [0, 3]; the series is finite below 3.
    Series series{"Maclaurin series", "#3060b0", true, {}}, dens{"p_" + std::to_string(f.n), "#c02020", false, {}};
    os << "x,series,density\n";
    for (int i = 0; i <= 60; ++i) {
      double xi = 0.05 * i, s;
      try {
        s = kw::maclaurin_continuation((f.n - 1) / 2, xi);
      } catch (const std::exception&) {
        s = std::nan("");
      }
      double d = kw::density_auto(f.n, xi);
      x.push_back(xi);
      series.y.push_back(s);
      dens.y.push_back(d);
      os << num(xi) << "," << num(s) << "," << num(d) << "\n";
    }
    curves = {dens, series};
    if (!svg.empty()) write_svg(svg, "p_" + std::to_string(f.n) + " and its Maclaurin series", x, curves, nullptr);
    return exit_ok;
  }
  auto s = kw::simulate(f.n, samples, G.seed, G.threads);
  auto h = kw::histogram_fd(s.distances);
  os << "x,histogram,density" << (f.rayleigh ? ",rayleigh" : "") << "\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    double c = h.lo + (b + 0.5) * h.width;
    os << num(c) << "," << num(h.density[b]) << "," << num(kw::density_auto(f.n, c));
    if (f.rayleigh) os << "," << num(kw::rayleigh_approx(f.n, c));
    os << "\n";
  }
  if (!svg.empty()) {
    Series dens{"p_" + std::to_string(f.n), "#c02020", false, {}}, ray{"Rayleigh", "#209020", true, {}};
    const int steps = 20 * f.n;  // step 0.05 on [0, n]
    for (int i = 0; i <= steps; ++i) {
      double xi = 0.05 * i;
      x.push_back(xi);
      dens.y.push_back(kw::density_auto(f.n, xi));
      ray.y.push_back(kw::rayleigh_approx(f.n, xi));
    }
    curves = {dens};
    if (f.rayleigh) curves.push_back(ray);
    write_svg(svg, "n = " + std::to_string(f.n) + ", seed " + std::to_string(G.seed), x, curves, &h);
  }
  return exit_ok;
}

// ---- lseries

int cmd_lseries(const Global& G, const std::string& form, int s) {
  const auto& f = kluyver::lseries::named_form(form);
  auto v = kluyver::lseries::l_value(f, s, std::min(G.tol, 1e-12));
  json doc{{"schema", 1}, {"command", "lseries"}, {"form", form}, {"weight", f.weight}, {"level", f.level},
           {"s", s},      {"value", v.value},     {"eps_detected", v.eps}, {"N_used", v.N_used}, {"err", v.err}};
  Out out(G.output);
  out() << doc.dump(2) << "\n";
  return exit_ok;
}

// ---- ramble

int cmd_ramble_direct(const Global& G, int n, const std::string& s) {
  const cplx sv = parse_complex(s);
  auto v = kluyver::ramble::ramble_direct(n, sv, G.tol);
  json doc{{"schema", 1}, {"command", "ramble"}, {"n", n}, {"s", cjson(sv)}, {"value", cjson(v.value)}, {"err", v.err}};
  Out out(G.output);
  out() << doc.dump(2) << "\n";
  return exit_ok;
}

int cmd_ramble_continue(const Global& G, int j, const std::string& z) {
  const cplx zv = parse_complex(z);
  json doc{{"schema", 1}, {"command", "ramble continue"}, {"j", j}, {"n", 2 * j + 1}, {"z", cjson(zv)}};
  int code = exit_ok;
  try {
    auto v = kluyver::ramble::ramble_continued(j, zv, G.tol);
    doc["value"] = cjson(v.value);
    doc["err"] = v.err;
  } catch (const kluyver::PoleError& e) {
    doc["pole"] = true;
    doc["residue"] = cjson(e.residue());
    doc["message"] = e.what();
    code = exit_usage;
  }
  Out out(G.output);
  out() << doc.dump(2) << "\n";
  return code;
}

int cmd_ramble_sumrule(const Global& G, int j, const std::string& nu, int mmax) {
  const cplx nv = parse_complex(nu);
  auto r = kluyver::ramble::sum_rule_check(j, nv, mmax, 1e-5);
  json terms = json::array();
  for (auto t : r.terms) terms.push_back(cjson(t));
  const bool pass = r.residual < 1e-5;
  json doc{{"schema", 1},
           {"command", "ramble sumrule"},
           {"identity", "W_{2j+2}(nu) = sum_m C(nu/2,m)^2 W_{2j+1}(nu-2m)"},
           {"j", j},
           {"nu", cjson(nv)},
           {"lhs", cjson(r.lhs)},
           {"rhs", cjson(r.rhs)},
           {"partial_sum", cjson(r.partial)},
           {"residual", r.residual},
           {"tolerance", 1e-5},
           {"pass", pass},
           {"truncates", r.truncates},
           {"tail_estimate", r.tail_estimate},
           {"m_max", r.m_max},
           {"terms", terms}};
  Out out(G.output);
  out() << doc.dump(2) << "\n";
  return pass ? exit_ok : exit_residual;
}

// ---- verify

int cmd_verify(const Global& G, const std::string& group) {
  kluyver::verify::RunConfig cfg{G.tol, G.threads, G.seed};
  auto checks = kluyver::verify::run(group, cfg);
  Out out(G.output);
  auto& os = out();
  if (G.format == "csv") {
    os << "group,tag,identity,value,target,residual,tol,status,note\n";
    auto q = [](const std::string& s) {
      std::string r = "\"";
      for (char c : s) r += (c == '"') ? std::string("\"\"") : std::string(1, c);
      return r + "\"";
    };
    for (const auto& c : checks)
      os << c.group << "," << c.tag << "," << q(c.identity) << "," << num(c.value) << "," << num(c.target) << ","
         << num(c.residual) << "," << num(c.tol) << "," << kluyver::verify::status_name(c.status) << "," << q(c.note)
         << "\n";
  } else {
    json arr = json::array();
    for (const auto& c : checks) {
      json r{{"group", c.group},   {"tag", c.tag},       {"identity", c.identity},
             {"value", c.value},   {"target", c.target}, {"residual", std::isnan(c.residual) ? json() : json(c.residual)},
             {"tol", c.tol},       {"status", kluyver::verify::status_name(c.status)}};
      if (!c.note.empty()) r["note"] = c.note;
      arr.push_back(r);
    }
    const int code = kluyver::verify::exit_code(checks);
    json doc{{"schema", 1}, {"command", "verify"}, {"filter", group.empty() ? "all" : group},
             {"tol", G.tol}, {"exit_code", code},  {"checks", arr}};
    os << doc.dump(2) << "\n";
  }
  return kluyver::verify::exit_code(checks);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar random-walk densities, Bessel moments and L-values"};
  app.require_subcommand(1);
  app.fallthrough();
  Global G;
  app.add_option("--tol", G.tol, "global tolerance")->check(CLI::Range(1e-14, 1e-3));
  app.add_option("--threads", G.threads, "worker threads (default: KLUYVER_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", G.seed, "RNG seed");
  app.add_option("--format", G.format, "csv or json (verify)")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-o,--output", G.output, "write the primary output to this file");

  std::function<int()> action;

  int wick_j = 1;
  auto* wick = app.add_subcommand("wick", "exact basis expansion of J^(2j+1) and Feynman coefficients");
  wick->add_option("--j", wick_j)->required()->check(CLI::Range(1, 12));
  wick->callback([&] { action = [&] { return cmd_wick(G, wick_j); }; });

  int mj = 2, mk = 20;
  double mtol = 1e-13;
  auto* mom = app.add_subcommand("moments", "Taylor coefficients r_{2j+1,k} by Feynman terms (CSV)");
  mom->add_option("--j", mj)->required()->check(CLI::Range(1, 7));
  mom->add_option("--kmax", mk)->check(CLI::Range(0, 200));
  mom->add_option("--tol", mtol)->check(CLI::Range(1e-15, 1e-3));
  mom->callback([&] { action = [&] { return cmd_moments(G, mj, mk, mtol); }; });

  auto* walks = app.add_subcommand("walks", "walk densities, simulation and figures");
  walks->require_subcommand(1);
  int dn = 5;
  std::string droute = "direct", dgrid = "0.05:0.95:0.05";
  auto* dens = walks->add_subcommand("density", "density on a grid (CSV x,p,err)");
  dens->add_option("--n", dn)->required()->check(CLI::Range(1, 16));
  dens->add_option("--route", droute)->check(CLI::IsMember({"direct", "closed_form", "feynman", "series", "rayleigh"}));
  dens->add_option("--grid", dgrid, "a:b:h");
  dens->callback([&] { action = [&] { return cmd_density(G, dn, droute, dgrid); }; });

  int sn = 5;
  std::size_t ss = 100000;
  std::string sprefix;
  auto* sim = walks->add_subcommand("simulate", "Monte Carlo distances (CSV) and histogram (JSON)");
  sim->add_option("--n", sn)->required()->check(CLI::Range(1, 64));
  sim->add_option("--samples", ss)->check(CLI::PositiveNumber);
  sim->add_option("--prefix", sprefix, "output file prefix (default walk_n<N>)");
  sim->callback([&] { action = [&] { return cmd_simulate(G, sn, ss, sprefix); }; });

  std::string fid, fsvg;
  std::size_t fs = 100000;
  auto* fig = walks->add_subcommand("figure", "data (and optional SVG) for a histogram or series plot");
  fig->add_option("--id", fid)
      ->required()
      ->check(CLI::IsMember({"1b", "3a", "3b", "5a", "5b", "5c", "p5taylor", "p9taylor"}));
  fig->add_option("--samples", fs)->check(CLI::PositiveNumber);
  fig->add_option("--svg", fsvg, "also write an SVG overlay plot to this path");
  fig->callback([&] { action = [&] { return cmd_figure(G, fid, fs, fsvg); }; });

  std::string lform = "f4_6";
  int ls = 1;
  auto* lser = app.add_subcommand("lseries", "critical L-value of an eta-product cusp form");
  lser->add_option("--form", lform)->required()->check(CLI::IsMember({"f3_15", "f4_6", "f6_6"}));
  lser->add_option("--s", ls)->required();
  lser->callback([&] { action = [&] { return cmd_lseries(G, lform, ls); }; });

  int rn = 5, rj = 2, rm = 40;
  std::string rs, rz, rnu;
  auto* ram = app.add_subcommand("ramble", "ramble integrals W_n(s), continuation and sum rule");
  ram->require_subcommand(0, 1);
  auto* rn_opt = ram->add_option("--n", rn)->check(CLI::Range(1, 16));
  auto* rs_opt = ram->add_option("--s", rs, "exponent, a+bi");
  auto* cont = ram->add_subcommand("continue", "W_{2j+1}(-z) for z off the poles 2, 4, 6, ...");
  cont->add_option("--j", rj)->required()->check(CLI::Range(1, 7));
  cont->add_option("--z", rz)->required();
  cont->callback([&] { action = [&] { return cmd_ramble_continue(G, rj, rz); }; });
  auto* sr = ram->add_subcommand("sumrule", "compare W_{2j+2}(nu) with the binomial sum over W_{2j+1}");
  sr->add_option("--j", rj)->required()->check(CLI::Range(1, 7));
  sr->add_option("--nu", rnu)->required();
  sr->add_option("--mmax", rm)->check(CLI::Range(10, 400));
  sr->callback([&] { action = [&] { return cmd_ramble_sumrule(G, rj, rnu, rm); }; });
  ram->callback([&] {
    if (action) return;
    if (rn_opt->count() == 0 || rs_opt->count() == 0)
      throw CLI::ValidationError("ramble", "--n and --s are required without a subcommand");
    action = [&] { return cmd_ramble_direct(G, rn, rs); };
  });

  std::string vgroup = "all", vfilter;
  auto* ver = app.add_subcommand("verify", "run the verification battery");
  ver->add_option("group", vgroup)->check(CLI::IsMember({"all", "borwein", "theorem41", "sumrule", "routes", "wick"}));
  ver->add_option("--filter", vfilter, "run only this group")
      ->check(CLI::IsMember({"all", "borwein", "theorem41", "sumrule", "routes", "wick"}));
  ver->callback([&] { action = [&] { return cmd_verify(G, vfilter.empty() ? vgroup : vfilter); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_usage;
  }
  try {
    return action ? action() : exit_usage;
  } catch (const kluyver::AccuracyError& e) {
    std::cerr << "accuracy error: " << e.what() << " (estimate " << num(e.estimate()) << ", error " << num(e.error())
              << ")\n";
    return exit_accuracy;
  } catch (const kluyver::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const kluyver::OverflowError& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return exit_accuracy;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_residual;
  }
}
