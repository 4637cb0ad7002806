#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqfree/arith.hpp"
#include "sqfree/bihom.hpp"
#include "sqfree/counting.hpp"
#include "sqfree/detmethod.hpp"
#include "sqfree/error.hpp"
#include "sqfree/exponent.hpp"
#include "sqfree/lattice.hpp"
#include "sqfree/solutions.hpp"

namespace sqfree::cli {

namespace {

using json = nlohmann::ordered_json;

// Rounds to 15 significant digits so JSON and CSV agree.
double round15(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

json num(long double v) { return round15(static_cast<double>(v)); }

json num(const mpz_class& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

std::string csv_cell(const json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v.get<double>());
    return buf;
  }
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : " ") + csv_cell(e);
    return s;
  }
  if (v.is_null()) return "";
  return v.dump();
}

struct Report {
  Report(std::string cmd, std::vector<std::string> cols) : command(std::move(cmd)), columns(std::move(cols)) {}

  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json extra = json::object();

  void add(std::vector<json> row) { rows.push_back(std::move(row)); }

  void emit(std::ostream& out, const std::string& format) const {
    if (format == "json") {
      json doc;
      doc["command"] = command;
      doc["rows"] = json::array();
      for (const auto& r : rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = r[i];
        doc["rows"].push_back(std::move(obj));
      }
      for (const auto& [k, v] : extra.items()) doc[k] = v;
      out << doc.dump(2) << '\n';
      return;
    }
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_cell(r[i]);
      out << '\n';
    }
    for (const auto& [k, v] : extra.items()) out << "# " << k << ": " << csv_cell(v) << '\n';
  }
};

mpz_class parse_mpz(const std::string& s, const std::string& name) {
  mpz_class v;
  const bool ok = !s.empty() && v.set_str(s, 10) == 0;
  require(ok, ErrorCode::InvalidArgument, name + ": '" + s + "' is not an integer");
  return v;
}

std::vector<std::uint64_t> parse_grid(const std::string& spec) {
  // lo:hi:points (log-spaced) or an explicit comma list.
  if (spec.find(':') != std::string::npos) {
    std::uint64_t lo = 0, hi = 0, pts = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(spec);
    const bool ok = static_cast<bool>(is >> lo >> c1 >> hi >> c2 >> pts) && c1 == ':' && c2 == ':' && is.eof();
    require(ok, ErrorCode::InvalidArgument, "--grid: expected lo:hi:points, got '" + spec + "'");
    return log_grid(lo, hi, pts);
  }
  std::vector<std::uint64_t> out;
  std::istringstream is(spec);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    const mpz_class v = parse_mpz(tok, "--grid");
    require(v >= 1 && mpz_fits_ulong_p(v.get_mpz_t()), ErrorCode::InvalidArgument, "--grid: entries must be positive");
    out.push_back(v.get_ui());
  }
  return out;
}

std::vector<SolutionTriple> read_triples(std::istream& in) {
  std::vector<SolutionTriple> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream is(line);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    if (toks.empty() || toks[0][0] == '#' || toks[0] == "e") continue;
    require(toks.size() == 3, ErrorCode::InvalidArgument,
            "stdin line " + std::to_string(lineno) + ": expected 'e f n'");
    out.push_back({parse_mpz(toks[0], "e"), parse_mpz(toks[1], "f"), parse_mpz(toks[2], "n")});
  }
  return out;
}

json curve_json(const AuxCurve& c) {
  json coeffs = json::array();
  for (const auto& v : c.poly.coeffs) coeffs.push_back(num(v));
  return coeffs;
}

struct Options {
  std::string format = "csv";
  unsigned threads = 1;
  std::uint64_t seed = 0;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Square-free values of n^2 + 1: counts, solutions, determinant method, lattices", "sqfree"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", opt.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", opt.seed, "Seed for randomized sweeps");

  std::function<Report()> action;

  // count
  auto* count = app.add_subcommand("count", "Exact N(x)");
  std::uint64_t count_x = 0;
  std::string count_method = "sieve";
  count->add_option("x", count_x, "Upper limit")->required()->check(CLI::PositiveNumber);
  count->add_option("--method", count_method, "direct or sieve")->check(CLI::IsMember({"direct", "sieve"}));
  count->callback([&] {
    action = [&] {
      const CountReport r = count_method == "direct" ? count_direct(count_x) : count_sieve(count_x, opt.threads);
      Report rep{"count", {"x", "count", "main", "error"}};
      rep.add({r.x, r.count, num(r.main), num(r.error)});
      return rep;
    };
  });

  // split
  auto* split = app.add_subcommand("split", "Divisor decomposition of N(2x) - N(x)");
  std::uint64_t split_x = 0;
  std::optional<std::uint64_t> split_D;
  split->add_option("x", split_x, "Window (x, 2x]")->required()->check(CLI::PositiveNumber);
  split->add_option("D", split_D, "Cutoff (default floor(sqrt x))")->check(CLI::PositiveNumber);
  split->callback([&] {
    action = [&] {
      const auto s = estermann_split(split_x, split_D);
      Report rep{"split", {"x", "D", "main_sum", "progression_total", "tail_triples", "tail_signed", "exact", "discrepancy"}};
      rep.add({s.x, s.D, num(s.main_sum), s.progression_total, s.tail_triples, s.tail_signed, s.exact, s.discrepancy()});
      return rep;
    };
  });

  // constant
  auto* constant = app.add_subcommand("constant", "Density constant c0 with an error interval");
  std::string const_method = "product";
  std::optional<std::uint64_t> const_cutoff;
  constant->add_option("--method", const_method, "product, series or both")
      ->check(CLI::IsMember({"product", "series", "both"}));
  constant->add_option("--cutoff", const_cutoff, "Prime cutoff P or series cutoff D")->check(CLI::PositiveNumber);
  constant->callback([&] {
    action = [&] {
      Report rep{"constant", {"method", "cutoff", "value", "tail_bound", "lo", "hi"}};
      auto row = [&](const ConstantEstimate& c) {
        rep.add({std::string(to_string(c.method)), c.cutoff, num(c.value), num(c.tail_bound), num(c.lo()), num(c.hi())});
      };
      if (const_method != "series") row(c0_product(const_cutoff.value_or(1'000'000)));
      if (const_method != "product") row(c0_series(const_cutoff.value_or(10'000)));
      return rep;
    };
  });

  // scan
  auto* scan = app.add_subcommand("scan", "N(x) - c0 x over a grid, with the fitted log-log slope");
  std::string scan_grid = "1000:10000000:9";
  scan->add_option("--grid", scan_grid, "lo:hi:points (log-spaced) or a comma list");
  scan->callback([&] {
    action = [&] {
      const auto grid = parse_grid(scan_grid);
      const auto reps = error_scan(grid, opt.threads);
      Report rep{"scan", {"x", "count", "main", "error"}};
      for (const auto& r : reps) rep.add({r.x, r.count, num(r.main), num(r.error)});
      try {
        rep.extra["slope"] = num(static_cast<long double>(fit_exponent(reps)));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateFit) throw;
        rep.extra["slope"] = nullptr;
        rep.extra["slope_note"] = e.what();
      }
      return rep;
    };
  });

  // exponent
  auto* exponent = app.add_subcommand("exponent", "Exponent bound for M(E, F) with E = x^psi");
  std::optional<double> exp_psi;
  bool exp_opt = false, exp_v7 = false;
  auto* psi_opt = exponent->add_option("--psi", exp_psi, "Evaluate at psi in [1/2, 3/4]");
  exponent->add_flag("--optimize", exp_opt, "Maximise over psi")->excludes(psi_opt);
  exponent->add_flag("--v7", exp_v7, "Use the bilinear refinement");
  exponent->callback([&] {
    action = [&] {
      require(exp_psi.has_value() || exp_opt, ErrorCode::InvalidArgument, "exponent: give --psi or --optimize");
      ExponentPoint p;
      if (exp_opt) {
        p = exp_v7 ? exponent_optimum_v7() : exponent_optimum();
      } else {
        p = exp_v7 ? exponent_bound_v7(*exp_psi) : exponent_bound(*exp_psi);
      }
      Report rep{"exponent", {"variant", "psi", "bound"}};
      rep.add({exp_v7 ? "v7" : "base", num(p.psi), num(p.bound)});
      return rep;
    };
  });

  // mef
  auto* mef = app.add_subcommand("mef", "Solutions of e^2 f = n^2 + 1 in (E/2, E] x (F/2, F]");
  std::uint64_t mef_E = 0, mef_F = 0;
  mef->add_option("E", mef_E)->required()->check(CLI::PositiveNumber);
  mef->add_option("F", mef_F)->required()->check(CLI::PositiveNumber);
  mef->callback([&] {
    action = [&] {
      Report rep{"mef", {"e", "f", "n"}};
      for (const auto& t : enumerate_mef({mef_E, mef_F}, opt.threads)) rep.add({num(t.e), num(t.f), num(t.n)});
      rep.extra["total"] = rep.rows.size();
      return rep;
    };
  });

  // pell
  auto* pell = app.add_subcommand("pell", "Solutions of n^2 - f e^2 = -1");
  std::uint64_t pell_f = 0;
  std::string pell_bound = "1000000000";
  pell->add_option("f", pell_f)->required()->check(CLI::PositiveNumber);
  pell->add_option("--bound", pell_bound, "Largest e");
  pell->callback([&] {
    action = [&] {
      Report rep{"pell", {"n", "e"}};
      for (const auto& [n, e] : pell_solutions(pell_f, parse_mpz(pell_bound, "--bound"))) rep.add({num(n), num(e)});
      return rep;
    };
  });

  // decompose
  auto* dec = app.add_subcommand("decompose", "Gaussian decomposition of triples (arguments or stdin)");
  std::vector<std::string> dec_args;
  dec->add_option("triple", dec_args, "e f n; omit to read triples from stdin")->expected(0, 3);
  dec->callback([&] {
    action = [&] {
      std::vector<SolutionTriple> triples;
      if (dec_args.empty()) {
        triples = read_triples(in);
      } else {
        require(dec_args.size() == 3, ErrorCode::InvalidArgument, "decompose: expected e f n");
        triples.push_back({parse_mpz(dec_args[0], "e"), parse_mpz(dec_args[1], "f"), parse_mpz(dec_args[2], "n")});
      }
      Report rep{"decompose", {"e", "f", "n", "x1", "x2", "y1", "y2"}};
      for (const auto& t : triples) {
        const Quadruple q = decompose(t);
        rep.add({num(t.e), num(t.f), num(t.n), num(q.x1), num(q.x2), num(q.y1), num(q.y2)});
      }
      return rep;
    };
  });

  // detcurve
  auto* det = app.add_subcommand("detcurve", "Auxiliary curves through the points of short intervals");
  std::uint64_t det_x = 0, det_E = 0, det_F = 0;
  double det_eta = 0.1;
  unsigned det_L = 3;
  std::optional<std::int64_t> det_x3;
  std::optional<std::uint64_t> det_M;
  det->add_option("x", det_x)->required()->check(CLI::PositiveNumber);
  det->add_option("E", det_E)->required()->check(CLI::PositiveNumber);
  det->add_option("F", det_F)->required()->check(CLI::PositiveNumber);
  det->add_option("--eta", det_eta, "Exponent slack")->check(CLI::PositiveNumber);
  det->add_option("--L", det_L, "Degree in t")->check(CLI::Range(1u, 12u));
  det->add_option("--x3", det_x3, "Single interval (x3/M, (x3+1)/M]; default: every nonempty interval");
  det->add_option("--M", det_M, "Override the interval count M")->check(CLI::PositiveNumber);
  det->callback([&] {
    action = [&] {
      DetConfig cfg = choose_M(det_x, det_E, det_F, det_eta, det_L);
      if (det_M) cfg.M = *det_M;
      const auto triples = enumerate_mef({det_E, det_F}, opt.threads);
      Report rep{"detcurve", {"x3", "M", "J", "K", "L", "coeffs", "max_abs_coeff", "verified"}};
      auto add_curve = [&](const AuxCurve& c) {
        rep.add({c.interval.x3, cfg.M, c.J, cfg.K, cfg.L, curve_json(c), num(c.max_abs_coeff), c.verified});
      };
      if (det_x3) {
        add_curve(auxiliary_curve(triples, cfg, IntervalSpec{*det_x3, cfg.M}));
      } else {
        const auto sweep = auxiliary_sweep(triples, cfg);
        std::map<std::int64_t, std::vector<json>> rows;
        for (const auto& c : sweep.curves) {
          rows[c.interval.x3] = {c.interval.x3, cfg.M, c.J, cfg.K, cfg.L, curve_json(c), num(c.max_abs_coeff), true};
        }
        for (const auto& f : sweep.failures) {
          rows[f.interval.x3] = {f.interval.x3, f.M, f.J, f.K, f.L, json::array(), nullptr, false};
        }
        for (auto& [x3, row] : rows) rep.add(std::move(row));
        rep.extra["nonempty"] = sweep.nonempty;
        rep.extra["success_rate"] = num(static_cast<long double>(sweep.success_rate()));
        rep.extra["max_kappa"] = num(static_cast<long double>(sweep.max_kappa()));
      }
      return rep;
    };
  });

  // lattice
  auto* lat = app.add_subcommand("lattice", "Reduced basis of the interval lattice");
  std::int64_t lat_x3 = 0;
  std::uint64_t lat_M = 1, lat_E = 1, lat_random = 0, lat_max_M = 1'000'000, lat_max_E = 1'000'000'000'000ull;
  lat->add_option("x3", lat_x3);
  lat->add_option("M", lat_M)->check(CLI::PositiveNumber);
  lat->add_option("E", lat_E)->check(CLI::PositiveNumber);
  lat->add_option("--random", lat_random, "Emit N random instances instead");
  lat->add_option("--max-M", lat_max_M, "Largest M for --random")->check(CLI::PositiveNumber);
  lat->add_option("--max-E", lat_max_E, "Largest E for --random")->check(CLI::PositiveNumber);
  lat->callback([&] {
    action = [&] {
      Report rep{"lattice", {"x3", "g1x", "g1y", "g2x", "g2y", "L1", "L2"}};
      auto row = [&](std::int64_t x3, std::uint64_t M, std::uint64_t E, bool with_params) {
        const auto r = interval_lattice(x3, M, static_cast<double>(E)).reduced;
        std::vector<json> cells{x3, r.g1.x, r.g1.y, r.g2.x, r.g2.y, num(r.L1), num(r.L2)};
        if (with_params) {
          cells.push_back(M);
          cells.push_back(E);
        }
        rep.add(std::move(cells));
      };
      if (lat_random > 0) {
        rep.columns.push_back("M");
        rep.columns.push_back("E");
        std::mt19937_64 rng(opt.seed);
        for (std::uint64_t i = 0; i < lat_random; ++i) {
          const std::uint64_t M = 1 + rng() % lat_max_M;
          const auto x3 = static_cast<std::int64_t>(rng() % M);
          const std::uint64_t E = 1 + rng() % lat_max_E;
          row(x3, M, E, true);
        }
      } else {
        require(lat->count("M") > 0 && lat->count("E") > 0, ErrorCode::InvalidArgument,
                "lattice: expected x3 M E (or --random N)");
        row(lat_x3, lat_M, lat_E, false);
      }
      return rep;
    };
  });

  // census
  auto* cen = app.add_subcommand("census", "Intervals grouped by L1 (s-side) or T1 (t-side)");
  std::uint64_t cen_E = 0, cen_M = 0;
  std::optional<std::uint64_t> cen_F;
  bool cen_tside = false;
  std::vector<double> cen_range;
  cen->add_option("E", cen_E)->required()->check(CLI::PositiveNumber);
  cen->add_option("M", cen_M)->required()->check(CLI::PositiveNumber);
  cen->add_flag("--dyadic", "Dyadic buckets (default)");
  auto* tside = cen->add_flag("--t-side", cen_tside, "Census of t3 over the solutions in (E/2, E] x (F/2, F]");
  cen->add_option("--F", cen_F, "F for --t-side")->check(CLI::PositiveNumber);
  cen->add_option("--range", cen_range, "Count x3 with L1 in (lo, hi]")->expected(2)->excludes(tside);
  cen->callback([&] {
    action = [&] {
      Report rep{"census", {"L_lo", "L_hi", "count", "envelope", "ratio"}};
      auto add_buckets = [&](const std::vector<CensusBucket>& bs) {
        for (const auto& b : bs) {
          rep.add({num(static_cast<long double>(b.L_lo)), num(static_cast<long double>(b.L_hi)), b.count,
                   num(static_cast<long double>(b.envelope)),
                   num(static_cast<long double>(b.count / b.envelope))});
        }
      };
      if (!cen_range.empty()) {
        const auto c = census_by_L(cen_E, cen_M, cen_range[0], cen_range[1], opt.threads);
        const double env = static_cast<double>(cen_E) / (cen_range[0] * cen_range[0]);
        rep.add({num(static_cast<long double>(cen_range[0])), num(static_cast<long double>(cen_range[1])), c,
                 num(static_cast<long double>(env)), num(static_cast<long double>(c / env))});
      } else if (cen_tside) {
        require(cen_F.has_value(), ErrorCode::InvalidArgument, "census --t-side requires --F");
        const auto triples = enumerate_mef({cen_E, *cen_F}, opt.threads);
        const auto c = t_side_census(cen_E, *cen_F, cen_M, triples);
        add_buckets(c.buckets);
        rep.extra["intervals"] = c.entries.size();
        rep.extra["max_multiplicity"] = c.max_multiplicity;
        rep.extra["within_cap"] = c.within_cap();
      } else {
        add_buckets(census_dyadic(cen_E, cen_M, opt.threads));
      }
      rep.extra["envelope_constant"] = num(static_cast<long double>(kCensusEnvelope));
      return rep;
    };
  });

  // bihom
  auto* bih = app.add_subcommand("bihom", "Zeros of a bi-homogeneous form with primitive x in [-X, X]^2");
  std::string bih_coeffs;
  unsigned bih_a = 1, bih_b = 1;
  std::uint64_t bih_X = 10;
  bih->add_option("coeffs", bih_coeffs, "Comma list; entry i(b+1)+j multiplies x1^(a-i) x2^i y1^(b-j) y2^j")
      ->required();
  bih->add_option("a", bih_a)->required()->check(CLI::Range(1u, 8u));
  bih->add_option("b", bih_b)->required()->check(CLI::Range(1u, 8u));
  bih->add_option("X", bih_X)->required()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{2000}));
  bih->callback([&] {
    action = [&] {
      std::vector<mpz_class> cs;
      std::istringstream is(bih_coeffs);
      std::string tok;
      while (std::getline(is, tok, ',')) cs.push_back(parse_mpz(tok, "coeffs"));
      const BihomForm g(bih_a, bih_b, std::move(cs));
      const auto c = bihom_count(g, bih_X);
      const double envelope = 20 * std::pow(static_cast<double>(bih_X), 2.0 / bih_b);
      Report rep{"bihom", {"a", "b", "X", "points", "x_vectors", "degenerate_x", "envelope"}};
      rep.add({bih_a, bih_b, bih_X, c.points, c.x_vectors, c.degenerate_x, num(static_cast<long double>(envelope))});
      return rep;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    const Report rep = action();
    rep.emit(out, opt.format);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_validation() ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace sqfree::cli
