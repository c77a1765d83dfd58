// rmz: covering invariants of planar sets, Remez-type bounds, and their
// randomized certification harnesses, including restrictions of polynomials
// to algebraic curves.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rmz/json_io.hpp"
#include "rmz/rng.hpp"
#include "rmz/version.hpp"

namespace {

using namespace rmz;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RMZ_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw ValidationError("RMZ_SEED must be an unsigned integer");
    }
  }
  return 0;
}

ordered_json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("malformed JSON in " + path + ": " + e.what());
  }
}

std::string timestamp_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void emit(const std::string& command, const std::vector<std::string>& inputs,
          std::uint64_t seed, const std::string& out_path,
          const ordered_json& result,
          const std::vector<std::string>& extra_outputs = {}) {
  std::string text = dump_json(result);
  std::fputs(text.c_str(), stdout);
  if (out_path.empty()) return;
  {
    std::ofstream out(out_path);
    if (!out) throw ValidationError("cannot write: " + out_path);
    out << text;
  }
  ordered_json manifest;
  manifest["command"] = command;
  manifest["inputs"] = inputs;
  manifest["seed"] = seed;
  manifest["tool_version"] = kVersion;
  manifest["timestamp"] = timestamp_utc();
  std::vector<std::string> outputs{out_path};
  outputs.insert(outputs.end(), extra_outputs.begin(), extra_outputs.end());
  manifest["outputs"] = outputs;
  std::string manifest_path = out_path + ".manifest.json";
  std::ofstream mf(manifest_path);
  if (!mf) throw ValidationError("cannot write: " + manifest_path);
  mf << dump_json(manifest);
}

Complex parse_complex(const std::string& s) {
  std::istringstream is(s);
  double re = 0, im = 0;
  char comma = 0;
  if (!(is >> re)) throw ValidationError("expected 're,im': " + s);
  if (is >> comma && comma == ',') is >> im;
  return {re, im};
}

Disk parse_disk(const std::string& s) {
  double cx = 0, cy = 0, r = 0;
  char c1 = 0, c2 = 0;
  std::istringstream is(s);
  if (!(is >> cx >> c1 >> cy >> c2 >> r) || c1 != ',' || c2 != ',')
    throw ValidationError("expected 'cx,cy,r': " + s);
  return Disk{{cx, cy}, r};
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw ValidationError("empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw ValidationError("empty list");
  return out;
}

// "a..b" -> doubling sequence a, 2a, 4a, ... capped at b.
std::vector<int> parse_d_range(const std::string& s) {
  auto pos = s.find("..");
  if (pos == std::string::npos)
    throw ValidationError("expected 'a..b' for --d-range");
  int a = std::stoi(s.substr(0, pos));
  int b = std::stoi(s.substr(pos + 2));
  if (a < 4 || b > 512 || a > b)
    throw ValidationError("--d-range must satisfy 4 <= a <= b <= 512");
  std::vector<int> ds;
  for (int d = a; d <= b; d *= 2) ds.push_back(d);
  if (ds.size() < 2)
    throw ValidationError("d-range too short: need at least two d values");
  return ds;
}

int run(int argc, char** argv) {
  CLI::App app{"covering invariants and Remez-type bound certification"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  std::uint64_t seed = default_seed();
  app.add_option("--out", out_path, "write results (and a manifest) here");
  app.add_option("--seed", seed, "RNG seed (default: RMZ_SEED or 0)");

  // invariants
  auto* inv = app.add_subcommand("invariants",
                                 "covering invariants of a point set");
  std::string inv_file;
  int inv_d = 1;
  std::string inv_mode = "exact";
  double inv_mu2 = -1.0;
  inv->add_option("pointset", inv_file, "PointSet JSON file")->required();
  inv->add_option("--d", inv_d, "number of covering disks")->required();
  inv->add_option("--mode", inv_mode, "exact|heuristic")
      ->check(CLI::IsMember({"exact", "heuristic"}));
  inv->add_option("--mu2", inv_mu2, "area for the measure lower bound");

  // remez-verify
  auto* rv = app.add_subcommand("remez-verify",
                                "random-polynomial certification of the "
                                "complex polynomial bound");
  std::string rv_file;
  int rv_d = 1, rv_trials = 100;
  bool rv_leading = false;
  rv->add_option("pointset", rv_file, "PointSet JSON file")->required();
  rv->add_option("--d", rv_d, "polynomial degree")->required();
  rv->add_option("--trials", rv_trials, "number of random polynomials");
  rv->add_flag("--leading", rv_leading,
               "check the leading-coefficient bound instead");

  // cartan
  auto* ca = app.add_subcommand("cartan", "sublevel-set covering check");
  std::string ca_file, ca_eps = "0.1", ca_csv;
  int ca_samples = 2000;
  ca->add_option("poly", ca_file, "Polynomial JSON file (monic)")->required();
  ca->add_option("--eps", ca_eps, "comma-separated eps values");
  ca->add_option("--samples", ca_samples, "sublevel sample size");
  ca->add_option("--csv", ca_csv, "write (eps, c_d_sample, bound) rows here");

  // valence
  auto* va = app.add_subcommand("valence", "empirical (s,p)-valence probe");
  std::string va_function = "power-sum", va_poly, va_curve, va_polyxy,
              va_disk = "0,0,1", va_base = "1,0", va_inject;
  int va_p = 2, va_N = 21, va_s = 1, va_trials = 200, va_branch = 0;
  va->add_option("--function", va_function, "power-sum|poly|curve-branch")
      ->check(CLI::IsMember({"power-sum", "poly", "curve-branch"}));
  va->add_option("--p", va_p, "power-sum p");
  va->add_option("--N", va_N, "power-sum N");
  va->add_option("--poly", va_poly, "Polynomial JSON (for --function poly)");
  va->add_option("--curve", va_curve, "curve JSON (for curve-branch)");
  va->add_option("--poly-xy", va_polyxy, "bivariate JSON (for curve-branch)");
  va->add_option("--base", va_base, "branch base point 're,im'");
  va->add_option("--branch", va_branch, "branch index at the base point");
  va->add_option("--disk", va_disk, "domain disk 'cx,cy,r'");
  va->add_option("--s", va_s, "competitor degree budget");
  va->add_option("--trials", va_trials, "number of random competitors");
  va->add_option("--inject", va_inject,
                 "also count against this explicit polynomial (JSON)");

  // curve
  auto* cu = app.add_subcommand("curve", "algebraic curve analysis");
  std::string cu_file, cu_action, cu_basepoint = "";
  cu->add_option("curve", cu_file, "bivariate JSON file")->required();
  cu->add_option("action", cu_action, "analyze|fiber|monodromy")
      ->required()
      ->check(CLI::IsMember({"analyze", "fiber", "monodromy"}));
  cu->add_option("--basepoint", cu_basepoint, "'re,im'");

  // chain
  auto* ch = app.add_subcommand("chain",
                                "chain constant estimation / certification");
  std::string ch_file, ch_action, ch_polyxy;
  int ch_trials = 10;
  ch->add_option("config", ch_file, "configuration JSON file")->required();
  ch->add_option("action", ch_action, "estimate|verify")
      ->required()
      ->check(CLI::IsMember({"estimate", "verify"}));
  ch->add_option("--poly-xy", ch_polyxy,
                 "bivariate polynomial JSON (verify with this P)");
  ch->add_option("--trials", ch_trials,
                 "random P trials when --poly-xy is absent");

  // asymptotics
  auto* as = app.add_subcommand("asymptotics",
                                "Z_r covering invariants and slope fits");
  std::string as_r = "1,2", as_drange = "8..128", as_csv;
  as->add_option("--r", as_r, "comma-separated r values (>= 1)");
  as->add_option("--d-range", as_drange, "'a..b', doubling d values");
  as->add_option("--csv", as_csv, "write (r, d, omega_d, omega_cd) here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (inv->parsed()) {
    auto ps = pointset_from_json(load_json(inv_file));
    CdMode mode = inv_mode == "exact" ? CdMode::Exact : CdMode::Heuristic;
    std::optional<double> mu2;
    if (inv_mu2 >= 0.0) mu2 = inv_mu2;
    auto rep = invariant_report(ps, inv_d, mode, seed, mu2);
    ordered_json result = to_json(rep);
    if (mu2) result["measure_lower_bound"] = measure_lower_bound(*mu2);
    emit("invariants", {inv_file}, seed, out_path, result);
    return 0;
  }

  if (rv->parsed()) {
    auto ps = pointset_from_json(load_json(rv_file));
    ordered_json result;
    if (rv_leading) {
      auto certs = verify_leading_coeff(ps, rv_d, rv_trials, seed);
      auto arr = ordered_json::array();
      int violations = 0;
      for (const auto& c : certs) {
        if (!c.holds) ++violations;
        arr.push_back(to_json(c));
      }
      result["certificates"] = std::move(arr);
      result["violations"] = violations;
    } else {
      auto certs = verify_polynomial_remez(ps, rv_d, rv_trials, seed);
      result = to_json(certs, summarize(certs));
    }
    emit("remez-verify", {rv_file}, seed, out_path, result);
    return 0;
  }

  if (ca->parsed()) {
    auto poly = polynomial_from_json(load_json(ca_file));
    auto eps_list = parse_double_list(ca_eps);
    auto arr = ordered_json::array();
    std::string csv = "eps,c_d_sample,cartan_bound\n";
    for (double eps : eps_list) {
      auto rep = verify_cartan(poly, eps, ca_samples, seed);
      arr.push_back(to_json(rep));
      char line[128];
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", rep.eps,
                    rep.cd_of_sample, rep.cartan_bound);
      csv += line;
    }
    ordered_json result;
    result["reports"] = std::move(arr);
    std::vector<std::string> extra;
    if (!ca_csv.empty()) {
      std::ofstream out(ca_csv);
      if (!out) throw ValidationError("cannot write: " + ca_csv);
      out << csv;
      extra.push_back(ca_csv);
    }
    emit("cartan", {ca_file}, seed, out_path, result, extra);
    return 0;
  }

  if (va->parsed()) {
    std::shared_ptr<AnalyticMap> f;
    std::vector<std::string> inputs;
    if (va_function == "power-sum") {
      f = power_sum_example(va_p, va_N);
    } else if (va_function == "poly") {
      if (va_poly.empty()) throw ValidationError("--poly required");
      inputs.push_back(va_poly);
      f = std::make_shared<PolynomialMap>(
          polynomial_from_json(load_json(va_poly)), parse_disk(va_disk));
    } else {
      if (va_curve.empty() || va_polyxy.empty())
        throw ValidationError("--curve and --poly-xy required");
      inputs.push_back(va_curve);
      inputs.push_back(va_polyxy);
      auto curve = std::make_shared<Curve>(
          bivariate_from_json(load_json(va_curve)));
      auto germ = curve->germ_at(parse_complex(va_base), va_branch);
      f = branch_restriction(curve, germ,
                             bivariate_from_json(load_json(va_polyxy)),
                             parse_disk(va_disk));
    }
    auto rep = probe_valence(*f, f->domain(), va_s, va_trials, seed);
    ordered_json result = to_json(rep);
    result["function"] = f->description();
    if (!va_inject.empty()) {
      inputs.push_back(va_inject);
      auto witness = polynomial_from_json(load_json(va_inject));
      result["injected_count"] = count_against(*f, witness);
    }
    emit("valence", inputs, seed, out_path, result);
    return 0;
  }

  if (cu->parsed()) {
    Curve curve(bivariate_from_json(load_json(cu_file)));
    ordered_json result;
    if (cu_action == "analyze") {
      result["deg_y"] = curve.degree();
      result["singular_locus"] = to_json(curve.singular_locus());
      long d = curve.degree();
      result["singular_count_bound"] = 2 * d * d;
      result["discriminant"] = to_json(curve.discriminant());
    } else {
      if (cu_basepoint.empty())
        throw ValidationError("--basepoint required for " + cu_action);
      Complex x0 = parse_complex(cu_basepoint);
      if (cu_action == "fiber") {
        auto f = curve.fiber(x0);
        auto arr = ordered_json::array();
        for (Complex y : f) arr.push_back(complex_to_json(y));
        result["basepoint"] = complex_to_json(x0);
        result["fiber"] = std::move(arr);
      } else {
        result = to_json(curve.monodromy(x0));
      }
    }
    emit("curve", {cu_file}, seed, out_path, result);
    return 0;
  }

  if (ch->parsed()) {
    auto cfg_json = load_json(ch_file);
    auto curve = std::make_shared<Curve>(
        bivariate_from_json(cfg_json.at("curve")));
    auto cfg = make_configuration(
        curve, cfg_json.at("d1").get<int>(),
        pointset_from_json(cfg_json.at("Z")),
        complex_from_json(cfg_json.at("x0")),
        cfg_json.at("hat_branch").get<int>(),
        cfg_json.at("bar_branch").get<int>());
    auto res = search_chain(cfg, seed);
    ordered_json result;
    result["chain"] = to_json(res.chain);
    result["chain_constant"] = to_json(res.report);
    if (ch_action == "verify") {
      auto arr = ordered_json::array();
      int violations = 0;
      if (!ch_polyxy.empty()) {
        auto P = bivariate_from_json(load_json(ch_polyxy));
        auto cert = verify_global_remez(cfg, P, res.chain, seed);
        if (!cert.holds) ++violations;
        arr.push_back(to_json(cert));
      } else {
        for (int t = 0; t < ch_trials; ++t) {
          auto rng = substream(seed, t, 0xc11u);
          std::vector<BivariateTerm> terms;
          for (int i = 0; i <= cfg.poly_degree_d1; ++i)
            for (int j = 0; i + j <= cfg.poly_degree_d1; ++j)
              terms.push_back({i, j, complex_gaussian(rng)});
          auto P = BivariatePolynomial::from_terms(terms);
          auto cert = verify_global_remez(cfg, P, res.chain, seed + t);
          if (!cert.holds) ++violations;
          arr.push_back(to_json(cert));
        }
      }
      result["certificates"] = std::move(arr);
      result["violations"] = violations;
    }
    std::vector<std::string> inputs{ch_file};
    if (!ch_polyxy.empty()) inputs.push_back(ch_polyxy);
    emit("chain", inputs, seed, out_path, result);
    return 0;
  }

  if (as->parsed()) {
    auto rs = parse_int_list(as_r);
    for (int r : rs)
      if (r < 1) throw ValidationError("r must be >= 1");
    auto ds = parse_d_range(as_drange);
    auto rows = zr_table(rs, ds);
    auto fits = fit_slopes(rows);
    ordered_json result;
    auto arr = ordered_json::array();
    std::string csv = "r,d,omega_d,omega_cd\n";
    for (const auto& row : rows) {
      arr.push_back(to_json(row));
      char line[160];
      std::snprintf(line, sizeof line, "%d,%d,%.17g,%.17g\n", row.r, row.d,
                    row.omega_d, row.omega_cd);
      csv += line;
    }
    result["rows"] = std::move(arr);
    auto farr = ordered_json::array();
    for (const auto& fit : fits) farr.push_back(to_json(fit));
    result["slopes"] = std::move(farr);
    std::vector<std::string> extra;
    if (!as_csv.empty()) {
      std::ofstream out(as_csv);
      if (!out) throw ValidationError("cannot write: " + as_csv);
      out << csv;
      extra.push_back(as_csv);
    }
    emit("asymptotics", {}, seed, out_path, result, extra);
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const rmz::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const rmz::ComputationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
