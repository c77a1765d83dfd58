#include "rmz/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace rmz {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";  // match nlohmann's convention
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_rec(const ordered_json& j, std::string& out, int indent, int depth) {
  std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case nlohmann::detail::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        out += ordered_json(it.key()).dump();
        out += ": ";
        dump_rec(it.value(), out, indent, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::detail::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_rec(el, out, indent, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::detail::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const ordered_json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  out += "\n";
  return out;
}

ordered_json complex_to_json(Complex z) {
  return ordered_json::array({z.real(), z.imag()});
}

Complex complex_from_json(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ValidationError("expected [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

ordered_json to_json(const PointSet& ps) {
  ordered_json j;
  auto arr = ordered_json::array();
  for (Complex p : ps.points) arr.push_back(complex_to_json(p));
  j["points"] = std::move(arr);
  j["label"] = ps.label;
  return j;
}

PointSet pointset_from_json(const ordered_json& j) {
  if (!j.contains("points")) throw ValidationError("missing 'points'");
  PointSet ps;
  for (const auto& el : j.at("points"))
    ps.points.push_back(complex_from_json(el));
  if (j.contains("label")) ps.label = j.at("label").get<std::string>();
  return ps;
}

ordered_json to_json(const Polynomial& p) {
  ordered_json j;
  auto arr = ordered_json::array();
  for (const Complex& c : p.coeffs()) arr.push_back(complex_to_json(c));
  j["coeffs"] = std::move(arr);
  return j;
}

Polynomial polynomial_from_json(const ordered_json& j) {
  if (!j.contains("coeffs")) throw ValidationError("missing 'coeffs'");
  std::vector<Complex> coeffs;
  for (const auto& el : j.at("coeffs"))
    coeffs.push_back(complex_from_json(el));
  return Polynomial(std::move(coeffs));
}

ordered_json to_json(const BivariatePolynomial& q) {
  ordered_json j;
  j["deg_y"] = q.deg_y();
  auto arr = ordered_json::array();
  for (const auto& t : q.terms()) {
    ordered_json tj;
    tj["ypow"] = t.ypow;
    tj["xpow"] = t.xpow;
    tj["re"] = t.coeff.real();
    tj["im"] = t.coeff.imag();
    arr.push_back(std::move(tj));
  }
  j["terms"] = std::move(arr);
  return j;
}

BivariatePolynomial bivariate_from_json(const ordered_json& j) {
  if (!j.contains("terms")) throw ValidationError("missing 'terms'");
  std::vector<BivariateTerm> terms;
  for (const auto& el : j.at("terms")) {
    BivariateTerm t;
    t.ypow = el.at("ypow").get<int>();
    t.xpow = el.at("xpow").get<int>();
    t.coeff = {el.value("re", 0.0), el.value("im", 0.0)};
    terms.push_back(t);
  }
  auto q = BivariatePolynomial::from_terms(terms);
  if (j.contains("deg_y") && j.at("deg_y").get<int>() != q.deg_y())
    throw ValidationError("declared deg_y does not match the terms");
  return q;
}

ordered_json to_json(const Disk& d) {
  ordered_json j;
  j["center"] = complex_to_json(d.center);
  j["radius"] = d.radius;
  return j;
}

ordered_json to_json(const Covering& c) {
  ordered_json j;
  auto arr = ordered_json::array();
  for (const Disk& d : c.disks) arr.push_back(to_json(d));
  j["disks"] = std::move(arr);
  j["total_radius"] = c.total_radius;
  return j;
}

ordered_json to_json(const InvariantReport& rep) {
  ordered_json j;
  j["d"] = rep.d;
  j["c_d"] = rep.c_d;
  j["c_d_is_exact"] = rep.c_d_is_exact;
  j["rho_d"] = rep.rho_d;
  j["omega_cd"] = rep.omega_cd;
  j["omega_d"] = rep.omega_d;
  j["epsilon0"] = rep.epsilon0;
  j["witness_covering"] = to_json(rep.witness_covering);
  if (rep.mu2)
    j["mu2"] = *rep.mu2;
  else
    j["mu2"] = nullptr;
  return j;
}

ordered_json to_json(const RemezCertificate& cert) {
  ordered_json j;
  j["d"] = cert.d;
  j["c"] = cert.c;
  j["bound"] = cert.bound;
  j["observed_ratio"] = cert.observed_ratio;
  j["witness_poly"] = to_json(cert.witness_poly);
  j["holds"] = cert.holds;
  j["slack"] = cert.slack;
  return j;
}

ordered_json to_json(const std::vector<RemezCertificate>& certs,
                     const HarnessSummary& summary) {
  ordered_json j;
  auto arr = ordered_json::array();
  for (const auto& c : certs) arr.push_back(to_json(c));
  j["certificates"] = std::move(arr);
  ordered_json s;
  s["trials"] = summary.trials;
  s["violations"] = summary.violations;
  s["min_slack"] = summary.min_slack;
  s["mean_slack"] = summary.mean_slack;
  s["tightest_witness"] = to_json(summary.tightest_witness);
  j["summary"] = std::move(s);
  return j;
}

ordered_json to_json(const LeadingCoeffCertificate& cert) {
  ordered_json j;
  j["d"] = cert.d;
  j["c"] = cert.c;
  j["bound"] = cert.bound;
  j["rescaled_leading"] = cert.rescaled_leading;
  j["witness_poly"] = to_json(cert.witness_poly);
  j["holds"] = cert.holds;
  j["slack"] = cert.slack;
  return j;
}

ordered_json to_json(const CartanReport& rep) {
  ordered_json j;
  j["eps"] = rep.eps;
  j["level"] = rep.level;
  j["sample_size"] = rep.sublevel_sample.size();
  j["cd_of_sample"] = rep.cd_of_sample;
  j["cartan_bound"] = rep.cartan_bound;
  j["holds"] = rep.holds;
  return j;
}

ordered_json to_json(const ValenceReport& rep) {
  ordered_json j;
  j["s"] = rep.s;
  j["domain"] = to_json(rep.domain);
  j["trials"] = rep.trials;
  j["max_count"] = rep.max_count;
  j["witness_poly"] = to_json(rep.witness_poly);
  ordered_json hist = ordered_json::object();
  for (const auto& [count, times] : rep.counts_histogram)
    hist[std::to_string(count)] = times;
  j["counts_histogram"] = std::move(hist);
  j["failed_trials"] = rep.failed_trials;
  if (!rep.first_failure.empty()) j["first_failure"] = rep.first_failure;
  return j;
}

ordered_json to_json(const DistortionReport& rep) {
  ordered_json j;
  j["p"] = rep.p;
  j["n_samples"] = rep.n_samples;
  j["normalizing_a"] = complex_to_json(rep.normalizing_a);
  j["min_upper_margin"] = rep.min_upper_margin;
  j["min_lower_margin"] = rep.min_lower_margin;
  j["holds"] = rep.holds;
  return j;
}

ordered_json to_json(const SingularLocus& locus) {
  ordered_json j;
  auto arr = ordered_json::array();
  for (std::size_t i = 0; i < locus.points.size(); ++i) {
    ordered_json p;
    p["point"] = complex_to_json(locus.points[i]);
    switch (locus.sources[i]) {
      case SingularSource::LeadingCoeff:
        p["source"] = "leading_coeff";
        break;
      case SingularSource::Discriminant:
        p["source"] = "discriminant";
        break;
      case SingularSource::Both:
        p["source"] = "both";
        break;
    }
    arr.push_back(std::move(p));
  }
  j["points"] = std::move(arr);
  return j;
}

ordered_json to_json(const BranchGerm& germ) {
  ordered_json j;
  j["base_x"] = complex_to_json(germ.base_x);
  j["y_value"] = complex_to_json(germ.y_value);
  j["branch_id"] = germ.branch_id;
  return j;
}

ordered_json to_json(const MonodromyAction& act) {
  ordered_json j;
  j["basepoint"] = complex_to_json(act.basepoint);
  auto arr = ordered_json::array();
  for (const auto& gen : act.generators) {
    ordered_json g;
    g["singular_point"] = complex_to_json(gen.singular_point);
    g["permutation"] = gen.permutation;
    arr.push_back(std::move(g));
  }
  j["generators"] = std::move(arr);
  j["group_order_estimate"] = act.group_order_estimate;
  j["order_capped"] = act.order_capped;
  return j;
}

ordered_json to_json(const Chain& chain) {
  ordered_json j;
  auto arr = ordered_json::array();
  for (const auto& link : chain.links) {
    ordered_json l;
    l["disk"] = to_json(link.disk);
    l["germ"] = to_json(link.germ);
    l["R1"] = link.inner_radius_R1;
    l["Rp"] = link.inner_radius_Rp;
    arr.push_back(std::move(l));
  }
  j["links"] = std::move(arr);
  j["Z_anchor"] = to_json(chain.Z_anchor);
  j["target_x0"] = complex_to_json(chain.target_x0);
  return j;
}

ordered_json to_json(const ChainConstantReport& rep) {
  ordered_json j;
  j["K_value"] = rep.K_value;
  j["log_K"] = rep.log_K;
  j["per_link_factors"] = rep.per_link_factors;
  auto radii = ordered_json::array();
  for (auto [r1, rp] : rep.chosen_radii)
    radii.push_back(ordered_json::array({r1, rp}));
  j["chosen_radii"] = std::move(radii);
  j["lens_c_values"] = rep.lens_c_values;
  j["kind"] = "upper estimate";
  return j;
}

ordered_json to_json(const CurveRemezCertificate& cert) {
  ordered_json j;
  j["d"] = cert.d;
  j["d1"] = cert.d1;
  j["R"] = cert.R;
  j["R1"] = cert.R1;
  j["Rp"] = cert.Rp;
  j["c"] = cert.c;
  j["bound"] = cert.bound;
  j["observed_ratio"] = cert.observed_ratio;
  j["holds"] = cert.holds;
  j["slack"] = cert.slack;
  return j;
}

ordered_json to_json(const GlobalRemezCertificate& cert) {
  ordered_json j;
  j["d"] = cert.d;
  j["d1"] = cert.d1;
  j["c"] = cert.c;
  j["K"] = cert.K;
  j["log_K"] = cert.log_K;
  j["cartan_factor"] = cert.cartan_factor;
  j["max_on_Z"] = cert.max_on_Z;
  j["g_at_x0"] = cert.g_at_x0;
  j["bound"] = cert.bound;
  j["log_bound"] = cert.log_bound;
  j["holds"] = cert.holds;
  j["slack"] = cert.slack;
  j["log_slack"] = cert.log_slack;
  j["composition_residual"] = cert.composition_residual;
  return j;
}

ordered_json to_json(const AsymptoticsRow& row) {
  ordered_json j;
  j["r"] = row.r;
  j["d"] = row.d;
  j["omega_d"] = row.omega_d;
  j["omega_cd"] = row.omega_cd;
  return j;
}

ordered_json to_json(const SlopeFit& fit) {
  ordered_json j;
  j["r"] = fit.r;
  j["omega_d_slope"] = fit.omega_d_slope;
  j["omega_cd_slope"] = fit.omega_cd_slope;
  return j;
}

}  // namespace rmz
