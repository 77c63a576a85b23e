#include "subcert/report.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

#include "subcert/version.hpp"

namespace subcert {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ordered_json header(const ReportMeta& meta) {
  ordered_json j;
  j["schema"] = report_schema;
  j["version"] = version_string;
  j["command"] = meta.command;
  j["input"] = meta.input;
  j["digest"] = meta.digest;
  j["seed"] = meta.seed;
  return j;
}

std::string text_header(const ReportMeta& meta) {
  std::ostringstream os;
  os << "subcert " << version_string << " (" << report_schema << ")\n";
  os << "command: " << meta.command << "\n";
  os << "input:   " << meta.input << "\n";
  os << "digest:  " << meta.digest << "\n";
  os << "seed:    " << meta.seed << "\n";
  return os.str();
}

ordered_json vec_json(const Vec& v) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::string vec_text(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < v.size(); ++i) os << (i ? ", " : "") << num(v(i));
  os << ")";
  return os.str();
}

}  // namespace

std::string render_analysis(const AnalysisReport& r, const ReportMeta& meta) {
  if (meta.format == "json") {
    ordered_json j = header(meta);
    j["n"] = r.n;
    j["forms"] = r.num_forms;
    j["hypothesis_ok"] = r.hypothesis.ok;
    if (!r.hypothesis.ok) {
      j["hypothesis_bad_form"] = r.hypothesis.bad_form;
      j["hypothesis_min_eig"] = r.hypothesis.min_eig;
    }
    j["tower_dims"] = r.cert.tower_dims;
    j["fixed_point"] = r.cert.fixed_point;
    if (r.cert.k0) {
      j["k0"] = *r.cert.k0;
      j["delta"] = r.cert.delta.str();
      j["delta_value"] = r.cert.delta.value();
    }
    j["lambda_min"] = r.cert.lambda_min;
    j["satisfied"] = r.cert.satisfied;
    j["sv_gaps"] = r.cert.sv_gaps;
    j["singular_dim"] = r.singular_dim;
    j["elliptic_on_singular_space"] = r.ellipticity.elliptic_on_s;
    j["singular_min_abs"] = r.ellipticity.min_abs;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << text_header(meta);
  os << "n: " << r.n << "  forms: " << r.num_forms << "\n";
  os << "hypothesis (Re q_j >= 0): " << (r.hypothesis.ok ? "ok" : "VIOLATED") << "\n";
  if (!r.hypothesis.ok)
    os << "  form " << r.hypothesis.bad_form << " has min eigenvalue "
       << num(r.hypothesis.min_eig) << "\n";
  os << "kernel tower dims:";
  for (int d : r.cert.tower_dims) os << " " << d;
  os << "\n";
  if (r.cert.k0) {
    os << "k0: " << *r.cert.k0 << "   loss exponent delta: " << r.cert.delta.str()
       << " = " << num(r.cert.delta.value()) << "\n";
  } else {
    os << "k0: not reached (" << (r.cert.fixed_point ? "fixed point" : "kmax hit")
       << ") -- system is not certified subelliptic\n";
  }
  os << "lambda_min(sum G_k): " << num(r.cert.lambda_min)
     << "   certificate: " << (r.cert.satisfied ? "satisfied" : "NOT satisfied") << "\n";
  os << "singular space dim (summed form): " << r.singular_dim << "\n";
  os << "summed form elliptic on singular space: "
     << (r.ellipticity.elliptic_on_s ? "yes" : "no")
     << " (min |q| ~ " << num(r.ellipticity.min_abs) << ", heuristic)\n";
  return os.str();
}

std::string render_verify(const VerifyReport& r, const ReportMeta& meta) {
  if (meta.format == "json") {
    ordered_json j = header(meta);
    j["n"] = r.n;
    j["forms"] = r.num_forms;
    j["k0"] = r.k0;
    j["weight_exponent"] = r.rayleigh.exponent;
    j["guard"] = r.rayleigh.guard;
    ordered_json pts = ordered_json::array();
    for (const auto& p : r.rayleigh.points) {
      ordered_json q;
      q["D"] = p.D;
      q["c"] = p.c;
      q["interior_dim"] = p.interior_dim;
      pts.push_back(std::move(q));
    }
    j["points"] = std::move(pts);
    j["trend"] = r.rayleigh.trend;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << text_header(meta);
  os << "n: " << r.n << "  forms: " << r.num_forms << "  k0: " << r.k0
     << "  weight exponent: " << num(r.rayleigh.exponent) << "\n";
  os << "level   interior_dim   c(D)\n";
  for (const auto& p : r.rayleigh.points) {
    char line[96];
    std::snprintf(line, sizeof(line), "%5d   %12d   %.12g\n", p.D, p.interior_dim, p.c);
    os << line;
  }
  os << "trend: " << r.rayleigh.trend << "\n";
  return os.str();
}

std::string render_weights(const WeightsReport& r, const ReportMeta& meta) {
  const SearchResult& s = r.search;
  if (meta.format == "json") {
    ordered_json j = header(meta);
    j["n"] = r.n;
    j["forms"] = r.num_forms;
    j["m"] = r.m;
    j["success"] = s.success;
    j["samples"] = s.samples_used;
    if (s.success) {
      j["c"] = s.c;
      j["min_margin_ratio"] = s.min_margin_ratio;
      ordered_json consts;
      if (r.m == 1) {
        consts["kappa"] = s.assembly.kappa;
      } else {
        consts["c4"] = s.assembly.c4;
        consts["Lambda"] = s.assembly.Lambda;
        consts["alpha"] = s.assembly.alpha;
        consts["a"] = s.assembly.a_coef;
        consts["c13"] = s.assembly.c13;
        consts["c14"] = s.assembly.c14;
      }
      j["constants"] = std::move(consts);
    } else if (s.failure) {
      ordered_json f;
      f["constant"] = s.failure->constant;
      f["deficit"] = s.failure->deficit;
      f["worst_point"] = vec_json(s.failure->worst_point);
      j["failure"] = std::move(f);
      j["best_margin_ratio"] = s.min_margin_ratio;
    }
    if (!s.note.empty()) j["note"] = s.note;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << text_header(meta);
  os << "n: " << r.n << "  forms: " << r.num_forms << "  level m: " << r.m << "\n";
  if (s.success) {
    os << "weight construction: SUCCESS over " << s.samples_used << " samples\n";
    os << "margin constant c: " << num(s.c) << "\n";
    if (r.m == 1) {
      os << "kappa: " << num(s.assembly.kappa) << "\n";
    } else {
      os << "c4: " << num(s.assembly.c4) << "\n";
      os << "Lambda:";
      for (double v : s.assembly.Lambda) os << " " << num(v);
      os << "\nalpha:";
      for (double v : s.assembly.alpha) os << " " << num(v);
      os << "\na:";
      for (double v : s.assembly.a_coef) os << " " << num(v);
      os << "\nc13: " << num(s.assembly.c13) << "  c14: " << num(s.assembly.c14) << "\n";
    }
  } else {
    os << "weight construction: FAILED over " << s.samples_used << " samples\n";
    if (s.failure) {
      os << "first failing constant: " << s.failure->constant << "\n";
      os << "deficit: " << num(s.failure->deficit) << "\n";
      os << "worst point: " << vec_text(s.failure->worst_point) << "\n";
    }
    os << "best margin ratio: " << num(s.min_margin_ratio) << "\n";
  }
  if (!s.note.empty()) os << "note: " << s.note << "\n";
  return os.str();
}

std::string render_wick(const WickReport& r, const ReportMeta& meta) {
  if (meta.format == "json") {
    ordered_json j = header(meta);
    j["n"] = r.n;
    j["levels"] = r.levels;
    j["quadrature_nodes"] = r.quadrature_nodes;
    j["identity_residual"] = r.identity_residual;
    j["smoothing_correction"] = r.smoothing_correction;
    j["composition_residual"] = r.composition_residual;
    j["transport_residual"] = r.transport_residual;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << text_header(meta);
  os << "n: " << r.n << "  levels: " << r.levels
     << "  quadrature nodes/dim: " << r.quadrature_nodes << "\n";
  os << "identity residual (coherent-state quadrature): " << num(r.identity_residual) << "\n";
  os << "smoothing correction norm (Weyl vs Wick):      " << num(r.smoothing_correction) << "\n";
  os << "composition remainder (interior norm):         " << num(r.composition_residual) << "\n";
  os << "convention transport residual:                 " << num(r.transport_residual) << "\n";
  return os.str();
}

}  // namespace subcert
