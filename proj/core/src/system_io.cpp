#include "subcert/system_io.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

namespace subcert {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

int parse_variable(const std::string& tok, int n, const std::string& where) {
  std::string t;
  for (char c : tok)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  bool momentum = false;
  std::size_t pos = 0;
  if (t.rfind("xi", 0) == 0) {
    momentum = true;
    pos = 2;
  } else if (t.rfind("x", 0) == 0) {
    pos = 1;
  } else {
    throw std::runtime_error(where + ": unknown variable '" + tok + "'");
  }
  if (pos >= t.size()) throw std::runtime_error(where + ": missing index in '" + tok + "'");
  int idx = 0;
  for (; pos < t.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(t[pos])))
      throw std::runtime_error(where + ": bad variable '" + tok + "'");
    idx = idx * 10 + (t[pos] - '0');
  }
  if (idx < 1 || idx > n)
    throw std::runtime_error(where + ": variable index out of range in '" + tok + "'");
  return momentum ? n + idx - 1 : idx - 1;
}

std::pair<int, int> parse_monomial(const std::string& mono, int n,
                                   const std::string& where) {
  const auto star = mono.find('*');
  if (star == std::string::npos || mono.find('*', star + 1) != std::string::npos)
    throw std::runtime_error(where + ": monomial must be 'v*w', got '" + mono + "'");
  int a = parse_variable(mono.substr(0, star), n, where);
  int b = parse_variable(mono.substr(star + 1), n, where);
  if (a > b) std::swap(a, b);
  return {a, b};
}

std::string variable_name(int idx, int n) {
  if (idx < n) return "x" + std::to_string(idx + 1);
  return "xi" + std::to_string(idx - n + 1);
}

// Trim trailing zeros from default double formatting for stable emission.
json number(double v) { return json(v); }

}  // namespace

SystemOfForms parse_system_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("json parse error: ") + e.what());
  }
  if (!root.is_object()) throw std::runtime_error("top level must be an object");
  if (!root.contains("n") || !root["n"].is_number_integer())
    throw std::runtime_error("missing integer field 'n'");
  const int n = root["n"].get<int>();
  if (n < 1 || n > 64) throw std::runtime_error("'n' out of range [1,64]");
  if (!root.contains("forms") || !root["forms"].is_array() || root["forms"].empty())
    throw std::runtime_error("missing non-empty array 'forms'");

  SystemOfForms sys{PhaseSpace{n}};
  const int d = 2 * n;
  int fi = 0;
  for (const auto& f : root["forms"]) {
    const std::string fwhere = "forms[" + std::to_string(fi) + "]";
    if (!f.is_object()) throw std::runtime_error(fwhere + ": must be an object");
    std::string name = "q" + std::to_string(fi + 1);
    if (f.contains("name")) {
      if (!f["name"].is_string()) throw std::runtime_error(fwhere + ".name: must be a string");
      name = f["name"].get<std::string>();
    }
    if (!f.contains("terms") || !f["terms"].is_array())
      throw std::runtime_error(fwhere + ": missing array 'terms'");
    CMat Q = CMat::Zero(d, d);
    int ti = 0;
    for (const auto& t : f["terms"]) {
      const std::string twhere = fwhere + ".terms[" + std::to_string(ti) + "]";
      if (!t.is_object() || !t.contains("mono") || !t["mono"].is_string())
        throw std::runtime_error(twhere + ": needs a string field 'mono'");
      double re = 0.0, im = 0.0;
      if (t.contains("re")) {
        if (!t["re"].is_number()) throw std::runtime_error(twhere + ".re: must be a number");
        re = t["re"].get<double>();
      }
      if (t.contains("im")) {
        if (!t["im"].is_number()) throw std::runtime_error(twhere + ".im: must be a number");
        im = t["im"].get<double>();
      }
      auto [a, b] = parse_monomial(t["mono"].get<std::string>(), n, twhere);
      const std::complex<double> c{re, im};
      if (a == b) {
        Q(a, a) += c;
      } else {
        Q(a, b) += 0.5 * c;
        Q(b, a) += 0.5 * c;
      }
      ++ti;
    }
    sys.push(QuadraticForm(sys.space, Q), name);
    ++fi;
  }
  return sys;
}

SystemOfForms load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open system file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system_json(buf.str());
}

std::string emit_system_json(const SystemOfForms& sys) {
  const int n = sys.space.n;
  const int d = 2 * n;
  ordered_json root;
  root["n"] = n;
  root["forms"] = ordered_json::array();
  for (int f = 0; f < sys.size(); ++f) {
    ordered_json jf;
    jf["name"] = f < (int)sys.names.size() && !sys.names[f].empty()
                     ? sys.names[f]
                     : "q" + std::to_string(f + 1);
    ordered_json terms = ordered_json::array();
    const CMat& Q = sys.forms[f].Q;
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) {
        const std::complex<double> c = (a == b) ? Q(a, a) : 2.0 * Q(a, b);
        if (c == std::complex<double>(0.0, 0.0)) continue;
        ordered_json t;
        t["mono"] = variable_name(a, n) + "*" + variable_name(b, n);
        t["re"] = number(c.real());
        t["im"] = number(c.imag());
        terms.push_back(std::move(t));
      }
    jf["terms"] = std::move(terms);
    root["forms"].push_back(std::move(jf));
  }
  return root.dump(2) + "\n";
}

std::string system_digest(const SystemOfForms& sys) {
  const std::string s = emit_system_json(sys);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

HypothesisCheck check_nonnegative_real_parts(const SystemOfForms& sys, double tol) {
  HypothesisCheck out;
  for (int f = 0; f < sys.size(); ++f) {
    const Mat R = sys.forms[f].re();
    Eigen::SelfAdjointEigenSolver<Mat> es(R, Eigen::EigenvaluesOnly);
    const double mn = es.eigenvalues().minCoeff();
    const double scale = std::max(1.0, R.cwiseAbs().maxCoeff());
    if (mn < -tol * scale) {
      out.ok = false;
      out.bad_form = f;
      out.min_eig = mn;
      return out;
    }
  }
  return out;
}

namespace {

SystemOfForms example_family(int n, const std::vector<double>& lambda,
                             bool momentum) {
  if (n < 2) throw std::invalid_argument("example system needs n >= 2");
  if (!lambda.empty() && (int)lambda.size() != n - 1)
    throw std::invalid_argument("need n-1 weights");
  SystemOfForms sys{PhaseSpace{n}};
  const int d = 2 * n;
  for (int j = 1; j <= n - 1; ++j) {
    CMat Q = CMat::Zero(d, d);
    Q(0, 0) = 1.0;                             // x1^2
    Q(n, n) = std::complex<double>(1.0, 1.0);  // xi1^2 + i xi1^2
    const int coupled = momentum ? n + j : j;  // i v_{j+1} xi1
    Q(coupled, n) += std::complex<double>(0.0, 0.5);
    Q(n, coupled) += std::complex<double>(0.0, 0.5);
    const double w = lambda.empty() ? 1.0 : lambda[j - 1];
    sys.push(QuadraticForm(sys.space, w * Q),
             (momentum ? "qt" : "q") + std::to_string(j));
  }
  return sys;
}

}  // namespace

SystemOfForms example_family_position(int n, const std::vector<double>& lambda) {
  return example_family(n, lambda, false);
}

SystemOfForms example_family_momentum(int n, const std::vector<double>& lambda) {
  return example_family(n, lambda, true);
}

SystemOfForms example_system(int n, const std::vector<double>& lambda,
                             const std::vector<double>& lambda_tilde) {
  SystemOfForms sys = example_family(n, lambda, false);
  SystemOfForms mom = example_family(n, lambda_tilde, true);
  for (int j = 0; j < mom.size(); ++j) sys.push(mom.forms[j], mom.names[j]);
  return sys;
}

SystemOfForms deep_tower_system(int k0) {
  SystemOfForms sys{PhaseSpace{2}};
  CMat Q = CMat::Zero(4, 4);
  if (k0 == 2) {
    // x1^2 + xi1^2 + i (x2 xi1 + xi2^2)
    Q(0, 0) = 1.0;
    Q(2, 2) = 1.0;
    Q(1, 2) = Q(2, 1) = std::complex<double>(0.0, 0.5);
    Q(3, 3) = std::complex<double>(0.0, 1.0);
  } else if (k0 == 3) {
    // xi1^2 + i (x1 xi2 + x2^2)
    Q(2, 2) = 1.0;
    Q(0, 3) = Q(3, 0) = std::complex<double>(0.0, 0.5);
    Q(1, 1) = std::complex<double>(0.0, 1.0);
  } else {
    throw std::invalid_argument("deep_tower_system supports k0 = 2 or 3");
  }
  sys.push(QuadraticForm(sys.space, Q), "q");
  return sys;
}

}  // namespace subcert
