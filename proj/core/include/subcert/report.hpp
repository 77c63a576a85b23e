#pragma once

#include <string>

#include "subcert/singular.hpp"
#include "subcert/system_io.hpp"
#include "subcert/verifier.hpp"
#include "subcert/weights.hpp"

namespace subcert {

// Rendering of command results.  Output is deterministic for a fixed input
// and seed: no timestamps or timings are embedded.
struct ReportMeta {
  std::string command;
  std::string input;
  std::string digest;
  unsigned long long seed = 42;
  std::string format = "text";  // "text" or "json"
};

struct AnalysisReport {
  int n = 0;
  int num_forms = 0;
  HypothesisCheck hypothesis;
  Certificate cert;
  int singular_dim = 0;
  PartialEllipticity ellipticity;
};
std::string render_analysis(const AnalysisReport&, const ReportMeta&);

struct VerifyReport {
  int n = 0;
  int num_forms = 0;
  int k0 = 0;
  RayleighReport rayleigh;
};
std::string render_verify(const VerifyReport&, const ReportMeta&);

struct WeightsReport {
  int n = 0;
  int num_forms = 0;
  int m = 1;
  SearchResult search;
};
std::string render_weights(const WeightsReport&, const ReportMeta&);

struct WickReport {
  int n = 0;
  int levels = 6;
  int quadrature_nodes = 0;
  double identity_residual = 0.0;
  double smoothing_correction = 0.0;
  double composition_residual = 0.0;
  double transport_residual = 0.0;
};
std::string render_wick(const WickReport&, const ReportMeta&);

}  // namespace subcert
