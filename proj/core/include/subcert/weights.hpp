#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "subcert/cutoffs.hpp"
#include "subcert/forms.hpp"
#include "subcert/jet.hpp"
#include "subcert/sampling.hpp"

namespace subcert {

// Matrices shared by all weight evaluations for one system, up to tower
// depth m: Gram matrices G_0..G_m, the mixed forms rt[k-1][p] ~ \tilde r_{k,p}
// for k = 1..m, and per-form real/imaginary blocks.
struct WeightContext {
  PhaseSpace space;
  int num_forms = 0;
  int m = 1;
  std::vector<Mat> G;
  std::vector<std::vector<Mat>> rt;
  std::vector<Mat> ImF;
  std::vector<Mat> ReQ;
  Mat ReQsum;
};

WeightContext make_weight_context(const SystemOfForms& sys, int m);

// One level of the recursive weight construction.
//
// m = 1:  g_p = kappa * psi(r_0 <X>^{-2/3}) <X>^{-4/3} rt_{1,p}.
//
// m >= 2: g_p = c13 * [ gtilde_{m,p} + psi0(r_m/|X|^2) w0(|X|) g^inner_p ]
//             + c14 * [ a_0 p_{0,p} + sum_{j>=1} alpha_j a_j p_{j,p} ],
// where p_{j,p} are the layered pieces built from the partition functions
// W0tilde, W_l, Psi_j, and g^inner is the level m-1 weight of the same
// system evaluated inside the region r_m < c4 |X|^2.
struct WeightAssembly {
  std::shared_ptr<WeightContext> ctx;
  CutoffSpec cut;
  int m = 1;

  double kappa = 1.0;  // m = 1 multiplier

  double c4 = 0.0;
  std::vector<double> Lambda;  // Lambda_0..Lambda_{m-2}
  std::vector<double> alpha;   // alpha_1..alpha_{m-2} at [j-1]
  std::vector<double> a_coef;  // a_0..a_{m-1} support-chain constants
  double c13 = 1.0;
  double c14 = 1.0;
  std::shared_ptr<WeightAssembly> inner;

  double c_lower = 0.0;  // achieved margin constant at this level
};

// Exponent e_j = (2m-2j-2)/(2m-2j-1) normalizing the layered pieces.
double layer_exponent(int m, int j);
// Gauge exponent 2/(2m+1) of the margin inequality.
double gauge_exponent(int m);

Jet r_jet(const WeightContext&, int k, const Vec& X);
Jet rtilde_jet(const WeightContext&, int k, int p, const Vec& X);

Jet gtilde_jet(const WeightAssembly&, int p, const Vec& X);
Jet W0tilde_jet(const WeightAssembly&, const Vec& X);
// Psi_j and W_l require the denominators r_{m-j-1} resp. r_{m-l} to be
// positive; the layered evaluators only reach them where the support chain
// guarantees that.
Jet Psi_jet(const WeightAssembly&, int j, const Vec& X);
Jet Wfactor_jet(const WeightAssembly&, int l, const Vec& X);

Jet layered_piece_jet(const WeightAssembly&, int j, int p, const Vec& X);
Jet layered_jet(const WeightAssembly&, int p, const Vec& X);
Jet glued_jet(const WeightAssembly&, int p, const Vec& X);
Jet weight_jet(const WeightAssembly&, int p, const Vec& X);

// Pointwise margin data for 1 + sum_p (Re q_p + H_{Im q_p} g_p) >= c <X>^gauge.
struct MarginSample {
  double re_sum = 0.0;
  double bracket_sum = 0.0;
  double gauge = 1.0;
  double ratio() const { return (1.0 + re_sum + bracket_sum) / gauge; }
};
MarginSample margin_sample(const WeightAssembly&, const Vec& X);

// Decomposition of H_{Im q_p} p_{j,p} by which factor the derivative hits.
struct BracketTerms {
  double B1 = 0.0;              // W0tilde
  double B2 = 0.0;              // Psi_j
  double B3 = 0.0;              // r^{-e_j}
  double B4 = 0.0;              // rt factor
  double B4_good = 0.0;         // nonnegative principal part of B4
  double B4_rem = 0.0;          // B4 - B4_good
  std::vector<double> B5;       // W_l, l = 1..j
  double direct = 0.0;          // one-shot H p_{j,p} for cross-checking
  double total() const;
};
BracketTerms bracket_decomposition(const WeightAssembly&, int j, int p, const Vec& X);

struct SearchOptions {
  SampleRegion region;
  int max_doublings = 20;
  double margin_tol = 1e-9;
  std::function<bool(const Vec&)> restrict_to;  // used by the recursion
};

struct SearchFailure {
  std::string constant;  // first constant that could not be fixed
  Vec worst_point;
  double deficit = 0.0;
};

struct SearchResult {
  bool success = false;
  WeightAssembly assembly;
  double c = 0.0;
  double min_margin_ratio = 0.0;
  std::optional<SearchFailure> failure;
  int samples_used = 0;
  std::string note;
};

// Fix all constants of the level-m weight by doubling searches validated on
// the sample grid; the returned assembly satisfies the margin inequality on
// every sample when success is true.
SearchResult construct_weight(const SystemOfForms& sys, int m,
                              const SearchOptions& opts = {});

// --- sampled checks of the structural lemmas behind the construction ---

struct LemmaRequest {
  std::string lemma;  // pairing-bound | gradient-bound | layer-linf |
                      // layer-bracket | power-bracket | outer-gate
  int m = 1;
  int j = 0;
  std::vector<double> lambdas = {1.0, 4.0, 16.0};
  SampleRegion region;
};

struct LemmaFit {
  double lambda = 0.0;
  double fitted = 0.0;
  int samples_used = 0;
  Vec worst_point;
};

struct LemmaReport {
  std::string lemma;
  bool ok = false;
  std::string note;
  std::vector<LemmaFit> fits;
  std::vector<double> ratios;  // fitted(lambda_{i+1}) / fitted(lambda_i)
};

LemmaReport lemma_sampler(const SystemOfForms& sys, const LemmaRequest& req);

}  // namespace subcert
