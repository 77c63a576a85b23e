#include "subcert/singular.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace subcert {

Subspace singular_space(const QuadraticForm& q, double rel_tol) {
  const auto F = hamilton_map(q);
  const Mat ReF = F.re();
  const Mat ImF = F.im();
  const int d = q.dim();
  // Stack Re F (Im F)^j for j = 0..2n-1; the common kernel is the singular space.
  Mat stacked(static_cast<Eigen::Index>(d) * d, d);
  Mat P = Mat::Identity(d, d);
  for (int j = 0; j < d; ++j) {
    stacked.middleRows(static_cast<Eigen::Index>(j) * d, d) = ReF * P;
    P = P * ImF;
  }
  return kernel(stacked, rel_tol);
}

std::vector<int> KernelTower::dims() const {
  std::vector<int> out;
  out.reserve(levels.size());
  for (const auto& s : levels) out.push_back(s.dim());
  return out;
}

KernelTower system_tower(const SystemOfForms& sys, int kmax, double rel_tol) {
  if (sys.size() == 0) throw std::invalid_argument("system_tower: empty system");
  if (kmax < 0) kmax = sys.dim();  // default bound 2n
  const int d = sys.dim();
  const auto ReF = sys.re_hamilton_maps();
  const auto ImF = sys.im_hamilton_maps();

  Mat re_stack(static_cast<Eigen::Index>(ReF.size()) * d, d);
  for (std::size_t j = 0; j < ReF.size(); ++j)
    re_stack.middleRows(static_cast<Eigen::Index>(j) * d, d) = ReF[j];

  KernelTower tower;
  tower.kmax = kmax;
  tower.levels.push_back(kernel(re_stack, rel_tol));
  if (tower.levels.back().dim() == 0) {
    tower.k0 = 0;
    return tower;
  }
  for (int k = 1; k <= kmax; ++k) {
    const Subspace& prev = tower.levels.back();
    const Mat Pc = Mat::Identity(d, d) - prev.projector();
    Mat stacked(re_stack.rows() + static_cast<Eigen::Index>(ImF.size()) * d, d);
    stacked.topRows(re_stack.rows()) = re_stack;
    for (std::size_t l = 0; l < ImF.size(); ++l)
      stacked.middleRows(re_stack.rows() + static_cast<Eigen::Index>(l) * d, d) =
          Pc * ImF[l];
    Subspace next = kernel(stacked, rel_tol);
    const bool same = subspace_distance(next, prev) < 1e-9;
    tower.levels.push_back(std::move(next));
    if (tower.levels.back().dim() == 0) {
      tower.k0 = k;
      return tower;
    }
    if (same) {
      tower.fixed_point = true;
      return tower;
    }
  }
  return tower;
}

LossExponent loss_exponent(int k0) {
  if (k0 < 0) throw std::invalid_argument("loss_exponent: k0 must be >= 0");
  return LossExponent{2 * k0, 2 * k0 + 1};
}

PositivityCheck positive_definiteness_check(const SystemOfForms& sys, int k0,
                                            double rel_tol) {
  const auto G = r_tower(sys, k0);
  Mat S = Mat::Zero(sys.dim(), sys.dim());
  for (const auto& g : G) S += g;
  Eigen::SelfAdjointEigenSolver<Mat> es(S);
  PositivityCheck out;
  out.lambda_min = es.eigenvalues()(0);
  out.trace_scale = std::max(1.0, S.trace() / sys.dim());
  out.positive = out.lambda_min > rel_tol * out.trace_scale;
  return out;
}

Certificate certify(const SystemOfForms& sys, const std::string& system_hash,
                    int kmax, double rel_tol) {
  Certificate cert;
  cert.system_hash = system_hash;
  cert.n = sys.space.n;
  cert.num_forms = sys.size();
  cert.rel_tol = rel_tol;

  const auto tower = system_tower(sys, kmax, rel_tol);
  cert.kmax = tower.kmax;
  cert.tower_dims = tower.dims();
  cert.k0 = tower.k0;
  cert.fixed_point = tower.fixed_point;
  cert.satisfied = tower.k0.has_value();
  cert.delta = loss_exponent(tower.k0.value_or(0));

  const int check_level = tower.k0.value_or(
      static_cast<int>(tower.levels.size()) - 1);
  cert.lambda_min = positive_definiteness_check(sys, check_level).lambda_min;

  // Rank-decision audit: ratio of the smallest kept to the largest dropped
  // singular value at each tower level (large gaps mean stable decisions).
  const int d = sys.dim();
  const auto ReF = sys.re_hamilton_maps();
  const auto ImF = sys.im_hamilton_maps();
  Mat re_stack(static_cast<Eigen::Index>(ReF.size()) * d, d);
  for (std::size_t j = 0; j < ReF.size(); ++j)
    re_stack.middleRows(static_cast<Eigen::Index>(j) * d, d) = ReF[j];
  for (std::size_t lev = 0; lev < tower.levels.size(); ++lev) {
    Mat stacked;
    if (lev == 0) {
      stacked = re_stack;
    } else {
      const Mat Pc = Mat::Identity(d, d) - tower.levels[lev - 1].projector();
      stacked.resize(re_stack.rows() + static_cast<Eigen::Index>(ImF.size()) * d, d);
      stacked.topRows(re_stack.rows()) = re_stack;
      for (std::size_t l = 0; l < ImF.size(); ++l)
        stacked.middleRows(re_stack.rows() + static_cast<Eigen::Index>(l) * d, d) =
            Pc * ImF[l];
    }
    Eigen::JacobiSVD<Mat> svd(stacked);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double cut = rel_tol * smax;
    double kept = -1.0, dropped = -1.0;
    for (int i = 0; i < sv.size(); ++i) {  // singular values are descending
      if (sv(i) > cut)
        kept = sv(i);  // last assignment is the smallest kept
      else if (dropped < 0.0)
        dropped = sv(i);  // first below the cut is the largest dropped
    }
    if (kept < 0.0)
      cert.sv_gaps.push_back(0.0);
    else if (dropped <= 0.0)
      cert.sv_gaps.push_back(std::numeric_limits<double>::infinity());
    else
      cert.sv_gaps.push_back(kept / dropped);
  }
  return cert;
}

PartialEllipticity partial_ellipticity(const QuadraticForm& q,
                                       const Subspace& S,
                                       unsigned long long seed) {
  PartialEllipticity out;
  const int r = S.dim();
  if (r == 0) {
    out.elliptic_on_s = true;
    out.min_abs = std::numeric_limits<double>::infinity();
    out.argmin = Vec::Zero(q.dim());
    out.heuristic = false;
    out.converged = true;
    return out;
  }
  const Mat& B = S.basis;
  auto value = [&](const Vec& c) { return std::abs(q(B * c)); };

  // Dense sphere sampling in coefficient space, then projected descent on
  // |q|^2 from the best few starts.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int num_samples = 10 * q.dim() * q.dim();
  Vec best = Vec::Zero(r);
  best(0) = 1.0;
  double best_val = value(best);
  for (int i = 0; i < r; ++i) {
    Vec c = Vec::Zero(r);
    c(i) = 1.0;
    if (double v = value(c); v < best_val) { best_val = v; best = c; }
  }
  for (int s = 0; s < num_samples; ++s) {
    Vec c(r);
    for (int i = 0; i < r; ++i) c(i) = gauss(rng);
    const double nrm = c.norm();
    if (nrm < 1e-12) continue;
    c /= nrm;
    if (double v = value(c); v < best_val) { best_val = v; best = c; }
  }

  // 50 steps of projected gradient descent on f(c) = |q(Bc)|^2 over the unit
  // sphere, with backtracking.
  const Mat Ar = B.transpose() * q.Q.real() * B;
  const Mat Ai = B.transpose() * q.Q.imag() * B;
  auto fval = [&](const Vec& c) {
    const double qr = c.dot(Ar * c);
    const double qi = c.dot(Ai * c);
    return qr * qr + qi * qi;
  };
  auto grad = [&](const Vec& c) {
    const double qr = c.dot(Ar * c);
    const double qi = c.dot(Ai * c);
    Vec g = 4.0 * (qr * (Ar * c) + qi * (Ai * c));
    return (g - g.dot(c) * c).eval();  // tangent component on the sphere
  };
  Vec c = best;
  double f = fval(c);
  double step = 0.5;
  bool converged = false;
  for (int it = 0; it < 50; ++it) {
    const Vec g = grad(c);
    if (g.norm() < 1e-12 * std::max(1.0, f)) { converged = true; break; }
    Vec cand = c - step * g;
    cand.normalize();
    double fc = fval(cand);
    int bt = 0;
    while (fc > f && bt < 20) {
      step *= 0.5;
      cand = (c - step * g).normalized();
      fc = fval(cand);
      ++bt;
    }
    if (fc >= f) { converged = g.norm() < 1e-8 * std::max(1.0, f); break; }
    c = cand;
    f = fc;
    step *= 1.5;
  }
  if (std::sqrt(f) < best_val) {
    best_val = std::sqrt(f);
    best = c;
  }

  const double scale = std::max(1.0, q.Q.norm());
  out.min_abs = best_val;
  out.argmin = B * best;
  out.converged = converged;
  out.heuristic = true;
  out.elliptic_on_s = best_val > 1e-8 * scale;
  return out;
}

}  // namespace subcert
