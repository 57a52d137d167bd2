#pragma once

// Projection-and-rescaling solvers.
//
//   partial_support   one run with rescaling and trimming against a guess σ
//   max_support       σ-halving driver over the pair (L, L^⊥)
//   full_support      rescaling without trimming; needs L ∩ R^n_{++} ≠ ∅
//   full_support_pair full_support on L and L^⊥ in lockstep
//
// Every run restarts from D = I and recomputes the projection onto
// (D L) ∩ R^J from the original basis after each rescaling or trim.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "maxsupp/basic_procedure.hpp"
#include "maxsupp/bounds.hpp"
#include "maxsupp/linalg.hpp"

namespace maxsupp {

inline constexpr double kMembershipTol = 1e-8;
inline constexpr int kMaxHalvings = 60;
inline constexpr long kFullSupportRescalesPerCoordinate = 60;

struct SolveStats {
  long rescale_count = 0;
  long bp_calls = 0;
  long bp_iterations_total = 0;
  /// Rough count of floating-point operations (projections + refactorizations).
  double arithmetic_ops = 0.0;

  SolveStats& operator+=(const SolveStats& o) {
    rescale_count += o.rescale_count;
    bp_calls += o.bp_calls;
    bp_iterations_total += o.bp_iterations_total;
    arithmetic_ops += o.arithmetic_ops;
    return *this;
  }
};

struct SupportCertificate {
  Vector x;          // length n; x_J > 0, hard zeros elsewhere
  IndexSet support;  // J
  SolveStats stats;
  RescalingState scaling;  // final D
};

// ---------------------------------------------------------------------------
// Certificate audit
// ---------------------------------------------------------------------------

struct CertificateReport {
  bool dimensions = true;
  bool membership = true;
  bool nonnegativity = true;
  bool hard_zeros = true;
  bool positivity = true;
  double residual = 0.0;  // ||x − P_L x||_inf

  bool passed() const { return dimensions && membership && nonnegativity && hard_zeros && positivity; }

  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    if (!dimensions) out.emplace_back("dimensions");
    if (!membership) out.emplace_back("membership");
    if (!nonnegativity) out.emplace_back("nonnegativity");
    if (!hard_zeros) out.emplace_back("hard-zeros");
    if (!positivity) out.emplace_back("positivity");
    return out;
  }
};

/// Checks a certificate against L without trusting the solver that made it.
inline CertificateReport verify_certificate(const Subspace& L, const Vector& x, const IndexSet& J,
                                            double tol = kMembershipTol) {
  CertificateReport r;
  const Index n = L.ambient_dim();
  if (x.size() != n || J.ambient_dim() != n || !x.allFinite()) {
    r.dimensions = false;
    r.membership = r.nonnegativity = r.hard_zeros = r.positivity = false;
    return r;
  }
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  r.residual = (x - L.project(x)).cwiseAbs().maxCoeff();
  r.membership = r.residual <= tol * scale;
  r.nonnegativity = (x.array() >= 0.0).all();
  for (Index i = 0; i < n; ++i) {
    if (J.contains(i)) {
      if (!(x(i) > 0.0)) r.positivity = false;
    } else if (x(i) != 0.0) {
      r.hard_zeros = false;
    }
  }
  return r;
}

inline CertificateReport verify_certificate(const Subspace& L, const SupportCertificate& cert,
                                            double tol = kMembershipTol) {
  return verify_certificate(L, cert.x, cert.support, tol);
}

// ---------------------------------------------------------------------------
// One rescaling run (partial or full support), steppable
// ---------------------------------------------------------------------------

enum class StepKind { Positive, Rescaled, Trimmed, Emptied };

struct StepEvent {
  StepKind kind;
  Index pivot = -1;  // set for Rescaled / Trimmed / Emptied
  Index bp_iterations = 0;
};

/// State machine for one partial-support run (with trimming) or one
/// full-support run (without). Each step() makes exactly one basic-procedure
/// call followed by either termination or one rescaling.
class RescalingRun {
 public:
  /// `trim_exponent`: trim index i once e_i reaches this value; nullopt
  /// disables trimming.
  RescalingRun(Subspace L, std::optional<long> trim_exponent)
      : L_(std::move(L)),
        support_(IndexSet::full(L_.ambient_dim())),
        scaling_(L_.ambient_dim()),
        trim_exponent_(trim_exponent) {}

  bool done() const noexcept { return done_; }
  const Subspace& subspace() const noexcept { return L_; }
  const IndexSet& support() const noexcept { return support_; }
  const RescalingState& scaling() const noexcept { return scaling_; }
  const SolveStats& stats() const noexcept { return stats_; }
  std::optional<long> trim_exponent() const noexcept { return trim_exponent_; }

  /// (D L) ∩ R^J for the current D and J.
  Subspace working_subspace() const { return restrict_to_coordinates(rescale(L_, scaling_), support_); }

  StepEvent step() {
    if (done_) throw InvalidArgument("RescalingRun: step() after termination");
    const Index n = L_.ambient_dim();
    const Subspace M = working_subspace();
    const Projector P(M, support_);
    const BasicProcedureOutcome out = smooth_perceptron(P);

    const double m = static_cast<double>(support_.size());
    const double r = static_cast<double>(M.dim());
    ++stats_.bp_calls;
    stats_.bp_iterations_total += out.iterations;
    stats_.arithmetic_ops += static_cast<double>(out.iterations + 1) * (8.0 * m * r + 12.0 * m) +
                             4.0 * static_cast<double>(n) * r * r;

    if (out.is_positive()) {
      const Vector& image = out.positive().image;
      x_ = Vector::Zero(n);
      for (Index i : support_) x_(i) = image(i) / scaling_.factor(i);
      done_ = true;
      return {StepKind::Positive, -1, out.iterations};
    }

    const Index i = out.rescale().pivot;
    scaling_.double_entry(i);
    ++stats_.rescale_count;
    if (trim_exponent_ && scaling_.exponent(i) >= *trim_exponent_) {
      support_ = support_.without(i);
      if (support_.empty()) {
        x_ = Vector::Zero(n);
        done_ = true;
        return {StepKind::Emptied, i, out.iterations};
      }
      return {StepKind::Trimmed, i, out.iterations};
    }
    return {StepKind::Rescaled, i, out.iterations};
  }

  /// The certificate, re-verified against L. Only valid once done().
  SupportCertificate certificate() const {
    if (!done_) throw InvalidArgument("RescalingRun: certificate requested before termination");
    SupportCertificate cert{x_, support_, stats_, scaling_};
    const CertificateReport report = verify_certificate(L_, cert);
    if (!report.passed()) {
      std::string what = "RescalingRun: certificate failed re-verification:";
      for (const auto& f : report.failures()) what += " " + f;
      throw InternalError(what);
    }
    return cert;
  }

 private:
  Subspace L_;
  IndexSet support_;
  RescalingState scaling_;
  std::optional<long> trim_exponent_;
  SolveStats stats_;
  Vector x_;
  bool done_ = false;
};

/// Trimming exponent for guess σ: index i is dropped once 2^{e_i} reaches
/// 2^{⌈log₂(1/σ)⌉}, so no exponent ever exceeds ⌈log₂(1/σ)⌉.
inline long trim_exponent_for(double sigma) { return ceil_log2_inv(sigma); }

inline RescalingRun make_partial_support_run(const Subspace& L, double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw InvalidArgument("partial_support: sigma must lie in (0,1)");
  return RescalingRun(L, trim_exponent_for(sigma));
}

/// Finds x in L ∩ R^n_+ with x_J > 0 for some J_σ(L) ⊆ J ⊆ J(L).
inline SupportCertificate partial_support(const Subspace& L, double sigma) {
  RescalingRun run = make_partial_support_run(L, sigma);
  while (!run.done()) run.step();
  return run.certificate();
}

// ---------------------------------------------------------------------------
// Maximum support
// ---------------------------------------------------------------------------

struct OuterIteration {
  double sigma;
  Index primal_support_size;
  Index dual_support_size;
  long rescales;
};

struct MaxSupportResult {
  SupportCertificate primal;  // for L
  SupportCertificate dual;    // for L^⊥
  long outer_iterations = 0;
  double final_sigma = 0.0;
  long total_rescales = 0;
  SolveStats stats;  // summed over every inner run, including discarded ones
  std::vector<OuterIteration> history;
};

/// First inner guess used by max_support for a given σ0.
inline double first_inner_sigma(double sigma0) { return std::min(sigma0, 0.5); }

/// Maximum-support solutions of x in L ∩ R^n_+ and x̂ in L^⊥ ∩ R^n_+.
inline MaxSupportResult max_support(const Subspace& L, double sigma0 = 1.0) {
  if (!(sigma0 > 0.0 && sigma0 <= 1.0)) throw InvalidArgument("max_support: sigma0 must lie in (0,1]");
  const Subspace Lperp = orthogonal_complement(L);
  const Index n = L.ambient_dim();

  MaxSupportResult result;
  double sigma = first_inner_sigma(sigma0);
  for (int outer = 1; outer <= kMaxHalvings; ++outer) {
    SupportCertificate primal = partial_support(L, sigma);
    SupportCertificate dual = partial_support(Lperp, sigma);
    const long rescales = primal.stats.rescale_count + dual.stats.rescale_count;
    result.total_rescales += rescales;
    result.stats += primal.stats;
    result.stats += dual.stats;
    result.history.push_back({sigma, primal.support.size(), dual.support.size(), rescales});

    const IndexSet both = primal.support.united(dual.support);
    if (both.size() == n) {
      if (!primal.support.intersected(dual.support).empty()) {
        throw InternalError("max_support: primal and dual supports overlap: " +
                            to_string(primal.support) + " vs " + to_string(dual.support));
      }
      result.primal = std::move(primal);
      result.dual = std::move(dual);
      result.outer_iterations = outer;
      result.final_sigma = sigma;
      return result;
    }
    sigma /= 2.0;
  }
  throw BudgetExceeded("halving-cap", "max_support: no partition after " +
                                          std::to_string(kMaxHalvings) +
                                          " halvings of sigma; input is numerically corrupt");
}

// ---------------------------------------------------------------------------
// Full support
// ---------------------------------------------------------------------------

inline long full_support_budget(Index n) { return kFullSupportRescalesPerCoordinate * n; }

/// x in L ∩ R^n_{++}. Throws BudgetExceeded when no such point shows up
/// within 60 n rescalings.
inline SupportCertificate full_support(const Subspace& L) {
  RescalingRun run(L, std::nullopt);
  const long budget = full_support_budget(L.ambient_dim());
  while (!run.done()) {
    if (run.stats().rescale_count >= budget) {
      throw BudgetExceeded("infeasible-or-ill-conditioned",
                           "full_support: rescaling budget exhausted; L may not meet the open orthant");
    }
    run.step();
  }
  return run.certificate();
}

enum class PairSide { Primal, Dual };

struct FullSupportPairResult {
  PairSide side;
  SupportCertificate certificate;  // in L (Primal) or in L^⊥ (Dual)
  SolveStats primal_stats;
  SolveStats dual_stats;
};

/// full_support on L and on L^⊥ alternating one basic-procedure call each;
/// the first to finish wins.
inline FullSupportPairResult full_support_pair(const Subspace& L) {
  RescalingRun primal(L, std::nullopt);
  RescalingRun dual(orthogonal_complement(L), std::nullopt);
  const long budget = full_support_budget(L.ambient_dim());

  while (true) {
    const bool primal_live = primal.stats().rescale_count < budget;
    const bool dual_live = dual.stats().rescale_count < budget;
    if (!primal_live && !dual_live) {
      throw BudgetExceeded("neither-side-full-support",
                           "full_support_pair: both sides exhausted their rescaling budget");
    }
    if (primal_live) {
      primal.step();
      if (primal.done()) return {PairSide::Primal, primal.certificate(), primal.stats(), dual.stats()};
    }
    if (dual_live) {
      dual.step();
      if (dual.done()) return {PairSide::Dual, dual.certificate(), primal.stats(), dual.stats()};
    }
  }
}

}  // namespace maxsupp
