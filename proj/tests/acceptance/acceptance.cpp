// Acceptance suite. One PASS/FAIL line per criterion; `--criterion N` runs a
// single one (each is its own ctest entry). Exit status is nonzero when any
// selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "maxsupp/basic_procedure.hpp"
#include "maxsupp/bounds.hpp"
#include "maxsupp/conditioning.hpp"
#include "maxsupp/generator.hpp"
#include "maxsupp/solver.hpp"
#include "oracles.hpp"

using namespace maxsupp;

namespace {

// pinned tolerances
constexpr double kRuntimeLimitSeconds = 30.0;
constexpr double kDoublingRelTol = 1e-7;
constexpr double kDoublingZeroFloor = 1e-12;  // below this a σ counts as 0 on both sides
constexpr double kGapSlack = 1e-8;
constexpr double kRhoTol = 1e-8;
constexpr double kSigmaTol = 1e-8;
constexpr double kRhoSigmaSlack = 1e-8;
constexpr double kResidualTol = 1e-8;

struct Verdict {
  bool pass = true;
  std::string detail;
  std::vector<std::string> info;  // extra lines, printed indented
};

// Every certificate produced anywhere in the suite goes through here.
struct Audit {
  long checked = 0;
  long failed = 0;
  double worst_residual = 0.0;
  std::string first_failure;

  void check(const Subspace& L, const SupportCertificate& c, const std::string& where) {
    const CertificateReport r = verify_certificate(L, c, kResidualTol);
    ++checked;
    worst_residual = std::max(worst_residual, r.residual);
    if (!r.passed() || r.residual > kResidualTol) {
      ++failed;
      if (first_failure.empty()) {
        first_failure = where;
        for (const auto& f : r.failures()) first_failure += " " + f;
      }
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Case {
  Index n;
  Index k;
  std::uint64_t seed;
};

// n in 6..14 with every support size 0..n (99 cases), plus one extra.
std::vector<Case> planted_cases() {
  std::vector<Case> out;
  for (Index n = 6; n <= 14; ++n)
    for (Index k = 0; k <= n; ++k) out.push_back({n, k, static_cast<std::uint64_t>(100 * n + k)});
  out.push_back({14, 7, 99});
  return out;
}

struct Oracle {
  ConditionReport L, Lperp;
  double sigma_min() const { return std::min(L.sigma, Lperp.sigma); }
};

Oracle oracle_for(const Subspace& L) { return {condition_report(L), condition_report(orthogonal_complement(L))}; }

// ---------------------------------------------------------------------------

Verdict criterion1(Audit& audit) {
  Verdict v;
  int ok = 0;
  double seconds = 0.0;
  const auto cases = planted_cases();
  for (const Case& c : cases) {
    const PlantedInstance inst = generate(sample_spec(c.n, c.k, c.seed));
    const auto t0 = std::chrono::steady_clock::now();
    const MaxSupportResult r = max_support(inst.L);
    seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    audit.check(inst.L, r.primal, "c1 primal");
    audit.check(orthogonal_complement(inst.L), r.dual, "c1 dual");
    if (r.primal.support == inst.spec.support && r.dual.support == inst.spec.support.complement()) {
      ++ok;
    } else if (v.detail.empty()) {
      v.detail = "first mismatch n=" + std::to_string(c.n) + " seed=" + std::to_string(c.seed) + "; ";
    }
  }
  v.pass = ok == static_cast<int>(cases.size()) && seconds < kRuntimeLimitSeconds;
  v.detail += std::to_string(ok) + "/" + std::to_string(cases.size()) + " partitions match, solve time " +
              fmt("%.2f", seconds) + " s (limit " + fmt("%.0f", kRuntimeLimitSeconds) + " s)";
  return v;
}

Verdict criterion2(Audit& audit) {
  Verdict v;
  struct Tally {
    const char* name;
    long cases = 0, within = 0, positive_bound = 0, within_positive = 0;
    long low_cases = 0, low_within = 0;
    long worst_excess = 0;
  };
  Tally tallies[3] = {{"sigma0=1"}, {"sigma0=smin/4"}, {"sigma0=smin"}};

  for (const Case& c : planted_cases()) {
    const PlantedInstance inst = generate(sample_spec(c.n, c.k, c.seed));
    const Oracle o = oracle_for(inst.L);
    const double smin = o.sigma_min();
    const double sigma0s[3] = {1.0, smin / 4.0, smin};
    for (int s = 0; s < 3; ++s) {
      Tally& t = tallies[s];
      const double sigma0 = sigma0s[s];
      const MaxSupportResult r = max_support(inst.L, sigma0);
      audit.check(inst.L, r.primal, "c2 primal");
      audit.check(orthogonal_complement(inst.L), r.dual, "c2 dual");
      const long bound = max_support_bound(static_cast<long>(c.n), sigma0, smin);
      ++t.cases;
      if (r.total_rescales <= bound) ++t.within;
      t.worst_excess = std::max(t.worst_excess, r.total_rescales - bound);
      if (bound > 0) {
        ++t.positive_bound;
        if (r.total_rescales <= bound) ++t.within_positive;
      }
      if (sigma0 < smin) {
        ++t.low_cases;
        if (r.total_rescales <= max_support_lowball_bound(static_cast<long>(c.n), sigma0)) ++t.low_within;
      }
    }
  }

  std::ostringstream d;
  long low_cases = 0, low_within = 0;
  for (const Tally& t : tallies) {
    v.pass = v.pass && t.within == t.cases;
    low_cases += t.low_cases;
    low_within += t.low_within;
    d << t.name << ": " << t.within << "/" << t.cases << " within; ";
    std::ostringstream info;
    info << t.name << ": literal bound " << t.within << "/" << t.cases << " (worst excess " << t.worst_excess
         << "), cases with positive bound " << t.within_positive << "/" << t.positive_bound;
    if (t.low_cases > 0) info << ", 2n*ceil(log2(1/sigma0)) " << t.low_within << "/" << t.low_cases;
    v.info.push_back(info.str());
  }
  v.pass = v.pass && low_within == low_cases;
  d << "sigma0<smin bound " << low_within << "/" << low_cases;
  v.detail = d.str();
  if (!v.pass) v.info.push_back("the literal bound is 0 or negative in the failing cases; see notes");
  return v;
}

Verdict criterion3(Audit& audit) {
  Verdict v;
  long calls = 0, calls_ok = 0, index_checks = 0, index_ok = 0;
  for (const Case& c : planted_cases()) {
    const PlantedInstance inst = generate(sample_spec(c.n, c.k, c.seed));
    const Subspace Lperp = orthogonal_complement(inst.L);
    const MaxSupportResult mr = max_support(inst.L);
    const bool audited = c.n <= 8;
    std::optional<Oracle> o;
    if (audited) o = oracle_for(inst.L);

    std::vector<double> sigmas;
    for (const auto& h : mr.history) sigmas.push_back(h.sigma);
    if (audited) {
      for (double s : {o->L.sigma, o->Lperp.sigma})
        if (s < 1.0) sigmas.push_back(s);
    }
    for (double sigma : sigmas) {
      for (int side = 0; side < 2; ++side) {
        const Subspace& M = side == 0 ? inst.L : Lperp;
        const SupportCertificate cert = partial_support(M, sigma);
        audit.check(M, cert, "c3");
        ++calls;
        if (cert.stats.rescale_count <= partial_support_bound(static_cast<long>(c.n), sigma)) ++calls_ok;
        if (!audited) continue;
        const ConditionReport& rep = side == 0 ? o->L : o->Lperp;
        // per-index law: sigma <= sigma(M), or nothing of J(M) was trimmed
        if (!(sigma <= rep.sigma || cert.support == rep.support)) continue;
        for (Index i : rep.support) {
          ++index_checks;
          if (cert.scaling.exponent(i) <= ceil_log2_inv(rep.sigma_per_index[static_cast<std::size_t>(i)])) {
            ++index_ok;
          }
        }
      }
    }
  }
  v.pass = calls_ok == calls && index_ok == index_checks;
  v.detail = std::to_string(calls_ok) + "/" + std::to_string(calls) + " calls within n*ceil(log2(1/sigma)), " +
             std::to_string(index_ok) + "/" + std::to_string(index_checks) + " per-index exponents within bound (n<=8)";
  return v;
}

Verdict criterion4(Audit& audit) {
  Verdict v;
  long events = 0, bad = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; events < 200 || seed <= 60; ++seed) {
    if (seed > 2000) break;
    const Index n = 3 + static_cast<Index>(seed % 6);
    const PlantedInstance inst = generate(sample_spec(n, static_cast<Index>(seed % (n + 1)), 5000 + seed));
    const Subspace& L = (seed % 2 == 0) ? inst.L : orthogonal_complement(inst.L);
    RescalingRun run = make_partial_support_run(L, seed % 3 == 0 ? 1.0 / 32 : 1.0 / 8);
    while (!run.done()) {
      const Subspace before = run.working_subspace();
      const IndexSet J = run.support();
      const StepEvent ev = run.step();
      if (ev.kind == StepKind::Positive) break;
      RescalingState D(n);
      D.double_entry(ev.pivot);
      const Subspace after = rescale(before, D);
      ++events;
      for (Index j : J) {
        const double s0 = sigma_i(before, j);
        const double s1 = sigma_i(after, j);
        const double want = j == ev.pivot ? 2.0 * s0 : s0;
        const double err = std::abs(s1 - want) / std::max(want, kDoublingZeroFloor);
        const bool zero_both = want <= kDoublingZeroFloor && s1 <= kDoublingZeroFloor;
        if (!zero_both) {
          worst = std::max(worst, err);
          if (err > kDoublingRelTol) ++bad;
        }
      }
    }
    if (run.done()) audit.check(L, run.certificate(), "c4");
  }
  v.pass = events >= 200 && bad == 0;
  v.detail = std::to_string(events) + " rescaling certificates, " + std::to_string(bad) +
             " sigma changes off the doubling law, worst relative error " + fmt("%.2e", worst);
  return v;
}

Verdict criterion5(Audit&) {
  Verdict v;
  std::mt19937_64 rng(31415);
  long iterates = 0, gap_bad = 0, runs_over = 0;
  double worst = -INFINITY;
  for (int t = 0; t < 100; ++t) {
    const Index m = 1 + static_cast<Index>(rng() % 30);
    const Index d = static_cast<Index>(rng() % static_cast<std::uint64_t>(m + 1));
    Subspace L = oracle::random_subspace(m, d, rng);
    if (t % 2 == 1) {
      // coordinate skew makes the cone thin and the runs long
      std::vector<int> e(static_cast<std::size_t>(m));
      for (auto& x : e) x = static_cast<int>(rng() % 13);
      L = rescale(L, RescalingState(e));
    }
    const Projector P(L, IndexSet::full(m));
    const auto out = smooth_perceptron(P, [&](const PerceptronIterate& it) {
      ++iterates;
      const double gap = 0.5 * it.Pz.squaredNorm() + 0.5 * it.Pu.squaredNorm() - it.Pu.minCoeff();
      const double kk = static_cast<double>(it.k + 1);
      const double limit = 8.0 / (kk * kk);
      worst = std::max(worst, gap - limit);
      if (gap > limit + kGapSlack) ++gap_bad;
    });
    if (out.iterations > perceptron_iteration_bound(m)) ++runs_over;
  }
  v.pass = gap_bad == 0 && runs_over == 0;
  v.detail = "(a) " + std::to_string(iterates - gap_bad) + "/" + std::to_string(iterates) +
             " iterates within 8/(k+1)^2 (max gap - bound " + fmt("%.2e", worst) + "); (b) " +
             std::to_string(100 - runs_over) + "/100 runs within ceil(8 n^1.5)+2";
  return v;
}

Verdict criterion6(Audit& audit) {
  Verdict v;
  int ok = 0;
  long total = 0, total_bound = 0;
  std::mt19937_64 skew(6060);
  for (int t = 0; t < 50; ++t) {
    const Index n = 2 + t % 11;
    const Index d = 1 + static_cast<Index>((7 * t) % n);
    const PlantedInstance base = generate_full_support(n, d, 0.1, 7000 + static_cast<std::uint64_t>(t));
    // skew the coordinates by random powers of two so some σ_j sit far below 1
    std::vector<int> e(static_cast<std::size_t>(n));
    for (auto& x : e) x = static_cast<int>(skew() % 17);
    const Subspace L = rescale(base.L, RescalingState(e));
    const ConditionReport rep = condition_report(L);
    const SupportCertificate c = full_support(L);
    audit.check(L, c, "c6");
    const long bound = full_support_bound(rep.sigma_per_index);
    total += c.stats.rescale_count;
    total_bound += bound;
    if (c.stats.rescale_count <= bound && c.support.is_full()) ++ok;
  }
  v.pass = ok == 50;
  v.detail = std::to_string(ok) + "/50 within sum ceil(log2(1/sigma_j)) (rescales " + std::to_string(total) +
             ", bound sum " + std::to_string(total_bound) + ")";
  return v;
}

Matrix eps_matrix(double eps, bool alternate) {
  const double c = 1.0 / std::sqrt(1.0 + eps * eps);
  Matrix A(2, 4);
  A.row(0) << c, c, -c, -c;
  if (alternate) {
    A.row(1) << eps * c, -eps * c, eps * c, -eps * c;
  } else {
    A.row(1) << eps * c, eps * c, eps * c, eps * c;
  }
  return A;
}

Verdict criterion7(Audit&) {
  Verdict v;
  std::ostringstream d;
  for (double eps : {0.5, 0.1, 0.01}) {
    const double want = eps / std::sqrt(1.0 + eps * eps);
    const Matrix A = eps_matrix(eps, false);
    const RhoResult ra = rho(A);
    const double sa = condition_report(orthogonal_complement(null_space(A))).sigma;
    const Matrix B = eps_matrix(eps, true);
    const RhoResult rb = rho(B);
    const double sb = condition_report(null_space(B)).sigma;
    const double ea = std::abs(ra.value - want), eb = std::abs(rb.value + want);
    const bool ok = ea <= kRhoTol && std::abs(sa - 1.0) <= kSigmaTol && eb <= kRhoTol && std::abs(sb - 1.0) <= kSigmaTol;
    v.pass = v.pass && ok;
    if (d.tellp() > 0) d << "; ";
    d << "eps=" << eps << " " << (ok ? "ok" : "off") << " (|drho| " << fmt("%.1e", std::max(ea, eb)) << ")";
  }
  v.detail = d.str();
  return v;
}

Verdict criterion8(Audit&) {
  Verdict v;
  std::mt19937_64 rng(8080);
  int pos = 0, neg = 0, zero = 0, bad = 0;
  for (int t = 0; t < 50; ++t) {
    const Index n = 2 + t % 9;
    Matrix A = oracle::gaussian(2, n, rng);
    for (Index j = 0; j < n; ++j) A.col(j).normalize();
    const RhoResult r = rho(A);
    const Subspace L = null_space(A);
    if (r.sign > 0) {
      ++pos;
      if (r.value > condition_report(orthogonal_complement(L)).sigma + kRhoSigmaSlack) ++bad;
    } else if (r.sign < 0) {
      ++neg;
      if (-r.value > condition_report(L).sigma + kRhoSigmaSlack) ++bad;
    } else {
      ++zero;
    }
  }
  v.pass = bad == 0;
  v.detail = std::to_string(50 - bad) + "/50 hold (" + std::to_string(pos) + " with rho>0, " + std::to_string(neg) +
             " with rho<0, " + std::to_string(zero) + " with rho=0)";
  return v;
}

Verdict criterion9(Audit&) {
  Verdict v;
  std::mt19937_64 rng(9090);
  int ok = 0;
  for (int t = 0; t < 100; ++t) {
    const Index n = 1 + t % 10;
    const Index d = static_cast<Index>(rng() % static_cast<std::uint64_t>(n + 1));
    const Oracle o = oracle_for(oracle::random_subspace(n, d, rng));
    if (o.L.support.united(o.Lperp.support).is_full() && o.L.support.intersected(o.Lperp.support).empty()) ++ok;
  }
  v.pass = ok == 100;
  v.detail = std::to_string(ok) + "/100 partitions";
  return v;
}

using CriterionFn = std::function<Verdict(Audit&)>;

const std::vector<std::pair<std::string, CriterionFn>>& criteria() {
  static const std::vector<std::pair<std::string, CriterionFn>> list = {
      {"max-support partition on 100 planted instances", criterion1},
      {"max-support rescaling bound", criterion2},
      {"partial-support rescaling bounds", criterion3},
      {"rescaling doubles sigma of the pivot only", criterion4},
      {"smooth perceptron gap and iteration bound", criterion5},
      {"full-support rescaling bound", criterion6},
      {"rho and sigma on the epsilon examples", criterion7},
      {"rho versus sigma inequalities", criterion8},
      {"J(L) and J(Lperp) partition [n]", criterion9},
  };
  return list;
}

Verdict criterion10(Audit& shared, bool others_ran) {
  Audit own;
  Audit& a = others_ran ? shared : own;
  if (!others_ran) {
    for (int id : {1, 2, 3, 4, 6}) criteria()[static_cast<std::size_t>(id - 1)].second(own);
  }
  Verdict v;
  v.pass = a.failed == 0 && a.checked > 0;
  v.detail = std::to_string(a.checked - a.failed) + "/" + std::to_string(a.checked) +
             " certificates verified, worst membership residual " + fmt("%.2e", a.worst_residual);
  if (!a.first_failure.empty()) v.detail += ", first failure: " + a.first_failure;
  return v;
}

void print(int id, const std::string& name, const Verdict& v) {
  std::printf("%s criterion %d: %s: %s\n", v.pass ? "PASS" : "FAIL", id, name.c_str(), v.detail.c_str());
  for (const auto& line : v.info) std::printf("    %s\n", line.c_str());
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 64;
    }
  }
  if (only < 0 || only > 10) {
    std::fprintf(stderr, "criterion must be 1..10\n");
    return 64;
  }

  Audit audit;
  int failures = 0;
  for (int id = 1; id <= 9; ++id) {
    if (only != 0 && only != id) continue;
    const auto& [name, fn] = criteria()[static_cast<std::size_t>(id - 1)];
    const Verdict v = fn(audit);
    print(id, name, v);
    if (!v.pass) ++failures;
  }
  if (only == 0 || only == 10) {
    const Verdict v = criterion10(audit, only == 0);
    print(10, "certificate audit", v);
    if (!v.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
