#pragma once

// maxsupp command line: solve, condition, generate, bench.
//
// Exit codes: 0 ok, 2 certificate failed verification, 3 budget exhausted,
// 64 usage or input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "json_out.hpp"
#include "maxsupp/bounds.hpp"
#include "maxsupp/conditioning.hpp"
#include "maxsupp/generator.hpp"
#include "maxsupp/io.hpp"
#include "maxsupp/solver.hpp"

namespace maxsupp::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 2, kBudget = 3, kUsage = 64 };

inline constexpr int kSchemaVersion = 1;

struct InputOptions {
  std::string path;
  std::string format;  // "", "basis" or "kernel"
};

struct LoadedInput {
  InstanceFile file;
  std::string digest;
  Subspace L;
};

inline LoadedInput load_input(const InputOptions& opt) {
  std::string text;
  if (opt.path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(opt.path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open input file '" + opt.path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  std::optional<InputFormat> forced;
  if (!opt.format.empty()) forced = parse_format(opt.format);
  InstanceFile file = parse_instance(text, forced);
  Subspace L = to_subspace(file);
  return {std::move(file), "fnv1a64:" + hex64(fnv1a64(text)), std::move(L)};
}

inline Json index_list(const IndexSet& s) {
  Json a = Json::array();
  for (Index k : s.one_based()) a.push_back(k);
  return a;
}

inline Json real_list(const Vector& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline Json real_list(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

inline Json stats_json(const SolveStats& s) {
  return Json{{"rescale_count", s.rescale_count},
              {"bp_calls", s.bp_calls},
              {"bp_iterations_total", s.bp_iterations_total},
              {"arithmetic_ops", s.arithmetic_ops}};
}

inline Json certificate_json(const Subspace& L, const SupportCertificate& c, double tol, bool& all_ok) {
  const CertificateReport rep = verify_certificate(L, c, tol);
  all_ok = all_ok && rep.passed();
  Json failures = Json::array();
  for (const auto& f : rep.failures()) failures.push_back(f);
  Json exps = Json::array();
  for (int e : c.scaling.exponents()) exps.push_back(e);
  return Json{{"x", real_list(c.x)},
              {"support", index_list(c.support)},
              {"verified", rep.passed()},
              {"failed_checks", failures},
              {"residual", rep.residual},
              {"exponents", exps},
              {"stats", stats_json(c.stats)}};
}

inline Json error_json(int code, const std::string& kind, const std::string& message) {
  return Json{{"schema", "maxsupp.error"},
              {"schema_version", kSchemaVersion},
              {"exit_code", code},
              {"kind", kind},
              {"message", message}};
}

inline Json condition_json(const ConditionReport& r) {
  Json j{{"sigma_per_index", real_list(r.sigma_per_index)},
         {"sigma", r.sigma},
         {"support", index_list(r.support)}};
  if (r.delta) j["delta"] = *r.delta;
  Json notes = Json::array();
  for (const auto& s : r.notes) notes.push_back(s);
  j["notes"] = notes;
  return j;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct SolveOptions {
  InputOptions input;
  std::string mode = "max-support";
  double sigma0 = 1.0;
  std::optional<double> sigma;
  double tol = kMembershipTol;
  bool json = false;
  bool oracle = false;
};

inline void print_solve_table(std::ostream& os, const Json& r) {
  auto line = [&](const std::string& k, const std::string& v) {
    os << k << std::string(k.size() < 22 ? 22 - k.size() : 1, ' ') << v << '\n';
  };
  auto set_str = [](const Json& a) {
    std::string s = "{";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i].get<long>());
    return s + "}";
  };
  line("mode", r["mode"].get<std::string>());
  line("n", std::to_string(r["input"]["n"].get<long>()));
  line("dim(L)", std::to_string(r["input"]["dim"].get<long>()));
  for (const char* side : {"primal", "dual"}) {
    if (!r.contains(side) || r[side].is_null()) continue;
    const Json& c = r[side];
    line(std::string(side) + " support", set_str(c["support"]));
    line(std::string(side) + " verified", c["verified"].get<bool>() ? "yes" : "NO");
    line(std::string(side) + " residual", format_real(c["residual"].get<double>()));
  }
  if (r.contains("winner")) line("winner", r["winner"].get<std::string>());
  const Json& s = r["stats"];
  for (auto it = s.begin(); it != s.end(); ++it) {
    line(it.key(), it.value().is_number_float() ? format_real(it.value().get<double>()) : it.value().dump());
  }
  if (r.contains("bounds")) {
    const Json& b = r["bounds"];
    for (auto it = b.begin(); it != b.end(); ++it) {
      line(it.key(), it.value().is_number_float() ? format_real(it.value().get<double>()) : it.value().dump());
    }
  }
  if (r.contains("matches_planted")) line("matches planted", r["matches_planted"].get<bool>() ? "yes" : "NO");
}

inline int cmd_solve(const SolveOptions& opt, std::ostream& out) {
  if (opt.mode == "partial" && !opt.sigma) throw InvalidArgument("--mode partial needs --sigma");
  if (opt.mode != "partial" && opt.sigma) throw InvalidArgument("--sigma only applies to --mode partial");
  if (!(opt.tol > 0.0)) throw InvalidArgument("--tol must be positive");

  const auto t0 = std::chrono::steady_clock::now();
  const LoadedInput in = load_input(opt.input);
  const Subspace& L = in.L;
  const Index n = L.ambient_dim();
  const Subspace Lperp = orthogonal_complement(L);

  Json r{{"schema", "maxsupp.solve"}, {"schema_version", kSchemaVersion}, {"mode", opt.mode}};
  r["input"] = Json{{"path", opt.input.path},
                    {"format", to_string(in.file.format)},
                    {"n", n},
                    {"dim", L.dim()},
                    {"digest", in.digest}};
  Json params{{"tol", opt.tol}};
  if (opt.mode == "max-support") params["sigma0"] = opt.sigma0;
  if (opt.sigma) params["sigma"] = *opt.sigma;
  r["parameters"] = params;

  bool ok = true;
  std::optional<IndexSet> primal_support;
  Json stats;
  if (opt.mode == "max-support") {
    const MaxSupportResult res = max_support(L, opt.sigma0);
    r["primal"] = certificate_json(L, res.primal, opt.tol, ok);
    r["dual"] = certificate_json(Lperp, res.dual, opt.tol, ok);
    primal_support = res.primal.support;
    stats = Json{{"outer_iterations", res.outer_iterations},
                 {"final_sigma", res.final_sigma},
                 {"total_rescales", res.total_rescales}};
    const Json s = stats_json(res.stats);
    stats["bp_calls"] = s["bp_calls"];
    stats["bp_iterations_total"] = s["bp_iterations_total"];
    stats["arithmetic_ops"] = s["arithmetic_ops"];
  } else if (opt.mode == "full-support" || opt.mode == "partial") {
    const SupportCertificate c = opt.mode == "partial" ? partial_support(L, *opt.sigma) : full_support(L);
    r["primal"] = certificate_json(L, c, opt.tol, ok);
    r["dual"] = nullptr;
    primal_support = c.support;
    stats = Json{{"outer_iterations", 1}, {"total_rescales", c.stats.rescale_count}};
    stats["bp_calls"] = c.stats.bp_calls;
    stats["bp_iterations_total"] = c.stats.bp_iterations_total;
    stats["arithmetic_ops"] = c.stats.arithmetic_ops;
  } else if (opt.mode == "pair") {
    const FullSupportPairResult res = full_support_pair(L);
    const bool primal_won = res.side == PairSide::Primal;
    r["winner"] = primal_won ? "primal" : "dual";
    r["primal"] = primal_won ? certificate_json(L, res.certificate, opt.tol, ok) : Json(nullptr);
    r["dual"] = primal_won ? Json(nullptr) : certificate_json(Lperp, res.certificate, opt.tol, ok);
    stats = Json{{"outer_iterations", 1},
                 {"total_rescales", res.primal_stats.rescale_count + res.dual_stats.rescale_count},
                 {"primal_rescales", res.primal_stats.rescale_count},
                 {"dual_rescales", res.dual_stats.rescale_count},
                 {"bp_calls", res.primal_stats.bp_calls + res.dual_stats.bp_calls},
                 {"bp_iterations_total", res.primal_stats.bp_iterations_total + res.dual_stats.bp_iterations_total},
                 {"arithmetic_ops", res.primal_stats.arithmetic_ops + res.dual_stats.arithmetic_ops}};
    if (primal_won) primal_support = res.certificate.support;
  } else {
    throw InvalidArgument("unknown --mode '" + opt.mode + "'");
  }
  r["stats"] = stats;

  if (opt.oracle) {
    const ConditionReport cl = condition_report(L);
    const ConditionReport cd = condition_report(Lperp);
    Json b{{"sigma_L", cl.sigma}, {"sigma_Lperp", cd.sigma}};
    if (opt.mode == "max-support") {
      const double smin = std::min(cl.sigma, cd.sigma);
      b["max_support_bound"] = max_support_bound(static_cast<long>(n), opt.sigma0, smin);
      if (opt.sigma0 < smin) b["max_support_lowball_bound"] = max_support_lowball_bound(static_cast<long>(n), opt.sigma0);
      b["outer_iteration_bound"] = std::max(1L, ceil_log2(opt.sigma0 / smin));
      b["oracle_support_L"] = index_list(cl.support);
    } else if (opt.mode == "partial") {
      b["partial_support_bound"] = partial_support_bound(static_cast<long>(n), *opt.sigma);
      b["oracle_support_L"] = index_list(cl.support);
      b["oracle_j_sigma"] = index_list(j_sigma(L, *opt.sigma));
    } else {
      const ConditionReport& side = (opt.mode == "pair" && r["winner"] == "dual") ? cd : cl;
      if (side.support.is_full()) b["full_support_bound"] = full_support_bound(side.sigma_per_index);
    }
    r["bounds"] = b;
  }

  if (const auto planted = planted_support(in.file); planted && opt.mode == "max-support") {
    r["planted_support"] = index_list(*planted);
    r["matches_planted"] = primal_support && *primal_support == *planted;
  }
  r["verified"] = ok;
  r["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (opt.json) {
    write_json(out, r);
  } else {
    print_solve_table(out, r);
  }
  return ok ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------
// condition
// ---------------------------------------------------------------------------

struct ConditionOptions {
  InputOptions input;
  bool delta = false;
  bool rho = false;
  bool json = false;
};

inline int cmd_condition(const ConditionOptions& opt, std::ostream& out) {
  const LoadedInput in = load_input(opt.input);
  if (opt.rho && in.file.format != InputFormat::Kernel) throw InvalidArgument("--rho needs a kernel-format input");
  const Subspace& L = in.L;
  const ConditionReport cl = condition_report(L, opt.delta);
  const ConditionReport cd = condition_report(orthogonal_complement(L), opt.delta);

  Json r{{"schema", "maxsupp.condition"}, {"schema_version", kSchemaVersion}};
  r["input"] = Json{{"path", opt.input.path},
                    {"format", to_string(in.file.format)},
                    {"n", L.ambient_dim()},
                    {"dim", L.dim()},
                    {"digest", in.digest}};
  r["L"] = condition_json(cl);
  r["Lperp"] = condition_json(cd);
  if (opt.rho) {
    const RhoResult rr = rho(in.file.payload);
    r["rho"] = Json{{"value", rr.value}, {"sign", rr.sign}, {"method", to_string(rr.method)}, {"iterations", rr.iterations}};
  }
  if (const auto planted = planted_support(in.file)) {
    r["planted_support"] = index_list(*planted);
    r["matches_planted"] = cl.support == *planted;
  }

  if (opt.json) {
    write_json(out, r);
    return kOk;
  }
  auto row = [&](const char* name, const ConditionReport& c) {
    out << name << "  support " << to_string(c.support) << "  sigma " << format_real(c.sigma);
    if (c.delta) out << "  delta " << format_real(*c.delta);
    out << '\n';
  };
  out << "index  sigma_i(L)  sigma_i(Lperp)\n";
  for (Index i = 0; i < L.ambient_dim(); ++i) {
    out << (i + 1) << "  " << format_real(cl.sigma_per_index[static_cast<std::size_t>(i)]) << "  "
        << format_real(cd.sigma_per_index[static_cast<std::size_t>(i)]) << '\n';
  }
  row("L    ", cl);
  row("Lperp", cd);
  if (r.contains("rho")) {
    out << "rho    " << format_real(r["rho"]["value"].get<double>()) << " (" << r["rho"]["method"].get<std::string>()
        << ")\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct GenerateOptions {
  long n = 0;
  std::string support;  // "1,3,4", "all", "none"
  std::optional<long> support_size;
  std::optional<long> dim;
  std::uint64_t seed = 0;
  double interior_scale = kDefaultInteriorScale;
  std::string output = "-";
};

inline IndexSet parse_index_list(const std::string& s, Index n) {
  if (s == "all") return IndexSet::full(n);
  if (s == "none" || s.empty()) return IndexSet::none(n);
  std::vector<Index> members;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long k = 0;
    try {
      k = std::stol(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("--support: '" + item + "' is not an index");
    }
    if (used != item.size() || k < 1 || k > n) throw InvalidArgument("--support: index '" + item + "' out of 1.." + std::to_string(n));
    members.push_back(static_cast<Index>(k - 1));
  }
  return IndexSet(n, std::move(members));
}

inline int cmd_generate(const GenerateOptions& opt, std::ostream& out) {
  if (opt.n < 1) throw InvalidArgument("--n must be >= 1");
  const bool explicit_support = !opt.support.empty();
  if (explicit_support == opt.support_size.has_value()) {
    throw InvalidArgument("give exactly one of --support and --support-size");
  }
  if (opt.support_size && (*opt.support_size < 0 || *opt.support_size > opt.n)) {
    throw InvalidArgument("--support-size must lie in 0..n");
  }
  const Index n = opt.n;
  InstanceSpec spec;
  if (explicit_support) {
    const IndexSet J = parse_index_list(opt.support, n);
    spec = sample_spec(n, J.size(), opt.seed, opt.interior_scale);
    spec.support = J;
  } else {
    spec = sample_spec(n, *opt.support_size, opt.seed, opt.interior_scale);
  }
  if (opt.dim) {
    const auto [lo, hi] = feasible_dims(n, spec.support.size());
    if (*opt.dim < lo || *opt.dim > hi) {
      throw InvalidArgument("--dim " + std::to_string(*opt.dim) + " is infeasible for this support; allowed " +
                            std::to_string(lo) + ".." + std::to_string(hi));
    }
    spec.dim = *opt.dim;
  }
  const PlantedInstance inst = generate(spec);
  if (opt.output == "-") {
    write_instance(out, inst);
  } else {
    std::ofstream f(opt.output);
    if (!f) throw InvalidArgument("cannot write '" + opt.output + "'");
    write_instance(f, inst);
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchOptions {
  std::string n = "8";  // "8" or "6:14"
  long seeds = 10;
  std::uint64_t first_seed = 1;
  std::string family = "planted";
  double density = 0.5;
  std::optional<long> dim;
  double interior_scale = kDefaultInteriorScale;
  double sigma0 = 1.0;
  bool oracle = false;
};

inline constexpr const char* kBenchHeader =
    "family,seed,n,support_size,dim,sigma_L,sigma_Lperp,sigma0,outer_iterations,rescales,bound,lowball_bound,"
    "within_bound,bp_calls,bp_iterations,est_flops,partition_ok";

inline std::pair<long, long> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  try {
    std::size_t used = 0;
    if (colon == std::string::npos) {
      const long v = std::stol(s, &used);
      if (used != s.size()) throw std::invalid_argument("junk");
      return {v, v};
    }
    const long a = std::stol(s.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("junk");
    const std::string rest = s.substr(colon + 1);
    const long b = std::stol(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("junk");
    return {a, b};
  } catch (const std::exception&) {
    throw InvalidArgument("--n expects N or LO:HI, got '" + s + "'");
  }
}

inline int cmd_bench(const BenchOptions& opt, std::ostream& out) {
  const auto [nlo, nhi] = parse_range(opt.n);
  if (nlo < 1 || nhi < nlo) throw InvalidArgument("--n range must satisfy 1 <= LO <= HI");
  if (opt.seeds < 1) throw InvalidArgument("--seeds must be >= 1");
  if (opt.family != "planted" && opt.family != "full") throw InvalidArgument("--family is 'planted' or 'full'");
  if (!(opt.density >= 0.0 && opt.density <= 1.0)) throw InvalidArgument("--density must lie in [0,1]");
  if (!(opt.sigma0 > 0.0 && opt.sigma0 <= 1.0)) throw InvalidArgument("--sigma0 must lie in (0,1]");
  const bool planted = opt.family == "planted";

  out << kBenchHeader << '\n';
  for (long n = nlo; n <= nhi; ++n) {
    for (long s = 0; s < opt.seeds; ++s) {
      const std::uint64_t seed = opt.first_seed + static_cast<std::uint64_t>(s);
      InstanceSpec spec;
      if (planted) {
        const auto k = static_cast<Index>(std::lround(opt.density * static_cast<double>(n)));
        spec = sample_spec(n, k, seed, opt.interior_scale);
      } else {
        spec = sample_spec(n, n, seed, opt.interior_scale);
      }
      if (opt.dim) {
        const auto [lo, hi] = feasible_dims(n, spec.support.size());
        spec.dim = std::clamp<Index>(*opt.dim, lo, hi);
      }
      const PlantedInstance inst = generate(spec);
      const Subspace& L = inst.L;

      std::ostringstream row;
      row << opt.family << ',' << seed << ',' << n << ',' << spec.support.size() << ',' << L.dim() << ',';

      std::optional<ConditionReport> cl, cd;
      if (opt.oracle) {
        cl = condition_report(L);
        cd = condition_report(orthogonal_complement(L));
        row << format_real(cl->sigma) << ',' << format_real(cd->sigma) << ',';
      } else {
        row << ",,";
      }

      if (planted) {
        const MaxSupportResult res = max_support(L, opt.sigma0);
        row << format_real(opt.sigma0) << ',' << res.outer_iterations << ',' << res.total_rescales << ',';
        if (opt.oracle) {
          const double smin = std::min(cl->sigma, cd->sigma);
          const long bound = max_support_bound(n, opt.sigma0, smin);
          row << bound << ',';
          if (opt.sigma0 < smin) {
            const long low = max_support_lowball_bound(n, opt.sigma0);
            row << low << ',' << (res.total_rescales <= low ? 1 : 0) << ',';
          } else {
            row << ',' << (res.total_rescales <= bound ? 1 : 0) << ',';
          }
        } else {
          row << ",,,";
        }
        row << res.stats.bp_calls << ',' << res.stats.bp_iterations_total << ',' << format_real(res.stats.arithmetic_ops)
            << ',' << (res.primal.support == spec.support ? 1 : 0);
      } else {
        const SupportCertificate c = full_support(L);
        row << ",1," << c.stats.rescale_count << ',';
        if (opt.oracle) {
          const long bound = full_support_bound(cl->sigma_per_index);
          row << bound << ",," << (c.stats.rescale_count <= bound ? 1 : 0) << ',';
        } else {
          row << ",,,";
        }
        row << c.stats.bp_calls << ',' << c.stats.bp_iterations_total << ',' << format_real(c.stats.arithmetic_ops)
            << ',' << (c.support.is_full() ? 1 : 0);
      }
      out << row.str() << '\n';
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// entry point
// ---------------------------------------------------------------------------

inline void add_input_options(CLI::App* sub, InputOptions& in) {
  sub->add_option("--input", in.path, "instance file ('-' for stdin)")->required();
  sub->add_option("--format", in.format, "basis | kernel (default: from the file header)")
      ->check(CLI::IsMember({"basis", "kernel"}));
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximum-support solutions of x in L, x >= 0 and s in L^perp, s >= 0"};
  app.name("maxsupp");
  app.require_subcommand(1);

  SolveOptions solve;
  auto* s = app.add_subcommand("solve", "solve an instance file");
  add_input_options(s, solve.input);
  s->add_option("--mode", solve.mode, "max-support | full-support | partial | pair")
      ->check(CLI::IsMember({"max-support", "full-support", "partial", "pair"}));
  s->add_option("--sigma0", solve.sigma0, "initial guess for max-support, in (0,1]");
  s->add_option("--sigma", solve.sigma, "guess for --mode partial, in (0,1)");
  s->add_option("--tol", solve.tol, "membership tolerance for certificate checks");
  s->add_flag("--json", solve.json, "JSON output");
  s->add_flag("--oracle", solve.oracle, "compute condition measures and bounds");

  ConditionOptions cond;
  auto* c = app.add_subcommand("condition", "condition measures of L and L^perp");
  add_input_options(c, cond.input);
  c->add_flag("--delta", cond.delta, "also compute delta");
  c->add_flag("--rho", cond.rho, "also compute rho(A) (kernel format only)");
  c->add_flag("--json", cond.json, "JSON output");

  GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "write a planted instance");
  g->add_option("--n", gen.n, "ambient dimension")->required();
  auto* sup = g->add_option("--support", gen.support, "planted support, e.g. 1,3,4 or all or none");
  auto* ssz = g->add_option("--support-size", gen.support_size, "random planted support of this size");
  sup->excludes(ssz);
  g->add_option("--dim", gen.dim, "dimension of L");
  g->add_option("--seed", gen.seed, "64-bit seed");
  g->add_option("--interior-scale", gen.interior_scale, "smallest planted entry, in (0,1]");
  g->add_option("--output", gen.output, "output path ('-' for stdout)");

  BenchOptions bench;
  auto* b = app.add_subcommand("bench", "CSV sweep over generated instances");
  b->add_option("--n", bench.n, "N or LO:HI");
  b->add_option("--seeds", bench.seeds, "instances per n");
  b->add_option("--first-seed", bench.first_seed, "seed of the first instance");
  b->add_option("--family", bench.family, "planted | full")->check(CLI::IsMember({"planted", "full"}));
  b->add_option("--density", bench.density, "planted support size as a fraction of n");
  b->add_option("--dim", bench.dim, "dimension of L (clamped to the feasible range)");
  b->add_option("--interior-scale", bench.interior_scale, "smallest planted entry");
  b->add_option("--sigma0", bench.sigma0, "initial guess for max-support");
  b->add_flag("--oracle", bench.oracle, "add condition measures and bounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const bool want_json = (s->parsed() && solve.json) || (c->parsed() && cond.json);
  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    err << "maxsupp: " << msg << '\n';
    if (want_json) write_json(out, error_json(code, kind, msg));
    return code;
  };
  try {
    if (s->parsed()) return cmd_solve(solve, out);
    if (c->parsed()) return cmd_condition(cond, out);
    if (g->parsed()) return cmd_generate(gen, out);
    return cmd_bench(bench, out);
  } catch (const BudgetExceeded& e) {
    return fail(kBudget, e.kind(), e.what());
  } catch (const ParseError& e) {
    return fail(kUsage, "parse", solve.input.path.empty() && cond.input.path.empty()
                                     ? std::string(e.what())
                                     : (s->parsed() ? solve.input.path : cond.input.path) + ": " + e.what());
  } catch (const InvalidArgument& e) {
    return fail(kUsage, "usage", e.what());
  } catch (const UnsupportedScale& e) {
    return fail(kUsage, "unsupported", e.what());
  } catch (const InternalError& e) {
    return fail(kVerifyFailed, "verification", e.what());
  } catch (const ScalingOverflow& e) {
    return fail(kVerifyFailed, "overflow", e.what());
  }
}

}  // namespace maxsupp::cli
