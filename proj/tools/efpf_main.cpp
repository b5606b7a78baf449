#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "efpf/boundary.hpp"
#include "efpf/consistency.hpp"
#include "efpf/errors.hpp"
#include "efpf/markov.hpp"
#include "efpf/params.hpp"
#include "efpf/rng.hpp"
#include "efpf/sampler.hpp"
#include "efpf/special.hpp"
#include "efpf/table.hpp"
#include "efpf/weights.hpp"

namespace {

using efpf::Doc;
using efpf::Value;

constexpr const char* kSchema = "efpf-kit/v1";

struct assert_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputOpts {
  std::string format = "table";
  std::string path;
  std::string config;
};

void add_output_opts(CLI::App* sub, OutputOpts& out) {
  sub->add_option("--output", out.format, "Rendering: table, json, or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  sub->add_option("--out", out.path, "Write to this file instead of stdout");
  // Read by expand_config() before parsing; declared here so it shows up in
  // help and parses cleanly.
  sub->add_option("--config", out.config, "Flat key=value option file (explicit flags win)");
}

std::string trim_ws(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// CLI11 applies config files only on the app it parses from the top, never
// inside a subcommand, so --config is expanded up front instead: every
// key=value line becomes a --key=value token appended to the argument list.
// Keys already named on the command line are skipped; explicit flags win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  std::vector<std::string> given;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& t = args[i];
    if (t.size() < 3 || t.compare(0, 2, "--") != 0) continue;
    std::string body = t.substr(2);
    std::size_t eq = body.find('=');
    std::string key = eq == std::string::npos ? body : body.substr(0, eq);
    given.push_back(key);
    if (key == "config") {
      if (eq != std::string::npos)
        path = body.substr(eq + 1);
      else if (i + 1 < args.size())
        path = args[i + 1];
    }
  }
  if (path.empty()) return args;

  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    line = trim_ws(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  " is not key=value: " + line);
    std::string key = trim_ws(line.substr(0, eq));
    std::string value = trim_ws(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) + " has an empty key");
    if (key == "config")
      throw std::invalid_argument("config files cannot name config (line " +
                                  std::to_string(lineno) + ")");
    if (std::find(given.begin(), given.end(), key) != given.end()) continue;
    args.push_back("--" + key + "=" + value);
  }
  return args;
}

void emit(const Doc& doc, const OutputOpts& out) {
  std::string text;
  if (out.format == "json")
    text = efpf::emit_json(doc);
  else if (out.format == "csv")
    text = efpf::emit_csv(doc);
  else
    text = efpf::emit_table(doc);
  if (out.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + out.path);
  f << text;
}

Doc base_doc(const std::string& command) {
  Doc doc;
  doc.add("schema", std::string(kSchema));
  doc.add("command", command);
  return doc;
}

double need(const std::optional<double>& o, const char* name) {
  if (!o) throw std::domain_error(std::string("this model requires --") + name);
  return *o;
}

long long need_ll(const std::optional<long long>& o, const char* name) {
  if (!o) throw std::domain_error(std::string("this model requires --") + name);
  return *o;
}

// Space-joined so the cell stays legal in the comma-separated rendering.
std::string join_counts(const std::vector<int>& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(m[i]);
  }
  return s;
}

void check_assert(bool ok, const std::string& what) {
  if (!ok) throw assert_failure(what);
}

// Shared model option block for the probability-law subcommands.
struct ModelOpts {
  std::string model;
  std::optional<double> gamma, alpha, theta, eta1, eta2;
  std::optional<long long> N;
};

void add_model_opts(CLI::App* sub, ModelOpts& mo, const std::vector<std::string>& models) {
  sub->add_option("--model", mo.model, "Probability family")
      ->required()
      ->check(CLI::IsMember(models));
  sub->add_option("--gamma", mo.gamma, "Mass parameter (IBP families)");
  sub->add_option("--alpha", mo.alpha, "Discount parameter");
  sub->add_option("--theta", mo.theta, "Concentration parameter");
  sub->add_option("--N", mo.N, "Number of features (finite families)");
  sub->add_option("--eta1", mo.eta1, "Beta frequency shape 1 (bb-direct)");
  sub->add_option("--eta2", mo.eta2, "Beta frequency shape 2 (bb-direct)");
}

void echo_model(Doc& doc, const ModelOpts& mo) {
  doc.add("model", mo.model);
  if (mo.gamma) doc.add("gamma", *mo.gamma);
  if (mo.alpha) doc.add("alpha", *mo.alpha);
  if (mo.theta) doc.add("theta", *mo.theta);
  if (mo.N) doc.add("N", *mo.N);
  if (mo.eta1) doc.add("eta1", *mo.eta1);
  if (mo.eta2) doc.add("eta2", *mo.eta2);
}

// WeightSystem plus the data the parameter-level checks need.
struct LawBundle {
  efpf::WeightSystem ws;
  efpf::ParamsAT at;
  std::optional<int> support;
};

LawBundle make_law(const ModelOpts& mo) {
  if (mo.model == "ibp3") {
    auto p = efpf::make_ibp3_params(need(mo.gamma, "gamma"), need(mo.alpha, "alpha"),
                                    need(mo.theta, "theta"));
    return LawBundle{efpf::ibp3_weight_system(p), p.at, std::nullopt};
  }
  if (mo.model == "ibp2") {
    double gamma = need(mo.gamma, "gamma");
    double theta = need(mo.theta, "theta");
    if (!(gamma >= 0.0)) throw std::domain_error("params: requires gamma >= 0");
    if (!(theta > 0.0)) throw std::domain_error("params: requires theta > 0");
    efpf::ParamsAT at{0.0, theta};
    efpf::WeightSystem ws{
        [gamma, theta](int n, int k) { return efpf::v_ibp2(gamma, theta, n, k); },
        [at](int m) { return efpf::w_weight(at, m); },
        [at](int m) { return efpf::u_weight(at, m); },
        std::nullopt,
    };
    return LawBundle{std::move(ws), at, std::nullopt};
  }
  if (mo.model == "bb") {
    auto p = efpf::make_bb_params(need_ll(mo.N, "N"), need(mo.alpha, "alpha"),
                                  need(mo.theta, "theta"));
    return LawBundle{efpf::bb_weight_system(p), p.at, static_cast<int>(p.N)};
  }
  throw std::domain_error("unsupported model: " + mo.model);
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Product-form exchangeable feature allocations: evaluation, audits, samplers"};
  app.name("efpf");
  app.require_subcommand(1);

  // ---- efpf: evaluate an allocation probability ----
  struct {
    ModelOpts mo;
    int n = 0;
    std::vector<int> m;
    OutputOpts out;
  } ef;
  {
    CLI::App* sub = app.add_subcommand("efpf", "Evaluate the probability of a feature allocation");
    add_model_opts(sub, ef.mo, {"ibp3", "ibp2", "bb", "bb-direct"});
    sub->add_option("--n", ef.n, "Sample size")->required();
    sub->add_option("--m", ef.m, "Feature counts, comma separated (omit for the empty allocation)")
        ->delimiter(',');
    add_output_opts(sub, ef.out);
    sub->callback([&] {
      auto fc = efpf::make_feature_counts(ef.n, ef.m);
      efpf::LogReal prob;
      if (ef.mo.model == "bb-direct") {
        prob = efpf::efpf_bb_direct(need(ef.mo.eta1, "eta1"), need(ef.mo.eta2, "eta2"),
                                    need_ll(ef.mo.N, "N"), fc);
      } else if (ef.mo.model == "ibp3") {
        prob = efpf::efpf_ibp3(efpf::make_ibp3_params(need(ef.mo.gamma, "gamma"),
                                                      need(ef.mo.alpha, "alpha"),
                                                      need(ef.mo.theta, "theta")),
                               fc);
      } else if (ef.mo.model == "bb") {
        prob = efpf::efpf_beta_bernoulli(
            efpf::make_bb_params(need_ll(ef.mo.N, "N"), need(ef.mo.alpha, "alpha"),
                                 need(ef.mo.theta, "theta")),
            fc);
      } else {
        prob = efpf::efpf_product_form(make_law(ef.mo).ws, fc);
      }
      Doc doc = base_doc("efpf");
      echo_model(doc, ef.mo);
      doc.add("n", static_cast<long long>(fc.n));
      doc.add("k", static_cast<long long>(fc.k()));
      doc.add("m", join_counts(ef.m));
      doc.add("prob", prob.value());
      if (prob.sign() > 0) doc.add("log_prob", prob.log());
      emit(doc, ef.out);
    });
  }

  // ---- consistency: marginalization residuals ----
  struct {
    ModelOpts mo;
    int n = 0;
    std::vector<int> m;
    std::optional<int> k;
    int j_max = 300;
    double tail_tol = 1e-14;
    bool do_assert = false;
    double tol = 1e-9;
    OutputOpts out;
  } co;
  {
    CLI::App* sub =
        app.add_subcommand("consistency", "One-step marginalization residual of a family");
    add_model_opts(sub, co.mo, {"ibp3", "ibp2", "bb"});
    sub->add_option("--n", co.n, "Sample size the identity is checked at")->required();
    auto* om = sub->add_option("--m", co.m, "Feature counts: check the allocation-level identity")
                   ->delimiter(',');
    auto* ok = sub->add_option("--k", co.k, "Feature count: check the parameter-level identity");
    om->excludes(ok);
    sub->add_option("--j-max", co.j_max, "Term budget for the new-feature sum")
        ->capture_default_str();
    sub->add_option("--tail-tol", co.tail_tol, "Relative tail bound for truncation")
        ->capture_default_str();
    sub->add_flag("--assert", co.do_assert, "Exit 4 unless |residual| <= --tol");
    sub->add_option("--tol", co.tol, "Assertion tolerance")->capture_default_str();
    add_output_opts(sub, co.out);
    sub->callback([&] {
      LawBundle law = make_law(co.mo);
      efpf::TruncationPolicy tp{co.j_max, co.tail_tol};
      Doc doc = base_doc("consistency");
      echo_model(doc, co.mo);
      doc.add("n", static_cast<long long>(co.n));
      double residual;
      if (co.k) {
        doc.add("k", static_cast<long long>(*co.k));
        residual = efpf::v_recursion_residual(law.ws.v, law.at, co.n, *co.k, tp, law.support);
      } else {
        auto fc = efpf::make_feature_counts(co.n, co.m);
        doc.add("k", static_cast<long long>(fc.k()));
        doc.add("m", join_counts(co.m));
        residual = efpf::consistency_residual(law.ws, fc, tp);
      }
      doc.add("residual", residual);
      if (co.do_assert) {
        bool ok2 = std::fabs(residual) <= co.tol;
        doc.add("pass", ok2);
        emit(doc, co.out);
        check_assert(ok2, "|residual| = " + efpf::format_real(std::fabs(residual)) +
                              " exceeds tol = " + efpf::format_real(co.tol));
        return;
      }
      emit(doc, co.out);
    });
  }

  // ---- cotrans: backward law of the feature-count chain ----
  struct {
    double alpha = 0.0, theta = 1.0;
    int n = 0, k = 0;
    long long m = 0, l = 0;
    OutputOpts out;
  } ct;
  {
    CLI::App* sub = app.add_subcommand(
        "cotrans", "Backward law P(K_n = k | K_m = l) of the feature-count chain");
    sub->add_option("--alpha", ct.alpha, "Discount parameter")->required();
    sub->add_option("--theta", ct.theta, "Concentration parameter")->required();
    sub->add_option("--n", ct.n, "Earlier sample size")->required();
    sub->add_option("--k", ct.k, "Feature count at n")->required();
    sub->add_option("--m", ct.m, "Later sample size")->required();
    sub->add_option("--l", ct.l, "Feature count at m")->required();
    add_output_opts(sub, ct.out);
    sub->callback([&] {
      auto at = efpf::make_params_at(ct.alpha, ct.theta);
      efpf::LogReal p = efpf::cotransition_prob(at, ct.n, ct.k, ct.m, ct.l);
      Doc doc = base_doc("cotrans");
      doc.add("alpha", ct.alpha);
      doc.add("theta", ct.theta);
      doc.add("n", static_cast<long long>(ct.n));
      doc.add("k", static_cast<long long>(ct.k));
      doc.add("m", ct.m);
      doc.add("l", ct.l);
      doc.add("prob", p.value());
      if (p.sign() > 0) doc.add("log_prob", p.log());
      emit(doc, ct.out);
    });
  }

  // ---- limit-scan: boundary limits of the conditioned chain ----
  struct {
    double alpha = 0.0, theta = 1.0;
    int n = 0, k = 0;
    std::string regime;
    std::optional<double> c, gamma;
    std::optional<long long> N;
    std::vector<long long> m_grid;
    bool do_assert = false;
    double tol = 1e-2;
    OutputOpts out;
  } ls;
  {
    CLI::App* sub = app.add_subcommand(
        "limit-scan", "Convergence of the conditioned count ratio to its boundary V-array");
    sub->add_option("--alpha", ls.alpha, "Discount parameter")->required();
    sub->add_option("--theta", ls.theta, "Concentration parameter")->required();
    sub->add_option("--n", ls.n, "Sample size of the conditioned marginal")->required();
    sub->add_option("--k", ls.k, "Feature count of the conditioned marginal")->required();
    sub->add_option("--regime", ls.regime, "Conditioning path family")
        ->required()
        ->check(CLI::IsMember({"power", "log", "const"}));
    sub->add_option("--c", ls.c, "Power path scale: omega = round(c * m^alpha)");
    sub->add_option("--gamma", ls.gamma, "Log path scale: omega = round(gamma * log m)");
    sub->add_option("--N", ls.N, "Constant path level: omega = N");
    sub->add_option("--m-grid", ls.m_grid, "Horizons, comma separated, increasing")
        ->delimiter(',')
        ->required();
    sub->add_flag("--assert", ls.do_assert, "Exit 4 unless final_gap <= --tol");
    sub->add_option("--tol", ls.tol, "Assertion tolerance on final_gap")->capture_default_str();
    add_output_opts(sub, ls.out);
    sub->callback([&] {
      auto at = efpf::make_params_at(ls.alpha, ls.theta);
      efpf::PathSpec path;
      if (ls.regime == "power")
        path = efpf::PowerPath{need(ls.c, "c")};
      else if (ls.regime == "log")
        path = efpf::LogarithmicPath{need(ls.gamma, "gamma")};
      else
        path = efpf::ConstantPath{need_ll(ls.N, "N")};
      efpf::ConvergenceReport rep = efpf::limit_scan(at, ls.n, ls.k, path, ls.m_grid);
      Doc doc = base_doc("limit-scan");
      doc.add("alpha", ls.alpha);
      doc.add("theta", ls.theta);
      doc.add("n", static_cast<long long>(ls.n));
      doc.add("k", static_cast<long long>(ls.k));
      doc.add("regime", ls.regime);
      doc.add("target", rep.target);
      doc.add("final_gap", rep.final_gap);
      if (ls.do_assert) doc.add("pass", rep.final_gap <= ls.tol);
      doc.table_header = {"m", "omega", "ratio", "gap"};
      for (std::size_t i = 0; i < rep.m_grid.size(); ++i) {
        double gap = std::fabs(rep.ratio_values[i] - rep.target) / std::max(rep.target, 1e-300);
        doc.table_rows.push_back({Value{rep.m_grid[i]}, Value{rep.omega_values[i]},
                                  Value{rep.ratio_values[i]}, Value{gap}});
      }
      emit(doc, ls.out);
      if (ls.do_assert)
        check_assert(rep.final_gap <= ls.tol,
                     "final_gap = " + efpf::format_real(rep.final_gap) +
                         " exceeds tol = " + efpf::format_real(ls.tol));
    });
  }

  // ---- sample: draw a feature allocation ----
  struct {
    ModelOpts mo;
    int n = 0;
    std::uint64_t seed = 0, stream = 0;
    OutputOpts out;
  } sa;
  {
    CLI::App* sub = app.add_subcommand("sample", "Draw one feature allocation");
    add_model_opts(sub, sa.mo, {"ibp3", "bb"});
    sub->add_option("--n", sa.n, "Sample size")->required();
    sub->add_option("--seed", sa.seed, "RNG seed")->capture_default_str();
    sub->add_option("--stream", sa.stream, "RNG substream")->capture_default_str();
    add_output_opts(sub, sa.out);
    sub->callback([&] {
      efpf::RngSpec spec{sa.seed, sa.stream};
      efpf::FeatureMatrix fm;
      if (sa.mo.model == "ibp3") {
        fm = efpf::sample_ibp3(efpf::make_ibp3_params(need(sa.mo.gamma, "gamma"),
                                                      need(sa.mo.alpha, "alpha"),
                                                      need(sa.mo.theta, "theta")),
                               sa.n, spec);
      } else {
        fm = efpf::sample_beta_bernoulli(
            efpf::make_bb_params(need_ll(sa.mo.N, "N"), need(sa.mo.alpha, "alpha"),
                                 need(sa.mo.theta, "theta")),
            sa.n, spec);
      }
      Doc doc = base_doc("sample");
      echo_model(doc, sa.mo);
      doc.add("seed", static_cast<long long>(sa.seed));
      doc.add("stream", static_cast<long long>(sa.stream));
      doc.add("n", static_cast<long long>(fm.n));
      doc.add("k", static_cast<long long>(fm.k()));
      doc.table_header = {"feature", "count", "mask"};
      std::vector<int> counts = fm.counts();
      for (int j = 0; j < fm.k(); ++j) {
        Value mask;
        if (fm.n <= 63) {
          std::uint64_t b = 0;
          for (int i = 0; i < fm.n; ++i)
            if (fm.columns[j][i]) b |= std::uint64_t{1} << i;
          mask = Value{static_cast<long long>(b)};
        } else {
          std::string bits(fm.n, '0');
          for (int i = 0; i < fm.n; ++i)
            if (fm.columns[j][i]) bits[i] = '1';
          mask = Value{bits};
        }
        doc.table_rows.push_back(
            {Value{static_cast<long long>(j + 1)}, Value{static_cast<long long>(counts[j])}, mask});
      }
      emit(doc, sa.out);
    });
  }

  // ---- growth-law: simulate the long-run feature count ----
  struct {
    ModelOpts mo;
    long long n_max = 1000;
    int runs = 200;
    std::uint64_t seed = 0, stream = 0;
    bool do_assert = false;
    double band = 0.2;
    double min_exact = 0.0;
    OutputOpts out;
  } gl;
  {
    CLI::App* sub =
        app.add_subcommand("growth-law", "Quantiles of the normalized feature count at n_max");
    add_model_opts(sub, gl.mo, {"ibp3", "ibp2", "bb"});
    sub->add_option("--n-max", gl.n_max, "Horizon")->capture_default_str();
    sub->add_option("--runs", gl.runs, "Independent simulations")->capture_default_str();
    sub->add_option("--seed", gl.seed, "RNG seed")->capture_default_str();
    sub->add_option("--stream", gl.stream, "RNG base substream")->capture_default_str();
    sub->add_flag("--assert", gl.do_assert,
                  "Exit 4 unless |median/target - 1| <= --band and exact_fraction >= --min-exact");
    sub->add_option("--band", gl.band, "Relative band on the median")->capture_default_str();
    sub->add_option("--min-exact", gl.min_exact, "Minimum absorbed fraction (bb)")
        ->capture_default_str();
    add_output_opts(sub, gl.out);
    sub->callback([&] {
      efpf::GrowthLaw law;
      if (gl.mo.model == "ibp3")
        law = efpf::Ibp3Law{efpf::make_ibp3_params(need(gl.mo.gamma, "gamma"),
                                                   need(gl.mo.alpha, "alpha"),
                                                   need(gl.mo.theta, "theta"))};
      else if (gl.mo.model == "ibp2")
        law = efpf::Ibp2Law{need(gl.mo.gamma, "gamma"), need(gl.mo.theta, "theta")};
      else
        law = efpf::BbLaw{efpf::make_bb_params(need_ll(gl.mo.N, "N"), need(gl.mo.alpha, "alpha"),
                                               need(gl.mo.theta, "theta"))};
      efpf::GrowthLawReport rep =
          efpf::growth_law_check(law, gl.n_max, gl.runs, efpf::RngSpec{gl.seed, gl.stream});
      Doc doc = base_doc("growth-law");
      echo_model(doc, gl.mo);
      doc.add("n_max", rep.n_max);
      doc.add("runs", static_cast<long long>(rep.runs));
      doc.add("seed", static_cast<long long>(gl.seed));
      doc.add("stream", static_cast<long long>(gl.stream));
      doc.add("target", rep.target);
      doc.add("median", rep.median);
      doc.add("q25", rep.q25);
      doc.add("q75", rep.q75);
      if (!std::isnan(rep.exact_fraction)) doc.add("exact_fraction", rep.exact_fraction);
      bool ok2 = true;
      if (gl.do_assert) {
        ok2 = std::fabs(rep.median / rep.target - 1.0) <= gl.band &&
              (std::isnan(rep.exact_fraction) || rep.exact_fraction >= gl.min_exact);
        doc.add("pass", ok2);
      }
      emit(doc, gl.out);
      if (gl.do_assert) check_assert(ok2, "growth-law quantiles outside the asserted band");
    });
  }

  // ---- identities: closed forms of the cotransition tail sum ----
  struct {
    std::optional<double> alpha;
    double theta = 1.0;
    std::optional<int> n;
    std::optional<long long> m;
    int random = 0;
    std::uint64_t seed = 0;
    bool do_assert = false;
    double tol = 1e-12;
    OutputOpts out;
  } id;
  {
    CLI::App* sub = app.add_subcommand(
        "identities", "Gap between the cotransition tail sum and its closed form");
    sub->add_option("--alpha", id.alpha, "Discount parameter (0 selects the harmonic route)");
    sub->add_option("--theta", id.theta, "Concentration parameter")->capture_default_str();
    sub->add_option("--n", id.n, "Earlier sample size");
    sub->add_option("--m", id.m, "Later sample size");
    sub->add_option("--random", id.random, "Check this many seeded random parameter tuples")
        ->capture_default_str();
    sub->add_option("--seed", id.seed, "RNG seed for --random")->capture_default_str();
    sub->add_flag("--assert", id.do_assert, "Exit 4 unless max |gap| <= --tol");
    sub->add_option("--tol", id.tol, "Assertion tolerance")->capture_default_str();
    add_output_opts(sub, id.out);
    sub->callback([&] {
      Doc doc = base_doc("identities");
      double max_gap = 0.0;
      if (id.random > 0) {
        efpf::Rng rng(efpf::RngSpec{id.seed, 0});
        doc.add("random", static_cast<long long>(id.random));
        doc.add("seed", static_cast<long long>(id.seed));
        doc.table_header = {"alpha", "theta", "n", "m", "gap"};
        for (int t = 0; t < id.random; ++t) {
          double alpha = (t % 2 == 0) ? 0.2 + 0.75 * rng.uniform01()
                                      : -(0.2 + 2.8 * rng.uniform01());
          double theta = -alpha + 0.1 + 2.9 * rng.uniform01();
          long long m = 2 + static_cast<long long>(rng.uniform01() * 49.0);
          int n = 1 + static_cast<int>(rng.uniform01() * static_cast<double>(m - 1));
          double gap =
              efpf::hypergeometric_identity_gap(efpf::ParamsAT{alpha, theta}, n, m);
          max_gap = std::max(max_gap, std::fabs(gap));
          doc.table_rows.push_back({Value{alpha}, Value{theta}, Value{static_cast<long long>(n)},
                                    Value{m}, Value{gap}});
        }
        doc.add("max_abs_gap", max_gap);
      } else {
        double alpha = need(id.alpha, "alpha");
        if (!id.n || !id.m) throw std::domain_error("identities: requires --n and --m");
        auto at = efpf::make_params_at(alpha, id.theta);
        double gap = (alpha == 0.0) ? efpf::harmonic_identity_gap(id.theta, *id.n, *id.m)
                                    : efpf::hypergeometric_identity_gap(at, *id.n, *id.m);
        max_gap = std::fabs(gap);
        doc.add("alpha", alpha);
        doc.add("theta", id.theta);
        doc.add("n", static_cast<long long>(*id.n));
        doc.add("m", *id.m);
        doc.add("route", std::string(alpha == 0.0 ? "harmonic" : "hypergeometric"));
        doc.add("gap", gap);
      }
      if (id.do_assert) doc.add("pass", max_gap <= id.tol);
      emit(doc, id.out);
      if (id.do_assert)
        check_assert(max_gap <= id.tol, "max |gap| = " + efpf::format_real(max_gap) +
                                            " exceeds tol = " + efpf::format_real(id.tol));
    });
  }

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const assert_failure& e) {
    std::cerr << "error: assert: " << e.what() << "\n";
    return 4;
  } catch (const efpf::truncation_error& e) {
    std::cerr << "error: truncation: " << e.what() << "\n";
    return 3;
  } catch (const efpf::feasibility_error& e) {
    std::cerr << "error: feasibility: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: domain: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
}
