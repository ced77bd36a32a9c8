#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "seqtest/design.hpp"
#include "seqtest/highdim.hpp"

namespace seqtest::cli {
namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string g12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw ConfigError("bad number '" + s + "' in " + what);
  return v;
}

HypothesisModel parse_model(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("model must be gaussian:<eta> or bernoulli:<p0>,<p1>");
  const std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
  if (kind == "gaussian") return HypothesisModel::gaussian(to_double(rest, "--model"));
  if (kind == "bernoulli") {
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw ConfigError("bernoulli model needs <p0>,<p1>");
    return HypothesisModel::bernoulli(to_double(rest.substr(0, comma), "--model"),
                                      to_double(rest.substr(comma + 1), "--model"));
  }
  throw ConfigError("unknown model '" + kind + "'");
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw ConfigError("grid must be lo:hi:n");
  const double lo = to_double(parts[0], "--grid"), hi = to_double(parts[1], "--grid");
  const double n = to_double(parts[2], "--grid");
  if (n < 1 || n != std::floor(n)) throw ConfigError("grid needs a positive integer point count");
  return linear_grid(lo, hi, static_cast<int>(n));
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  return f;
}

void finish(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

// Writes to --out when given, to stdout otherwise.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  auto f = open_out(path);
  f << text;
  finish(f, path);
}

struct DesignFlags {
  std::string family;
  std::string model = "gaussian:0.5";
  double alpha = 0.05;
  double beta = 0.05;
  int K = 3;
  bool strict_cstar = false;
  std::string gamma_rule = "optimize";
  bool joint_K = false;
  std::string variant = "lorden-markov";
  std::string plan_path;
};

void add_design_flags(CLI::App* sub, DesignFlags& d, bool family_positional) {
  if (family_positional) sub->add_option("family", d.family, "fsst | 3st | gmt | st | modst | sprt");
  else sub->add_option("--family", d.family, "fsst | 3st | gmt | st | modst | sprt");
  sub->add_option("--model", d.model, "gaussian:<eta> or bernoulli:<p0>,<p1>");
  sub->add_option("--alpha", d.alpha);
  sub->add_option("--beta", d.beta);
  sub->add_option("--K", d.K, "number of stages for st / modst");
  sub->add_flag("--strict-cstar", d.strict_cstar, "smallest feasible FSST threshold instead of the midpoint");
  sub->add_option("--gamma-rule", d.gamma_rule, "GMT first inactive level: optimize | theta-sqrt-log");
  sub->add_flag("--joint-K", d.joint_K, "GMT: search K_i jointly with gamma");
  sub->add_option("--variant", d.variant, "3st variant: lorden-markov | gmt-k0");
}

Procedure design_procedure(const DesignFlags& d, const HypothesisModel& model) {
  if (d.family.empty()) throw ConfigError("no test family given");
  Family fam;
  try {
    fam = parse_family(d.family);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  switch (fam) {
    case Family::Fsst: return design_fsst_plan(model, d.alpha, d.beta, d.strict_cstar);
    case Family::ThreeStage: {
      ThreeStageVariant v;
      if (d.variant == "lorden-markov") v = ThreeStageVariant::LordenMarkov;
      else if (d.variant == "gmt-k0") v = ThreeStageVariant::GmtK0;
      else throw ConfigError("unknown 3st variant '" + d.variant + "'");
      return design_3st(model, d.alpha, d.beta, v);
    }
    case Family::Gmt: {
      GmtOptions opt;
      if (d.gamma_rule == "optimize") opt.gamma_rule = GammaRule::OptimizeEssBound;
      else if (d.gamma_rule == "theta-sqrt-log") opt.gamma_rule = GammaRule::ThetaSqrtLog;
      else throw ConfigError("unknown gamma rule '" + d.gamma_rule + "'");
      opt.joint_K = d.joint_K;
      opt.strict_cstar = d.strict_cstar;
      return design_gmt(model, d.alpha, d.beta, opt);
    }
    case Family::St: return design_st(model, d.alpha, d.beta, d.K);
    case Family::ModSt: return design_mod_st(model, d.alpha, d.beta, d.K);
    case Family::Sprt: return design_sprt(d.alpha, d.beta);
  }
  throw ConfigError("unknown family");
}

// A plan read from --plan, or designed from the flags and passed through its
// text record so that both routes evaluate the same thresholds.
struct Resolved {
  Procedure proc;
  HypothesisModel model;
  double alpha;
  double beta;
};

Resolved resolve(const DesignFlags& d) {
  if (!d.plan_path.empty()) {
    std::ifstream f(d.plan_path);
    if (!f) throw IoError("cannot read plan '" + d.plan_path + "'");
    TestPlan plan;
    try {
      plan = read_plan(f);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    const HypothesisModel model = parse_model(plan.meta.model);
    return {plan, model, plan.meta.alpha, plan.meta.beta};
  }
  const HypothesisModel model = parse_model(d.model);
  Procedure proc = design_procedure(d, model);
  if (auto* plan = std::get_if<TestPlan>(&proc)) proc = plan_from_string(plan_to_string(*plan));
  return {proc, model, d.alpha, d.beta};
}

double parse_truth(const std::string& s, const HypothesisModel& model) {
  if (s == "h0") return model.truth_of(Hypothesis::H0);
  if (s == "h1") return model.truth_of(Hypothesis::H1);
  return to_double(s, "--truth");
}

bool exact_method(const std::string& m) {
  if (m == "exact") return true;
  if (m == "mc") return false;
  throw ConfigError("method must be exact or mc");
}

std::string design_text(const Procedure& proc, const HypothesisModel& model) {
  std::ostringstream os;
  char buf[256];
  if (auto* s = std::get_if<SprtDesign>(&proc)) {
    std::snprintf(buf, sizeof buf, "# sprt A=%.12g B=%.12g\n", s->A, s->B);
    os << buf;
    return os.str();
  }
  const auto& plan = std::get<TestPlan>(proc);
  const auto& m = plan.meta;
  if (m.family == Family::Fsst) {
    std::snprintf(buf, sizeof buf, "# n=%ld c=%.4f\n", plan.max_n(), plan.checkpoints.back().lo);
    os << buf;
  }
  if (m.family == Family::Gmt) {
    const KHat kh = gmt_k_hat(model, m.alpha, m.beta);
    os << "# K0hat=" << kh.K0 << " K1hat=" << kh.K1 << "\n";
  }
  std::snprintf(buf, sizeof buf, "# checkpoints=%zu opportunities=%d max_n=%ld n_star=%ld\n", plan.checkpoints.size(),
                plan.opportunity_count(), plan.max_n(), n_star(model, m.alpha, m.beta));
  os << buf;
  std::snprintf(buf, sizeof buf, "# budget type1=%.6g type2=%.6g\n", plan.budget_type1(), plan.budget_type2());
  os << buf;
  write_plan(os, plan);
  return os.str();
}

std::string eval_header() { return "truth,ess,ess_over_nstar,type1,type2,max_n,method,se_ess,se_type1,se_type2,reps,seed\n"; }

std::string eval_row(double truth, const EvalReport& r, double ns) {
  std::ostringstream os;
  os << g17(truth) << "," << g17(r.ess) << "," << g17(r.ess / ns) << "," << g17(r.type1) << "," << g17(r.type2) << ","
     << r.max_n << "," << to_string(r.method) << "," << g17(r.se_ess) << "," << g17(r.se_type1) << ","
     << g17(r.se_type2) << "," << r.reps << "," << r.seed << "\n";
  return os.str();
}

// Prefixes every line of a CSV block; the header gets head, rows get row.
std::string prefix_csv(const std::string& csv, const std::string& head, const std::string& row, bool with_header) {
  std::istringstream is(csv);
  std::ostringstream os;
  bool first = true;
  for (std::string line; std::getline(is, line);) {
    if (first) {
      if (with_header) os << head << line << "\n";
      first = false;
      continue;
    }
    os << row << line << "\n";
  }
  return os.str();
}

// ---- reproduce ----

struct Setup {
  const char* name;
  const char* letter;
  double alpha;
  double beta;
  int K;        // ST / mod-ST stages in the comparison
  int K_curves; // largest K in the per-K curves
};

constexpr Setup kSetups[] = {{"symmetric", "a", 1e-6, 1e-6, 3, 4}, {"asymmetric", "b", 1e-12, 1e-2, 5, 6}};

struct ReproduceFlags {
  std::string target;
  std::uint64_t seed = 7;
  long reps = 100000;
  std::string out_dir = ".";
  std::string grid = "-0.6:0.6:100";
  long m = 1000000;
  int K_max = 10;
};

class Reproducer {
 public:
  Reproducer(const ReproduceFlags& f, std::ostream& log)
      : f_(f), log_(log), model_(HypothesisModel::gaussian(0.5)), grid_(parse_grid(f.grid)) {
    mc_.reps = f.reps;
    mc_.seed = f.seed;
  }

  void run(const std::string& target) {
    std::error_code ec;
    std::filesystem::create_directories(f_.out_dir, ec);
    if (ec) throw IoError("cannot create '" + f_.out_dir + "': " + ec.message());
    if (target == "table1") table1();
    else if (target == "fig1") fig1();
    else if (target == "fig2") fig2();
    else if (target == "fig3") fig3();
    else if (target == "fig4") fig45(Scenario::KnownCount, "fig4");
    else if (target == "fig5") fig45(Scenario::UpperBoundOnly, "fig5");
    else if (target == "all") {
      table1();
      fig1();
      fig2();
      fig3();
      fig45(Scenario::KnownCount, "fig4");
      fig45(Scenario::UpperBoundOnly, "fig5");
    } else {
      throw ConfigError("unknown target '" + target + "'");
    }
  }

 private:
  std::string path(const std::string& name) const { return (std::filesystem::path(f_.out_dir) / name).string(); }

  void write(const std::string& name, const std::string& text) {
    emit(text, path(name), log_);
    log_ << "wrote " << path(name) << "\n";
  }

  std::vector<std::pair<std::string, Procedure>> procedures(const Setup& s, bool with_fsst) {
    std::vector<std::pair<std::string, Procedure>> v;
    if (with_fsst) v.emplace_back("fsst", design_fsst_plan(model_, s.alpha, s.beta));
    v.emplace_back("gmt", design_gmt(model_, s.alpha, s.beta));
    v.emplace_back("st", design_st(model_, s.alpha, s.beta, s.K));
    v.emplace_back("modst", design_mod_st(model_, s.alpha, s.beta, s.K));
    v.emplace_back("sprt", design_sprt(s.alpha, s.beta));
    return v;
  }

  static int stages_of(const Procedure& p) {
    // K only means something for ST and mod-ST.
    const auto* plan = std::get_if<TestPlan>(&p);
    if (plan && (plan->meta.family == Family::St || plan->meta.family == Family::ModSt)) return plan->meta.K;
    return 0;
  }

  const SweepResult& sweep(const Setup& s, const std::string& name, const Procedure& p) {
    const std::string key = std::string(s.name) + "/" + name;
    auto it = sweeps_.find(key);
    if (it == sweeps_.end()) {
      it = sweeps_.emplace(key, sweep_mu(p, model_, grid_, static_cast<double>(n_star(model_, s.alpha, s.beta)), true, mc_))
               .first;
    }
    return it->second;
  }

  void table1() {
    std::ostringstream os;
    os << "setup,alpha,beta,family,K,entry,mu,ratio,se\n";
    for (const Setup& s : kSetups) {
      const double ns = static_cast<double>(n_star(model_, s.alpha, s.beta));
      for (const auto& [name, proc] : procedures(s, false)) {
        const bool mc = std::holds_alternative<SprtDesign>(proc);
        auto at = [&](double mu) {
          return mc ? eval_mc(proc, model_, mu, mc_) : eval_exact(std::get<TestPlan>(proc), model_, mu);
        };
        const EvalReport lo = at(-0.5), hi = at(0.5);
        const SweepResult& sw = sweep(s, name, proc);
        const SweepRow& w = sw.rows[sw.worst];
        const std::string lead = std::string(s.name) + "," + g12(s.alpha) + "," + g12(s.beta) + "," + name + "," +
                                 std::to_string(stages_of(proc)) + ",";
        os << lead << "h0," << g12(-0.5) << "," << g12(lo.ess / ns) << "," << g12(lo.se_ess / ns) << "\n";
        os << lead << "worst," << g12(w.mu) << "," << g12(w.ess_over_nstar) << "," << g12(w.se_ess / ns) << "\n";
        os << lead << "h1," << g12(0.5) << "," << g12(hi.ess / ns) << "," << g12(hi.se_ess / ns) << "\n";
      }
    }
    write("table1.csv", os.str());
  }

  void fig1() {
    for (const Setup& s : kSetups) {
      std::ostringstream os;
      bool header = true;
      for (const auto& [name, proc] : procedures(s, true)) {
        std::ostringstream csv;
        write_sweep_csv(csv, sweep(s, name, proc));
        os << prefix_csv(csv.str(), "family,K,", name + "," + std::to_string(stages_of(proc)) + ",", header);
        header = false;
      }
      write(std::string("fig1") + s.letter + ".csv", os.str());
    }
  }

  void fig2() {
    const char* letters[2][2] = {{"a", "b"}, {"c", "d"}};
    for (int si = 0; si < 2; ++si) {
      const Setup& s = kSetups[si];
      const double ns = static_cast<double>(n_star(model_, s.alpha, s.beta));
      for (int fi = 0; fi < 2; ++fi) {
        const std::string name = fi == 0 ? "st" : "modst";
        std::ostringstream os;
        for (int K = 1; K <= s.K_curves; ++K) {
          const TestPlan plan =
              fi == 0 ? design_st(model_, s.alpha, s.beta, K) : design_mod_st(model_, s.alpha, s.beta, K);
          std::ostringstream csv;
          write_sweep_csv(csv, sweep_mu(plan, model_, grid_, ns, true, mc_));
          os << prefix_csv(csv.str(), "family,K,", name + "," + std::to_string(K) + ",", K == 1);
        }
        write(std::string("fig2") + letters[si][fi] + ".csv", os.str());
      }
    }
  }

  const std::vector<HighDimRow>& highdim(Scenario sc) {
    auto it = highdim_.find(sc);
    if (it == highdim_.end()) {
      HighDimConfig base;
      base.m = f_.m;
      base.alpha = base.beta = 0.05;
      HighDimSweepOptions opt;
      opt.K_max = f_.K_max;
      opt.mc = mc_;
      const std::vector<Family> fams = {Family::Fsst, Family::Gmt, Family::St, Family::ModSt, Family::Sprt};
      it = highdim_.emplace(sc, highdim_sweep(model_, base, desk_u_grid(f_.m, sc), sc, fams, opt)).first;
    }
    return it->second;
  }

  static std::string highdim_text(const std::vector<HighDimRow>& rows) {
    std::ostringstream os;
    write_highdim_csv(os, rows);
    return os.str();
  }

  void fig3() {
    write("fig3a.csv", highdim_text(highdim(Scenario::KnownCount)));
    write("fig3b.csv", highdim_text(highdim(Scenario::UpperBoundOnly)));
  }

  void fig45(Scenario sc, const std::string& stem) {
    const auto& rows = highdim(sc);
    std::vector<HighDimRow> left;
    for (const auto& r : rows)
      if (r.u_over_m <= 0.01) left.push_back(r);
    write(stem + "a.csv", highdim_text(rows));
    write(stem + "b.csv", highdim_text(left));
  }

  ReproduceFlags f_;
  std::ostream& log_;
  HypothesisModel model_;
  std::vector<double> grid_;
  McConfig mc_;
  std::map<std::string, SweepResult> sweeps_;
  std::map<Scenario, std::vector<HighDimRow>> highdim_;
};

// Applies a JSON config to the selected subcommand. Keys are option names
// without leading dashes; options given on the command line win.
void apply_config(CLI::App* sub, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "config") throw ConfigError("config: nested 'config' key");
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr) opt = sub->get_option_no_throw(key);
    if (opt == nullptr) throw ConfigError("config: unknown key '" + key + "' for '" + sub->get_name() + "'");
    if (opt->count() > 0) continue;
    std::vector<std::string> vals;
    auto one = [&](const nlohmann::json& v) {
      if (v.is_string()) vals.push_back(v.get<std::string>());
      else if (v.is_boolean()) vals.push_back(v.get<bool>() ? "true" : "false");
      else if (v.is_number()) vals.push_back(v.dump());
      else throw ConfigError("config: unsupported value for '" + key + "'");
    };
    if (value.is_array()) {
      for (const auto& v : value) one(v);
    } else {
      one(value);
    }
    for (const auto& v : vals) opt->add_result(v);
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ConfigError("config: '" + key + "': " + e.what());
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multistage and sequential test design and evaluation"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with option values (keys are option names)");

  DesignFlags dflags;
  std::string out_path;
  auto* design = app.add_subcommand("design", "design a test and print its plan record");
  add_design_flags(design, dflags, true);
  design->add_option("--out", out_path);
  design->add_option("--config", config_path);

  DesignFlags eflags;
  std::vector<std::string> truths;
  std::string method = "exact";
  McConfig mc;
  auto* eval = app.add_subcommand("eval", "evaluate a plan at one or more true parameter values");
  add_design_flags(eval, eflags, false);
  eval->add_option("--plan", eflags.plan_path, "plan record written by 'design'");
  eval->add_option("--truth", truths, "h0, h1 or a parameter value (repeatable)");
  eval->add_option("--method", method, "exact | mc");
  eval->add_option("--seed", mc.seed);
  eval->add_option("--reps", mc.reps);
  eval->add_flag("--antithetic", mc.antithetic);
  eval->add_option("--out", out_path);
  eval->add_option("--config", config_path);

  DesignFlags sflags;
  std::string grid = "-0.6:0.6:100";
  auto* sweep = app.add_subcommand("sweep", "expected sample size over a grid of true means");
  add_design_flags(sweep, sflags, false);
  sweep->add_option("--plan", sflags.plan_path);
  sweep->add_option("--grid", grid, "lo:hi:n");
  sweep->add_option("--method", method);
  sweep->add_option("--seed", mc.seed);
  sweep->add_option("--reps", mc.reps);
  sweep->add_option("--out", out_path);
  sweep->add_option("--config", config_path);

  HighDimConfig hd;
  hd.m = 1000000;
  hd.u = 1;
  auto* cal = app.add_subcommand("calibrate", "per-stream levels for familywise error control");
  cal->add_option("--m", hd.m);
  cal->add_option("--l", hd.l);
  cal->add_option("--u", hd.u);
  cal->add_option("--kappa", hd.kappa);
  cal->add_option("--iota", hd.iota);
  cal->add_option("--alpha", hd.alpha);
  cal->add_option("--beta", hd.beta);
  cal->add_option("--out", out_path);
  cal->add_option("--config", config_path);

  ReproduceFlags rflags;
  auto* rep = app.add_subcommand("reproduce", "write the CSV data behind the table and figures");
  rep->add_option("target", rflags.target, "table1 | fig1 | fig2 | fig3 | fig4 | fig5 | all");
  rep->add_option("--seed", rflags.seed);
  rep->add_option("--reps", rflags.reps);
  rep->add_option("--out", rflags.out_dir, "output directory");
  rep->add_option("--grid", rflags.grid, "mean grid lo:hi:n for table1, fig1, fig2");
  rep->add_option("--m", rflags.m);
  rep->add_option("--K-max", rflags.K_max);
  rep->add_option("--config", config_path);

  try {
    try {
      app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::ParseError& e) {
      throw ConfigError(e.what());
    }
    CLI::App* sub = app.get_subcommands().front();
    if (!config_path.empty()) apply_config(sub, config_path);

    if (sub == design) {
      const HypothesisModel model = parse_model(dflags.model);
      emit(design_text(design_procedure(dflags, model), model), out_path, out);
    } else if (sub == eval) {
      const Resolved r = resolve(eflags);
      const bool exact = exact_method(method);
      if (mc.reps < 100) throw ConfigError("--reps must be at least 100");
      if (truths.empty()) truths = {"h0", "h1"};
      const double ns = static_cast<double>(n_star(r.model, r.alpha, r.beta));
      std::string text = eval_header();
      for (const auto& t : truths) {
        const double truth = parse_truth(t, r.model);
        const EvalReport rep_ = exact && std::holds_alternative<TestPlan>(r.proc)
                                    ? eval_exact(std::get<TestPlan>(r.proc), r.model, truth)
                                    : eval_mc(r.proc, r.model, truth, mc);
        text += eval_row(truth, rep_, ns);
      }
      emit(text, out_path, out);
    } else if (sub == sweep) {
      const Resolved r = resolve(sflags);
      const bool exact = exact_method(method);
      if (mc.reps < 100) throw ConfigError("--reps must be at least 100");
      const std::vector<double> g = parse_grid(grid);
      const double ns = static_cast<double>(n_star(r.model, r.alpha, r.beta));
      std::ostringstream os;
      write_sweep_csv(os, sweep_mu(r.proc, r.model, g, ns, exact, mc));
      emit(os.str(), out_path, out);
    } else if (sub == cal) {
      const CalibratedLevels lv = (hd.kappa == 1 && hd.iota == 1) ? calibrate_fwe(hd) : calibrate_gfwe(hd);
      std::ostringstream os;
      os << "m,l,u,kappa,iota,alpha,beta,alpha_stream,beta_stream\n"
         << hd.m << "," << hd.l << "," << hd.u << "," << hd.kappa << "," << hd.iota << "," << g12(hd.alpha) << ","
         << g12(hd.beta) << "," << g12(lv.alpha_stream) << "," << g12(lv.beta_stream) << "\n";
      emit(os.str(), out_path, out);
    } else if (sub == rep) {
      if (rflags.target.empty()) throw ConfigError("reproduce needs a target");
      if (rflags.reps < 100) throw ConfigError("--reps must be at least 100");
      Reproducer(rflags, out).run(rflags.target);
    }
    return kOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DesignError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace seqtest::cli
