#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mgt/cayley.hpp"
#include "mgt/config.hpp"
#include "mgt/growth.hpp"
#include "mgt/hnn.hpp"
#include "mgt/limit.hpp"
#include "mgt/spectra.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;
constexpr int kExitConfig = 4;

struct GlobalFlags {
  std::string group;
  std::string config_path;
  std::size_t budget = mgt::kDefaultVertexBudget;
  unsigned long max_iterations = 100'000;
  double tolerance = 1e-10;
  bool symmetrize = false;
  unsigned long seed = 0;  // defaults are deterministic; echoed for the record
};

void add_group_flags(CLI::App* cmd, GlobalFlags& flags) {
  cmd->add_option("--group", flags.group,
                  "group shorthand, e.g. bs:2,3 free:2 limit_of:bs:2,3");
  cmd->add_option("--config", flags.config_path, "JSON group definition file");
  cmd->add_option("--budget", flags.budget, "ball vertex budget");
  cmd->add_option("--max-iter", flags.max_iterations, "solver iteration cap");
  cmd->add_option("--tol", flags.tolerance, "solver residual tolerance");
  cmd->add_flag("--symmetrize", flags.symmetrize,
                "displace over S u S^-1 instead of S");
  cmd->add_option("--seed", flags.seed, "echoed; all defaults deterministic");
}

mgt::SpectralOptions spectral_options(const GlobalFlags& flags) {
  mgt::SpectralOptions opts;
  opts.tolerance = flags.tolerance;
  opts.max_iterations = flags.max_iterations;
  opts.symmetrize = flags.symmetrize;
  opts.vertex_budget = flags.budget;
  return opts;
}

void csv_preamble(std::ostream& out, const GlobalFlags& flags) {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  out << "# generated " << std::put_time(std::gmtime(&now), "%FT%TZ")
      << " seed=" << flags.seed << "\n";
}

std::string fmt(double x) {
  std::ostringstream out;
  out << std::setprecision(17) << x;
  return out.str();
}

std::pair<unsigned, unsigned> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    unsigned v = static_cast<unsigned>(std::stoul(text));
    return {v, v};
  }
  return {static_cast<unsigned>(std::stoul(text.substr(0, dots))),
          static_cast<unsigned>(std::stoul(text.substr(dots + 2)))};
}

int run_check(const GlobalFlags& flags, bool emit_config) {
  auto cfg = mgt::GroupSpecConfig::load(flags.group, flags.config_path);
  if (emit_config) std::cout << cfg.to_json() << "\n";
  if (cfg.kind == mgt::GroupSpecConfig::Kind::Free) {
    std::cout << "free group: no HNN conditions to check\n";
    return kExitOk;
  }
  mgt::ConditionReport rep = mgt::report_for(cfg);
  auto word = [](bool b) { return b ? "pass" : "fail"; };
  std::cout << "conditions: " << word(rep.commute) << ' '
            << word(rep.joint_generation) << ' ' << word(rep.proper_union)
            << "\n";
  if (!rep.all()) {
    std::cout << rep.diagnostics << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

int run_ball(const GlobalFlags& flags, unsigned r, const std::string& dot_path) {
  auto built = mgt::build_group(mgt::GroupSpecConfig::load(flags.group, flags.config_path));
  mgt::CayleyBall ball = mgt::enumerate_ball(*built.oracle, r, flags.budget);
  std::cout << "group=" << built.oracle->name() << " r=" << r
            << " vertices=" << ball.size() << " edges=" << ball.edges.size()
            << "\n";
  if (!dot_path.empty()) {
    std::ofstream out(dot_path);
    out << mgt::export_dot(ball, built.oracle->generator_names());
  }
  return kExitOk;
}

int run_compare(const GlobalFlags& flags, const std::string& group_b,
                unsigned r_max) {
  auto a = mgt::build_group(mgt::GroupSpecConfig::load(flags.group, flags.config_path));
  auto b = mgt::build_group(mgt::GroupSpecConfig::parse_shorthand(group_b));
  unsigned r = mgt::max_common_radius(*a.oracle, *b.oracle, r_max, flags.budget);
  std::cout << "r_star=" << r << "\n";
  return kExitOk;
}

int run_converge(const GlobalFlags& flags, const std::string& i_range,
                 unsigned r_max) {
  auto built = mgt::build_group(mgt::GroupSpecConfig::load(flags.group, flags.config_path));
  if (!built.hnn) throw mgt::ConfigError("converge needs an HNN group");
  mgt::LimitOracle limit(built.hnn);
  auto [i0, i1] = parse_range(i_range);
  auto rows = mgt::convergence_profile(built.hnn, limit, i0, i1, r_max, flags.budget);
  csv_preamble(std::cout, flags);
  std::cout << "i,r_star,vertices,edges\n";
  for (const auto& row : rows)
    std::cout << row.i << ',' << row.r_star << ',' << row.vertices << ','
              << row.edges << "\n";
  return kExitOk;
}

void emit_alpha_row(std::ostream& out, const std::string& group, long long i,
                    unsigned r, const mgt::SpectralReport& rep) {
  out << group << ',' << i << ',' << r << ',' << fmt(rep.lambda_min) << ','
      << fmt(rep.bound_sqrt) << ',' << fmt(rep.bound_refined) << ','
      << rep.iterations << ',' << fmt(rep.residual);
}

int run_alpha(const GlobalFlags& flags, unsigned r) {
  auto built = mgt::build_group(mgt::GroupSpecConfig::load(flags.group, flags.config_path));
  mgt::SpectralReport rep = mgt::alpha_upper_bound(*built.oracle, r, spectral_options(flags));
  csv_preamble(std::cout, flags);
  std::cout << "group,i,r,lambda_min,bound_sqrt,bound_refined,iterations,residual\n";
  emit_alpha_row(std::cout, built.oracle->name(), 0, r, rep);
  std::cout << "\n";
  if (!rep.converged) {
    std::cerr << "solver did not converge within " << flags.max_iterations
              << " iterations (residual " << fmt(rep.residual) << ")\n";
    return 1;
  }
  return kExitOk;
}

int run_alpha_seq(const GlobalFlags& flags, const std::string& i_range,
                  unsigned r) {
  auto built = mgt::build_group(mgt::GroupSpecConfig::load(flags.group, flags.config_path));
  if (!built.hnn) throw mgt::ConfigError("alpha-seq needs an HNN group");
  mgt::LimitOracle limit(built.hnn);
  auto [i0, i1] = parse_range(i_range);
  auto result = mgt::alpha_sequence(built.hnn, limit, i0, i1, r, spectral_options(flags));
  csv_preamble(std::cout, flags);
  std::cout << "group,i,r,lambda_min,bound_sqrt,bound_refined,iterations,"
               "residual,r_star,matches_limit,nonincreasing_from_start\n";
  double first = result.rows.empty() ? 0.0 : result.rows.front().report.bound_refined;
  for (const auto& row : result.rows) {
    emit_alpha_row(std::cout, built.hnn->name(), row.i, r, row.report);
    std::cout << ',' << row.r_star << ',' << (row.matches_limit_bitwise ? 1 : 0)
              << ',' << (row.report.bound_refined <= first + 1e-12 ? 1 : 0)
              << "\n";
  }
  std::cout << "# limit: ";
  emit_alpha_row(std::cout, "limit(" + built.hnn->name() + ")", -1, r,
                 result.limit_report);
  std::cout << "\n";
  return kExitOk;
}

int run_growth(const GlobalFlags& flags, unsigned n_max) {
  auto built = mgt::build_group(mgt::GroupSpecConfig::load(flags.group, flags.config_path));
  mgt::GrowthTable table = mgt::growth_table(*built.oracle, n_max, flags.budget);
  csv_preamble(std::cout, flags);
  std::cout << "n,gamma,gamma_root,fekete_bound_so_far\n";
  double fekete = 0.0;
  for (unsigned n = 1; n <= table.n_max(); ++n) {
    double root = table.roots[n - 1];
    fekete = n == 1 ? root : std::min(fekete, root);
    std::cout << n << ',' << table.gamma[n] << ',' << fmt(root) << ','
              << fmt(fekete) << "\n";
  }
  return kExitOk;
}

int run_free_cert(const GlobalFlags& flags, const std::string& u_text,
                  const std::string& w_text, unsigned max_len) {
  auto built = mgt::build_group(mgt::GroupSpecConfig::load(flags.group, flags.config_path));
  if (!built.hnn) throw mgt::ConfigError("free-cert needs an HNN group");
  mgt::HnnOracle oracle(built.hnn);
  mgt::FreeWord u = mgt::parse_word(oracle, u_text);
  mgt::FreeWord w = mgt::parse_word(oracle, w_text);
  bool ok = built.hnn->free_subgroup_certificate(u, w, max_len);
  std::cout << "free-certificate L=" << max_len << ": "
            << (ok ? "pass" : "fail") << "\n";
  return kExitOk;
}

int run_walk(const GlobalFlags& flags, unsigned k) {
  auto built = mgt::build_group(mgt::GroupSpecConfig::load(flags.group, flags.config_path));
  auto probs = mgt::return_probability_sequence(*built.oracle, k, flags.budget);
  csv_preamble(std::cout, flags);
  std::cout << "k,p2k,p2k_root\n";
  for (unsigned j = 1; j <= k; ++j) {
    const mgt::Rat& p = probs[j - 1];
    double root = std::pow(p.convert_to<double>(), 1.0 / (2.0 * j));
    std::cout << j << ',' << boost::multiprecision::numerator(p) << '/'
              << boost::multiprecision::denominator(p) << ',' << fmt(root)
              << "\n";
  }
  return kExitOk;
}

int run_export(const GlobalFlags& flags, unsigned r, const std::string& out_path) {
  auto built = mgt::build_group(mgt::GroupSpecConfig::load(flags.group, flags.config_path));
  mgt::CayleyBall ball = mgt::enumerate_ball(*built.oracle, r, flags.budget);
  std::string dot = mgt::export_dot(ball, built.oracle->generator_names());
  if (out_path.empty() || out_path == "-") {
    std::cout << dot;
  } else {
    std::ofstream out(out_path);
    out << dot;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"marked-group toolkit: word-problem oracles, Cayley balls and "
               "displacement bounds"};
  app.require_subcommand(1);

  GlobalFlags flags;
  bool emit_config = false;
  unsigned r = 2, r_max = 4, n_max = 6, k = 4, cert_len = 6;
  std::string i_range = "0..3", group_b, dot_path, out_path, u_text, w_text;

  auto* check = app.add_subcommand("check", "validate HNN conditions");
  add_group_flags(check, flags);
  check->add_flag("--emit-config", emit_config, "print canonical JSON config");

  auto* ball = app.add_subcommand("ball", "enumerate a Cayley ball");
  add_group_flags(ball, flags);
  ball->add_option("--r", r, "radius")->required();
  ball->add_option("--dot", dot_path, "write DOT to file");

  auto* compare = app.add_subcommand("compare", "max common ball radius");
  add_group_flags(compare, flags);
  compare->add_option("--group-b", group_b, "second group shorthand")->required();
  compare->add_option("--rmax", r_max, "radius cap")->required();

  auto* converge = app.add_subcommand("converge", "convergence profile vs limit");
  add_group_flags(converge, flags);
  converge->add_option("--i", i_range, "marking index range, e.g. 0..3");
  converge->add_option("--rmax", r_max, "radius cap")->required();

  auto* alpha = app.add_subcommand("alpha", "displacement upper bound");
  add_group_flags(alpha, flags);
  alpha->add_option("--r", r, "Dirichlet radius")->required();

  auto* alpha_seq = app.add_subcommand("alpha-seq", "bounds along the filtration");
  add_group_flags(alpha_seq, flags);
  alpha_seq->add_option("--i", i_range, "marking index range, e.g. 0..3");
  alpha_seq->add_option("--r", r, "Dirichlet radius")->required();

  auto* growth = app.add_subcommand("growth", "growth function table");
  add_group_flags(growth, flags);
  growth->add_option("--n", n_max, "max word length")->required();

  auto* cert = app.add_subcommand("free-cert", "level-L freeness certificate");
  add_group_flags(cert, flags);
  cert->add_option("--u", u_text, "first word")->required();
  cert->add_option("--w", w_text, "second word")->required();
  cert->add_option("--L", cert_len, "word-length level")->required();

  auto* walk = app.add_subcommand("walk", "return probabilities of the uniform walk");
  add_group_flags(walk, flags);
  walk->add_option("--k", k, "half the number of steps")->required();

  auto* exp = app.add_subcommand("export", "DOT export of a ball");
  add_group_flags(exp, flags);
  exp->add_option("--r", r, "radius")->required();
  exp->add_option("--out", out_path, "output path ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(flags, emit_config);
    if (ball->parsed()) return run_ball(flags, r, dot_path);
    if (compare->parsed()) return run_compare(flags, group_b, r_max);
    if (converge->parsed()) return run_converge(flags, i_range, r_max);
    if (alpha->parsed()) return run_alpha(flags, r);
    if (alpha_seq->parsed()) return run_alpha_seq(flags, i_range, r);
    if (growth->parsed()) return run_growth(flags, n_max);
    if (cert->parsed()) return run_free_cert(flags, u_text, w_text, cert_len);
    if (walk->parsed()) return run_walk(flags, k);
    if (exp->parsed()) return run_export(flags, r, out_path);
  } catch (const mgt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mgt::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
