#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lifs/beta.hpp"
#include "lifs/builtins.hpp"
#include "lifs/errors.hpp"
#include "lifs/geometry.hpp"
#include "lifs/ifs.hpp"
#include "lifs/io.hpp"
#include "lifs/shadowing.hpp"
#include "lifs/space.hpp"
#include "lifs/stability.hpp"
#include "lifs/symbolic.hpp"

namespace {

using namespace lifs;

struct Options {
  std::string system = "superfractal";
  std::string config;
  double param = std::nan("");
  int level = 7;
  int depth = 8;
  int horizon = 12;
  int window = 24;
  int iters = 256;
  double delta = 1.0 / 16.0;
  double epsilon = 0.25;
  double margin = -1.0;
  double threshold = 0.15;
  std::vector<double> params;
  std::vector<int> alphabet;
  std::uint64_t seed = 1;
  std::string out = ".";
  bool ci_assert = false;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--system", opt.system,
                  "builtin name (superfractal, nonsemicont, markov2, "
                  "exshift2, gd-2cycle, beta-golden, beta-sparse, beta1d)");
  cmd->add_option("--config", opt.config, "JSON system file (grid systems)");
  cmd->add_option("--param", opt.param,
                  "family parameter (superfractal height, corner size, base)");
  cmd->add_option("--level", opt.level, "grid resolution exponent L");
  cmd->add_option("--depth", opt.depth, "word / language depth K");
  cmd->add_option("--horizon", opt.horizon, "pseudo-orbit horizon N");
  cmd->add_option("--window", opt.window, "sequence-space digit window");
  cmd->add_option("--iters", opt.iters, "attractor iteration budget");
  cmd->add_option("--delta", opt.delta, "pseudo-orbit step budget");
  cmd->add_option("--epsilon", opt.epsilon, "shadowing tolerance");
  cmd->add_option("--margin", opt.margin,
                  "dichotomy margin zeta (enables the transition report)");
  cmd->add_option("--threshold", opt.threshold, "sweep jump threshold");
  cmd->add_option("--params", opt.params, "sweep parameter grid")
      ->delimiter(',');
  cmd->add_option("--alphabet", opt.alphabet,
                  "digit sub-alphabet for base-language commands")
      ->delimiter(',');
  cmd->add_option("--seed", opt.seed, "random seed");
  cmd->add_option("--out", opt.out, "output directory");
  cmd->add_flag("--assert", opt.ci_assert,
                "exit 4 when the run certifies a negative result");
}

std::string out_path(const Options& opt, const std::string& name) {
  std::filesystem::create_directories(opt.out);
  return (std::filesystem::path(opt.out) / name).string();
}

double param_or(const Options& opt, double fallback) {
  return std::isnan(opt.param) ? fallback : opt.param;
}

bool is_beta_name(const std::string& name) {
  return name == "beta-golden" || name == "beta-sparse" || name == "beta1d";
}

BetaSystem beta_system_of(const Options& opt) {
  if (opt.system == "beta-golden") return beta_golden();
  if (opt.system == "beta-sparse") return beta_sparse();
  if (opt.system == "beta1d") {
    if (std::isnan(opt.param)) {
      fail(ErrorCode::BadConfig, "beta1d needs --param <base>");
    }
    return make_beta_system(opt.param);
  }
  fail(ErrorCode::BadConfig, "not a base-family system: " + opt.system);
}

LocalIFS build_system(const Options& opt) {
  if (!opt.config.empty()) {
    return io::load_system_json(opt.config);
  }
  if (opt.system == "superfractal") {
    return superfractal(param_or(opt, 1.0), opt.level);
  }
  if (opt.system == "nonsemicont") {
    return nonsemicont(param_or(opt, 0.3), opt.level);
  }
  if (opt.system == "markov2") {
    return markov2(opt.level);
  }
  if (opt.system == "exshift2") {
    return exshift2(opt.window);
  }
  if (opt.system == "gd-2cycle") {
    return graph_directed_embed(gd_2cycle(opt.level));
  }
  if (is_beta_name(opt.system)) {
    return beta_local_ifs(beta_system_of(opt), opt.level);
  }
  fail(ErrorCode::BadConfig, "unknown system: " + opt.system);
}

void write_image(const Options& opt, const std::string& stem,
                 const SpaceSet& cover) {
  if (!std::holds_alternative<GridSet>(cover)) return;  // no geometry to draw
  const GridSet& g = std::get<GridSet>(cover);
  if (g.dim() == 2) {
    io::write_ppm(out_path(opt, stem + ".ppm"), g);
  } else {
    io::write_pgm_strip(out_path(opt, stem + ".pgm"), g);
  }
}

int cmd_attractor(const Options& opt) {
  LocalIFS R = build_system(opt);
  AttractorReport rep = attractor(R, opt.iters, 0.0);
  write_image(opt, "attractor", rep.cover);
  io::write_attractor_report(out_path(opt, "attractor_report.txt"), rep);
  std::printf("attractor: iterations=%d converged=%s\n", rep.iterations,
              rep.converged ? "yes" : "no");
  return rep.converged ? 0 : 3;
}

int cmd_codespace(const Options& opt) {
  LanguageSample words = [&] {
    if (opt.config.empty() && is_beta_name(opt.system)) {
      BetaSystem b = beta_system_of(opt);
      std::vector<int> alphabet = opt.alphabet;
      if (alphabet.empty()) {
        for (int d = 0; d < b.m; ++d) alphabet.push_back(d);
      }
      return restricted_words(b, alphabet, opt.depth);
    }
    return code_words(build_system(opt), opt.depth);
  }();
  io::write_language_csv(out_path(opt, "language.csv"), words);
  io::write_follower_csv(out_path(opt, "followers.csv"), words,
                         std::max(1, opt.depth - 1));

  std::ofstream report(out_path(opt, "sft_report.txt"));
  if (!report) {
    fail(ErrorCode::IoFailure, "cannot open sft_report.txt");
  }
  bool all_consistent = true;
  for (int k = 1; k <= std::min(5, opt.depth - 1); ++k) {
    const SftCheck check = is_k_step_sft(words, k);
    report << "k=" << k << ": "
           << (check.consistent ? "consistent" : "inconsistent");
    if (!check.consistent) {
      all_consistent = false;
      report << " witness=";
      for (std::size_t i = 0; i < check.witness.size(); ++i) {
        report << (i ? " " : "") << check.witness[i];
      }
    }
    report << "\n";
  }
  if (opt.margin > 0.0) {
    LocalIFS R = build_system(opt);
    const MarkovReport mk = markov_condition(R, opt.margin, opt.depth);
    report << "markov_margin: " << opt.margin << "\n";
    report << "markov_passes: " << (mk.passes ? "yes" : "no") << "\n";
    report << "words_match: " << (mk.words_match ? "yes" : "no") << "\n";
  }
  report.flush();
  std::printf("codespace: words(%d)=%zu sft=%s\n", words.max_length(),
              words.word_count(words.max_length()),
              all_consistent ? "consistent" : "inconsistent");
  if (!all_consistent && opt.ci_assert) return 4;
  return 0;
}

Word seeded_walk(const LocalIFS& R, int length, std::uint64_t seed) {
  const TransitionMatrix M = transition_matrix(R);
  const int n = R.piece_count();
  std::mt19937_64 rng(seed);
  Word w = {static_cast<int>(rng() % static_cast<std::uint64_t>(n))};
  while (static_cast<int>(w.size()) < length) {
    std::vector<int> allowed;
    for (int i = 0; i < n; ++i) {
      if (M[static_cast<std::size_t>(i)][static_cast<std::size_t>(w.back())]) {
        allowed.push_back(i);
      }
    }
    if (allowed.empty()) {
      fail(ErrorCode::DeadEnd, "word has no admissible continuation");
    }
    w.push_back(allowed[rng() % allowed.size()]);
  }
  return w;
}

std::vector<double> halving_deltas(double from) {
  std::vector<double> deltas;
  const double floor_delta = std::pow(2.0, -10);
  for (double d = from; d >= floor_delta * (1.0 - 1e-12); d /= 2.0) {
    deltas.push_back(d);
  }
  if (deltas.empty()) deltas.push_back(from);
  return deltas;
}

int cmd_shadow(const Options& opt) {
  LocalIFS R = build_system(opt);
  Word word;
  PseudoOrbit po;
  if (opt.config.empty() && opt.system == "exshift2") {
    const ReplayOrbit replay =
        exshift2_replay(opt.delta, opt.horizon, opt.window);
    word = replay.a;
    po = assemble_pseudo_orbit(R, replay.a, replay.points, replay.delta);
  } else {
    word = seeded_walk(R, opt.horizon + 1, opt.seed);
    po = make_pseudo_orbit(R, word, opt.delta, opt.horizon, opt.seed);
  }
  io::write_orbit_csv(out_path(opt, "orbit.csv"), R, po);

  const ShadowResult res = shadow_search(R, po, opt.epsilon);
  const GapCurve curve =
      shadowing_gap(R, word, halving_deltas(opt.delta), opt.horizon);
  io::write_gap_csv(out_path(opt, "gap.csv"), curve);

  std::ofstream report(out_path(opt, "shadow_report.txt"));
  if (!report) {
    fail(ErrorCode::IoFailure, "cannot open shadow_report.txt");
  }
  const char* status = res.status == ShadowStatus::Found          ? "found"
                       : res.status == ShadowStatus::CertifiedNone ? "certified-none"
                                                                    : "inconclusive";
  report << "status: " << status << "\n";
  report << "achieved: " << res.achieved << "\n";
  report << "lower_bound: " << res.lower_bound << "\n";
  report << "cesaro: " << res.cesaro << "\n";
  report << "horizon: " << res.horizon << "\n";
  report << "note: " << res.note << "\n";
  report.flush();
  std::printf("shadow: status=%s achieved=%g lower_bound=%g\n", status,
              res.achieved, res.lower_bound);
  if (res.status == ShadowStatus::Inconclusive) return 3;
  if (res.status == ShadowStatus::CertifiedNone && opt.ci_assert) return 4;
  return 0;
}

int cmd_beta(const Options& opt) {
  const BetaSystem b = beta_system_of(opt);
  std::ofstream report(out_path(opt, "beta_report.txt"));
  if (!report) {
    fail(ErrorCode::IoFailure, "cannot open beta_report.txt");
  }
  char num[48];
  std::snprintf(num, sizeof(num), "%.19Lg", b.beta);
  report << "beta: " << num << "\n";
  report << "alphabet: 0.." << b.m - 1 << "\n";
  report << "digits:";
  for (int d : b.digits) report << " " << d;
  report << "\n";
  report << "reliable_digits: " << b.reliable << "\n";
  report << "zero_tail: " << (b.zero_tail ? "yes" : "no") << "\n";
  const char* kind = b.classification.kind == ParryKind::Simple     ? "simple"
                     : b.classification.kind == ParryKind::Periodic ? "periodic"
                                                                     : "undetermined";
  report << "expansion_kind: " << kind << "\n";
  if (b.classification.kind == ParryKind::Simple) {
    report << "expansion_length: " << b.classification.length << "\n";
    report << "note: the expansion of one terminates, so language\n";
    report << "  checks at any depth are certified by the finite digit\n";
    report << "  data alone\n";
  } else if (b.classification.kind == ParryKind::Periodic) {
    report << "preperiod: " << b.classification.preperiod << "\n";
    report << "period: " << b.classification.period << "\n";
  } else {
    report << "certified_depth: " << b.classification.depth << "\n";
    report << "note: classification undetermined at this depth; word\n";
    report << "  comparisons beyond the certified prefix are refused\n";
  }
  report.flush();
  std::printf("beta: %s kind=%s reliable=%d\n", num, kind, b.reliable);
  return 0;
}

int cmd_sweep(const Options& opt) {
  SweepConfig cfg;
  if (opt.system == "superfractal") {
    cfg.family = Family::Superfractal;
  } else if (opt.system == "nonsemicont") {
    cfg.family = Family::Nonsemicont;
  } else if (opt.system == "beta1d") {
    cfg.family = Family::Beta1d;
  } else {
    fail(ErrorCode::BadConfig, "sweep families: superfractal, nonsemicont, beta1d");
  }
  if (opt.params.empty()) {
    fail(ErrorCode::BadConfig, "sweep needs --params p1,p2,...");
  }
  cfg.params = opt.params;
  cfg.level = opt.level;
  cfg.max_iter = opt.iters;
  cfg.jump_threshold = opt.threshold;
  const SweepReport rep = family_sweep(cfg);

  io::write_sweep_csv(out_path(opt, "sweep.csv"), rep);
  bool converged = true;
  for (std::size_t i = 0; i < rep.reports.size(); ++i) {
    char stem[32];
    std::snprintf(stem, sizeof(stem), "attractor_%02zu", i);
    write_image(opt, stem, rep.reports[i].cover);
    converged = converged && rep.reports[i].converged;
  }
  std::ofstream report(out_path(opt, "sweep_report.txt"));
  if (!report) {
    fail(ErrorCode::IoFailure, "cannot open sweep_report.txt");
  }
  report << "usc_slack: " << rep.usc_slack << "\n";
  report << "jump_threshold: " << rep.jump_threshold << "\n";
  bool any_jump = false;
  for (std::size_t k = 0; k + 1 < rep.params.size(); ++k) {
    report << "pair " << rep.params[k] << " -> " << rep.params[k + 1] << ": ";
    report << "usc=" << (rep.usc_ok[k] ? "ok" : "FAIL");
    report << " jump=" << rep.jump_size[k];
    if (rep.lsc_jump[k]) {
      any_jump = true;
      report << " JUMP witness=(" << rep.jump_witness[k][0] << ", "
             << rep.jump_witness[k][1] << ")";
    }
    report << "\n";
  }
  report.flush();
  std::printf("sweep: %zu parameters, %s\n", rep.params.size(),
              any_jump ? "jump detected" : "no jump at threshold");
  if (!converged) return 3;
  if (any_jump && opt.ci_assert) return 4;
  return 0;
}

int cmd_embed(const Options& opt) {
  if (!opt.config.empty() || opt.system != "gd-2cycle") {
    fail(ErrorCode::BadConfig, "embed supports --system gd-2cycle");
  }
  const FiberGraph g = gd_2cycle(opt.level);
  LocalIFS R = graph_directed_embed(g);
  const TransitionMatrix M = transition_matrix(R);
  const MarkovReport mk = markov_condition(R, embed_margin(g.vertex_count), 6);
  AttractorReport rep = attractor(R, opt.iters, 0.0);
  write_image(opt, "attractor", rep.cover);

  std::ofstream report(out_path(opt, "embed_report.txt"));
  if (!report) {
    fail(ErrorCode::IoFailure, "cannot open embed_report.txt");
  }
  report << "vertices: " << g.vertex_count << "\n";
  report << "edges: " << g.edges.size() << "\n";
  report << "matrix:";
  for (std::size_t i = 0; i < M.size(); ++i) {
    report << (i ? " ; " : " ");
    for (std::size_t j = 0; j < M[i].size(); ++j) {
      report << (j ? " " : "") << M[i][j];
    }
  }
  report << "\n";
  report << "markov_margin: " << embed_margin(g.vertex_count) << "\n";
  report << "markov_passes: " << (mk.passes ? "yes" : "no") << "\n";
  report << "words_match: " << (mk.words_match ? "yes" : "no") << "\n";
  const GridSet& A = std::get<GridSet>(rep.cover);
  for (int v = 0; v < g.vertex_count; ++v) {
    const GridSet slice = fiber_slice(A, g.vertex_count, v);
    const auto bounds = slice.index_bounds();
    report << "fiber_" << v << "_cells: " << slice.cell_count() << "\n";
    report << "fiber_" << v << "_range: [" << bounds[0] * slice.cell_size()
           << ", " << (bounds[1] + 1) * slice.cell_size() << "]\n";
  }
  report.flush();
  std::printf("embed: %d vertices markov=%s\n", g.vertex_count,
              mk.passes ? "pass" : "fail");
  return rep.converged ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Local iterated-function-system laboratory: rigorous attractor "
      "covers, code spaces, shadowing diagnostics, base expansions, "
      "perturbation sweeps, and graph-directed embeddings."};
  app.require_subcommand(1);
  app.footer(
      "Examples:\n"
      "  lifs_cli attractor --system superfractal --param 1.0 --level 9\n"
      "  lifs_cli attractor --system superfractal --param 0.0 --level 7\n"
      "  lifs_cli codespace --system superfractal --param 1.0 --level 6 "
      "--depth 8\n"
      "  lifs_cli codespace --system beta-sparse --alphabet 0,2,4 --depth 12\n"
      "  lifs_cli codespace --system markov2 --level 8 --depth 10 --margin "
      "0.25\n"
      "  lifs_cli shadow --system exshift2 --delta 0.0625 --horizon 14 "
      "--epsilon 0.25 --assert\n"
      "  lifs_cli shadow --system markov2 --level 8 --delta 0.125 --horizon "
      "32\n"
      "  lifs_cli beta --system beta-golden\n"
      "  lifs_cli beta --system beta-sparse\n"
      "  lifs_cli sweep --system nonsemicont --params 0.20,0.24,0.26,0.30 "
      "--level 7\n"
      "  lifs_cli embed --system gd-2cycle --level 7\n"
      "\n"
      "Exit codes: 0 success, 2 configuration error, 3 resolution or\n"
      "iteration budget exhausted, 4 certified negative under --assert.");

  Options opt;
  CLI::App* attractor_cmd =
      app.add_subcommand("attractor", "iterate the cover to the attractor");
  CLI::App* codespace_cmd =
      app.add_subcommand("codespace", "enumerate admissible words");
  CLI::App* shadow_cmd =
      app.add_subcommand("shadow", "pseudo-orbit shadowing diagnostics");
  CLI::App* beta_cmd =
      app.add_subcommand("beta", "digit expansion report for a base");
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "attractor family across a parameter grid");
  CLI::App* embed_cmd =
      app.add_subcommand("embed", "embed a vertex-fiber graph system");
  for (CLI::App* cmd : {attractor_cmd, codespace_cmd, shadow_cmd, beta_cmd,
                        sweep_cmd, embed_cmd}) {
    add_common(cmd, opt);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (attractor_cmd->parsed()) return cmd_attractor(opt);
    if (codespace_cmd->parsed()) return cmd_codespace(opt);
    if (shadow_cmd->parsed()) return cmd_shadow(opt);
    if (beta_cmd->parsed()) return cmd_beta(opt);
    if (sweep_cmd->parsed()) return cmd_sweep(opt);
    if (embed_cmd->parsed()) return cmd_embed(opt);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
