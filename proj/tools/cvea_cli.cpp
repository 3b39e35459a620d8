// cvea: classify attenuation/amplification channels, export phase diagrams
// and run the verification suites.
//
// Exit codes: 0 success, 1 bad arguments, 2 invalid channel, 3 failed check.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvea/boundaries.hpp"
#include "cvea/channel.hpp"
#include "cvea/errors.hpp"
#include "cvea/export.hpp"
#include "cvea/parallel.hpp"
#include "cvea/phase_diagram.hpp"
#include "cvea/verify.hpp"
#include "cvea/witness.hpp"

namespace {

constexpr int kExitBadArgs = 1;
constexpr int kExitInvalidChannel = 2;
constexpr int kExitCheckFailed = 3;

using nlohmann::ordered_json;
using cvea::format_number;

struct ClassifyArgs {
  double kappa = 0.0;
  std::optional<double> mu;
  std::optional<double> a;
  bool json = false;
};

struct DiagramArgs {
  std::string kind;
  std::string out;
  std::string format;
  std::vector<double> energies{0.1, 1.0, 10.0};
  double kappa1 = 0.5;
  double kappa2 = 0.5;
  int points = 101;
  double kappa_min = 0.05;
  double kappa_max = 8.0;
  double a_max = 1.5;
  double gamma = 1e-3;
  double r = 10.0;
  double tol = 1e-3;
};

struct VerifyArgs {
  std::string suite = "all";
  std::optional<int> cutoff;
  double gamma = 1e-3;
  double r = 10.0;
  double tol = 1e-6;
  std::uint64_t seed = cvea::verify::Config{}.seed;
  bool json = false;
};

int run_classify(const ClassifyArgs& args) {
  const double mu = args.mu ? *args.mu : cvea::quantum_limited_noise(args.kappa) + *args.a;
  ordered_json report;
  report["kappa"] = args.kappa;
  report["mu"] = mu;
  report["mu_ql"] = cvea::quantum_limited_noise(args.kappa);
  cvea::ChannelParams p = cvea::identity_channel();
  try {
    p = cvea::make_channel(args.kappa, mu);
  } catch (const cvea::InvalidChannel& e) {
    report["valid"] = false;
    report["error"] = e.what();
    if (args.json) {
      std::cout << report.dump(2) << "\n";
    } else {
      std::cerr << "invalid channel: " << e.what() << "\n";
    }
    return kExitInvalidChannel;
  }
  const double threshold = cvea::corollary4_threshold(p.kappa());
  report["valid"] = true;
  report["a"] = p.a();
  report["eta"] = p.eta();
  report["tau"] = p.tau();
  report["quantum_limited"] = p.quantum_limited();
  report["entanglement_breaking"] = cvea::is_entanglement_breaking(p);
  report["nlea_gaussian"] = cvea::is_nlea_gaussian(p);
  report["non_gaussian_threshold"] = threshold;
  report["non_gaussian_survivable"] = p.mu() < threshold;

  if (args.json) {
    std::cout << report.dump(2) << "\n";
    return 0;
  }
  auto yes_no = [](bool b) { return b ? "yes" : "no"; };
  std::cout << "channel Phi(kappa=" << format_number(p.kappa()) << ", mu=" << format_number(p.mu())
            << ")\n"
            << "  valid                         yes\n"
            << "  mu_QL                         " << format_number(report["mu_ql"].get<double>()) << "\n"
            << "  extra noise a                 " << format_number(p.a()) << "\n"
            << "  eta                           " << format_number(p.eta()) << "\n"
            << "  tau                           " << format_number(p.tau()) << "\n"
            << "  quantum limited               " << yes_no(p.quantum_limited()) << "\n"
            << "  entanglement breaking         " << yes_no(cvea::is_entanglement_breaking(p)) << "\n"
            << "  N-LEA on Gaussian states      " << yes_no(cvea::is_nlea_gaussian(p)) << "\n"
            << "  non-Gaussian threshold        " << format_number(threshold) << "\n"
            << "  psi_gamma survives Phi(x)Phi  " << yes_no(p.mu() < threshold) << "\n";
  return 0;
}

std::vector<cvea::BoundaryCurve> build_diagram(const DiagramArgs& args) {
  const auto kappas = cvea::log_grid(args.kappa_min, args.kappa_max, args.points);
  const auto a_grid = cvea::linear_grid(0.0, args.a_max, args.points);
  if (args.kind == "fig1b") return cvea::curve_fig1b(args.energies, kappas, args.tol);
  if (args.kind == "fig2b") {
    return cvea::curve_fig2b(args.kappa1, args.kappa2, a_grid, args.r, args.tol);
  }
  if (args.kind == "fig3a") {
    return cvea::curve_fig3a(args.kappa1, args.kappa2, a_grid, args.gamma, args.tol);
  }
  if (args.kind == "fig3b") return cvea::curve_fig3b(kappas, args.gamma, args.tol);
  throw CLI::ValidationError("kind", "expected fig1b, fig2b, fig3a or fig3b");
}

int run_diagram(const DiagramArgs& args) {
  std::string format = args.format;
  if (format.empty()) {
    format = args.out.size() > 5 && args.out.ends_with(".json") ? "json" : "csv";
  }
  const auto fmt = cvea::export_format_from_string(format);
  const auto curves = build_diagram(args);
  std::cerr << "# diagram " << args.kind << " points=" << args.points
            << " kappa=[" << format_number(args.kappa_min) << "," << format_number(args.kappa_max)
            << "] a_max=" << format_number(args.a_max) << " kappa1=" << format_number(args.kappa1)
            << " kappa2=" << format_number(args.kappa2) << " gamma=" << format_number(args.gamma)
            << " r=" << format_number(args.r) << " tol=" << format_number(args.tol)
            << " threads=" << cvea::thread_count() << "\n";
  if (args.out.empty()) {
    std::cout << (fmt == cvea::ExportFormat::csv ? cvea::to_csv(curves) : cvea::to_json(curves));
  } else {
    cvea::export_curves(curves, fmt, args.out);
    std::cerr << "# wrote " << curves.size() << " curves to " << args.out << "\n";
  }
  return 0;
}

int run_verify(const VerifyArgs& args) {
  cvea::verify::Config config;
  config.cutoff = args.cutoff;
  config.gamma = args.gamma;
  config.r = args.r;
  config.bisection_tol = args.tol;
  config.seed = args.seed;
  const auto suite = cvea::verify::suite_from_string(args.suite);

  const auto start = std::chrono::steady_clock::now();
  if (!args.json) {
    std::cout << "# verify " << args.suite << " cutoff="
              << (args.cutoff ? std::to_string(*args.cutoff) : std::string("default"))
              << " gamma=" << format_number(args.gamma) << " r=" << format_number(args.r)
              << " tol=" << format_number(args.tol) << " seed=" << args.seed
              << " threads=" << cvea::thread_count() << "\n";
  }
  ordered_json report;
  report["suite"] = args.suite;
  report["criteria"] = ordered_json::array();
  bool all_passed = true;
  for (int id : cvea::verify::criteria_for(suite)) {
    const auto res = cvea::verify::run_criterion(id, config);
    all_passed = all_passed && res.passed;
    if (args.json) {
      report["criteria"].push_back({{"id", res.id},
                                    {"name", res.name},
                                    {"passed", res.passed},
                                    {"measured", res.measured},
                                    {"threshold", res.threshold},
                                    {"seconds", res.seconds},
                                    {"detail", res.detail}});
    } else {
      std::printf("[%s] %2d %s\n       %s\n", res.passed ? "PASS" : "FAIL", res.id,
                  res.name.c_str(), res.detail.c_str());
      std::fflush(stdout);
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (args.json) {
    report["passed"] = all_passed;
    report["seconds"] = seconds;
    std::cout << report.dump(2) << "\n";
  } else {
    std::printf("%s in %.1f s\n", all_passed ? "all criteria passed" : "some criteria FAILED",
                seconds);
  }
  return all_passed ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("CVEA_THREADS")) cvea::set_thread_count(std::atoi(env));

  CLI::App app{"Entanglement annihilation by local attenuators and amplifiers"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Thread cap for parallel sweeps (default: CVEA_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.fallthrough();

  ClassifyArgs classify;
  auto* cls = app.add_subcommand("classify", "Classify the one-mode channel Phi(kappa, mu)");
  cls->add_option("kappa", classify.kappa, "Power gain kappa > 0")->required();
  auto* mu_pos = cls->add_option("noise", classify.mu, "Total noise mu (same as --mu)");
  auto* a_opt = cls->add_option("--a", classify.a, "Extra noise a above the quantum limit");
  auto* mu_opt = cls->add_option("--mu", classify.mu, "Total noise mu");
  a_opt->excludes(mu_pos)->excludes(mu_opt);
  mu_opt->excludes(mu_pos);
  cls->add_flag("--json", classify.json, "Machine-readable output");

  DiagramArgs diagram;
  auto* dia = app.add_subcommand("diagram", "Export boundary curves (fig1b, fig2b, fig3a, fig3b)");
  dia->add_option("kind", diagram.kind, "fig1b | fig2b | fig3a | fig3b")
      ->required()
      ->check(CLI::IsMember({"fig1b", "fig2b", "fig3a", "fig3b"}));
  dia->add_option("--out", diagram.out, "Output path (default: stdout)");
  dia->add_option("--format", diagram.format, "csv | json (default: from --out extension)")
      ->check(CLI::IsMember({"csv", "json"}));
  dia->add_option("--energies", diagram.energies, "TMSV energies for fig1b")->delimiter(',');
  dia->add_option("--kappa1", diagram.kappa1, "kappa of mode 1 for fig2b/fig3a");
  dia->add_option("--kappa2", diagram.kappa2, "kappa of mode 2 for fig2b/fig3a");
  dia->add_option("--points", diagram.points, "Grid points per axis")->check(CLI::Range(2, 100000));
  dia->add_option("--kappa-min", diagram.kappa_min, "Smallest kappa of the log grid");
  dia->add_option("--kappa-max", diagram.kappa_max, "Largest kappa of the log grid");
  dia->add_option("--a-max", diagram.a_max, "Largest extra noise a1 for fig2b/fig3a");
  dia->add_option("--gamma", diagram.gamma, "|gamma| of the non-Gaussian probe state");
  dia->add_option("--r", diagram.r, "TMSV squeezing standing in for r -> infinity");
  dia->add_option("--tol", diagram.tol, "Bisection tolerance");

  VerifyArgs verify;
  auto* ver = app.add_subcommand("verify", "Run the verification criteria");
  ver->add_option("suite", verify.suite, "gaussian | fock | witness | all")
      ->check(CLI::IsMember({"gaussian", "fock", "witness", "all"}));
  ver->add_option("--cutoff", verify.cutoff, "Override the Fock cutoffs")->check(CLI::Range(2, 200));
  ver->add_option("--gamma", verify.gamma, "|gamma| for witness boundary scans");
  ver->add_option("--r", verify.r, "TMSV squeezing standing in for r -> infinity");
  ver->add_option("--tol", verify.tol, "Bisection tolerance");
  ver->add_option("--seed", verify.seed, "Seed for the randomized sweeps");
  ver->add_flag("--json", verify.json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadArgs;
  }
  if (threads > 0) cvea::set_thread_count(threads);

  try {
    if (*cls) {
      if (!classify.mu && !classify.a) {
        std::cerr << "classify: give the noise as a positional value, --mu or --a\n";
        return kExitBadArgs;
      }
      return run_classify(classify);
    }
    if (*dia) return run_diagram(diagram);
    return run_verify(verify);
  } catch (const cvea::InvalidChannel& e) {
    std::cerr << "invalid channel: " << e.what() << "\n";
    return kExitInvalidChannel;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitBadArgs;
  } catch (const cvea::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  }
}
