// nyq: qualitative Nyquist analysis from the command line.
//
//   nyq analyze --tf "(s^2+12s+35)/(s*(s^4+12s^3+30s^2+28s+9))"
//   nyq sketch  --tf "1/(s+1)" --out plot.svg --csv samples.csv
//   nyq verify  --trials 200
//
// Exit status: 0 ok, 1 verification failure, 2 bad input, 3 degenerate input
// under --strict, 4 unwritable output.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nyq/report.hpp"
#include "nyq/sketch.hpp"
#include "nyq/verify.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitUnwritable = 4;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputArgs {
  std::string tf;
  std::string input;
};

void add_input_options(CLI::App* cmd, InputArgs& in) {
  auto* tf = cmd->add_option("--tf", in.tf, "transfer function, e.g. \"(s+1)/(s*(s+2))\"");
  auto* file = cmd->add_option("--input", in.input, "JSON file with gain, origin_poles, num, den (ascending)");
  tf->excludes(file);
}

nyq::TransferFunction load_tf(const InputArgs& in) {
  try {
    if (!in.tf.empty()) return nyq::parse_tf(in.tf);
    std::ifstream f(in.input);
    if (!f) throw InputError("cannot read " + in.input);
    return nyq::tf_from_json(nyq::json::parse(f));
  } catch (const nyq::ParseError& e) {
    throw InputError(std::string("parse error: ") + e.what());
  } catch (const nyq::json::exception& e) {
    throw InputError(std::string("bad input document: ") + e.what());
  } catch (const nyq::Error& e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

nyq::TransferFunction require_tf(const InputArgs& in) {
  if (in.tf.empty() && in.input.empty()) throw InputError("one of --tf or --input is required");
  return load_tf(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw OutputError("cannot write " + path);
  f << text;
  if (!f) throw OutputError("cannot write " + path);
}

std::pair<double, double> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw InputError("--omega-range expects lo:hi");
  try {
    const double lo = std::stod(s.substr(0, colon));
    const double hi = std::stod(s.substr(colon + 1));
    if (!(lo > 0 && hi > lo)) throw InputError("--omega-range needs 0 < lo < hi");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw InputError("--omega-range expects lo:hi");
  }
}

void print_notices(const nyq::QualitativeReport& r) {
  for (const auto& n : r.notices) std::cerr << "notice: " << n.code << ": " << n.message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qualitative Nyquist analysis of rational transfer functions"};
  app.require_subcommand(1);

  InputArgs analyze_in, sketch_in, verify_in;
  std::string analyze_out, sketch_out, csv_out, omega_range;
  std::optional<std::size_t> analyze_order, sketch_order;
  bool analyze_strict = false, sketch_strict = false;
  int samples_per_decade = 100;
  int trials = 0;
  std::uint64_t seed = 1;
  bool inject_fault = false;

  auto* analyze = app.add_subcommand("analyze", "print the analysis report as JSON");
  add_input_options(analyze, analyze_in);
  analyze->add_option("--out", analyze_out, "write the report here instead of standard output");
  analyze->add_option("--order", analyze_order, "Taylor truncation order N")->check(CLI::PositiveNumber);
  analyze->add_flag("--strict", analyze_strict, "exit 3 on degenerate input");

  auto* sketch = app.add_subcommand("sketch", "render the qualitative Nyquist sketch as SVG");
  add_input_options(sketch, sketch_in);
  sketch->add_option("--out", sketch_out, "SVG output path")->required();
  sketch->add_option("--csv", csv_out, "also write the sweep samples as CSV");
  sketch->add_option("--omega-range", omega_range, "frequency range lo:hi in rad/s");
  sketch->add_option("--samples-per-decade", samples_per_decade, "sweep density")->check(CLI::PositiveNumber);
  sketch->add_option("--order", sketch_order, "Taylor truncation order N")->check(CLI::PositiveNumber);
  sketch->add_flag("--strict", sketch_strict, "exit 3 on degenerate input");

  auto* verify = app.add_subcommand("verify", "run the oracle checks on one input or a random corpus");
  add_input_options(verify, verify_in);
  verify->add_option("--trials", trials, "number of random transfer functions")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", seed, "corpus seed");
  verify->add_flag("--inject-fault", inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitBadInput;
  }

  try {
    if (*analyze) {
      nyq::ReportOptions opt;
      opt.order = analyze_order;
      const auto report = nyq::build_report(require_tf(analyze_in), opt);
      write_text(analyze_out, nyq::to_json(report).dump(2) + "\n");
      print_notices(report);
      if (analyze_strict && report.has_degenerate_notice()) return kExitDegenerate;
      return 0;
    }

    if (*sketch) {
      nyq::ReportOptions opt;
      opt.order = sketch_order;
      const auto report = nyq::build_report(require_tf(sketch_in), opt);
      if (sketch_strict && report.has_degenerate_notice()) {
        print_notices(report);
        return kExitDegenerate;
      }
      nyq::SketchOptions sopt;
      sopt.points_per_decade = samples_per_decade;
      if (!omega_range.empty()) std::tie(sopt.omega_min, sopt.omega_max) = parse_range(omega_range);
      const auto doc = nyq::build_sketch(report, sopt);
      std::ostringstream svg;
      nyq::write_svg(svg, doc);
      write_text(sketch_out, svg.str());
      if (!csv_out.empty()) {
        std::ostringstream csv;
        nyq::write_samples_csv(csv, doc.samples);
        write_text(csv_out, csv.str());
      }
      print_notices(report);
      return 0;
    }

    if (*verify) {
      nyq::VerifyOptions opt;
      opt.corrupt_delta_table = inject_fault;
      bool ok = true;
      if (!verify_in.tf.empty() || !verify_in.input.empty()) {
        const auto tf = load_tf(verify_in);
        std::cout << "input " << nyq::format_tf(tf) << "\n";
        for (const auto& c : nyq::run_checks(tf, opt)) {
          const char* status = !c.passed ? "FAIL" : c.skipped ? "SKIP" : "PASS";
          std::cout << status << " " << c.name;
          if (!c.detail.empty()) std::cout << ": " << c.detail;
          std::cout << "\n";
          ok = ok && c.passed;
        }
      }
      const int n = trials > 0 || !verify_in.tf.empty() || !verify_in.input.empty() ? trials : 200;
      if (n > 0) {
        const auto failures = nyq::random_trials(n, seed, opt);
        for (const auto& f : failures) std::cout << "FAIL " << f.check.name << " on " << f.tf << ": " << f.check.detail << "\n";
        std::cout << (failures.empty() ? "PASS" : "FAIL") << " random corpus: " << n << " transfer functions, "
                  << failures.size() << " failed checks\n";
        ok = ok && failures.empty();
      }
      return ok ? 0 : kExitVerifyFailed;
    }
  } catch (const InputError& e) {
    std::cerr << "nyq: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const OutputError& e) {
    std::cerr << "nyq: " << e.what() << "\n";
    return kExitUnwritable;
  } catch (const nyq::Error& e) {
    std::cerr << "nyq: " << e.what() << "\n";
    return kExitBadInput;
  }
  return 0;
}
