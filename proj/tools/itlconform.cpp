#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "itlconform/fpkernel.hpp"
#include "itlconform/generator.hpp"
#include "itlconform/interval.hpp"
#include "itlconform/itl.hpp"
#include "itlconform/oracle.hpp"
#include "itlconform/provider.hpp"
#include "itlconform/runner.hpp"

namespace {

using namespace itlconform;

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;

uint64_t env_seed() {
  const char* env = std::getenv("ITLCONFORM_SEED");
  if (!env || !*env) return 1788;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') {
    std::cerr << "warning: ignoring non-numeric ITLCONFORM_SEED\n";
    return 1788;
  }
  return v;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return bool(out);
}

void print_diagnostics(const std::string& path, const itl::ParseResult& parsed) {
  for (const itl::Diagnostic& d : parsed.errors)
    std::cerr << path << ":" << d.line << ":" << d.column << ": " << d.message
              << "\n";
  for (const itl::Diagnostic& d : parsed.notes)
    std::cerr << path << ":" << d.line << ":" << d.column << ": " << d.message
              << "\n";
}

std::optional<judge::AccuracyMode> parse_mode(const std::string& name) {
  if (name == "tightest") return judge::AccuracyMode::tightest;
  if (name == "accurate") return judge::AccuracyMode::accurate;
  if (name == "valid") return judge::AccuracyMode::valid;
  return std::nullopt;
}

std::string sidecar_path(const std::string& out) {
  if (out.size() > 4 && out.substr(out.size() - 4) == ".itl")
    return out.substr(0, out.size() - 4) + ".provenance";
  return out + ".provenance";
}

int cmd_run(const std::vector<std::string>& files,
            const std::string& provider_name, const std::string& mode_name,
            double tau, const std::string& filter, const std::string& format,
            const std::string& out_path, int jobs) {
  std::unique_ptr<harness::Provider> provider =
      harness::make_provider(provider_name);
  if (!provider) {
    std::cerr << "unknown provider '" << provider_name << "'; known:";
    for (std::string_view n : harness::provider_names()) std::cerr << " " << n;
    std::cerr << "\n";
    return kExitUsage;
  }

  harness::RunOptions opts;
  if (!mode_name.empty()) opts.mode_override = parse_mode(mode_name);
  opts.tau = tau;
  opts.filter = filter;
  opts.jobs = jobs;
  harness::ReportFormat fmt = format == "ndjson" ? harness::ReportFormat::ndjson
                                                 : harness::ReportFormat::text;

  std::string rendered;
  bool any_bad = false;
  for (const std::string& path : files) {
    std::string text;
    if (!read_file(path, text)) {
      std::cerr << "cannot read '" << path << "'\n";
      return kExitUsage;
    }
    itl::ParseResult parsed = itl::parse(text, path);
    print_diagnostics(path, parsed);
    harness::Report report = harness::run_suite(*provider, parsed.suite, opts);
    rendered += harness::render_report(report, fmt);
    any_bad |= report.totals.fail > 0 || report.totals.error > 0;
  }

  if (out_path.empty()) {
    std::cout << rendered;
  } else if (!write_file(out_path, rendered)) {
    std::cerr << "cannot write '" << out_path << "'\n";
    return kExitUsage;
  }
  return any_bad ? kExitVerdict : kExitOk;
}

int cmd_gen(const std::vector<std::string>& op_names,
            const std::vector<std::string>& categories, int count,
            uint64_t seed, const std::string& out_path) {
  gen::GenPlan plan;
  for (const std::string& name : op_names) {
    std::optional<Op> op = op_from_name(name);
    if (!op) {
      std::cerr << "unknown op '" << name << "'\n";
      return kExitUsage;
    }
    plan.ops.push_back(*op);
  }
  for (const std::string& cat : categories) {
    bool known = false;
    for (const char* k : gen::kCategories) known |= cat == k;
    if (!known) {
      std::cerr << "unknown category '" << cat << "'; known:";
      for (const char* k : gen::kCategories) std::cerr << " " << k;
      std::cerr << "\n";
      return kExitUsage;
    }
    plan.categories.push_back(cat);
  }
  plan.count = count;
  plan.seed = seed;

  gen::GenResult result = gen::generate(plan);
  for (const std::string& note : result.notes) std::cerr << note << "\n";
  if (!result.dropped.empty())
    std::cerr << result.dropped.size()
              << " uncertifiable candidate(s) dropped; see the provenance "
                 "sidecar\n";

  std::string suite_text = itl::serialize(result.suite);
  if (out_path.empty()) {
    std::cout << suite_text;
    return kExitOk;
  }
  if (!write_file(out_path, suite_text) ||
      !write_file(sidecar_path(out_path), result.provenance)) {
    std::cerr << "cannot write '" << out_path << "'\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_validate(const std::vector<std::string>& files) {
  bool any_mismatch = false;
  for (const std::string& path : files) {
    std::string text;
    if (!read_file(path, text)) {
      std::cerr << "cannot read '" << path << "'\n";
      return kExitUsage;
    }
    itl::ParseResult parsed = itl::parse(text, path);
    print_diagnostics(path, parsed);
    gen::ValidationReport v = gen::self_validate(parsed.suite);
    std::cout << "suite " << parsed.suite.name << ": checked=" << v.checked
              << " confirmed=" << v.confirmed << " mismatched=" << v.mismatched
              << " unverifiable=" << v.unverifiable
              << " structural=" << v.structural << "\n";
    for (const std::string& m : v.mismatches) std::cout << "mismatch " << m << "\n";
    for (const std::string& u : v.unverifiable_list)
      std::cout << "unverifiable " << u << "\n";
    any_mismatch |= v.mismatched > 0;
  }
  return any_mismatch ? kExitVerdict : kExitOk;
}

// Seeded per-op input boxes for the fuzzer: a wide mixed-scale box, a
// subnormal-spanning box, and an op-appropriate stress box.
std::vector<Interval> fuzz_boxes(Op op, std::mt19937_64& rng) {
  auto rnd = [&](int emin, int emax) {
    std::uniform_int_distribution<int> exp_dist(emin, emax);
    uint64_t bits = rng() & ((uint64_t{1} << 52) - 1);
    double mant = 1.0 + static_cast<double>(bits) * 0x1p-52;
    return std::ldexp(mant, exp_dist(rng));
  };
  bool positive = op == Op::log || op == Op::log2 || op == Op::log10;
  bool trig = op == Op::sin || op == Op::cos || op == Op::tan;
  std::vector<Interval> boxes;
  double w = rnd(0, trig ? 40 : 200);
  boxes.push_back(Interval::unchecked(positive ? 0.0 : -w, w));
  boxes.push_back(Interval::unchecked(positive ? 0.0 : -rnd(-1074, -1022),
                                      rnd(-1074, -1020)));
  if (trig) {
    double m = oracle::pi_half_multiple_rn(
        std::uniform_int_distribution<int64_t>(1, 1000000)(rng));
    boxes.push_back(Interval::unchecked(fpk::next_down(m), fpk::next_up(m)));
  } else if (op == Op::exp) {
    boxes.push_back(Interval::unchecked(-746.0, 710.0));
  } else {
    double k = rnd(positive ? 1 : -300, 300);
    boxes.push_back(Interval::unchecked(positive ? 1.0 / k : -k, k));
  }
  return boxes;
}

int cmd_fuzz(const std::string& op_name_arg, int n, uint64_t seed) {
  std::vector<Op> ops;
  if (!op_name_arg.empty()) {
    std::optional<Op> op = op_from_name(op_name_arg);
    if (!op) {
      std::cerr << "unknown op '" << op_name_arg << "'\n";
      return kExitUsage;
    }
    ops.push_back(*op);
  } else {
    for (int i = 0; i < kOpCount; ++i) {
      Op op = static_cast<Op>(i);
      OpKind k = op_kind(op);
      if ((k == OpKind::arith || k == OpKind::elem) && op != Op::fma)
        ops.push_back(op);
    }
  }

  std::unique_ptr<harness::Provider> ref = harness::make_provider("reference");
  std::mt19937_64 rng(seed);
  int violations = 0;
  int errors = 0;
  for (Op op : ops) {
    std::vector<Interval> boxes = fuzz_boxes(op, rng);
    for (const Interval& x : boxes) {
      std::optional<Interval> y;
      if (op_arity(op) == 2)
        y = op == Op::pow ? Interval::unchecked(-8.5, 8.5)
                          : fuzz_boxes(op, rng)[0];
      gen::FuzzReport fr = gen::fuzz_check(*ref, op, x, y, n, rng());
      std::cout << "op=" << op_name(op) << " x=" << interval_to_text(x)
                << (y ? " y=" + interval_to_text(*y) : "")
                << " points=" << fr.points << " violations=" << fr.violations
                << " errors=" << fr.errors << "\n";
      for (const std::string& d : fr.details) std::cout << "  " << d << "\n";
      violations += fr.violations;
      errors += fr.errors;
    }
  }
  std::cout << "TOTAL violations=" << violations << " errors=" << errors << "\n";
  return violations + errors > 0 ? kExitVerdict : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformance harness for set-based interval arithmetic"};
  app.require_subcommand(1);

  std::vector<std::string> run_files;
  std::string run_provider = "reference";
  std::string run_mode;
  double run_tau = 0.0;
  std::string run_filter;
  std::string run_format = "text";
  std::string run_out;
  int run_jobs = 1;
  CLI::App* run = app.add_subcommand("run", "Run test suites against a provider");
  run->add_option("suites", run_files, "ITL suite files")->required();
  run->add_option("--provider", run_provider, "Provider name")
      ->capture_default_str();
  run->add_option("--mode", run_mode,
                  "Override every assertion's accuracy mode")
      ->check(CLI::IsMember({"tightest", "accurate", "valid"}));
  run->add_option("--tau", run_tau, "Width slack ratio for valid mode")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  run->add_option("--filter", run_filter, "Glob over testcase names");
  run->add_option("--format", run_format, "Report format")
      ->check(CLI::IsMember({"text", "ndjson"}))
      ->capture_default_str();
  run->add_option("--out", run_out, "Write the report to a file");
  run->add_option("--jobs", run_jobs, "Testcase-level parallelism")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();

  std::vector<std::string> gen_ops;
  std::vector<std::string> gen_categories;
  int gen_count = 10;
  std::optional<uint64_t> gen_seed;
  std::string gen_out;
  CLI::App* genc = app.add_subcommand("gen", "Generate a test suite");
  genc->add_option("--ops", gen_ops, "Comma-separated op names")
      ->delimiter(',');
  genc->add_option("--categories", gen_categories,
                   "Comma-separated category names")
      ->delimiter(',');
  genc->add_option("--count", gen_count, "Assertions per op-category cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  genc->add_option("--seed", gen_seed,
                   "Generation seed (default: ITLCONFORM_SEED or 1788)");
  genc->add_option("--out", gen_out,
                   "Suite file path; the provenance sidecar replaces a "
                   "trailing .itl with .provenance");

  std::vector<std::string> validate_files;
  CLI::App* val =
      app.add_subcommand("validate", "Re-derive suite expectations");
  val->add_option("suites", validate_files, "ITL suite files")->required();

  std::string fuzz_op;
  int fuzz_n = 1000;
  std::optional<uint64_t> fuzz_seed;
  CLI::App* fuzz = app.add_subcommand("fuzz", "Point-containment fuzzing");
  fuzz->add_option("--op", fuzz_op, "Single op to fuzz (default: all)");
  fuzz->add_option("--n", fuzz_n, "Points per input box")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fuzz->add_option("--seed", fuzz_seed,
                   "Fuzzing seed (default: ITLCONFORM_SEED or 1788)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (run->parsed())
    return cmd_run(run_files, run_provider, run_mode, run_tau, run_filter,
                   run_format, run_out, run_jobs);
  if (genc->parsed())
    return cmd_gen(gen_ops, gen_categories, gen_count,
                   gen_seed.value_or(env_seed()), gen_out);
  if (val->parsed()) return cmd_validate(validate_files);
  if (fuzz->parsed())
    return cmd_fuzz(fuzz_op, fuzz_n, fuzz_seed.value_or(env_seed()));
  return kExitUsage;
}
