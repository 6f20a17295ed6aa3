// End-to-end acceptance checks. Each check prints one PASS/FAIL line; the
// process exits nonzero if any check fails. Invoked as:
//
//   acceptance <cli-binary> <data-dir> <scratch-dir>

#include <sys/wait.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "itlconform/bigfloat.hpp"
#include "itlconform/decoration.hpp"
#include "itlconform/fpkernel.hpp"
#include "itlconform/generator.hpp"
#include "itlconform/interval.hpp"
#include "itlconform/itl.hpp"
#include "itlconform/judge.hpp"
#include "itlconform/oracle.hpp"
#include "itlconform/provider.hpp"
#include "itlconform/runner.hpp"

using namespace itlconform;
namespace fpk = itlconform::fpk;
using bf::BigFloat;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cli;
std::string g_data;
std::string g_tmp;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool slurp(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

int run_cli(const std::string& args) {
  std::string cmd = "\"" + g_cli + "\" " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

uint64_t bits(double v) { return std::bit_cast<uint64_t>(v); }

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. The stored sample suite parses cleanly, every assertion passes against
//    the reference engine, and the hex addition is reproduced bit for bit.

bool check_sample(std::string& detail) {
  Clock::time_point t0 = Clock::now();
  std::string text;
  if (!slurp(g_data + "/sample.itl", text)) {
    detail = "cannot read sample.itl";
    return false;
  }
  itl::ParseResult parsed = itl::parse(text, "sample.itl");
  size_t assertions = 0;
  for (const itl::TestCase& tc : parsed.suite.testcases)
    assertions += tc.assertions.size();

  std::unique_ptr<harness::Provider> ref = harness::make_provider("reference");
  harness::Report report = harness::run_suite(*ref, parsed.suite, {});

  Interval x = text_to_interval("[ 0X1.FFFFFFFFFFFFP+0 ]").value;
  Interval y = text_to_interval("[ 0X1.999999999999AP-4 ]").value;
  std::vector<Interval> args = {x, y};
  Interval sum = eval_interval_op(Op::add, args);
  Interval want =
      text_to_interval("[ 0X1.0CCCCCCCCCCC4P+1, 0X1.0CCCCCCCCCCC5P+1 ]").value;
  bool hex_exact =
      bits(sum.lo()) == bits(want.lo()) && bits(sum.hi()) == bits(want.hi());

  double secs = elapsed(t0);
  detail = fmt("diagnostics=%zu testcases=%zu assertions=%zu pass=%d "
               "hex_exact=%d %.3fs",
               parsed.errors.size() + parsed.notes.size(),
               parsed.suite.testcases.size(), assertions, report.totals.pass,
               hex_exact ? 1 : 0, secs);
  return parsed.errors.empty() && parsed.notes.empty() &&
         parsed.suite.testcases.size() == 2 && assertions == 6 &&
         report.totals.pass == 6 && report.totals.all() == 6 && hex_exact &&
         secs < 1.0;
}

// ---------------------------------------------------------------------------
// 2. Re-deriving every interval expectation of the bundled suite confirms
//    all of them; nothing is uncertified, and candidates the evaluator
//    cannot certify are dropped and logged at generation time.

bool check_bundled_validation(std::string& detail) {
  Clock::time_point t0 = Clock::now();
  std::string text;
  if (!slurp(g_data + "/bundled.itl", text)) {
    detail = "cannot read bundled.itl";
    return false;
  }
  itl::ParseResult parsed = itl::parse(text, "bundled.itl");
  size_t assertions = 0;
  for (const itl::TestCase& tc : parsed.suite.testcases)
    assertions += tc.assertions.size();

  gen::ValidationReport v = gen::self_validate(parsed.suite);
  int arith_unverifiable = 0;
  for (const std::string& u : v.unverifiable_list) {
    size_t p = u.find("op=");
    std::string op_str = u.substr(p + 3, u.find(' ', p) - p - 3);
    std::optional<Op> op = op_from_name(op_str);
    if (op && op_kind(*op) == OpKind::arith) ++arith_unverifiable;
  }

  gen::GenPlan drop_plan;
  drop_plan.ops = {Op::pow};
  drop_plan.categories = {"easy"};
  drop_plan.count = 400;
  gen::GenResult dropped = gen::generate(drop_plan);
  bool drops_logged = !dropped.dropped.empty();
  for (const std::string& d : dropped.dropped)
    drops_logged &= dropped.provenance.find(d) != std::string::npos;
  drops_logged &= dropped.suite.testcases.size() == 1 &&
                  dropped.suite.testcases[0].assertions.size() == 400;

  double secs = elapsed(t0);
  detail = fmt("assertions=%zu checked=%d confirmed=%d mismatched=%d "
               "unverifiable=%d (arith %d) drops_logged=%d %.3fs",
               assertions, v.checked, v.confirmed, v.mismatched,
               v.unverifiable, arith_unverifiable, drops_logged ? 1 : 0, secs);
  return parsed.errors.empty() && assertions >= 1900 && assertions <= 2200 &&
         v.mismatched == 0 && arith_unverifiable == 0 &&
         v.unverifiable * 100 <= v.checked && v.confirmed + v.unverifiable ==
         v.checked && drops_logged && secs < 60.0;
}

// ---------------------------------------------------------------------------
// 3. The software directed-rounding kernel agrees bitwise with the
//    high-precision evaluator on 10^5 seeded operand pairs per operation.

double draw_operand(std::mt19937_64& rng) {
  switch (rng() % 5) {
    case 0: {  // subnormal and near-subnormal magnitudes
      uint64_t m = rng() & ((uint64_t{1} << 52) - 1);
      double v = std::ldexp(1.0 + static_cast<double>(m) * 0x1p-52,
                            -1074 + static_cast<int>(rng() % 60));
      return (rng() & 1) ? -v : v;
    }
    case 1: {  // huge magnitudes, overflow-prone
      uint64_t m = rng() & ((uint64_t{1} << 52) - 1);
      double v = std::ldexp(1.0 + static_cast<double>(m) * 0x1p-52,
                            1015 + static_cast<int>(rng() % 9));
      return (rng() & 1) ? -v : v;
    }
    default: {  // uniform over finite bit patterns
      for (;;) {
        double v = std::bit_cast<double>(rng());
        if (std::isfinite(v)) return v;
      }
    }
  }
}

bool check_directed_rounding(std::string& detail) {
  struct Pair {
    Op op;
    fpk::DirOp dir_op;
  };
  const Pair ops[] = {
      {Op::add, fpk::DirOp::add}, {Op::sub, fpk::DirOp::sub},
      {Op::mul, fpk::DirOp::mul}, {Op::div, fpk::DirOp::div},
      {Op::sqrt, fpk::DirOp::sqrt},
  };
  const int kIterations = 100000;
  std::mt19937_64 rng(30103);
  long mismatches = 0;
  long total = 0;
  for (const Pair& p : ops) {
    for (int i = 0; i < kIterations; ++i) {
      double a = draw_operand(rng);
      double b = draw_operand(rng);
      if (p.op == Op::sqrt) a = std::fabs(a);
      if (p.op == Op::div && b == 0.0) b = 1.0;
      double down = fpk::dir_op(p.dir_op, fpk::Dir::down, a, b);
      double up = fpk::dir_op(p.dir_op, fpk::Dir::up, a, b);
      std::vector<oracle::Iv> args = {{a, a}};
      if (p.op != Op::sqrt) args.push_back({b, b});
      oracle::Enclosure53 e = oracle::tightest_eval(p.op, args);
      ++total;
      // Value comparison: exact for every nonzero double, and indifferent
      // to the sign of zero, which interval endpoints cannot carry.
      if (!e.certified || e.empty || down != e.lo || up != e.hi) ++mismatches;
    }
  }
  detail = fmt("pairs=%ld mismatches=%ld", total, mismatches);
  return total == 5L * kIterations && mismatches == 0;
}

// ---------------------------------------------------------------------------
// 4. Error-free transforms reproduce the exact sum and product at full
//    precision, and the overflow/underflow degenerate contracts hold.

bool check_eft(std::string& detail) {
  const int kIterations = 100000;
  std::mt19937_64 rng(40104);
  long sum_checked = 0, prod_checked = 0, degenerate = 0, mismatches = 0;

  auto exact_sum_matches = [](double a, double b, double hi, double lo) {
    BigFloat want = add_exact(BigFloat::from_double(a), BigFloat::from_double(b));
    BigFloat got = add_exact(BigFloat::from_double(hi), BigFloat::from_double(lo));
    return BigFloat::compare(want, got) == 0;
  };

  for (int i = 0; i < kIterations; ++i) {
    double a = draw_operand(rng);
    double b = draw_operand(rng);

    fpk::EftPair s = fpk::two_sum(a, b);
    if (std::isinf(s.hi)) {
      ++degenerate;
      if (!std::isnan(s.lo)) ++mismatches;
    } else {
      ++sum_checked;
      if (!exact_sum_matches(a, b, s.hi, s.lo)) ++mismatches;
    }

    fpk::EftProd q = fpk::two_prod(a, b);
    if (std::isinf(q.hi)) {
      ++degenerate;
      if (!std::isnan(q.lo)) ++mismatches;
    } else if (!q.residual_exact) {
      ++degenerate;
      BigFloat residual =
          add_exact(mul_exact(BigFloat::from_double(a), BigFloat::from_double(b)),
                    BigFloat::from_double(q.hi).negated());
      if (residual.is_zero()) {
        if (q.lo != 0.0) ++mismatches;
      } else if (q.lo == 0.0 || std::signbit(q.lo) != residual.negative()) {
        ++mismatches;
      }
    } else {
      ++prod_checked;
      BigFloat want =
          mul_exact(BigFloat::from_double(a), BigFloat::from_double(b));
      BigFloat got =
          add_exact(BigFloat::from_double(q.hi), BigFloat::from_double(q.lo));
      if (BigFloat::compare(want, got) != 0) ++mismatches;
    }
  }

  // Pinned degenerate pairs exercise both documented escape hatches.
  fpk::EftPair os = fpk::two_sum(fpk::kMaxReal, fpk::kMaxReal);
  if (!std::isinf(os.hi) || !std::isnan(os.lo)) ++mismatches;
  fpk::EftProd op = fpk::two_prod(0x1p600, 0x1p600);
  if (!std::isinf(op.hi) || !std::isnan(op.lo)) ++mismatches;
  fpk::EftProd up = fpk::two_prod(0x1.0000000000001p-1000, 0x1.0000000000001p-60);
  bool underflow_seen = !up.residual_exact;

  detail = fmt("sums=%ld products=%ld degenerate=%ld underflow_residual=%d "
               "mismatches=%ld",
               sum_checked, prod_checked, degenerate, underflow_seen ? 1 : 0,
               mismatches);
  return mismatches == 0 && sum_checked > 90000 && prod_checked > 50000 &&
         degenerate > 100 && underflow_seen;
}

// ---------------------------------------------------------------------------
// 5. Point-containment fuzzing over a seeded 50-case corpus that spans
//    binade edges, subnormals, and argument-reduction zones near k*pi/2.

bool check_fuzzing(std::string& detail) {
  struct Probe {
    Op op;
    Interval x;
    std::optional<Interval> y;
  };
  const Op fuzzable[] = {Op::neg,  Op::add, Op::sub,  Op::mul,   Op::div,
                         Op::recip, Op::sqr, Op::sqrt, Op::exp,   Op::log,
                         Op::log2, Op::log10, Op::sin, Op::cos,   Op::tan,
                         Op::atan, Op::pow};
  std::mt19937_64 rng(5005);
  auto mant = [&]() {
    return 1.0 + static_cast<double>(rng() & ((uint64_t{1} << 52) - 1)) * 0x1p-52;
  };
  std::vector<Probe> corpus;
  for (Op op : fuzzable) {
    bool positive = op == Op::log || op == Op::log2 || op == Op::log10 ||
                    op == Op::pow;
    bool trig = op == Op::sin || op == Op::cos || op == Op::tan;
    std::optional<Interval> y;
    if (op_arity(op) == 2) {
      double w = std::ldexp(mant(), static_cast<int>(rng() % 8));
      y = op == Op::div ? Interval::unchecked(-2.0, 2.0)
                        : Interval::unchecked(op == Op::pow ? -6.5 : -w, w);
    }

    int k = static_cast<int>(rng() % 161) - (positive ? 20 : 80);
    double edge = std::ldexp(1.0, k);
    corpus.push_back({op,
                      Interval::unchecked(positive ? fpk::next_down(edge) : -fpk::next_up(edge),
                                          fpk::next_up(edge)),
                      y});

    double sub_hi = std::ldexp(mant(), -1040);
    corpus.push_back(
        {op,
         Interval::unchecked(positive ? 0.0 : -std::ldexp(mant(), -1060), sub_hi),
         y});

    if (trig) {
      double m = oracle::pi_half_multiple_rn(
          1 + static_cast<int64_t>(rng() % 999999));
      corpus.push_back({op, Interval::unchecked(m - 0x1p-30, m + 0x1p-30), y});
    } else if (op == Op::exp) {
      corpus.push_back({op, Interval::unchecked(-746.0, 710.0), y});
    } else {
      double w = std::ldexp(mant(), static_cast<int>(rng() % 200));
      corpus.push_back({op, Interval::unchecked(positive ? 1.0 / w : -w, w), y});
    }
  }
  while (corpus.size() > 50) corpus.pop_back();

  std::unique_ptr<harness::Provider> ref = harness::make_provider("reference");
  long points = 0, violations = 0, errors = 0;
  for (const Probe& p : corpus) {
    gen::FuzzReport fr = gen::fuzz_check(*ref, p.op, p.x, p.y, 1000, rng());
    points += fr.points;
    violations += fr.violations;
    errors += fr.errors;
  }
  detail = fmt("cases=%zu points=%ld violations=%ld errors=%ld", corpus.size(),
               points, violations, errors);
  return corpus.size() == 50 && points == 50000 && violations == 0 &&
         errors == 0;
}

// ---------------------------------------------------------------------------
// 6. Decoration transition tables: full 25/125 tables per operation, every
//    reachable witness agrees with an independent domain analysis.

bool tan_pole_inside(double lo, double hi) {
  if (hi - lo >= 4.0) return true;
  const long double half_pi = 1.57079632679489661923L;
  long long k_lo = static_cast<long long>(
      std::ceil(static_cast<long double>(lo) / half_pi));
  long long k_hi = static_cast<long long>(
      std::floor(static_cast<long double>(hi) / half_pi));
  for (long long k = k_lo; k <= k_hi; ++k)
    if (k % 2 != 0) return true;
  return false;
}

// Domain classification from first principles: where is the point function
// defined on the input box, does the box stay inside the open interior of
// the domain, and is the image bounded?
Decoration brute_local(Op op, const std::vector<Interval>& xs) {
  for (const Interval& x : xs)
    if (x.is_empty()) return Decoration::trv;
  if (op_kind(op) == OpKind::set_op) return Decoration::trv;

  bool all_defined = true;
  bool interior = true;
  switch (op) {
    case Op::div:
      all_defined = !(xs[1].lo() <= 0.0 && xs[1].hi() >= 0.0);
      interior = all_defined;
      break;
    case Op::recip:
      all_defined = !(xs[0].lo() <= 0.0 && xs[0].hi() >= 0.0);
      interior = all_defined;
      break;
    case Op::sqrt:
      all_defined = xs[0].lo() >= 0.0;
      interior = xs[0].lo() > 0.0;
      break;
    case Op::log:
    case Op::log2:
    case Op::log10:
      all_defined = xs[0].lo() > 0.0;
      interior = all_defined;
      break;
    case Op::tan:
      all_defined = !tan_pole_inside(xs[0].lo(), xs[0].hi());
      interior = all_defined;
      break;
    case Op::pow:
      all_defined =
          xs[0].lo() > 0.0 || (xs[0].lo() == 0.0 && xs[1].lo() > 0.0);
      interior = xs[0].lo() > 0.0;
      break;
    default:
      break;
  }
  if (!all_defined) return Decoration::trv;

  bool box_bounded = true;
  for (const Interval& x : xs)
    box_bounded &= std::isfinite(x.lo()) && std::isfinite(x.hi());
  Interval image = eval_interval_op(op, xs);
  bool image_bounded = image.is_empty() || (std::isfinite(image.lo()) &&
                                            std::isfinite(image.hi()));
  return interior && box_bounded && image_bounded ? Decoration::com
                                                  : Decoration::dac;
}

bool check_decorations(std::string& detail) {
  long tables = 0, reachable = 0, disagreements = 0;
  for (int i = 0; i < kOpCount; ++i) {
    Op op = static_cast<Op>(i);
    OpKind k = op_kind(op);
    if (k != OpKind::arith && k != OpKind::elem && k != OpKind::set_op)
      continue;
    int arity = op_arity(op);
    if (arity > 2) continue;
    std::vector<DecCase> cases = enumerate_dec_cases(op, arity);
    ++tables;
    size_t want_size = arity == 1 ? 25 : 125;
    if (cases.size() != want_size) {
      ++disagreements;
      continue;
    }
    for (const DecCase& c : cases) {
      if (!c.reachable) continue;
      ++reachable;

      DecoratedInterval replay = dec_op(op, c.inputs);
      bool replay_ok = replay.dec == c.result.dec &&
                       replay.interval.is_empty() == c.result.interval.is_empty();

      bool any_ill = false;
      Decoration floor = Decoration::com;
      std::vector<Interval> bare;
      for (const DecoratedInterval& in : c.inputs) {
        any_ill |= in.dec == Decoration::ill;
        floor = std::min(floor, in.dec);
        bare.push_back(in.interval);
      }
      Decoration want = any_ill
                            ? Decoration::ill
                            : std::min(floor, brute_local(op, bare));
      if (!replay_ok || c.result.dec != want) ++disagreements;
    }
  }

  DecoratedInterval neg_sqrt =
      dec_op(Op::sqrt, std::vector<DecoratedInterval>{
                           {Interval::unchecked(-1.0, 4.0), Decoration::com}});
  bool sqrt_trv = neg_sqrt.dec == Decoration::trv &&
                  bits(neg_sqrt.interval.lo()) == bits(0.0) &&
                  bits(neg_sqrt.interval.hi()) == bits(2.0);

  detail = fmt("tables=%ld reachable=%ld disagreements=%ld sqrt_neg_trv=%d",
               tables, reachable, disagreements, sqrt_trv ? 1 : 0);
  return tables == 19 && reachable > 200 && disagreements == 0 && sqrt_trv;
}

// ---------------------------------------------------------------------------
// 7. Accuracy-band discrimination on the bundled suite: one-step widening
//    separates tightest from accurate, and the constant-Entire stub cannot
//    survive the valid-mode width screen.

struct ExpectedShape {
  bool interval_main = false;
  bool nonempty_bounded = false;
  bool maxreal_endpoint = false;
  OpKind kind = OpKind::arith;
};

ExpectedShape classify(const itl::Assertion& a) {
  ExpectedShape s;
  std::optional<Op> op = op_from_name(a.op);
  if (!op) return s;
  s.kind = op_kind(*op);
  const itl::Literal* main = nullptr;
  for (const itl::Literal& lit : a.expected)
    if (lit.kind != itl::Literal::Kind::signal) {
      if (main) return s;
      main = &lit;
    }
  if (!main) return s;
  std::string text = main->text;
  if (main->kind == itl::Literal::Kind::decorated_interval) {
    size_t us = text.rfind("]_");
    if (us == std::string::npos) return s;  // NaI
    text = text.substr(0, us + 1);
  } else if (main->kind != itl::Literal::Kind::interval) {
    return s;
  }
  IntervalResult r = text_to_interval(text);
  if (r.signal != Signal::none) return s;
  s.interval_main = true;
  if (!r.value.is_empty() && std::isfinite(r.value.lo()) &&
      std::isfinite(r.value.hi())) {
    s.nonempty_bounded = true;
    s.maxreal_endpoint = std::fabs(r.value.lo()) == fpk::kMaxReal ||
                         std::fabs(r.value.hi()) == fpk::kMaxReal;
  }
  return s;
}

bool check_discrimination(std::string& detail) {
  std::string text;
  if (!slurp(g_data + "/bundled.itl", text)) {
    detail = "cannot read bundled.itl";
    return false;
  }
  itl::ParseResult parsed = itl::parse(text, "bundled.itl");
  std::map<std::pair<std::string, int>, const itl::Assertion*> lookup;
  for (const itl::TestCase& tc : parsed.suite.testcases)
    for (size_t i = 0; i < tc.assertions.size(); ++i)
      lookup[{tc.name, static_cast<int>(i)}] = &tc.assertions[i];

  auto widened_by_stub = [&](const itl::Assertion& a, const ExpectedShape& s) {
    return a.mode == itl::AssertMode::tightest && s.interval_main &&
           (s.kind == OpKind::arith || s.kind == OpKind::set_op);
  };

  int maxreal_bounded = 0;
  for (const auto& [key, a] : lookup)
    if (classify(*a).maxreal_endpoint) ++maxreal_bounded;

  std::unique_ptr<harness::Provider> next_out = harness::make_provider("next-out");
  std::unique_ptr<harness::Provider> entire = harness::make_provider("entire");

  harness::RunOptions accurate_opts;
  accurate_opts.mode_override = judge::AccuracyMode::accurate;
  harness::Report wide_accurate =
      harness::run_suite(*next_out, parsed.suite, accurate_opts);
  harness::Report wide_tightest = harness::run_suite(*next_out, parsed.suite, {});
  harness::RunOptions valid_opts;
  valid_opts.mode_override = judge::AccuracyMode::valid;
  valid_opts.tau = 1.0;
  harness::Report entire_valid =
      harness::run_suite(*entire, parsed.suite, valid_opts);

  long a_total = 0, a_pass = 0;
  for (const harness::AssertionRecord& r : wide_accurate.records) {
    const itl::Assertion* a = lookup[{r.testcase, r.index}];
    if (!a || !widened_by_stub(*a, classify(*a))) continue;
    ++a_total;
    a_pass += r.status == judge::Status::pass;
  }
  long b_total = 0, b_fail = 0;
  for (const harness::AssertionRecord& r : wide_tightest.records) {
    const itl::Assertion* a = lookup[{r.testcase, r.index}];
    if (!a) continue;
    ExpectedShape s = classify(*a);
    if (!widened_by_stub(*a, s) || !s.nonempty_bounded) continue;
    ++b_total;
    b_fail += r.status == judge::Status::fail;
  }
  long c_total = 0, c_fail = 0;
  for (const harness::AssertionRecord& r : entire_valid.records) {
    const itl::Assertion* a = lookup[{r.testcase, r.index}];
    if (!a) continue;
    ExpectedShape s = classify(*a);
    if (!s.interval_main || !s.nonempty_bounded) continue;
    if (s.kind == OpKind::numeric || s.kind == OpKind::boolean) continue;
    ++c_total;
    c_fail += r.status == judge::Status::fail;
  }

  detail = fmt("widened: accurate %ld/%ld pass, tightest %ld/%ld fail; "
               "entire: valid(tau=1) %ld/%ld fail; maxreal_bounded=%d",
               a_pass, a_total, b_fail, b_total, c_fail, c_total,
               maxreal_bounded);
  return a_total >= 300 && a_pass == a_total && b_total >= 300 &&
         b_fail == b_total && c_total >= 800 && c_fail == c_total &&
         maxreal_bounded == 0;
}

// ---------------------------------------------------------------------------
// 8. Resigning every zero endpoint spelling in the bundled suite leaves
//    every verdict unchanged.

int resign_zero_fields(std::string& text) {
  size_t close = text.rfind(']');
  if (text.empty() || text[0] != '[' || close == std::string::npos) return 0;
  std::string inner = text.substr(1, close - 1);
  std::string suffix = text.substr(close + 1);

  int flips = 0;
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t comma = inner.find(',', start);
    std::string field = inner.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    size_t a = field.find_first_not_of(" \t");
    size_t b = field.find_last_not_of(" \t");
    std::string token =
        a == std::string::npos ? "" : field.substr(a, b - a + 1);
    if (token == "0.0") token = "-0.0", ++flips;
    else if (token == "-0.0") token = "0.0", ++flips;
    else if (token == "0x0p+0") token = "-0x0p+0", ++flips;
    else if (token == "-0x0p+0") token = "0x0p+0", ++flips;
    fields.push_back(token);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (flips == 0) return 0;
  std::string rebuilt = "[ " + fields[0];
  for (size_t i = 1; i < fields.size(); ++i) rebuilt += ", " + fields[i];
  rebuilt += " ]" + suffix;
  text = rebuilt;
  return flips;
}

bool check_zero_sign(std::string& detail) {
  std::string text;
  if (!slurp(g_data + "/bundled.itl", text)) {
    detail = "cannot read bundled.itl";
    return false;
  }
  itl::ParseResult parsed = itl::parse(text, "bundled.itl");
  itl::TestSuite resigned = parsed.suite;
  int flips = 0;
  for (itl::TestCase& tc : resigned.testcases)
    for (itl::Assertion& a : tc.assertions) {
      for (itl::Literal& lit : a.inputs)
        if (lit.kind == itl::Literal::Kind::interval ||
            lit.kind == itl::Literal::Kind::decorated_interval)
          flips += resign_zero_fields(lit.text);
      for (itl::Literal& lit : a.expected)
        if (lit.kind == itl::Literal::Kind::interval ||
            lit.kind == itl::Literal::Kind::decorated_interval)
          flips += resign_zero_fields(lit.text);
    }

  std::unique_ptr<harness::Provider> ref = harness::make_provider("reference");
  harness::Report before = harness::run_suite(*ref, parsed.suite, {});
  harness::Report after = harness::run_suite(*ref, resigned, {});

  long changed = 0;
  bool comparable = before.records.size() == after.records.size();
  if (comparable)
    for (size_t i = 0; i < before.records.size(); ++i)
      changed += before.records[i].status != after.records[i].status;

  detail = fmt("flipped_spellings=%d records=%zu changed_verdicts=%ld", flips,
               before.records.size(), changed);
  return comparable && flips >= 50 && changed == 0;
}

// ---------------------------------------------------------------------------
// 9. Byte determinism of generation and of ndjson reporting, through the
//    command-line interface.

bool check_determinism(std::string& detail) {
  std::string a1 = g_tmp + "/det_a1.itl";
  std::string a2 = g_tmp + "/det_a2.itl";
  int g1 = run_cli("gen --seed 7 --count 5 --out \"" + a1 + "\"");
  int g2 = run_cli("gen --seed 7 --count 5 --out \"" + a2 + "\"");

  std::string s1, s2, p1, p2;
  bool suites_ok = slurp(a1, s1) && slurp(a2, s2) && !s1.empty() && s1 == s2;
  bool prov_ok = slurp(g_tmp + "/det_a1.provenance", p1) &&
                 slurp(g_tmp + "/det_a2.provenance", p2) && !p1.empty() &&
                 p1 == p2;

  std::string r1 = g_tmp + "/det_r1.ndjson";
  std::string r2 = g_tmp + "/det_r2.ndjson";
  std::string bundled = g_data + "/bundled.itl";
  int e1 = run_cli("run \"" + bundled + "\" --format ndjson --out \"" + r1 + "\"");
  int e2 = run_cli("run \"" + bundled + "\" --format ndjson --out \"" + r2 + "\"");
  std::string j1, j2;
  bool reports_ok = slurp(r1, j1) && slurp(r2, j2) && !j1.empty() && j1 == j2 &&
                    j1[0] == '{';

  detail = fmt("gen_exit=%d/%d suite_bytes=%zu identical=%d provenance=%d "
               "run_exit=%d/%d report_bytes=%zu identical=%d",
               g1, g2, s1.size(), suites_ok ? 1 : 0, prov_ok ? 1 : 0, e1, e2,
               j1.size(), reports_ok ? 1 : 0);
  return g1 == 0 && g2 == 0 && suites_ok && prov_ok && e1 == 0 && e2 == 0 &&
         reports_ok;
}

// ---------------------------------------------------------------------------
// 10. A crashing provider is contained: its assertions become error
//     verdicts, everything else still renders, and the exit code is 1.

bool check_crash_containment(std::string& detail) {
  std::string out = g_tmp + "/crash.txt";
  int code = run_cli("run \"" + g_data + "/sample.itl\" --provider crash-on-div "
                     "--out \"" + out + "\"");
  std::string report;
  if (!slurp(out, report)) {
    detail = "no report written";
    return false;
  }
  long error_lines = 0;
  bool errors_are_div = true;
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("ERROR ", 0) == 0) {
      ++error_lines;
      errors_are_div &= line.find("division.test#") != std::string::npos &&
                        line.find("provider crash") != std::string::npos;
    }
  }
  bool totals_ok =
      report.find("TOTAL pass=4 fail=0 skip=0 error=2") != std::string::npos;
  detail = fmt("exit=%d error_lines=%ld div_only=%d totals_ok=%d", code,
               error_lines, errors_are_div ? 1 : 0, totals_ok ? 1 : 0);
  return code == 1 && error_lines == 2 && errors_are_div && totals_ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::fprintf(stderr, "usage: acceptance <cli-binary> <data-dir> <scratch-dir>\n");
    return 2;
  }
  g_cli = argv[1];
  g_data = argv[2];
  g_tmp = argv[3];
  std::filesystem::create_directories(g_tmp);

  struct Criterion {
    const char* name;
    bool (*fn)(std::string&);
  };
  const Criterion criteria[] = {
      {"sample suite fidelity", check_sample},
      {"bundled suite certification", check_bundled_validation},
      {"directed rounding equivalence", check_directed_rounding},
      {"error-free transform exactness", check_eft},
      {"inclusion fuzzing", check_fuzzing},
      {"decoration combinatorics", check_decorations},
      {"accuracy-level discrimination", check_discrimination},
      {"signed-zero indifference", check_zero_sign},
      {"determinism", check_determinism},
      {"crash containment", check_crash_containment},
  };

  int failures = 0;
  for (size_t i = 0; i < std::size(criteria); ++i) {
    std::string d;
    bool ok = criteria[i].fn(d);
    failures += !ok;
    std::printf("%s %2zu %s%s%s\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].name, d.empty() ? "" : ": ", d.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
