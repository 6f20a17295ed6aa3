#include "itlconform/runner.hpp"
#include <limits>

#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "itlconform/fpkernel.hpp"
#include "json.hpp"

namespace itlconform::harness {
namespace {

namespace fpk = itlconform::fpk;
using judge::AccuracyMode;
using judge::Status;
using judge::Verdict;

AccuracyMode mode_of(itl::AssertMode m) {
  switch (m) {
    case itl::AssertMode::tightest: return AccuracyMode::tightest;
    case itl::AssertMode::accurate: return AccuracyMode::accurate;
    case itl::AssertMode::valid:    return AccuracyMode::valid;
  }
  return AccuracyMode::tightest;
}

std::string join_texts(const std::vector<itl::Literal>& lits) {
  std::string out;
  for (const itl::Literal& lit : lits) {
    if (!out.empty()) out += " ";
    out += lit.text;
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

struct DecoratedParse {
  DecoratedInterval value;
  bool ok = false;
};

// "[ nai ]" is the only decorated literal without a suffix.
DecoratedParse decorated_from_literal(const itl::Literal& lit) {
  std::string_view text = lit.text;
  size_t us = text.rfind("]_");
  if (us == std::string_view::npos) {
    if (lower(text).find("nai") != std::string::npos) return {nai(), true};
    return {};
  }
  std::string_view bare = text.substr(0, us + 1);
  std::optional<Decoration> dec = decoration_from_name(text.substr(us + 2));
  if (!dec) return {};
  IntervalResult r = text_to_interval(bare);
  if (r.signal != Signal::none) return {};
  DecoratedInterval out{r.value, *dec};
  if (!decorated_valid(out)) return {};
  return {out, true};
}

struct PointParse {
  double value = 0.0;
  bool ok = false;
};

// A number literal denotes one binary64. Hex and short decimals convert
// exactly; an over-long decimal takes its round-toward-negative value so
// the choice is deterministic.
PointParse point_from_text(std::string_view text) {
  std::string low = lower(text);
  bool neg = false;
  if (!low.empty() && (low[0] == '+' || low[0] == '-')) {
    neg = low[0] == '-';
    low.erase(0, 1);
  }
  if (low == "inf" || low == "infinity")
    return {neg ? -std::numeric_limits<double>::infinity()
                : std::numeric_limits<double>::infinity(),
            true};
  if (low == "nan") return {std::numeric_limits<double>::quiet_NaN(), true};
  IntervalResult r = text_to_interval("[" + low + "]");
  if (r.signal != Signal::none) return {};
  double v = r.value.lo();
  return {neg ? -v : v, true};
}

std::string render_decorated(const DecoratedInterval& d) {
  if (is_nai(d)) return "[nai]";
  return interval_to_text(d.interval) + "_" + std::string(decoration_name(d.dec));
}

struct ExpectedSplit {
  const itl::Literal* main = nullptr;
  bool signal_expected = false;
  bool multiple_main = false;
};

ExpectedSplit split_expected(const itl::Assertion& a) {
  ExpectedSplit out;
  for (const itl::Literal& lit : a.expected) {
    if (lit.kind == itl::Literal::Kind::signal) {
      out.signal_expected = lit.text == "undefined_operation";
    } else {
      if (out.main) out.multiple_main = true;
      out.main = &lit;
    }
  }
  return out;
}

void apply(AssertionRecord& rec, const Verdict& v) {
  if (rec.status != Status::pass) return;
  rec.status = v.status;
  rec.reason = v.reason;
}

AssertionRecord eval_assertion(Provider& provider, std::string_view testcase,
                               int index, const itl::Assertion& a,
                               const RunOptions& opts) {
  AssertionRecord rec;
  rec.testcase = std::string(testcase);
  rec.index = index;
  rec.op = a.op;
  rec.line = a.line;
  rec.inputs = join_texts(a.inputs);
  rec.expected = join_texts(a.expected);
  AccuracyMode mode = opts.mode_override.value_or(mode_of(a.mode));
  rec.mode = std::string(judge::mode_name(mode));

  if (a.flavor != "set-based") {
    rec.status = Status::skip_flavor;
    rec.reason = "flavor '" + a.flavor + "' not supported";
    return rec;
  }
  std::optional<Op> opq = op_from_name(a.op);
  if (!opq) {
    rec.status = Status::skip_unsupported;
    rec.reason = "unknown operation '" + a.op + "'";
    return rec;
  }
  Op op = *opq;

  bool wants_dec = false;
  for (const itl::Literal& lit : a.inputs)
    wants_dec |= lit.kind == itl::Literal::Kind::decorated_interval;
  for (const itl::Literal& lit : a.expected)
    wants_dec |= lit.kind == itl::Literal::Kind::decorated_interval;

  Caps caps = provider.caps(op);
  if (wants_dec ? !caps.decorated : !caps.bare) {
    rec.status = Status::skip_unsupported;
    rec.reason = std::string(wants_dec ? "decorated " : "") + "operation '" +
                 a.op + "' not provided";
    return rec;
  }

  ExpectedSplit exp = split_expected(a);
  if (exp.multiple_main) {
    rec.status = Status::fail;
    rec.reason = "kind mismatch: more than one expected value";
    return rec;
  }

  if (op != Op::text_to_interval &&
      static_cast<int>(a.inputs.size()) != op_arity(op)) {
    rec.status = Status::error;
    rec.reason = "arity mismatch: '" + a.op + "' takes " +
                 std::to_string(op_arity(op)) + " inputs";
    return rec;
  }

  try {
    switch (op_kind(op)) {
      case OpKind::text: {
        if (a.inputs.size() != 1 ||
            a.inputs[0].kind != itl::Literal::Kind::interval) {
          rec.status = Status::error;
          rec.reason = "text_to_interval takes one interval-shaped input";
          return rec;
        }
        IntervalResult r = provider.text_op(a.inputs[0].text);
        rec.observed = interval_to_text(r.value);
        if (r.signal != Signal::none) rec.observed += " undefined_operation";
        if (exp.main) {
          if (exp.main->kind != itl::Literal::Kind::interval) {
            apply(rec, {Status::fail, "kind mismatch: expected an interval"});
            return rec;
          }
          IntervalResult want = text_to_interval(exp.main->text);
          if (want.signal != Signal::none) {
            rec.status = Status::error;
            rec.reason = "invalid expected literal " + exp.main->text;
            return rec;
          }
          apply(rec, judge_interval(r.value, want.value, mode, opts.tau));
        }
        apply(rec, judge::judge_signal(r.signal == Signal::undefined_operation,
                                       exp.signal_expected));
        return rec;
      }

      case OpKind::numeric: {
        if (a.inputs[0].kind != itl::Literal::Kind::interval) {
          rec.status = Status::error;
          rec.reason = "invalid input literal " + a.inputs[0].text;
          return rec;
        }
        IntervalResult x = text_to_interval(a.inputs[0].text);
        if (x.signal != Signal::none) {
          rec.status = Status::error;
          rec.reason = "invalid input literal " + a.inputs[0].text;
          return rec;
        }
        double got = provider.numeric_op(op, x.value);
        rec.observed = fpk::f64_to_hex(got);
        if (!exp.main || exp.main->kind != itl::Literal::Kind::number) {
          apply(rec, {Status::fail, "kind mismatch: expected a number"});
          return rec;
        }
        PointParse want = point_from_text(exp.main->text);
        if (!want.ok) {
          rec.status = Status::error;
          rec.reason = "invalid expected literal " + exp.main->text;
          return rec;
        }
        apply(rec, judge::judge_numeric(got, want.value));
        return rec;
      }

      case OpKind::boolean: {
        bool got;
        if (op == Op::is_member) {
          if (a.inputs[0].kind != itl::Literal::Kind::number ||
              a.inputs[1].kind != itl::Literal::Kind::interval) {
            rec.status = Status::error;
            rec.reason = "is_member takes a number and an interval";
            return rec;
          }
          PointParse pt = point_from_text(a.inputs[0].text);
          IntervalResult x = text_to_interval(a.inputs[1].text);
          if (!pt.ok || x.signal != Signal::none) {
            rec.status = Status::error;
            rec.reason = "invalid input literal";
            return rec;
          }
          got = provider.member_op(pt.value, x.value);
        } else {
          std::vector<Interval> xs;
          for (const itl::Literal& lit : a.inputs) {
            if (lit.kind != itl::Literal::Kind::interval) {
              rec.status = Status::error;
              rec.reason = "invalid input literal " + lit.text;
              return rec;
            }
            IntervalResult x = text_to_interval(lit.text);
            if (x.signal != Signal::none) {
              rec.status = Status::error;
              rec.reason = "invalid input literal " + lit.text;
              return rec;
            }
            xs.push_back(x.value);
          }
          got = provider.bool_op(op, xs);
        }
        rec.observed = got ? "true" : "false";
        if (!exp.main || exp.main->kind != itl::Literal::Kind::boolean) {
          apply(rec, {Status::fail, "kind mismatch: expected a boolean"});
          return rec;
        }
        apply(rec, judge::judge_boolean(got, lower(exp.main->text) == "true"));
        return rec;
      }

      default: {  // arith, elem, set_op
        if (wants_dec) {
          std::vector<DecoratedInterval> xs;
          for (const itl::Literal& lit : a.inputs) {
            if (lit.kind == itl::Literal::Kind::decorated_interval) {
              DecoratedParse p = decorated_from_literal(lit);
              if (!p.ok) {
                rec.status = Status::error;
                rec.reason = "invalid input literal " + lit.text;
                return rec;
              }
              xs.push_back(p.value);
            } else if (lit.kind == itl::Literal::Kind::interval) {
              // A bare literal beside decorated ones gets the canonical
              // decoration of a fresh interval.
              IntervalResult x = text_to_interval(lit.text);
              if (x.signal != Signal::none) {
                rec.status = Status::error;
                rec.reason = "invalid input literal " + lit.text;
                return rec;
              }
              xs.push_back(new_dec(x.value));
            } else {
              rec.status = Status::error;
              rec.reason = "invalid input literal " + lit.text;
              return rec;
            }
          }
          DecoratedInterval got = provider.decorated_op(op, xs);
          rec.observed = render_decorated(got);
          if (!exp.main ||
              exp.main->kind != itl::Literal::Kind::decorated_interval) {
            apply(rec, {Status::fail, "kind mismatch: expected a decorated interval"});
            return rec;
          }
          DecoratedParse want = decorated_from_literal(*exp.main);
          if (!want.ok) {
            rec.status = Status::error;
            rec.reason = "invalid expected literal " + exp.main->text;
            return rec;
          }
          apply(rec, judge_decorated(got, want.value, mode, opts.tau));
          return rec;
        }
        std::vector<Interval> xs;
        for (const itl::Literal& lit : a.inputs) {
          if (lit.kind != itl::Literal::Kind::interval) {
            rec.status = Status::error;
            rec.reason = "invalid input literal " + lit.text;
            return rec;
          }
          IntervalResult x = text_to_interval(lit.text);
          if (x.signal != Signal::none) {
            rec.status = Status::error;
            rec.reason = "invalid input literal " + lit.text;
            return rec;
          }
          xs.push_back(x.value);
        }
        Interval got = provider.interval_op(op, xs);
        rec.observed = interval_to_text(got);
        if (!exp.main || exp.main->kind != itl::Literal::Kind::interval) {
          apply(rec, {Status::fail, "kind mismatch: expected a bare interval"});
          return rec;
        }
        IntervalResult want = text_to_interval(exp.main->text);
        if (want.signal != Signal::none) {
          rec.status = Status::error;
          rec.reason = "invalid expected literal " + exp.main->text;
          return rec;
        }
        apply(rec, judge_interval(got, want.value, mode, opts.tau));
        return rec;
      }
    }
  } catch (const std::exception& e) {
    rec.status = Status::error;
    rec.reason = std::string("provider crash: ") + e.what();
    rec.observed = "<crash>";
    return rec;
  } catch (...) {
    rec.status = Status::error;
    rec.reason = "provider crash";
    rec.observed = "<crash>";
    return rec;
  }
}

std::string hash_hex(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string json_escape(std::string_view s) {
  nlohmann::json j = std::string(s);
  return j.dump();
}

}  // namespace

bool glob_match(std::string_view pattern, std::string_view text) {
  size_t p = 0, t = 0;
  size_t star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

uint64_t suite_hash(const itl::TestSuite& suite) {
  std::string canon = itl::serialize(suite);
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Report run_suite(Provider& provider, const itl::TestSuite& suite,
                 const RunOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  Report report;
  report.provider = std::string(provider.name());
  report.suite_name = suite.name;
  report.suite_source = suite.source;
  report.suite_hash = suite_hash(suite);

  std::vector<const itl::TestCase*> cases;
  for (const itl::TestCase& tc : suite.testcases)
    if (opts.filter.empty() || glob_match(opts.filter, tc.name))
      cases.push_back(&tc);

  std::vector<std::vector<AssertionRecord>> sharded(cases.size());
  auto run_case = [&](size_t i) {
    const itl::TestCase& tc = *cases[i];
    sharded[i].reserve(tc.assertions.size());
    for (size_t k = 0; k < tc.assertions.size(); ++k)
      sharded[i].push_back(eval_assertion(provider, tc.name, static_cast<int>(k),
                                          tc.assertions[k], opts));
  };

  int jobs = std::max(1, opts.jobs);
  if (!provider.thread_safe()) jobs = 1;
  jobs = std::min<int>(jobs, static_cast<int>(cases.size()));
  if (jobs <= 1) {
    for (size_t i = 0; i < cases.size(); ++i) run_case(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= sharded.size()) return;
          run_case(i);
        }
      });
    for (std::thread& th : pool) th.join();
  }

  for (std::vector<AssertionRecord>& group : sharded)
    for (AssertionRecord& rec : group) {
      switch (rec.status) {
        case Status::pass:             ++report.totals.pass; break;
        case Status::fail:             ++report.totals.fail; break;
        case Status::skip_unsupported: ++report.totals.skip_unsupported; break;
        case Status::skip_flavor:      ++report.totals.skip_flavor; break;
        case Status::error:            ++report.totals.error; break;
      }
      report.records.push_back(std::move(rec));
    }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

std::string render_report(const Report& report, ReportFormat format) {
  const Totals& t = report.totals;
  std::string total_line = "TOTAL pass=" + std::to_string(t.pass) +
                           " fail=" + std::to_string(t.fail) +
                           " skip=" + std::to_string(t.skipped()) +
                           " error=" + std::to_string(t.error) + "\n";
  std::string out;
  if (format == ReportFormat::text) {
    out += "# provider=" + report.provider + " suite=" + report.suite_name;
    if (!report.suite_source.empty()) out += " source=" + report.suite_source;
    out += " hash=" + hash_hex(report.suite_hash) + "\n";
    for (const AssertionRecord& rec : report.records) {
      if (rec.status == Status::pass) continue;
      std::string status(judge::status_name(rec.status));
      for (char& c : status) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      out += status + " " + report.suite_name + "." + rec.testcase + "#" +
             std::to_string(rec.index) + " " + rec.op + " " + rec.inputs +
             " expected=" + rec.expected + " got=" + rec.observed +
             " mode=" + rec.mode + " reason=" + rec.reason + "\n";
    }
    out += "# pass=" + std::to_string(t.pass) + " fail=" + std::to_string(t.fail) +
           " skip-unsupported=" + std::to_string(t.skip_unsupported) +
           " skip-flavor=" + std::to_string(t.skip_flavor) +
           " error=" + std::to_string(t.error) + "\n";
    out += total_line;
    return out;
  }

  out += "{\"provider\":" + json_escape(report.provider) +
         ",\"suite\":" + json_escape(report.suite_name) +
         ",\"source\":" + json_escape(report.suite_source) +
         ",\"hash\":\"" + hash_hex(report.suite_hash) +
         "\",\"assertions\":" + std::to_string(t.all()) + "}\n";
  for (const AssertionRecord& rec : report.records) {
    out += "{\"testcase\":" + json_escape(rec.testcase) +
           ",\"idx\":" + std::to_string(rec.index) +
           ",\"op\":" + json_escape(rec.op) +
           ",\"status\":\"" + std::string(judge::status_name(rec.status)) +
           "\",\"mode\":\"" + rec.mode +
           "\",\"inputs\":" + json_escape(rec.inputs) +
           ",\"expected\":" + json_escape(rec.expected) +
           ",\"observed\":" + json_escape(rec.observed) +
           ",\"reason\":" + json_escape(rec.reason) +
           ",\"line\":" + std::to_string(rec.line) + "}\n";
  }
  out += total_line;
  return out;
}

}  // namespace itlconform::harness
