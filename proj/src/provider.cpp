#include "itlconform/provider.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "itlconform/fpkernel.hpp"

namespace itlconform::harness {
namespace {

namespace fpk = itlconform::fpk;

class ReferenceProvider : public Provider {
 public:
  std::string_view name() const override { return "reference"; }

  Caps caps(Op op) const override {
    if (op_takes_intervals(op) && op_kind(op) != OpKind::numeric &&
        op_kind(op) != OpKind::boolean)
      return {true, true};
    return {true, false};
  }

  Interval interval_op(Op op, std::span<const Interval> xs) override {
    return eval_interval_op(op, xs);
  }

  DecoratedInterval decorated_op(Op op,
                                 std::span<const DecoratedInterval> xs) override {
    return dec_op(op, xs);
  }

  double numeric_op(Op op, const Interval& x) override {
    return eval_numeric_op(op, x);
  }

  bool bool_op(Op op, std::span<const Interval> xs) override {
    return eval_bool_op(op, xs);
  }

  bool member_op(double point, const Interval& x) override {
    return is_member(point, x);
  }

  IntervalResult text_op(std::string_view text) override {
    return text_to_interval(text);
  }
};

// Everything one step looser than the reference. Passes the accurate band
// everywhere and never the tightest band on a nonempty result; used to
// separate the two in discrimination tests.
class NextOutProvider : public ReferenceProvider {
 public:
  std::string_view name() const override { return "next-out"; }

  Interval interval_op(Op op, std::span<const Interval> xs) override {
    return widen(ReferenceProvider::interval_op(op, xs));
  }

  DecoratedInterval decorated_op(Op op,
                                 std::span<const DecoratedInterval> xs) override {
    DecoratedInterval r = ReferenceProvider::decorated_op(op, xs);
    if (is_nai(r) || r.interval.is_empty()) return r;
    DecoratedInterval out{widen(r.interval), r.dec};
    if (out.dec == Decoration::com &&
        (std::isinf(out.interval.lo()) || std::isinf(out.interval.hi())))
      out.dec = Decoration::dac;
    return out;
  }

 private:
  static Interval widen(const Interval& x) {
    if (x.is_empty()) return x;
    double lo = std::isinf(x.lo()) ? x.lo() : fpk::next_down(x.lo());
    double hi = std::isinf(x.hi()) ? x.hi() : fpk::next_up(x.hi());
    return Interval::unchecked(lo, hi);
  }
};

// The maximally lazy provider: always correct in the containment sense for
// interval questions and useless in every other sense.
class EntireProvider : public Provider {
 public:
  std::string_view name() const override { return "entire"; }

  Caps caps(Op op) const override {
    if (op_takes_intervals(op) && op_kind(op) != OpKind::numeric &&
        op_kind(op) != OpKind::boolean)
      return {true, true};
    return {true, false};
  }

  Interval interval_op(Op, std::span<const Interval>) override {
    return Interval::entire();
  }

  DecoratedInterval decorated_op(Op, std::span<const DecoratedInterval>) override {
    return {Interval::entire(), Decoration::trv};
  }

  double numeric_op(Op, const Interval&) override { return 0.0; }
  bool bool_op(Op, std::span<const Interval>) override { return false; }
  bool member_op(double, const Interval&) override { return false; }
  IntervalResult text_op(std::string_view) override {
    return {Interval::entire(), Signal::none};
  }
};

class NoDivProvider : public ReferenceProvider {
 public:
  std::string_view name() const override { return "no-div"; }

  Caps caps(Op op) const override {
    if (op == Op::div) return {false, false};
    return ReferenceProvider::caps(op);
  }
};

class CrashOnDivProvider : public ReferenceProvider {
 public:
  std::string_view name() const override { return "crash-on-div"; }

  Interval interval_op(Op op, std::span<const Interval> xs) override {
    crash_if_div(op);
    return ReferenceProvider::interval_op(op, xs);
  }

  DecoratedInterval decorated_op(Op op,
                                 std::span<const DecoratedInterval> xs) override {
    crash_if_div(op);
    return ReferenceProvider::decorated_op(op, xs);
  }

 private:
  static void crash_if_div(Op op) {
    if (op == Op::div) throw std::runtime_error("simulated provider crash");
  }
};

// Routes every evaluation through the one-line wire encoding an external
// launcher would speak, then delegates to the reference engine:
//
//   request:   eval OP ARG...          response:  ok RESULT
//
// Arguments and results travel as canonical hex interval text (exact, so
// the detour is lossless), with "_dec" suffixes for decorated values,
// "n:HEX" for numbers, "b:BOOL" for booleans and "t:RAW" for text inputs.
class EchoProvider : public ReferenceProvider {
 public:
  std::string_view name() const override { return "echo"; }

  Interval interval_op(Op op, std::span<const Interval> xs) override {
    std::string req = "eval " + std::string(op_name(op));
    for (const Interval& x : xs) req += " " + compact(interval_to_text(x));
    std::vector<Interval> parsed;
    std::istringstream in(req);
    std::string tok;
    in >> tok >> tok;
    while (in >> tok) {
      IntervalResult r = text_to_interval(tok);
      if (r.signal != Signal::none)
        throw std::runtime_error("wire decode failure: " + tok);
      parsed.push_back(r.value);
    }
    Interval result = ReferenceProvider::interval_op(op, parsed);
    std::string resp = "ok " + compact(interval_to_text(result));
    IntervalResult back = text_to_interval(std::string_view(resp).substr(3));
    if (back.signal != Signal::none)
      throw std::runtime_error("wire decode failure: " + resp);
    return back.value;
  }

 private:
  static std::string compact(std::string_view s) {
    std::string out;
    for (char c : s)
      if (c != ' ') out += c;
    return out;
  }
};

}  // namespace

std::unique_ptr<Provider> make_provider(std::string_view name) {
  if (name == "reference") return std::make_unique<ReferenceProvider>();
  if (name == "next-out") return std::make_unique<NextOutProvider>();
  if (name == "entire") return std::make_unique<EntireProvider>();
  if (name == "no-div") return std::make_unique<NoDivProvider>();
  if (name == "crash-on-div") return std::make_unique<CrashOnDivProvider>();
  if (name == "echo") return std::make_unique<EchoProvider>();
  return nullptr;
}

std::vector<std::string_view> provider_names() {
  return {"reference", "next-out", "entire", "no-div", "crash-on-div", "echo"};
}

}  // namespace itlconform::harness
