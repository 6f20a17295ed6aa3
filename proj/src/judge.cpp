#include "itlconform/judge.hpp"

#include <bit>
#include <cmath>

#include "itlconform/fpkernel.hpp"

namespace itlconform::judge {
namespace {

namespace fpk = itlconform::fpk;

Verdict pass_verdict() { return {Status::pass, {}}; }

Verdict fail_verdict(std::string reason) { return {Status::fail, std::move(reason)}; }

bool unbounded(const Interval& x) {
  return !x.is_empty() && (std::isinf(x.lo()) || std::isinf(x.hi()));
}

long double width_ld(const Interval& x) {
  return static_cast<long double>(x.hi()) - static_cast<long double>(x.lo());
}

double ulp_at(double magnitude) {
  if (magnitude == 0.0) return fpk::kMinSubnormal;
  return fpk::next_up(magnitude) - magnitude;
}

}  // namespace

std::string_view mode_name(AccuracyMode m) {
  switch (m) {
    case AccuracyMode::tightest: return "tightest";
    case AccuracyMode::accurate: return "accurate";
    case AccuracyMode::valid:    return "valid";
  }
  return "tightest";
}

std::string_view status_name(Status s) {
  switch (s) {
    case Status::pass:             return "pass";
    case Status::fail:             return "fail";
    case Status::skip_unsupported: return "skip-unsupported";
    case Status::skip_flavor:      return "skip-flavor";
    case Status::error:            return "error";
  }
  return "error";
}

Interval next_out(const Interval& x) {
  if (x.is_empty()) return Interval::empty();
  double lo = std::isinf(x.lo()) ? x.lo() : fpk::next_down(x.lo());
  double hi = std::isinf(x.hi()) ? x.hi() : fpk::next_up(x.hi());
  return Interval::unchecked(lo, hi);
}

Verdict judge_interval(const Interval& computed, const Interval& expected,
                       AccuracyMode mode, double tau) {
  if (mode == AccuracyMode::tightest) {
    if (computed.is_empty() != expected.is_empty())
      return fail_verdict("emptiness mismatch");
    if (computed.is_empty()) return pass_verdict();
    if (computed.lo() == expected.lo() && computed.hi() == expected.hi())
      return pass_verdict();
    return fail_verdict("endpoints differ from tightest result");
  }

  if (!subset(expected, computed))
    return fail_verdict(
        "containment violated: computed excludes part of the certified "
        "tightest result (oracle or provider bug)");

  if (subset(computed, next_out(expected))) return pass_verdict();
  if (mode == AccuracyMode::accurate)
    return fail_verdict("looser than one outward step from tightest");

  if (expected.is_empty() || unbounded(expected)) return pass_verdict();
  if (unbounded(computed))
    return fail_verdict("unbounded result for a bounded expected range");
  long double slack = 2.0L * static_cast<long double>(ulp_at(mag(expected)));
  long double budget =
      (1.0L + static_cast<long double>(tau)) * width_ld(expected) + slack;
  if (width_ld(computed) <= budget) return pass_verdict();
  return fail_verdict("width exceeds (1+tau) times the expected width");
}

Verdict judge_decorated(const DecoratedInterval& computed,
                        const DecoratedInterval& expected, AccuracyMode mode,
                        double tau) {
  if (is_nai(computed) != is_nai(expected)) return fail_verdict("NaI mismatch");
  if (is_nai(computed)) return pass_verdict();
  Verdict bare = judge_interval(computed.interval, expected.interval, mode, tau);
  if (bare.status != Status::pass) return bare;
  if (mode == AccuracyMode::tightest) {
    if (computed.dec != expected.dec)
      return fail_verdict(std::string("decoration mismatch: got ") +
                          std::string(decoration_name(computed.dec)) +
                          ", expected " +
                          std::string(decoration_name(expected.dec)));
    return pass_verdict();
  }
  if (computed.dec < expected.dec)
    return fail_verdict(std::string("decoration weaker than expected: got ") +
                        std::string(decoration_name(computed.dec)) +
                        ", expected at least " +
                        std::string(decoration_name(expected.dec)));
  return pass_verdict();
}

Verdict judge_numeric(double computed, double expected) {
  if (std::isnan(computed) && std::isnan(expected)) return pass_verdict();
  if (std::bit_cast<uint64_t>(computed) == std::bit_cast<uint64_t>(expected))
    return pass_verdict();
  return fail_verdict("numeric value differs");
}

Verdict judge_boolean(bool computed, bool expected) {
  if (computed == expected) return pass_verdict();
  return fail_verdict("boolean value differs");
}

Verdict judge_signal(bool observed_undefined, bool expected_undefined) {
  if (observed_undefined == expected_undefined) return pass_verdict();
  if (expected_undefined) return fail_verdict("missing undefined_operation signal");
  return fail_verdict("spurious undefined_operation signal");
}

}  // namespace itlconform::judge
