#pragma once
// Implementations under test. A provider exposes five entry points, one per
// result family, plus a capability table over the whole operation
// vocabulary. An operation a provider does not claim is skipped by the
// runner, never an error. Providers signal failure by throwing; the runner
// converts a throw into an error verdict and keeps going.
//
// Built-in providers, by registry name:
//   reference     the engine in this repository
//   next-out      reference results widened one step per finite endpoint
//   entire        answers the whole line to every interval question
//   no-div        reference, with div marked absent from the capability table
//   crash-on-div  reference, but throws on every div evaluation
//   echo          reference routed through the launcher wire encoding

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "itlconform/decoration.hpp"
#include "itlconform/interval.hpp"
#include "itlconform/ops.hpp"

namespace itlconform::harness {

struct Caps {
  bool bare = false;
  bool decorated = false;
};

class Provider {
 public:
  virtual ~Provider() = default;

  virtual std::string_view name() const = 0;
  virtual Caps caps(Op op) const = 0;
  virtual bool thread_safe() const { return true; }

  virtual Interval interval_op(Op op, std::span<const Interval> xs) = 0;
  virtual DecoratedInterval decorated_op(Op op,
                                         std::span<const DecoratedInterval> xs) = 0;
  virtual double numeric_op(Op op, const Interval& x) = 0;
  virtual bool bool_op(Op op, std::span<const Interval> xs) = 0;
  virtual bool member_op(double point, const Interval& x) = 0;
  virtual IntervalResult text_op(std::string_view text) = 0;
};

std::unique_ptr<Provider> make_provider(std::string_view name);
std::vector<std::string_view> provider_names();

}  // namespace itlconform::harness
