#pragma once
// Operation vocabulary shared by the test-description language, the
// generator, the judge and the providers. Names are the identifiers as they
// appear in test files.

#include <cstdint>
#include <optional>
#include <string_view>

namespace itlconform {

enum class Op : uint8_t {
  // interval -> interval arithmetic
  neg,
  add,
  sub,
  mul,
  div,
  recip,
  sqr,
  sqrt,
  fma,
  // interval -> interval elementary functions
  exp,
  log,
  log2,
  log10,
  sin,
  cos,
  tan,
  atan,
  pow,
  // set operations
  intersection,
  convex_hull,
  // interval -> number
  inf,
  sup,
  mid,
  rad,
  wid,
  mag,
  mig,
  // predicates
  is_empty,
  is_entire,
  equal,
  subset,
  interior,
  disjoint,
  is_member,
  // text -> interval
  text_to_interval,
};

enum class OpKind : uint8_t {
  arith,     // interval arithmetic with directed-rounding semantics
  elem,      // transcendental elementary functions
  set_op,    // intersection and hull
  numeric,   // interval -> double
  boolean,   // predicates
  text,      // literal -> interval conversion
};

constexpr int kOpCount = static_cast<int>(Op::text_to_interval) + 1;

std::string_view op_name(Op op);
std::optional<Op> op_from_name(std::string_view name);
OpKind op_kind(Op op);
int op_arity(Op op);
// True when the operation consumes interval arguments only.
bool op_takes_intervals(Op op);

}  // namespace itlconform
