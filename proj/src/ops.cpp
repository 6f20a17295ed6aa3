#include "itlconform/ops.hpp"

#include <array>

namespace itlconform {

namespace {

struct OpInfo {
  Op op;
  std::string_view name;
  OpKind kind;
  int arity;
};

constexpr std::array<OpInfo, kOpCount> kOps{{
    {Op::neg, "neg", OpKind::arith, 1},
    {Op::add, "add", OpKind::arith, 2},
    {Op::sub, "sub", OpKind::arith, 2},
    {Op::mul, "mul", OpKind::arith, 2},
    {Op::div, "div", OpKind::arith, 2},
    {Op::recip, "recip", OpKind::arith, 1},
    {Op::sqr, "sqr", OpKind::arith, 1},
    {Op::sqrt, "sqrt", OpKind::arith, 1},
    {Op::fma, "fma", OpKind::arith, 3},
    {Op::exp, "exp", OpKind::elem, 1},
    {Op::log, "log", OpKind::elem, 1},
    {Op::log2, "log2", OpKind::elem, 1},
    {Op::log10, "log10", OpKind::elem, 1},
    {Op::sin, "sin", OpKind::elem, 1},
    {Op::cos, "cos", OpKind::elem, 1},
    {Op::tan, "tan", OpKind::elem, 1},
    {Op::atan, "atan", OpKind::elem, 1},
    {Op::pow, "pow", OpKind::elem, 2},
    {Op::intersection, "intersection", OpKind::set_op, 2},
    {Op::convex_hull, "convex_hull", OpKind::set_op, 2},
    {Op::inf, "inf", OpKind::numeric, 1},
    {Op::sup, "sup", OpKind::numeric, 1},
    {Op::mid, "mid", OpKind::numeric, 1},
    {Op::rad, "rad", OpKind::numeric, 1},
    {Op::wid, "wid", OpKind::numeric, 1},
    {Op::mag, "mag", OpKind::numeric, 1},
    {Op::mig, "mig", OpKind::numeric, 1},
    {Op::is_empty, "is_empty", OpKind::boolean, 1},
    {Op::is_entire, "is_entire", OpKind::boolean, 1},
    {Op::equal, "equal", OpKind::boolean, 2},
    {Op::subset, "subset", OpKind::boolean, 2},
    {Op::interior, "interior", OpKind::boolean, 2},
    {Op::disjoint, "disjoint", OpKind::boolean, 2},
    {Op::is_member, "is_member", OpKind::boolean, 2},
    {Op::text_to_interval, "text_to_interval", OpKind::text, 1},
}};

}  // namespace

std::string_view op_name(Op op) { return kOps[static_cast<int>(op)].name; }

std::optional<Op> op_from_name(std::string_view name) {
  for (const auto& info : kOps)
    if (info.name == name) return info.op;
  return std::nullopt;
}

OpKind op_kind(Op op) { return kOps[static_cast<int>(op)].kind; }

int op_arity(Op op) { return kOps[static_cast<int>(op)].arity; }

bool op_takes_intervals(Op op) {
  switch (op_kind(op)) {
    case OpKind::text:
      return false;
    case OpKind::boolean:
      return op != Op::is_member;
    default:
      return true;
  }
}

}  // namespace itlconform
