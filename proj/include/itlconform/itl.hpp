#pragma once
// The interval test language: abstract syntax, a recovering parser, and a
// canonical serializer.
//
// Grammar accepted by parse():
//   suite      := { testcase }
//   testcase   := "testcase" NAME "{" { assertion } "}"
//   assertion  := OP literal+ "=" literal+ { annotation } ";"
//   literal    := "[" payload "]" [ "_" DECORATION ]   |  NUMBER
//               | "true" | "false" | "undefined_operation" | "no_signal"
//   payload    := "empty" | "entire" | "nai" | NUMBER [ "," NUMBER ]
//   annotation := "<" ("tightest"|"accurate"|"valid") ">"
//               | "<" "flavor" ":" NAME ">"
// with "//" line and "/* */" block comments. Numbers are signed decimal or
// C99 hex floats, or the keywords infinity/inf/nan, case-insensitive.
// Annotations are extensions with backward-compatible defaults (tightest,
// set-based); files without them parse unchanged.
//
// Errors carry line and column and resynchronize at the next ';', so one
// malformed assertion yields one diagnostic and the rest of the file still
// parses. Unknown top-level constructs produce a note, not an error.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace itlconform::itl {

struct Literal {
  enum class Kind : uint8_t {
    interval,
    decorated_interval,
    number,
    boolean,
    signal,
  };
  Kind kind = Kind::interval;
  // Canonical token text, endpoint spellings preserved verbatim:
  // "[ -1.0, 1.0 ]", "[ 0X1.FP+3 ]_com", "3.5", "true", ...
  std::string text;

  friend bool operator==(const Literal&, const Literal&) = default;
};

enum class AssertMode : uint8_t { tightest, accurate, valid };

std::string_view assert_mode_name(AssertMode m);

struct Assertion {
  std::string op;
  std::vector<Literal> inputs;
  std::vector<Literal> expected;
  AssertMode mode = AssertMode::tightest;
  std::string flavor = "set-based";
  int line = 0;

  friend bool operator==(const Assertion& a, const Assertion& b) {
    return a.op == b.op && a.inputs == b.inputs && a.expected == b.expected &&
           a.mode == b.mode && a.flavor == b.flavor;
  }
};

struct TestCase {
  std::string name;
  std::vector<Assertion> assertions;
  int line = 0;

  friend bool operator==(const TestCase& a, const TestCase& b) {
    return a.name == b.name && a.assertions == b.assertions;
  }
};

struct TestSuite {
  std::string name;        // derived from the source path
  std::string source;      // path or synthetic origin
  std::vector<TestCase> testcases;

  friend bool operator==(const TestSuite& a, const TestSuite& b) {
    return a.testcases == b.testcases;
  }
};

struct Diagnostic {
  int line = 0;
  int column = 0;
  std::string message;
};

struct ParseResult {
  TestSuite suite;
  std::vector<Diagnostic> errors;  // malformed assertions, one each
  std::vector<Diagnostic> notes;   // skipped unsupported constructs
};

ParseResult parse(std::string_view text, std::string_view source_name = "");

// Canonical formatting: one assertion per line, single spaces, four-space
// indent, literal tokens verbatim. parse(serialize(s)) is structurally
// equal to s, and serialize(parse(t)) is idempotent.
std::string serialize(const TestSuite& suite);

}  // namespace itlconform::itl
