#pragma once
// Executes a parsed test suite against a provider and renders the outcome.
//
// Execution order is file order. A testcase filter uses shell-style '*'
// and '?'. With jobs > 1 the testcases are sharded across threads and the
// records merged back into file order, so the rendered report is identical
// to a single-threaded run.
//
// Rendered reports are deterministic byte for byte: the wall-clock time is
// kept in the Report struct but never printed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "itlconform/itl.hpp"
#include "itlconform/judge.hpp"
#include "itlconform/provider.hpp"

namespace itlconform::harness {

struct RunOptions {
  std::optional<judge::AccuracyMode> mode_override;
  double tau = 0.0;
  std::string filter;  // empty matches every testcase
  int jobs = 1;
};

struct AssertionRecord {
  std::string testcase;
  int index = 0;  // position within the testcase
  std::string op;
  judge::Status status = judge::Status::pass;
  std::string reason;
  std::string inputs;
  std::string expected;
  std::string observed;
  std::string mode;
  int line = 0;
};

struct Totals {
  int pass = 0;
  int fail = 0;
  int skip_unsupported = 0;
  int skip_flavor = 0;
  int error = 0;

  int skipped() const { return skip_unsupported + skip_flavor; }
  int all() const { return pass + fail + skipped() + error; }
};

struct Report {
  std::string provider;
  std::string suite_name;
  std::string suite_source;
  uint64_t suite_hash = 0;  // FNV-1a of the canonical serialization
  std::vector<AssertionRecord> records;
  Totals totals;
  double wall_seconds = 0.0;
};

Report run_suite(Provider& provider, const itl::TestSuite& suite,
                 const RunOptions& opts = {});

enum class ReportFormat : uint8_t { text, ndjson };

// Text: one line per non-pass record, then a summary and a TOTAL line.
// Ndjson: a meta object, one object per record, the same TOTAL line.
std::string render_report(const Report& report, ReportFormat format);

bool glob_match(std::string_view pattern, std::string_view text);
uint64_t suite_hash(const itl::TestSuite& suite);

}  // namespace itlconform::harness
