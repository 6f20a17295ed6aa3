#include "itlconform/itl.hpp"

#include <cctype>
#include <algorithm>

namespace itlconform::itl {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_keyword(std::string_view tok, std::string_view kw) {
  return lower(tok) == kw;
}

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

bool all_hex_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isxdigit(c); });
}

// Shape check only; value conversion happens at evaluation time.
bool is_number_token(std::string_view s) {
  if (s.empty()) return false;
  if (s[0] == '+' || s[0] == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  std::string low = lower(s);
  if (low == "inf" || low == "infinity" || low == "nan") return true;
  if (low.size() > 2 && low[0] == '0' && low[1] == 'x') {
    std::string_view body = std::string_view(low).substr(2);
    size_t p = body.find('p');
    if (p == std::string_view::npos) return false;
    std::string_view mant = body.substr(0, p);
    std::string_view exp = body.substr(p + 1);
    if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) exp.remove_prefix(1);
    if (!all_digits(exp)) return false;
    size_t dot = mant.find('.');
    if (dot == std::string_view::npos) return all_hex_digits(mant);
    std::string_view ip = mant.substr(0, dot);
    std::string_view fp = mant.substr(dot + 1);
    if (ip.empty() && fp.empty()) return false;
    return (ip.empty() || all_hex_digits(ip)) && (fp.empty() || all_hex_digits(fp));
  }
  std::string_view body = low;
  size_t e = body.find('e');
  if (e != std::string_view::npos) {
    std::string_view exp = body.substr(e + 1);
    if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) exp.remove_prefix(1);
    if (!all_digits(exp)) return false;
    body = body.substr(0, e);
  }
  size_t dot = body.find('.');
  if (dot == std::string_view::npos) return all_digits(body);
  std::string_view ip = body.substr(0, dot);
  std::string_view fp = body.substr(dot + 1);
  if (ip.empty() && fp.empty()) return false;
  return (ip.empty() || all_digits(ip)) && (fp.empty() || all_digits(fp));
}

bool is_decoration_suffix(std::string_view s) {
  return s == "_com" || s == "_dac" || s == "_def" || s == "_trv" || s == "_ill";
}

struct Token {
  enum class Type : uint8_t {
    atom, lbrack, rbrack, lbrace, rbrace, comma, semi, eq,
    langle, rangle, colon, end,
  };
  Type type;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  Lexer(std::string_view src, std::vector<Diagnostic>& errors)
      : src_(src), errors_(errors) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') { advance(); continue; }
      if (std::isspace(static_cast<unsigned char>(c))) { advance(); continue; }
      if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
        int open_line = line_, open_col = col_;
        advance(); advance();
        bool closed = false;
        while (pos_ < src_.size()) {
          if (src_[pos_] == '*' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
            advance(); advance();
            closed = true;
            break;
          }
          advance();
        }
        if (!closed) errors_.push_back({open_line, open_col, "unterminated block comment"});
        continue;
      }
      int tl = line_, tc = col_;
      Token::Type punct;
      switch (c) {
        case '[': punct = Token::Type::lbrack; break;
        case ']': punct = Token::Type::rbrack; break;
        case '{': punct = Token::Type::lbrace; break;
        case '}': punct = Token::Type::rbrace; break;
        case ',': punct = Token::Type::comma; break;
        case ';': punct = Token::Type::semi; break;
        case '=': punct = Token::Type::eq; break;
        case '<': punct = Token::Type::langle; break;
        case '>': punct = Token::Type::rangle; break;
        case ':': punct = Token::Type::colon; break;
        default: punct = Token::Type::atom; break;
      }
      if (punct != Token::Type::atom) {
        out.push_back({punct, std::string(1, c), tl, tc});
        advance();
        continue;
      }
      size_t start = pos_;
      while (pos_ < src_.size() && !is_break(src_[pos_])) advance();
      out.push_back({Token::Type::atom, std::string(src_.substr(start, pos_ - start)), tl, tc});
    }
    out.push_back({Token::Type::end, "", line_, col_});
    return out;
  }

 private:
  static bool is_break(char c) {
    if (std::isspace(static_cast<unsigned char>(c))) return true;
    switch (c) {
      case '[': case ']': case '{': case '}': case ',': case ';':
      case '=': case '<': case '>': case ':':
        return true;
      default:
        return false;
    }
  }

  void advance() {
    if (src_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
    ++pos_;
  }

  std::string_view src_;
  std::vector<Diagnostic>& errors_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, ParseResult& out)
      : toks_(std::move(toks)), out_(out) {}

  void run() {
    while (!at(Token::Type::end)) {
      if (at(Token::Type::atom) && cur().text == "testcase") {
        parse_testcase();
        continue;
      }
      out_.notes.push_back({cur().line, cur().column,
                            "skipped: unsupported construct '" + describe(cur()) + "'"});
      skip_unknown_construct();
    }
  }

 private:
  const Token& cur() const { return toks_[idx_]; }
  bool at(Token::Type t) const { return cur().type == t; }
  void next() { if (!at(Token::Type::end)) ++idx_; }

  static std::string describe(const Token& t) {
    return t.type == Token::Type::end ? "<end of file>" : t.text;
  }

  void error_here(std::string msg) {
    out_.errors.push_back({cur().line, cur().column, std::move(msg)});
  }

  // After an error inside an assertion: drop tokens through the next ';',
  // stopping short of '}' so the enclosing testcase still closes.
  void resync_assertion() {
    while (!at(Token::Type::end) && !at(Token::Type::rbrace)) {
      if (at(Token::Type::semi)) { next(); return; }
      next();
    }
  }

  void skip_unknown_construct() {
    next();
    int depth = 0;
    while (!at(Token::Type::end)) {
      if (at(Token::Type::atom) && cur().text == "testcase" && depth == 0) return;
      if (at(Token::Type::lbrace)) ++depth;
      if (at(Token::Type::rbrace)) {
        if (depth == 0) { next(); return; }
        if (--depth == 0) { next(); return; }
      }
      if (at(Token::Type::semi) && depth == 0) { next(); return; }
      next();
    }
  }

  void parse_testcase() {
    int tc_line = cur().line;
    next();
    if (!at(Token::Type::atom)) {
      error_here("expected testcase name");
      skip_unknown_construct();
      return;
    }
    TestCase tc;
    tc.name = cur().text;
    tc.line = tc_line;
    for (const TestCase& prev : out_.suite.testcases) {
      if (prev.name == tc.name) {
        error_here("duplicate testcase name '" + tc.name + "'");
        break;
      }
    }
    next();
    if (!at(Token::Type::lbrace)) {
      error_here("expected '{' after testcase name");
      skip_unknown_construct();
      return;
    }
    next();
    while (!at(Token::Type::rbrace) && !at(Token::Type::end)) {
      parse_assertion(tc);
    }
    if (at(Token::Type::rbrace)) next();
    else error_here("expected '}' to close testcase '" + tc.name + "'");
    out_.suite.testcases.push_back(std::move(tc));
  }

  void parse_assertion(TestCase& tc) {
    if (!at(Token::Type::atom)) {
      error_here("expected operation name, got '" + describe(cur()) + "'");
      resync_assertion();
      return;
    }
    Assertion a;
    a.op = cur().text;
    a.line = cur().line;
    next();

    bool ok = true;
    while (ok && !at(Token::Type::eq)) {
      if (at(Token::Type::semi) || at(Token::Type::rbrace) || at(Token::Type::end)) {
        error_here("expected '=' in assertion '" + a.op + "'");
        ok = false;
        break;
      }
      Literal lit;
      if (!parse_literal(lit)) { ok = false; break; }
      a.inputs.push_back(std::move(lit));
    }
    if (ok && a.inputs.empty()) {
      error_here("assertion '" + a.op + "' has no inputs");
      ok = false;
    }
    if (ok) {
      next();  // '='
      while (!at(Token::Type::semi) && !at(Token::Type::langle)) {
        if (at(Token::Type::rbrace) || at(Token::Type::end)) {
          error_here("expected ';' to end assertion '" + a.op + "'");
          ok = false;
          break;
        }
        Literal lit;
        if (!parse_literal(lit)) { ok = false; break; }
        a.expected.push_back(std::move(lit));
      }
    }
    if (ok && a.expected.empty()) {
      error_here("assertion '" + a.op + "' has no expected values");
      ok = false;
    }
    while (ok && at(Token::Type::langle)) ok = parse_annotation(a);
    if (ok) {
      if (at(Token::Type::semi)) {
        next();
        tc.assertions.push_back(std::move(a));
        return;
      }
      error_here("expected ';' to end assertion '" + a.op + "'");
    }
    resync_assertion();
  }

  bool parse_annotation(Assertion& a) {
    next();  // '<'
    if (!at(Token::Type::atom)) {
      error_here("expected annotation name");
      return false;
    }
    std::string word = lower(cur().text);
    next();
    if (word == "tightest" || word == "accurate" || word == "valid") {
      a.mode = word == "tightest" ? AssertMode::tightest
             : word == "accurate" ? AssertMode::accurate
                                  : AssertMode::valid;
    } else if (word == "flavor") {
      if (!at(Token::Type::colon)) {
        error_here("expected ':' after 'flavor'");
        return false;
      }
      next();
      if (!at(Token::Type::atom)) {
        error_here("expected flavor name");
        return false;
      }
      a.flavor = cur().text;
      next();
    } else {
      error_here("unknown annotation '" + word + "'");
      return false;
    }
    if (!at(Token::Type::rangle)) {
      error_here("expected '>' to close annotation");
      return false;
    }
    next();
    return true;
  }

  bool parse_literal(Literal& lit) {
    if (at(Token::Type::atom)) {
      const std::string& t = cur().text;
      if (is_keyword(t, "true") || is_keyword(t, "false")) {
        lit.kind = Literal::Kind::boolean;
      } else if (t == "undefined_operation" || t == "no_signal") {
        lit.kind = Literal::Kind::signal;
      } else if (is_number_token(t)) {
        lit.kind = Literal::Kind::number;
      } else {
        error_here("expected literal, got '" + t + "'");
        return false;
      }
      lit.text = t;
      next();
      return true;
    }
    if (!at(Token::Type::lbrack)) {
      error_here("expected literal, got '" + describe(cur()) + "'");
      return false;
    }
    next();
    if (!at(Token::Type::atom)) {
      error_here("expected interval payload after '['");
      return false;
    }
    std::string first = cur().text;
    bool nai = is_keyword(first, "nai");
    bool keyword = nai || is_keyword(first, "empty") || is_keyword(first, "entire");
    if (!keyword && !is_number_token(first)) {
      error_here("malformed interval endpoint '" + first + "'");
      return false;
    }
    next();
    std::string second;
    bool has_second = false;
    if (!keyword && at(Token::Type::comma)) {
      next();
      if (!at(Token::Type::atom) || !is_number_token(cur().text)) {
        error_here("malformed interval endpoint after ','");
        return false;
      }
      second = cur().text;
      has_second = true;
      next();
    }
    if (!at(Token::Type::rbrack)) {
      error_here("expected ']' in interval literal");
      return false;
    }
    next();
    lit.kind = nai ? Literal::Kind::decorated_interval : Literal::Kind::interval;
    lit.text = has_second ? "[ " + first + ", " + second + " ]" : "[ " + first + " ]";
    if (at(Token::Type::atom) && cur().text.size() > 1 && cur().text[0] == '_') {
      if (nai) {
        error_here("'[nai]' does not take a decoration suffix");
        return false;
      }
      if (!is_decoration_suffix(cur().text)) {
        error_here("unknown decoration suffix '" + cur().text + "'");
        return false;
      }
      lit.kind = Literal::Kind::decorated_interval;
      lit.text += cur().text;
      next();
    }
    return true;
  }

  std::vector<Token> toks_;
  ParseResult& out_;
  size_t idx_ = 0;
};

std::string suite_name_from(std::string_view source) {
  if (source.empty()) return "suite";
  size_t slash = source.find_last_of("/\\");
  std::string_view base =
      slash == std::string_view::npos ? source : source.substr(slash + 1);
  size_t dot = base.find_last_of('.');
  if (dot != std::string_view::npos && dot > 0) base = base.substr(0, dot);
  return std::string(base);
}

}  // namespace

std::string_view assert_mode_name(AssertMode m) {
  switch (m) {
    case AssertMode::tightest: return "tightest";
    case AssertMode::accurate: return "accurate";
    case AssertMode::valid:    return "valid";
  }
  return "tightest";
}

ParseResult parse(std::string_view text, std::string_view source_name) {
  ParseResult out;
  out.suite.source = std::string(source_name);
  out.suite.name = suite_name_from(source_name);
  Lexer lexer(text, out.errors);
  Parser parser(lexer.run(), out);
  parser.run();
  return out;
}

std::string serialize(const TestSuite& suite) {
  std::string out;
  bool first = true;
  for (const TestCase& tc : suite.testcases) {
    if (!first) out += "\n";
    first = false;
    out += "testcase " + tc.name + " {\n";
    for (const Assertion& a : tc.assertions) {
      out += "    " + a.op;
      for (const Literal& lit : a.inputs) out += " " + lit.text;
      out += " =";
      for (const Literal& lit : a.expected) out += " " + lit.text;
      if (a.mode != AssertMode::tightest)
        out += " <" + std::string(assert_mode_name(a.mode)) + ">";
      if (a.flavor != "set-based") out += " <flavor:" + a.flavor + ">";
      out += ";\n";
    }
    out += "}\n";
  }
  return out;
}

}  // namespace itlconform::itl
