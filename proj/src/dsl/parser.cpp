#include "kv/dsl/parser.hpp"

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <set>

#include "kv/error.hpp"

namespace kv::dsl {

namespace {

enum class Tok { End, Newline, Ident, Number, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket, RBracket, Comma, Semi, Equals };

struct Token {
  Tok kind;
  std::string text;
  double number = 0;
  int line = 0, col = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
        ++col_;
      } else {
        break;
      }
    }
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= s_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    const char c = s_[pos_];
    if (c == '\n') {
      tok_.kind = Tok::Newline;
      ++pos_;
      ++line_;
      col_ = 1;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = pos_;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
      tok_.kind = Tok::Ident;
      tok_.text = s_.substr(pos_, j - pos_);
      col_ += static_cast<int>(j - pos_);
      pos_ = j;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
      size_t j = pos_;
      while (j < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[j])) || s_[j] == '.')) ++j;
      if (j < s_.size() && (s_[j] == 'e' || s_[j] == 'E')) {
        size_t k = j + 1;
        if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
        if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
          while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
          j = k;
        }
      }
      tok_.kind = Tok::Number;
      tok_.text = s_.substr(pos_, j - pos_);
      tok_.number = std::strtod(tok_.text.c_str(), nullptr);
      col_ += static_cast<int>(j - pos_);
      pos_ = j;
      return;
    }
    const auto single = [&](Tok k) {
      tok_.kind = k;
      tok_.text = std::string(1, c);
      ++pos_;
      ++col_;
    };
    switch (c) {
      case '+': single(Tok::Plus); return;
      case '-': single(Tok::Minus); return;
      case '*': single(Tok::Star); return;
      case '/': single(Tok::Slash); return;
      case '^': single(Tok::Caret); return;
      case '(': single(Tok::LParen); return;
      case ')': single(Tok::RParen); return;
      case '[': single(Tok::LBracket); return;
      case ']': single(Tok::RBracket); return;
      case ',': single(Tok::Comma); return;
      case ';': single(Tok::Semi); return;
      case '=': single(Tok::Equals); return;
      default: throw parse_error(std::string("unexpected character '") + c + "'", line_, col_);
    }
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  ChartSpec parse() {
    skip_newlines();
    expect_keyword("chart");
    chart_.name = expect(Tok::Ident, "chart name").text;
    // hyphenated names: ident(-ident|-number)*
    while (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      const Token seg = lex_.take();
      if (seg.kind != Tok::Ident && seg.kind != Tok::Number)
        throw parse_error("bad chart name segment", seg.line, seg.col);
      chart_.name += "-" + seg.text;
    }
    expect_newline();
    bool done = false;
    while (!done) {
      skip_newlines();
      const Token t = lex_.peek();
      if (t.kind == Tok::End) throw parse_error("missing 'end'", t.line, t.col);
      if (t.kind != Tok::Ident) throw parse_error("expected section keyword", t.line, t.col);
      if (t.text == "end") {
        lex_.take();
        done = true;
      } else if (t.text == "coords") {
        parse_coords();
      } else if (t.text == "params") {
        parse_params();
      } else if (t.text == "domain") {
        lex_.take();
        parse_expr_list(chart_.domain);
      } else if (t.text == "sample") {
        lex_.take();
        parse_expr_list(chart_.sample_constraints);
      } else if (t.text == "box") {
        parse_box();
      } else if (t.text == "metric") {
        parse_metric();
      } else if (t.text == "form") {
        parse_form();
      } else if (t.text == "vector") {
        parse_vector();
      } else if (t.text == "scalar") {
        parse_scalar();
      } else {
        throw parse_error("unknown section '" + t.text + "'", t.line, t.col);
      }
    }
    validate();
    return std::move(chart_);
  }

 private:
  void skip_newlines() {
    while (lex_.peek().kind == Tok::Newline) lex_.take();
  }

  Token expect(Tok k, const char* what) {
    const Token t = lex_.take();
    if (t.kind != k) throw parse_error(std::string("expected ") + what, t.line, t.col);
    return t;
  }

  void expect_keyword(const char* kw) {
    const Token t = lex_.take();
    if (t.kind != Tok::Ident || t.text != kw)
      throw parse_error(std::string("expected '") + kw + "'", t.line, t.col);
  }

  void expect_newline() {
    const Token t = lex_.peek();
    if (t.kind == Tok::End) return;
    if (t.kind != Tok::Newline) throw parse_error("expected end of line", t.line, t.col);
    lex_.take();
  }

  void parse_coords() {
    const Token kw = lex_.take();
    if (!chart_.coords.empty()) throw parse_error("duplicate coords section", kw.line, kw.col);
    while (lex_.peek().kind == Tok::Ident) {
      const Token t = lex_.take();
      if (chart_.coord_index(t.text) >= 0)
        throw parse_error("duplicate coordinate '" + t.text + "'", t.line, t.col);
      chart_.coords.push_back(t.text);
    }
    if (chart_.coords.size() != 2 && chart_.coords.size() != 4) {
      const Token t = lex_.peek();
      throw parse_error("coords requires 2 or 4 coordinate names", t.line, t.col);
    }
    chart_.box.assign(chart_.coords.size(), std::nullopt);
    expect_newline();
  }

  void parse_params() {
    lex_.take();
    while (lex_.peek().kind == Tok::Ident) {
      const Token name = lex_.take();
      if (chart_.param_index(name.text) >= 0 || chart_.coord_index(name.text) >= 0)
        throw parse_error("duplicate declaration '" + name.text + "'", name.line, name.col);
      expect(Tok::Equals, "'='");
      double sign = 1.0;
      if (lex_.peek().kind == Tok::Minus) {
        lex_.take();
        sign = -1.0;
      }
      const Token v = expect(Tok::Number, "number");
      chart_.param_names.push_back(name.text);
      chart_.param_values.push_back(sign * v.number);
    }
    expect_newline();
  }

  void parse_box() {
    lex_.take();
    const Token name = expect(Tok::Ident, "coordinate name");
    const int ci = chart_.coord_index(name.text);
    if (ci < 0) throw parse_error("box: unknown coordinate '" + name.text + "'", name.line, name.col);
    const auto num = [&]() {
      double sign = 1.0;
      if (lex_.peek().kind == Tok::Minus) {
        lex_.take();
        sign = -1.0;
      }
      return sign * expect(Tok::Number, "number").number;
    };
    const double lo = num();
    const double hi = num();
    if (!(lo < hi)) throw parse_error("box: lo must be < hi", name.line, name.col);
    chart_.box[ci] = std::make_pair(lo, hi);
    expect_newline();
  }

  void parse_expr_list(std::vector<Expr>& out) {
    out.push_back(parse_expr());
    while (lex_.peek().kind == Tok::Semi) {
      lex_.take();
      out.push_back(parse_expr());
    }
    expect_newline();
  }

  void parse_metric() {
    const Token kw = lex_.take();
    if (!metric_entries_.empty()) throw parse_error("duplicate metric section", kw.line, kw.col);
    expect_newline();
    const int dim = require_dim(kw);
    chart_.metric_upper.assign(static_cast<size_t>(dim * (dim + 1) / 2), nullptr);
    skip_newlines();
    while (lex_.peek().kind == Tok::Ident && lex_.peek().text == "g") {
      const Token g = lex_.take();
      const auto [i, j] = parse_index_pair(g);
      if (i > j)
        throw parse_error("metric entries use upper-triangle indices (i <= j)", g.line, g.col);
      const int flat = ChartSpec::metric_index(dim, i, j);
      if (metric_entries_.count(flat))
        throw parse_error("duplicate metric entry", g.line, g.col);
      metric_entries_.insert(flat);
      expect(Tok::Equals, "'='");
      chart_.metric_upper[flat] = parse_expr();
      expect_newline();
      skip_newlines();
    }
  }

  void parse_form() {
    const Token kw = lex_.take();
    const Token name = expect(Tok::Ident, "form name");
    if (chart_.find_form(name.text)) throw parse_error("duplicate form '" + name.text + "'", name.line, name.col);
    expect_newline();
    const int dim = require_dim(kw);
    Form2Expr form;
    form.dim = dim;
    form.upper.assign(static_cast<size_t>(dim * (dim - 1) / 2), make_constant(0.0));
    skip_newlines();
    std::set<int> seen;
    while (lex_.peek().kind == Tok::Ident && lex_.peek().text == "w") {
      const Token w = lex_.take();
      const auto [i, j] = parse_index_pair(w);
      if (i >= j) throw parse_error("form entries use strict upper-triangle indices (i < j)", w.line, w.col);
      const int flat = Form2Expr::upper_index(dim, i, j);
      if (seen.count(flat)) throw parse_error("duplicate form entry", w.line, w.col);
      seen.insert(flat);
      expect(Tok::Equals, "'='");
      form.upper[flat] = parse_expr();
      expect_newline();
      skip_newlines();
    }
    chart_.forms.emplace_back(name.text, std::move(form));
  }

  void parse_vector() {
    const Token kw = lex_.take();
    const Token name = expect(Tok::Ident, "vector name");
    if (chart_.find_vector(name.text)) throw parse_error("duplicate vector '" + name.text + "'", name.line, name.col);
    expect(Tok::Equals, "'='");
    expect(Tok::LParen, "'('");
    std::vector<Expr> comps;
    comps.push_back(parse_expr());
    while (lex_.peek().kind == Tok::Comma) {
      lex_.take();
      comps.push_back(parse_expr());
    }
    expect(Tok::RParen, "')'");
    const int dim = require_dim(kw);
    if (static_cast<int>(comps.size()) != dim)
      throw parse_error("vector component count must equal the chart dimension", name.line, name.col);
    chart_.vector_fields.emplace_back(name.text, std::move(comps));
    expect_newline();
  }

  void parse_scalar() {
    lex_.take();
    const Token name = expect(Tok::Ident, "scalar name");
    if (chart_.find_scalar(name.text)) throw parse_error("duplicate scalar '" + name.text + "'", name.line, name.col);
    expect(Tok::Equals, "'='");
    chart_.scalars.emplace_back(name.text, parse_expr());
    expect_newline();
  }

  int require_dim(const Token& at) const {
    if (chart_.coords.empty()) throw parse_error("coords must be declared first", at.line, at.col);
    return chart_.dim();
  }

  std::pair<int, int> parse_index_pair(const Token& at) {
    expect(Tok::LBracket, "'['");
    const Token i = expect(Tok::Number, "index");
    expect(Tok::Comma, "','");
    const Token j = expect(Tok::Number, "index");
    expect(Tok::RBracket, "']'");
    const int ii = static_cast<int>(i.number);
    const int jj = static_cast<int>(j.number);
    const int dim = require_dim(at);
    if (ii < 0 || jj < 0 || ii >= dim || jj >= dim)
      throw parse_error("index out of range for chart dimension", at.line, at.col);
    return {ii, jj};
  }

  Expr parse_expr() {
    Expr e = parse_term();
    while (true) {
      const Tok k = lex_.peek().kind;
      if (k == Tok::Plus) {
        lex_.take();
        e = make_binary(NodeKind::Add, e, parse_term());
      } else if (k == Tok::Minus) {
        lex_.take();
        e = make_binary(NodeKind::Sub, e, parse_term());
      } else {
        return e;
      }
    }
  }

  Expr parse_term() {
    Expr e = parse_factor();
    while (true) {
      const Tok k = lex_.peek().kind;
      if (k == Tok::Star) {
        lex_.take();
        e = make_binary(NodeKind::Mul, e, parse_factor());
      } else if (k == Tok::Slash) {
        lex_.take();
        e = make_binary(NodeKind::Div, e, parse_factor());
      } else {
        return e;
      }
    }
  }

  Expr parse_factor() {
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      return make_neg(parse_factor());
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (lex_.peek().kind == Tok::Caret) {
      const Token caret = lex_.take();
      int sign = 1;
      if (lex_.peek().kind == Tok::Minus) {
        lex_.take();
        sign = -1;
      }
      const Token e = expect(Tok::Number, "integer exponent");
      const double val = e.number;
      if (val != static_cast<int>(val))
        throw parse_error("power exponent must be a literal integer", caret.line, caret.col);
      return make_powi(base, sign * static_cast<int>(val));
    }
    return base;
  }

  Expr parse_atom() {
    const Token t = lex_.take();
    if (t.kind == Tok::Number) return make_constant(t.number);
    if (t.kind == Tok::LParen) {
      Expr e = parse_expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (t.kind == Tok::Ident) {
      if (lex_.peek().kind == Tok::LParen) {
        CallKind c;
        if (t.text == "sqrt") c = CallKind::Sqrt;
        else if (t.text == "ln") c = CallKind::Ln;
        else if (t.text == "exp") c = CallKind::Exp;
        else throw parse_error("unknown function '" + t.text + "'", t.line, t.col);
        lex_.take();
        Expr arg = parse_expr();
        expect(Tok::RParen, "')'");
        return make_call(c, arg);
      }
      const int ci = chart_.coord_index(t.text);
      if (ci >= 0) return make_coord(ci);
      const int pi = chart_.param_index(t.text);
      if (pi >= 0) return make_param(pi);
      throw parse_error("unknown identifier '" + t.text + "'", t.line, t.col);
    }
    throw parse_error("expected expression", t.line, t.col);
  }

  void validate() {
    if (chart_.coords.empty()) throw parse_error("chart has no coords section", 1, 1);
    const int dim = chart_.dim();
    if (chart_.metric_upper.empty()) throw parse_error("chart has no metric section", 1, 1);
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j)
        if (!chart_.metric_upper[ChartSpec::metric_index(dim, i, j)])
          throw parse_error("missing metric entry g[" + std::to_string(i) + "," + std::to_string(j) + "]", 1, 1);
  }

  Lexer lex_;
  ChartSpec chart_;
  std::set<int> metric_entries_;
};

int precedence(const ExprNode& n) {
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::PowInt: return 4;
    default: return 5;
  }
}

void format_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void print_rec(std::string& out, const Expr& e, const ChartSpec& chart) {
  const auto child = [&](const Expr& c, bool parens) {
    if (parens) out += '(';
    print_rec(out, c, chart);
    if (parens) out += ')';
  };
  const int p = precedence(*e);
  switch (e->kind) {
    case NodeKind::Constant:
      if (e->constant < 0) {
        out += '(';
        format_number(out, e->constant);
        out += ')';
      } else {
        format_number(out, e->constant);
      }
      break;
    case NodeKind::Coord: out += chart.coords[e->ref]; break;
    case NodeKind::Param: out += chart.param_names[e->ref]; break;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
      child(e->a, precedence(*e->a) < p);
      out += e->kind == NodeKind::Add ? " + " : e->kind == NodeKind::Sub ? " - "
             : e->kind == NodeKind::Mul ? "*" : "/";
      // parenthesize same-precedence right children: keeps the tree intact
      child(e->b, precedence(*e->b) <= p);
      break;
    }
    case NodeKind::Neg:
      out += '-';
      child(e->a, precedence(*e->a) < p);
      break;
    case NodeKind::PowInt:
      child(e->a, precedence(*e->a) < 5);
      out += '^';
      out += std::to_string(e->exponent);
      break;
    case NodeKind::Call:
      out += e->call == CallKind::Sqrt ? "sqrt" : e->call == CallKind::Ln ? "ln" : "exp";
      out += '(';
      print_rec(out, e->a, chart);
      out += ')';
      break;
  }
}

}  // namespace

ChartSpec parse_chart(const std::string& text) {
  return Parser(text).parse();
}

std::string print_expr(const Expr& e, const ChartSpec& chart) {
  std::string out;
  print_rec(out, e, chart);
  return out;
}

std::string print_chart(const ChartSpec& chart) {
  std::string out;
  out += "chart " + chart.name + "\n";
  out += "coords";
  for (const auto& c : chart.coords) out += " " + c;
  out += "\n";
  if (!chart.param_names.empty()) {
    out += "params";
    for (size_t i = 0; i < chart.param_names.size(); ++i) {
      out += " " + chart.param_names[i] + "=";
      format_number(out, chart.param_values[i]);
    }
    out += "\n";
  }
  if (!chart.domain.empty()) {
    out += "domain ";
    for (size_t i = 0; i < chart.domain.size(); ++i) {
      if (i) out += " ; ";
      out += print_expr(chart.domain[i], chart);
    }
    out += "\n";
  }
  for (int c = 0; c < chart.dim(); ++c) {
    if (chart.box.size() > static_cast<size_t>(c) && chart.box[c]) {
      out += "box " + chart.coords[c] + " ";
      format_number(out, chart.box[c]->first);
      out += " ";
      format_number(out, chart.box[c]->second);
      out += "\n";
    }
  }
  if (!chart.sample_constraints.empty()) {
    out += "sample ";
    for (size_t i = 0; i < chart.sample_constraints.size(); ++i) {
      if (i) out += " ; ";
      out += print_expr(chart.sample_constraints[i], chart);
    }
    out += "\n";
  }
  out += "metric\n";
  const int dim = chart.dim();
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      out += "  g[" + std::to_string(i) + "," + std::to_string(j) + "] = " +
             print_expr(chart.metric_at(i, j), chart) + "\n";
  for (const auto& [name, form] : chart.forms) {
    out += "form " + name + "\n";
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        out += "  w[" + std::to_string(i) + "," + std::to_string(j) + "] = " +
               print_expr(form.at(i, j), chart) + "\n";
  }
  for (const auto& [name, comps] : chart.vector_fields) {
    out += "vector " + name + " = (";
    for (size_t i = 0; i < comps.size(); ++i) {
      if (i) out += ", ";
      out += print_expr(comps[i], chart);
    }
    out += ")\n";
  }
  for (const auto& [name, s] : chart.scalars) out += "scalar " + name + " = " + print_expr(s, chart) + "\n";
  out += "end\n";
  return out;
}

std::string chart_hash(const ChartSpec& chart) {
  const std::string text = print_chart(chart);
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace kv::dsl
