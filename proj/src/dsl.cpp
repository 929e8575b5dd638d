#include "ivopt/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace ivopt {

namespace {

std::string span_text(SourceSpan span, const std::string& what) {
  return "line " + std::to_string(span.line) + ", column " +
         std::to_string(span.column) + ": " + what;
}

const std::vector<std::string>& keywords() {
  static const std::vector<std::string> kw = {"var", "in",  "min",   "st",
                                              "abs", "max", "smooth", "nonsmooth"};
  return kw;
}

}  // namespace

LexError::LexError(SourceSpan s, const std::string& what)
    : Error(span_text(s, what)), span(s) {}

ParseError::ParseError(SourceSpan s, const std::string& what)
    : Error(span_text(s, what)), span(s) {}

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (at_end()) break;
      out.push_back(next_token());
    }
    Token end;
    end.kind = Token::Kind::End;
    end.span = span();
    out.push_back(end);
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  SourceSpan span() const { return {line_, col_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token next_token() {
    const SourceSpan start = span();
    const char c = peek();
    if (c == '[') return interval_token();
    if (std::isdigit(static_cast<unsigned char>(c))) return number_token();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return ident_token();
    }
    if (c == '+' || c == '-' || c == '*' || c == '^') {
      advance();
      return make(Token::Kind::Operator, std::string(1, c), start);
    }
    if (c == '<') {
      advance();
      if (at_end() || peek() != '=') {
        throw LexError(start, "expected '<=' ");
      }
      advance();
      return make(Token::Kind::Operator, "<=", start);
    }
    if (c == '(' || c == ')' || c == ',' || c == ':') {
      advance();
      return make(Token::Kind::Punct, std::string(1, c), start);
    }
    throw LexError(start, std::string("unexpected character '") + c + "'");
  }

  Token make(Token::Kind kind, std::string lexeme, SourceSpan start) {
    Token t;
    t.kind = kind;
    t.lexeme = std::move(lexeme);
    t.span = start;
    return t;
  }

  Token interval_token() {
    const SourceSpan start = span();
    const std::size_t begin = pos_;
    while (!at_end() && peek() != ']') advance();
    if (at_end()) throw LexError(start, "unterminated interval literal");
    advance();  // consume ']'
    const std::string lexeme(text_.substr(begin, pos_ - begin));
    Token t = make(Token::Kind::Interval, lexeme, start);
    try {
      t.interval = parse_interval(lexeme);
    } catch (const InvalidInterval& e) {
      throw LexError(start, e.what());
    }
    return t;
  }

  Token number_token() {
    const SourceSpan start = span();
    const std::size_t begin = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      advance();
    }
    if (!at_end() && peek() == '.') {
      advance();
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        advance();
      }
    }
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      advance();
      if (!at_end() && (peek() == '+' || peek() == '-')) advance();
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        advance();
      }
    }
    const std::string lexeme(text_.substr(begin, pos_ - begin));
    const auto value = parse_real(lexeme);
    if (!value) throw LexError(start, "malformed number '" + lexeme + "'");
    Token t = make(Token::Kind::Number, lexeme, start);
    t.number = *value;
    return t;
  }

  Token ident_token() {
    const SourceSpan start = span();
    const std::size_t begin = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                         peek() == '_')) {
      advance();
    }
    const std::string lexeme(text_.substr(begin, pos_ - begin));
    const auto& kw = keywords();
    const bool is_kw = std::find(kw.begin(), kw.end(), lexeme) != kw.end();
    return make(is_kw ? Token::Kind::Keyword : Token::Kind::Ident, lexeme,
                start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  return Lexer(text).run();
}

namespace {

std::shared_ptr<Ast> make_leaf(Ast::Kind kind) {
  auto node = std::make_shared<Ast>();
  node->kind = kind;
  return node;
}

AstPtr make_unary(Ast::Kind kind, AstPtr child) {
  auto node = std::make_shared<Ast>();
  node->kind = kind;
  node->children.push_back(std::move(child));
  return node;
}

AstPtr make_binary(Ast::Kind kind, AstPtr left, AstPtr right) {
  auto node = std::make_shared<Ast>();
  node->kind = kind;
  node->children.push_back(std::move(left));
  node->children.push_back(std::move(right));
  return node;
}

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens) : tokens_(tokens) {}

  ProblemFile run() {
    ProblemFile pf;
    if (!at_keyword("var")) {
      throw ParseError(current().span, "expected 'var' declaration");
    }
    while (at_keyword("var")) pf.vars.push_back(var_decl());
    expect_keyword("min");
    if (at_keyword("smooth")) {
      advance();
      expect_punct(":");
      AstPtr smooth = expr(/*stop_before_nonsmooth=*/true);
      expect_operator("+");
      expect_keyword("nonsmooth");
      expect_punct(":");
      AstPtr nonsmooth = expr(false);
      pf.objective = make_binary(Ast::Kind::Add, smooth, nonsmooth);
      pf.split = {std::move(smooth), std::move(nonsmooth)};
    } else {
      pf.objective = expr(false);
    }
    while (at_keyword("st")) {
      advance();
      in_constraint_ = true;
      AstPtr g = expr(false);
      in_constraint_ = false;
      expect_operator("<=");
      const Token& zero = current();
      if (zero.kind != Token::Kind::Number || zero.number != 0.0) {
        throw ParseError(zero.span, "constraint right-hand side must be 0");
      }
      advance();
      pf.constraints.push_back(std::move(g));
    }
    if (current().kind != Token::Kind::End) {
      throw ParseError(current().span,
                       "unexpected trailing input '" + current().lexeme + "'");
    }
    return pf;
  }

 private:
  const Token& current() const { return tokens_[pos_]; }
  const Token& peek(std::size_t ahead) const {
    const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  void advance() {
    if (pos_ + 1 < tokens_.size()) ++pos_;
  }

  bool at_keyword(std::string_view kw) const {
    return current().kind == Token::Kind::Keyword && current().lexeme == kw;
  }

  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) {
      throw ParseError(current().span,
                       "expected '" + std::string(kw) + "', got '" +
                           current().lexeme + "'");
    }
    advance();
  }

  void expect_punct(std::string_view p) {
    if (current().kind != Token::Kind::Punct || current().lexeme != p) {
      throw ParseError(current().span,
                       "expected '" + std::string(p) + "', got '" +
                           current().lexeme + "'");
    }
    advance();
  }

  void expect_operator(std::string_view op) {
    if (current().kind != Token::Kind::Operator || current().lexeme != op) {
      throw ParseError(current().span,
                       "expected '" + std::string(op) + "', got '" +
                           current().lexeme + "'");
    }
    advance();
  }

  std::pair<std::string, Interval> var_decl() {
    expect_keyword("var");
    const Token& name = current();
    if (name.kind != Token::Kind::Ident) {
      throw ParseError(name.span, "expected variable name");
    }
    if (var_index_.count(name.lexeme)) {
      throw ParseError(name.span,
                       "variable '" + name.lexeme + "' declared twice");
    }
    var_index_[name.lexeme] = var_index_.size();
    advance();
    expect_keyword("in");
    const Token& box = current();
    if (box.kind != Token::Kind::Interval) {
      throw ParseError(box.span, "expected interval range");
    }
    advance();
    return {name.lexeme, box.interval};
  }

  AstPtr expr(bool stop_before_nonsmooth) {
    AstPtr left = term();
    while (current().kind == Token::Kind::Operator &&
           (current().lexeme == "+" || current().lexeme == "-")) {
      if (stop_before_nonsmooth && current().lexeme == "+" &&
          peek(1).kind == Token::Kind::Keyword &&
          peek(1).lexeme == "nonsmooth") {
        break;
      }
      const bool add = current().lexeme == "+";
      advance();
      AstPtr right = term();
      left = make_binary(add ? Ast::Kind::Add : Ast::Kind::Sub,
                         std::move(left), std::move(right));
    }
    return left;
  }

  AstPtr term() {
    AstPtr left = factor();
    while (current().kind == Token::Kind::Operator &&
           current().lexeme == "*") {
      advance();
      AstPtr right = factor();
      left = make_binary(Ast::Kind::Mul, std::move(left), std::move(right));
    }
    return left;
  }

  AstPtr factor() {
    if (current().kind == Token::Kind::Operator && current().lexeme == "-") {
      advance();
      return make_unary(Ast::Kind::Neg, factor());
    }
    AstPtr base = atom();
    if (current().kind == Token::Kind::Operator && current().lexeme == "^") {
      advance();
      const Token& e = current();
      const bool integral =
          e.kind == Token::Kind::Number &&
          e.lexeme.find_first_not_of("0123456789") == std::string::npos;
      if (!integral) {
        throw ParseError(e.span, "expected nonnegative integer exponent");
      }
      advance();
      auto node = std::make_shared<Ast>();
      node->kind = Ast::Kind::Pow;
      node->exponent = static_cast<unsigned>(e.number);
      node->children.push_back(std::move(base));
      return node;
    }
    return base;
  }

  AstPtr atom() {
    const Token& t = current();
    switch (t.kind) {
      case Token::Kind::Interval: {
        if (in_constraint_) {
          throw IntervalInConstraint(
              t.span, "constraints are real-valued; interval literal '" +
                          t.lexeme + "' is not allowed here");
        }
        auto node = make_leaf(Ast::Kind::IntervalLit);
        node->interval = t.interval;
        advance();
        return node;
      }
      case Token::Kind::Number: {
        auto node = make_leaf(Ast::Kind::NumberLit);
        node->number = t.number;
        advance();
        return node;
      }
      case Token::Kind::Ident: {
        const auto it = var_index_.find(t.lexeme);
        if (it == var_index_.end()) {
          throw UndeclaredVariable(
              t.span, "variable '" + t.lexeme + "' is not declared");
        }
        auto node = make_leaf(Ast::Kind::Var);
        node->var_index = it->second;
        node->var_name = t.lexeme;
        advance();
        return node;
      }
      case Token::Kind::Keyword: {
        if (t.lexeme == "abs") {
          advance();
          expect_punct("(");
          AstPtr inner = expr(false);
          expect_punct(")");
          return make_unary(Ast::Kind::Abs, std::move(inner));
        }
        if (t.lexeme == "max") {
          advance();
          expect_punct("(");
          auto node = std::make_shared<Ast>();
          node->kind = Ast::Kind::Max;
          node->children.push_back(expr(false));
          while (current().kind == Token::Kind::Punct &&
                 current().lexeme == ",") {
            advance();
            node->children.push_back(expr(false));
          }
          expect_punct(")");
          if (node->children.size() < 2) {
            throw ParseError(t.span, "max needs at least two arguments");
          }
          return node;
        }
        throw ParseError(t.span, "unexpected keyword '" + t.lexeme + "'");
      }
      case Token::Kind::Punct: {
        if (t.lexeme == "(") {
          advance();
          AstPtr inner = expr(false);
          expect_punct(")");
          return inner;
        }
        break;
      }
      default:
        break;
    }
    throw ParseError(t.span, "expected an expression, got '" + t.lexeme + "'");
  }

  std::span<const Token> tokens_;
  std::size_t pos_ = 0;
  std::map<std::string, std::size_t> var_index_;
  bool in_constraint_ = false;
};

}  // namespace

ProblemFile parse(std::span<const Token> tokens) {
  if (tokens.empty()) throw ParseError({1, 1}, "empty input");
  return Parser(tokens).run();
}

ProblemFile parse_text(std::string_view text) {
  const auto tokens = tokenize(text);
  return parse(tokens);
}

bool ast_equal(const Ast& a, const Ast& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Ast::Kind::IntervalLit:
      if (!(a.interval == b.interval)) return false;
      break;
    case Ast::Kind::NumberLit:
      if (a.number != b.number) return false;
      break;
    case Ast::Kind::Var:
      if (a.var_index != b.var_index || a.var_name != b.var_name) return false;
      break;
    case Ast::Kind::Pow:
      if (a.exponent != b.exponent) return false;
      break;
    default:
      break;
  }
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!ast_equal(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

namespace {

int precedence(const Ast& node) {
  switch (node.kind) {
    case Ast::Kind::Add:
    case Ast::Kind::Sub: return 1;
    case Ast::Kind::Mul: return 2;
    case Ast::Kind::Neg: return 3;
    case Ast::Kind::Pow: return 4;
    default: return 5;
  }
}

void print_expr(const Ast& node, int min_prec, std::string& out) {
  const bool parens = precedence(node) < min_prec;
  if (parens) out += "(";
  switch (node.kind) {
    case Ast::Kind::IntervalLit:
      out += to_string(node.interval);
      break;
    case Ast::Kind::NumberLit:
      out += format_real(node.number);
      break;
    case Ast::Kind::Var:
      out += node.var_name;
      break;
    case Ast::Kind::Add:
      print_expr(*node.children[0], 1, out);
      out += " + ";
      print_expr(*node.children[1], 2, out);
      break;
    case Ast::Kind::Sub:
      print_expr(*node.children[0], 1, out);
      out += " - ";
      print_expr(*node.children[1], 2, out);
      break;
    case Ast::Kind::Mul:
      print_expr(*node.children[0], 2, out);
      out += " * ";
      print_expr(*node.children[1], 3, out);
      break;
    case Ast::Kind::Neg:
      out += "-";
      print_expr(*node.children[0], 3, out);
      break;
    case Ast::Kind::Pow:
      print_expr(*node.children[0], 5, out);
      out += "^" + std::to_string(node.exponent);
      break;
    case Ast::Kind::Abs:
      out += "abs(";
      print_expr(*node.children[0], 1, out);
      out += ")";
      break;
    case Ast::Kind::Max: {
      out += "max(";
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i) out += ", ";
        print_expr(*node.children[i], 1, out);
      }
      out += ")";
      break;
    }
  }
  if (parens) out += ")";
}

std::string expr_text(const Ast& node) {
  std::string out;
  print_expr(node, 1, out);
  return out;
}

}  // namespace

std::string pretty_print(const ProblemFile& pf) {
  std::string out;
  for (const auto& [name, range] : pf.vars) {
    out += "var " + name + " in " + to_string(range) + "\n";
  }
  if (pf.split) {
    out += "min smooth: " + expr_text(*pf.split->first) + " + nonsmooth: " +
           expr_text(*pf.split->second) + "\n";
  } else {
    out += "min " + expr_text(*pf.objective) + "\n";
  }
  for (const auto& g : pf.constraints) {
    out += "st " + expr_text(*g) + " <= 0\n";
  }
  return out;
}

Interval evaluate(const Ast& ast, std::span<const double> vars) {
  switch (ast.kind) {
    case Ast::Kind::IntervalLit: return ast.interval;
    case Ast::Kind::NumberLit: return Interval::point(ast.number);
    case Ast::Kind::Var: return Interval::point(vars[ast.var_index]);
    case Ast::Kind::Add:
      return evaluate(*ast.children[0], vars) +
             evaluate(*ast.children[1], vars);
    case Ast::Kind::Sub:
      return evaluate(*ast.children[0], vars) -
             evaluate(*ast.children[1], vars);
    case Ast::Kind::Mul:
      return evaluate(*ast.children[0], vars) *
             evaluate(*ast.children[1], vars);
    case Ast::Kind::Pow:
      return pow(evaluate(*ast.children[0], vars), ast.exponent);
    case Ast::Kind::Abs: return abs(evaluate(*ast.children[0], vars));
    case Ast::Kind::Neg: return neg(evaluate(*ast.children[0], vars));
    case Ast::Kind::Max: {
      std::vector<Interval> values;
      values.reserve(ast.children.size());
      for (const auto& c : ast.children) values.push_back(evaluate(*c, vars));
      try {
        return min_max_comparable(values).second;
      } catch (const NotAChain&) {
        throw NotComparableAt("max arguments are not a chain at this point");
      }
    }
  }
  throw Error("unknown expression node");
}

double evaluate_real(const Ast& ast, std::span<const double> vars) {
  switch (ast.kind) {
    case Ast::Kind::IntervalLit:
      throw Error("interval literal in a real-valued expression");
    case Ast::Kind::NumberLit: return ast.number;
    case Ast::Kind::Var: return vars[ast.var_index];
    case Ast::Kind::Add:
      return evaluate_real(*ast.children[0], vars) +
             evaluate_real(*ast.children[1], vars);
    case Ast::Kind::Sub:
      return evaluate_real(*ast.children[0], vars) -
             evaluate_real(*ast.children[1], vars);
    case Ast::Kind::Mul:
      return evaluate_real(*ast.children[0], vars) *
             evaluate_real(*ast.children[1], vars);
    case Ast::Kind::Pow: {
      const double base = evaluate_real(*ast.children[0], vars);
      if (ast.exponent == 0) return 1.0;
      double r = base;
      for (unsigned i = 1; i < ast.exponent; ++i) r *= base;
      return r;
    }
    case Ast::Kind::Abs:
      return std::fabs(evaluate_real(*ast.children[0], vars));
    case Ast::Kind::Neg: return -evaluate_real(*ast.children[0], vars);
    case Ast::Kind::Max: {
      double best = evaluate_real(*ast.children[0], vars);
      for (std::size_t i = 1; i < ast.children.size(); ++i) {
        best = std::max(best, evaluate_real(*ast.children[i], vars));
      }
      return best;
    }
  }
  throw Error("unknown expression node");
}

namespace {

Ivf ast_to_ivf(AstPtr ast, const Box& box) {
  auto lower = [ast](std::span<const double> y) {
    return evaluate(*ast, y).lo();
  };
  auto upper = [ast](std::span<const double> y) {
    return evaluate(*ast, y).hi();
  };
  return Ivf(lower, upper, box);
}

}  // namespace

CompiledProblem compile(const ProblemFile& pf) {
  std::vector<Interval> ranges;
  ranges.reserve(pf.vars.size());
  for (const auto& [name, range] : pf.vars) ranges.push_back(range);
  Box box(std::move(ranges));

  std::vector<RealFn> constraints;
  constraints.reserve(pf.constraints.size());
  for (const auto& g : pf.constraints) {
    constraints.push_back([g](std::span<const double> y) {
      return evaluate_real(*g, y);
    });
  }

  CompiledProblem out{
      Iop{ast_to_ivf(pf.objective, box), std::move(constraints), box},
      std::nullopt, std::nullopt, nullptr};
  if (pf.split) {
    out.smooth = ast_to_ivf(pf.split->first, box);
    out.nonsmooth = ast_to_ivf(pf.split->second, box);
    out.nonsmooth_ast = pf.split->second;
  }
  return out;
}

}  // namespace ivopt
