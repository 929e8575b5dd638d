#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ivopt/optimality.hpp"

namespace ivopt {

struct SourceSpan {
  int line = 1;
  int column = 1;
};

class LexError : public Error {
 public:
  LexError(SourceSpan span, const std::string& what);
  SourceSpan span;
};

class ParseError : public Error {
 public:
  ParseError(SourceSpan span, const std::string& what);
  SourceSpan span;
};

class UndeclaredVariable : public ParseError {
 public:
  using ParseError::ParseError;
};

class IntervalInConstraint : public ParseError {
 public:
  using ParseError::ParseError;
};

struct Token {
  enum class Kind { Ident, Number, Interval, Keyword, Operator, Punct, End };

  Kind kind = Kind::End;
  std::string lexeme;
  SourceSpan span;
  double number = 0.0;                 // Number
  Interval interval = Interval::zero();  // Interval
};

/// Maximal-munch tokenizer; "[a,b]" lexes as one Interval token and "#"
/// starts a line comment.
std::vector<Token> tokenize(std::string_view text);

/// Expression tree for objectives and constraints. "-" between expressions
/// is Moore subtraction.
struct Ast {
  enum class Kind { IntervalLit, NumberLit, Var, Add, Sub, Mul, Pow, Abs, Max, Neg };

  Kind kind = Kind::NumberLit;
  Interval interval = Interval::zero();   // IntervalLit
  double number = 0.0;                    // NumberLit
  std::size_t var_index = 0;              // Var
  std::string var_name;                   // Var
  unsigned exponent = 0;                  // Pow
  std::vector<std::shared_ptr<const Ast>> children;
};

using AstPtr = std::shared_ptr<const Ast>;

bool ast_equal(const Ast& a, const Ast& b);

struct ProblemFile {
  std::vector<std::pair<std::string, Interval>> vars;
  AstPtr objective;                              // full objective
  std::optional<std::pair<AstPtr, AstPtr>> split;  // (smooth, nonsmooth)
  std::vector<AstPtr> constraints;               // each g(y), meaning g <= 0
};

ProblemFile parse(std::span<const Token> tokens);
ProblemFile parse_text(std::string_view text);

/// Canonical text; parse(pretty_print(pf)) is structurally equal to pf.
std::string pretty_print(const ProblemFile& pf);

/// Interval evaluation of an expression at a real point (reals embedded as
/// degenerate intervals).
Interval evaluate(const Ast& ast, std::span<const double> vars);

/// Real evaluation of an interval-free expression.
double evaluate_real(const Ast& ast, std::span<const double> vars);

struct CompiledProblem {
  Iop iop;
  std::optional<Ivf> smooth;
  std::optional<Ivf> nonsmooth;
  AstPtr nonsmooth_ast;
};

CompiledProblem compile(const ProblemFile& pf);

}  // namespace ivopt
