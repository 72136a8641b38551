// Copyright 2026 The rtgdiag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "rtgdiag/frontend.h"

namespace rtgdiag {

namespace {

std::string FormatNumber(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

const std::set<std::string> kKeywords = {"input", "output", "if", "else", "sin", "PI"};

struct Token {
  enum class Kind { kIdent, kNumber, kSymbol, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
  int end_line = 1;
  int end_column = 1;
};

std::vector<Token> Lex(const std::string& text, std::vector<Diagnostic>& diags) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        advance(1);
      }
      t.kind = Token::Kind::kIdent;
      t.text = text.substr(start, i - start);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && i + 1 < text.size() &&
                std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) advance(1);
      if (i < text.size() && text[i] == '.') {
        advance(1);
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) advance(1);
      }
      if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t save = i;
        int save_col = col;
        advance(1);
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) advance(1);
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) advance(1);
        } else {
          i = save;
          col = save_col;
        }
      }
      t.kind = Token::Kind::kNumber;
      t.text = text.substr(start, i - start);
      t.number = std::strtod(t.text.c_str(), nullptr);
    } else {
      static const char* kTwoChar[] = {"<=", ">=", "&&"};
      bool matched = false;
      for (const char* sym : kTwoChar) {
        if (text.compare(i, 2, sym) == 0) {
          t.text = sym;
          advance(2);
          matched = true;
          break;
        }
      }
      if (!matched) {
        if (std::string("+-*/()=;{}<>,").find(c) == std::string::npos) {
          diags.push_back({line, col, std::string("unexpected character '") + c + "'"});
          advance(1);
          continue;
        }
        t.text = std::string(1, c);
        advance(1);
      }
      t.kind = Token::Kind::kSymbol;
    }
    t.end_line = line;
    t.end_column = col;
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::Kind::kEnd;
  end.text = "end of input";
  end.line = end.end_line = line;
  end.column = end.end_column = col;
  out.push_back(end);
  return out;
}

struct ParseAbort {
  Diagnostic diagnostic;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program Run(std::vector<Diagnostic>& diags) {
    Program p;
    while (IsKeyword("input")) {
      try {
        Next();
        p.inputs.push_back(ExpectName("input variable name"));
        while (IsSymbol(",")) {
          Next();
          p.inputs.push_back(ExpectName("input variable name"));
        }
        ExpectSymbol(";");
      } catch (const ParseAbort& a) {
        diags.push_back(a.diagnostic);
        Synchronize();
      }
    }
    while (!IsKeyword("output") && Peek().kind != Token::Kind::kEnd) {
      try {
        p.body.push_back(ParseStatement());
      } catch (const ParseAbort& a) {
        diags.push_back(a.diagnostic);
        Synchronize();
      }
    }
    try {
      ExpectKeyword("output");
      p.output = ExpectName("output variable name");
      ExpectSymbol(";");
      if (Peek().kind != Token::Kind::kEnd) Fail("end of input after output declaration");
    } catch (const ParseAbort& a) {
      diags.push_back(a.diagnostic);
    }
    return p;
  }

 private:
  const Token& Peek() const { return toks_[pos_]; }
  const Token& Next() {
    const Token& t = toks_[pos_];
    if (t.kind != Token::Kind::kEnd) ++pos_;
    return t;
  }
  const Token& Previous() const { return toks_[pos_ == 0 ? 0 : pos_ - 1]; }

  bool IsSymbol(std::string_view s) const {
    return Peek().kind == Token::Kind::kSymbol && Peek().text == s;
  }
  bool IsKeyword(std::string_view s) const {
    return Peek().kind == Token::Kind::kIdent && Peek().text == s;
  }

  [[noreturn]] void Fail(const std::string& expected) const {
    const Token& t = Peek();
    std::string found = t.kind == Token::Kind::kEnd ? t.text : "'" + t.text + "'";
    throw ParseAbort{{t.line, t.column, "expected " + expected + ", found " + found}};
  }

  void ExpectSymbol(std::string_view s) {
    if (!IsSymbol(s)) Fail("'" + std::string(s) + "'");
    Next();
  }
  void ExpectKeyword(std::string_view s) {
    if (!IsKeyword(s)) Fail("'" + std::string(s) + "'");
    Next();
  }
  std::string ExpectName(const std::string& what) {
    if (Peek().kind != Token::Kind::kIdent || kKeywords.count(Peek().text)) Fail(what);
    return Next().text;
  }

  void Synchronize() {
    while (Peek().kind != Token::Kind::kEnd) {
      if (IsKeyword("output")) return;
      const Token& t = Next();
      if (t.kind == Token::Kind::kSymbol && (t.text == ";" || t.text == "}")) {
        // An else continuing a broken chain cannot start a statement.
        while (IsKeyword("else")) {
          Next();
          if (IsKeyword("if")) continue;
        }
        return;
      }
    }
  }

  BodyItem ParseStatement() {
    if (IsKeyword("if")) return ParseIfChain();
    if (IsKeyword("else")) Fail("statement ('else' without 'if')");
    return ParseAssignment();
  }

  Assignment ParseAssignment() {
    const Token& first = Peek();
    Assignment a;
    a.span.line = first.line;
    a.span.column = first.column;
    a.target = ExpectName("assignment or 'if'");
    ExpectSymbol("=");
    a.value = ParseExpr();
    ExpectSymbol(";");
    a.span.end_line = Previous().end_line;
    a.span.end_column = Previous().end_column;
    return a;
  }

  IfChain ParseIfChain() {
    IfChain chain;
    const Token& start = Peek();
    ExpectKeyword("if");
    IfArm arm;
    arm.span.line = start.line;
    arm.span.column = start.column;
    arm.guard = ParseParenGuard();
    ParseArmBody(arm);
    chain.arms.push_back(std::move(arm));
    while (true) {
      if (!IsKeyword("else")) Fail("'else' (an if-chain must end with an else arm)");
      const Token& else_tok = Next();
      IfArm next;
      next.span.line = else_tok.line;
      next.span.column = else_tok.column;
      if (IsKeyword("if")) {
        Next();
        next.guard = ParseParenGuard();
        ParseArmBody(next);
        chain.arms.push_back(std::move(next));
        continue;
      }
      ParseArmBody(next);
      chain.arms.push_back(std::move(next));
      return chain;
    }
  }

  void ParseArmBody(IfArm& arm) {
    if (IsKeyword("if")) Fail("assignment (nested if-chains are not supported)");
    if (IsSymbol("{")) {
      Next();
      while (!IsSymbol("}")) {
        if (IsKeyword("if")) Fail("assignment (nested if-chains are not supported)");
        if (Peek().kind == Token::Kind::kEnd) Fail("'}'");
        arm.body.push_back(ParseAssignment());
      }
      if (arm.body.empty()) Fail("at least one assignment in the arm");
      Next();
    } else {
      arm.body.push_back(ParseAssignment());
    }
    arm.span.end_line = Previous().end_line;
    arm.span.end_column = Previous().end_column;
  }

  Guard ParseParenGuard() {
    ExpectSymbol("(");
    Guard g = ParseConjunction();
    ExpectSymbol(")");
    return g;
  }

  Guard ParseConjunction() {
    Guard g;
    ParseGuardAtom(g);
    while (IsSymbol("&&")) {
      Next();
      ParseGuardAtom(g);
    }
    return g;
  }

  void ParseGuardAtom(Guard& g) {
    std::size_t save = pos_;
    try {
      g.terms.push_back(ParseComparison());
      return;
    } catch (const ParseAbort&) {
      pos_ = save;
      if (!IsSymbol("(")) throw;
      Next();
      Guard inner = ParseConjunction();
      ExpectSymbol(")");
      for (Comparison& c : inner.terms) g.terms.push_back(std::move(c));
    }
  }

  Comparison ParseComparison() {
    Comparison c;
    c.lhs = ParseExpr();
    const std::string& t = Peek().text;
    if (Peek().kind != Token::Kind::kSymbol || (t != "<" && t != "<=" && t != ">" && t != ">=")) {
      Fail("comparison operator");
    }
    c.op = t == "<" ? RelOp::kLt : t == "<=" ? RelOp::kLe : t == ">" ? RelOp::kGt : RelOp::kGe;
    Next();
    c.rhs = ParseExpr();
    return c;
  }

  ExprPtr ParseExpr() {
    ExprPtr e = ParseTerm();
    while (IsSymbol("+") || IsSymbol("-")) {
      const Token& t = Next();
      e = Expr::Binary(t.text[0], e, ParseTerm(), {t.line, t.column});
    }
    return e;
  }

  ExprPtr ParseTerm() {
    ExprPtr e = ParseUnary();
    while (IsSymbol("*") || IsSymbol("/")) {
      const Token& t = Next();
      e = Expr::Binary(t.text[0], e, ParseUnary(), {t.line, t.column});
    }
    return e;
  }

  ExprPtr ParseUnary() {
    if (IsSymbol("-")) {
      const Token& t = Next();
      ExprPtr operand = ParseUnary();
      // A negated literal is itself a literal.
      if (operand->is_number() && operand->name.empty()) {
        return Expr::Number(-operand->value, {t.line, t.column});
      }
      return Expr::Negate(operand, {t.line, t.column});
    }
    return ParsePrimary();
  }

  ExprPtr ParsePrimary() {
    const Token& t = Peek();
    SourcePos pos{t.line, t.column};
    if (t.kind == Token::Kind::kNumber) {
      Next();
      return Expr::Number(t.number, pos);
    }
    if (IsSymbol("(")) {
      Next();
      ExprPtr e = ParseExpr();
      ExpectSymbol(")");
      return e;
    }
    if (IsKeyword("PI")) {
      Next();
      return Expr::Number(kPi, pos, "PI");
    }
    if (IsKeyword("sin")) {
      Next();
      ExpectSymbol("(");
      ExprPtr arg = ParseExpr();
      ExpectSymbol(")");
      return Expr::Sin(arg, pos);
    }
    if (t.kind == Token::Kind::kIdent && !kKeywords.count(t.text)) {
      Next();
      return Expr::Variable(t.text, pos);
    }
    Fail("expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void CollectVariables(const Expr& e, std::vector<const Expr*>& out) {
  if (e.kind == Expr::Kind::kVariable) out.push_back(&e);
  if (e.lhs) CollectVariables(*e.lhs, out);
  if (e.rhs) CollectVariables(*e.rhs, out);
}

void RequireDefined(const Expr& e, const std::set<std::string>& defined) {
  std::vector<const Expr*> vars;
  CollectVariables(e, vars);
  for (const Expr* v : vars) {
    if (!defined.count(v->name)) {
      throw Error(ErrorCode::kUndefinedVariable,
                  "undefined variable '" + v->name + "' at " + std::to_string(v->pos.line) +
                      ":" + std::to_string(v->pos.column));
    }
  }
}

void CheckDefinitions(const Program& p) {
  std::set<std::string> defined(p.inputs.begin(), p.inputs.end());
  for (const BodyItem& item : p.body) {
    if (const auto* a = std::get_if<Assignment>(&item)) {
      RequireDefined(*a->value, defined);
      defined.insert(a->target);
      continue;
    }
    const IfChain& chain = std::get<IfChain>(item);
    std::set<std::string> assigned;
    for (const IfArm& arm : chain.arms) {
      if (arm.guard) {
        for (const Comparison& c : arm.guard->terms) {
          RequireDefined(*c.lhs, defined);
          RequireDefined(*c.rhs, defined);
        }
      }
      std::set<std::string> local = defined;
      for (const Assignment& a : arm.body) {
        RequireDefined(*a.value, local);
        local.insert(a.target);
        assigned.insert(a.target);
      }
    }
    defined.insert(assigned.begin(), assigned.end());
  }
  if (!defined.count(p.output)) {
    throw Error(ErrorCode::kUndefinedVariable,
                "undefined variable '" + p.output + "' in output declaration");
  }
}

Guard FoldGuard(const Guard& g) {
  Guard out;
  for (const Comparison& c : g.terms) {
    out.terms.push_back({FoldConstants(c.lhs), c.op, FoldConstants(c.rhs)});
  }
  return out;
}

}  // namespace

std::string SourceSpan::ToString() const {
  return std::to_string(line) + ":" + std::to_string(column) + "-" +
         std::to_string(end_line) + ":" + std::to_string(end_column);
}

ExprPtr Expr::Number(double v, SourcePos pos, std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kNumber;
  e->value = v;
  e->name = std::move(name);
  e->pos = pos;
  return e;
}

ExprPtr Expr::Variable(std::string name, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kVariable;
  e->name = std::move(name);
  e->pos = pos;
  return e;
}

ExprPtr Expr::Binary(char op, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kBinary;
  e->op = op;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  e->pos = pos;
  return e;
}

ExprPtr Expr::Negate(ExprPtr operand, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kNegate;
  e->lhs = std::move(operand);
  e->pos = pos;
  return e;
}

ExprPtr Expr::Sin(ExprPtr operand, SourcePos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kSin;
  e->lhs = std::move(operand);
  e->pos = pos;
  return e;
}

std::string Expr::ToString() const {
  switch (kind) {
    case Kind::kNumber: return name.empty() ? FormatNumber(value) : name;
    case Kind::kVariable: return name;
    case Kind::kBinary:
      return "(" + lhs->ToString() + " " + std::string(1, op) + " " + rhs->ToString() + ")";
    case Kind::kNegate: return "-" + lhs->ToString();
    case Kind::kSin: return "sin(" + lhs->ToString() + ")";
  }
  return {};
}

std::string_view RelOpText(RelOp op) {
  switch (op) {
    case RelOp::kLt: return "<";
    case RelOp::kLe: return "<=";
    case RelOp::kGt: return ">";
    case RelOp::kGe: return ">=";
  }
  return "?";
}

std::string Guard::ToString() const {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += " && ";
    out += terms[i].lhs->ToString() + " " + std::string(RelOpText(terms[i].op)) + " " +
           terms[i].rhs->ToString();
  }
  return out;
}

std::size_t Program::IfChainCount() const {
  std::size_t n = 0;
  for (const BodyItem& item : body) n += std::holds_alternative<IfChain>(item);
  return n;
}

std::string Program::ToString() const {
  std::string out;
  for (const std::string& in : inputs) out += "input " + in + ";\n";
  for (const BodyItem& item : body) {
    if (const auto* a = std::get_if<Assignment>(&item)) {
      out += a->target + " = " + a->value->ToString() + ";\n";
      continue;
    }
    const IfChain& chain = std::get<IfChain>(item);
    for (std::size_t i = 0; i < chain.arms.size(); ++i) {
      const IfArm& arm = chain.arms[i];
      if (i == 0) {
        out += "if (" + arm.guard->ToString() + ")";
      } else if (arm.guard) {
        out += "else if (" + arm.guard->ToString() + ")";
      } else {
        out += "else";
      }
      out += " {";
      for (const Assignment& a : arm.body) out += " " + a.target + " = " + a.value->ToString() + ";";
      out += " }\n";
    }
  }
  return out + "output " + output + ";\n";
}

SyntaxError::SyntaxError(std::vector<Diagnostic> diagnostics)
    : Error(ErrorCode::kSyntax,
            [&] {
              std::string msg = "syntax error";
              for (const Diagnostic& d : diagnostics) {
                msg += "\n  " + std::to_string(d.line) + ":" + std::to_string(d.column) +
                       ": " + d.message;
              }
              return msg;
            }()),
      diagnostics_(std::move(diagnostics)) {}

ExprPtr FoldConstants(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::kNumber:
    case Expr::Kind::kVariable:
      return e;
    case Expr::Kind::kNegate: {
      ExprPtr inner = FoldConstants(e->lhs);
      if (inner->is_number()) return Expr::Number(-inner->value, e->pos);
      return Expr::Negate(inner, e->pos);
    }
    case Expr::Kind::kSin: {
      ExprPtr inner = FoldConstants(e->lhs);
      if (inner->is_number()) return Expr::Number(std::sin(inner->value), e->pos);
      return Expr::Sin(inner, e->pos);
    }
    case Expr::Kind::kBinary: {
      ExprPtr l = FoldConstants(e->lhs);
      ExprPtr r = FoldConstants(e->rhs);
      if (l->is_number() && r->is_number()) {
        double a = l->value, b = r->value;
        switch (e->op) {
          case '+': return Expr::Number(a + b, e->pos);
          case '-': return Expr::Number(a - b, e->pos);
          case '*': return Expr::Number(a * b, e->pos);
          case '/':
            // Division by a literal zero is left for run time to report.
            if (b != 0.0) return Expr::Number(a / b, e->pos);
            break;
        }
      }
      return Expr::Binary(e->op, l, r, e->pos);
    }
  }
  return e;
}

Program ParseProgram(const std::string& text, const ParseOptions& options) {
  std::vector<Diagnostic> diags;
  std::vector<Token> tokens = Lex(text, diags);
  Program p = Parser(std::move(tokens)).Run(diags);
  if (!diags.empty()) throw SyntaxError(std::move(diags));
  CheckDefinitions(p);

  for (BodyItem& item : p.body) {
    if (auto* a = std::get_if<Assignment>(&item)) {
      if (options.fold_constants) a->value = FoldConstants(a->value);
      continue;
    }
    for (IfArm& arm : std::get<IfChain>(item).arms) {
      if (arm.guard) arm.guard = FoldGuard(*arm.guard);
      if (!options.fold_constants) continue;
      for (Assignment& a : arm.body) a.value = FoldConstants(a.value);
    }
  }
  return p;
}

}  // namespace rtgdiag
