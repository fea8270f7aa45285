#include "baire/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <set>
#include <unordered_set>

#include "baire/errors.hpp"

namespace baire {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Op op, unsigned var, const Formula* l, const Formula* r) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->var = var;
  node->hash = mix(static_cast<std::size_t>(op) * 1315423911u, var);
  if (l) {
    node->kids.push_back(*l);
    node->size += l->size();
    node->hash = mix(node->hash, l->hash());
  }
  if (r) {
    node->kids.push_back(*r);
    node->size += r->size();
    node->hash = mix(node->hash, r->hash());
  }
  Formula f;
  f.node_ = std::move(node);
  return f;
}

Formula Formula::var(unsigned index) { return make(Op::Var, index, nullptr, nullptr); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, 0, &a, &b); }
Formula Formula::neg(Formula a) { return make(Op::Not, 0, &a, nullptr); }
Formula Formula::diamond(Formula a) { return make(Op::Diamond, 0, &a, nullptr); }
Formula Formula::forall(Formula a) { return make(Op::Forall, 0, &a, nullptr); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, 0, &a, &b); }
Formula Formula::implies(Formula a, Formula b) { return make(Op::Implies, 0, &a, &b); }
Formula Formula::iff(Formula a, Formula b) { return make(Op::Iff, 0, &a, &b); }
Formula Formula::box(Formula a) { return make(Op::Box, 0, &a, nullptr); }
Formula Formula::exists(Formula a) { return make(Op::Exists, 0, &a, nullptr); }
Formula Formula::bottom() { return make(Op::Bottom, 0, nullptr, nullptr); }
Formula Formula::top() { return make(Op::Top, 0, nullptr, nullptr); }

bool Formula::is_unary() const {
  switch (op()) {
    case Op::Not:
    case Op::Diamond:
    case Op::Forall:
    case Op::Box:
    case Op::Exists:
      return true;
    default:
      return false;
  }
}

bool Formula::is_binary() const {
  switch (op()) {
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff:
      return true;
    default:
      return false;
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.op() != b.op() ||
      a.var_index() != b.var_index())
    return false;
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (!(ka[i] == kb[i])) return false;
  return true;
}

bool is_desugared(const Formula& f) {
  switch (f.op()) {
    case Op::Var:
      return true;
    case Op::And:
      return is_desugared(f.left()) && is_desugared(f.right());
    case Op::Not:
    case Op::Diamond:
    case Op::Forall:
      return is_desugared(f.child());
    default:
      return false;
  }
}

Formula desugar(const Formula& f) {
  using F = Formula;
  switch (f.op()) {
    case Op::Var:
      return f;
    case Op::And:
      return F::conj(desugar(f.left()), desugar(f.right()));
    case Op::Not:
      return F::neg(desugar(f.child()));
    case Op::Diamond:
      return F::diamond(desugar(f.child()));
    case Op::Forall:
      return F::forall(desugar(f.child()));
    case Op::Or:
      return F::neg(F::conj(F::neg(desugar(f.left())), F::neg(desugar(f.right()))));
    case Op::Implies:
      return F::neg(F::conj(desugar(f.left()), F::neg(desugar(f.right()))));
    case Op::Iff: {
      auto a = desugar(f.left());
      auto b = desugar(f.right());
      return F::conj(F::neg(F::conj(a, F::neg(b))), F::neg(F::conj(b, F::neg(a))));
    }
    case Op::Box:
      return F::neg(F::diamond(F::neg(desugar(f.child()))));
    case Op::Exists:
      return F::neg(F::forall(F::neg(desugar(f.child()))));
    case Op::Bottom:
      return F::conj(F::var(0), F::neg(F::var(0)));
    case Op::Top:
      return F::neg(F::conj(F::var(0), F::neg(F::var(0))));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Var, Not, And, Or, Implies, Iff, Diamond, Box, Forall, Exists, True, False,
                 LParen, RParen, End };

struct Token {
  Tok kind;
  unsigned var = 0;
  int line = 1;
  int column = 1;
};

class Lexer {
public:
  Lexer(std::string_view text, unsigned budget) : text_(text), budget_(budget) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t{Tok::End, 0, line_, col_};
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = text_[pos_];
      if (c == 'p') {
        advance(1);
        const auto start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          advance(1);
        if (start == pos_) throw SyntaxError("expected digits after 'p'", line_, col_);
        unsigned long long idx = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, idx);
        (void)ptr;
        if (ec != std::errc{} || idx >= budget_)
          throw SyntaxError("variable p" + std::string(text_.substr(start, pos_ - start)) +
                                " exceeds the variable budget of " + std::to_string(budget_),
                            t.line, t.column);
        t.kind = Tok::Var;
        t.var = static_cast<unsigned>(idx);
      } else if (keyword("true")) {
        t.kind = Tok::True;
      } else if (keyword("false")) {
        t.kind = Tok::False;
      } else if (c == 'A') {
        t.kind = Tok::Forall;
        advance(1);
      } else if (c == 'E') {
        t.kind = Tok::Exists;
        advance(1);
      } else if (c == '~') {
        t.kind = Tok::Not;
        advance(1);
      } else if (c == '&') {
        t.kind = Tok::And;
        advance(1);
      } else if (c == '|') {
        t.kind = Tok::Or;
        advance(1);
      } else if (c == '(') {
        t.kind = Tok::LParen;
        advance(1);
      } else if (c == ')') {
        t.kind = Tok::RParen;
        advance(1);
      } else if (starts("->")) {
        t.kind = Tok::Implies;
        advance(2);
      } else if (starts("<->")) {
        t.kind = Tok::Iff;
        advance(3);
      } else if (starts("<>")) {
        t.kind = Tok::Diamond;
        advance(2);
      } else if (starts("[]")) {
        t.kind = Tok::Box;
        advance(2);
      } else {
        auto end = pos_ + 1;
        while (end < text_.size() && (static_cast<unsigned char>(text_[end]) & 0xC0) == 0x80) ++end;
        throw SyntaxError("unexpected character '" + std::string(text_.substr(pos_, end - pos_)) + "'",
                          line_, col_);
      }
      out.push_back(t);
    }
  }

private:
  bool starts(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  bool keyword(std::string_view s) {
    if (!starts(s)) return false;
    const auto end = pos_ + s.size();
    if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) return false;
    advance(s.size());
    return true;
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
        ++col_;  // count code points, not UTF-8 continuation bytes
      }
      ++pos_;
    }
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      advance(1);
  }

  std::string_view text_;
  unsigned budget_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// iff   := imp ('<->' imp)*
// imp   := or ('->' imp)?
// or    := and ('|' and)*
// and   := unary ('&' unary)*
// unary := ('~' | '<>' | '[]' | 'A' | 'E') unary | atom
// atom  := var | 'true' | 'false' | '(' iff ')'
class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula run() {
    auto f = iff();
    if (peek().kind != Tok::End) fail("unexpected trailing input");
    return f;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, peek().line, peek().column);
  }

  Formula iff() {
    auto f = imp();
    while (accept(Tok::Iff)) f = Formula::iff(f, imp());
    return f;
  }
  Formula imp() {
    auto f = disj();
    if (accept(Tok::Implies)) return Formula::implies(f, imp());
    return f;
  }
  Formula disj() {
    auto f = conj();
    while (accept(Tok::Or)) f = Formula::disj(f, conj());
    return f;
  }
  Formula conj() {
    auto f = unary();
    while (accept(Tok::And)) f = Formula::conj(f, unary());
    return f;
  }
  Formula unary() {
    switch (peek().kind) {
      case Tok::Not: next(); return Formula::neg(unary());
      case Tok::Diamond: next(); return Formula::diamond(unary());
      case Tok::Box: next(); return Formula::box(unary());
      case Tok::Forall: next(); return Formula::forall(unary());
      case Tok::Exists: next(); return Formula::exists(unary());
      default: return atom();
    }
  }
  Formula atom() {
    switch (peek().kind) {
      case Tok::Var: return Formula::var(next().var);
      case Tok::True: next(); return Formula::top();
      case Tok::False: next(); return Formula::bottom();
      case Tok::LParen: {
        next();
        auto f = iff();
        if (!accept(Tok::RParen)) fail("expected ')'");
        return f;
      }
      case Tok::End: fail("unexpected end of input");
      default: fail("expected a formula");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_surface(std::string_view text, const ParseOptions& opts) {
  return Parser(Lexer(text, opts.variable_budget).run()).run();
}

Formula parse(std::string_view text, const ParseOptions& opts) {
  return desugar(parse_surface(text, opts));
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

// Binding strength; higher binds tighter.
enum Prec { kIff = 1, kImp = 2, kOr = 3, kAnd = 4, kUnary = 5 };

struct Sugared {
  Op op;
  const Formula* a = nullptr;
  const Formula* b = nullptr;
};

// Reads derived connectives back out of primitive patterns.
Sugared view(const Formula& f) {
  if (f.op() == Op::Not) {
    const auto& c = f.child();
    if (c.op() == Op::Diamond && c.child().op() == Op::Not)
      return {Op::Box, &c.child().child()};
    if (c.op() == Op::Forall && c.child().op() == Op::Not)
      return {Op::Exists, &c.child().child()};
    if (c.op() == Op::And && c.left().op() == Op::Not && c.right().op() == Op::Not)
      return {Op::Or, &c.left().child(), &c.right().child()};
    if (c.op() == Op::And && c.right().op() == Op::Not)
      return {Op::Implies, &c.left(), &c.right().child()};
    return {Op::Not, &c};
  }
  if (f.is_binary()) return {f.op(), &f.left(), &f.right()};
  if (f.is_unary()) return {f.op(), &f.child()};
  return {f.op()};
}

int prec_of(Op op) {
  switch (op) {
    case Op::Iff: return kIff;
    case Op::Implies: return kImp;
    case Op::Or: return kOr;
    case Op::And: return kAnd;
    default: return kUnary;
  }
}

void render_into(const Formula& f, int min_prec, std::string& out) {
  const auto v = view(f);
  const int p = prec_of(v.op);
  const bool parens = p < min_prec;
  if (parens) out += '(';
  switch (v.op) {
    case Op::Var:
      out += 'p';
      out += std::to_string(f.var_index());
      break;
    case Op::Top: out += "true"; break;
    case Op::Bottom: out += "false"; break;
    case Op::Not: out += '~'; render_into(*v.a, kUnary, out); break;
    case Op::Diamond: out += "<>"; render_into(*v.a, kUnary, out); break;
    case Op::Box: out += "[]"; render_into(*v.a, kUnary, out); break;
    case Op::Forall: out += 'A'; render_into(*v.a, kUnary, out); break;
    case Op::Exists: out += 'E'; render_into(*v.a, kUnary, out); break;
    // & and | associate to the left, -> to the right, <-> to the left.
    case Op::And:
      render_into(*v.a, kAnd, out);
      out += " & ";
      render_into(*v.b, kAnd + 1, out);
      break;
    case Op::Or:
      render_into(*v.a, kOr, out);
      out += " | ";
      render_into(*v.b, kOr + 1, out);
      break;
    case Op::Implies:
      render_into(*v.a, kImp + 1, out);
      out += " -> ";
      render_into(*v.b, kImp, out);
      break;
    case Op::Iff:
      render_into(*v.a, kIff, out);
      out += " <-> ";
      render_into(*v.b, kIff + 1, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, kIff, out);
  return out;
}

// ---------------------------------------------------------------------------

SubformulaInfo subformulas(const Formula& f) {
  SubformulaInfo info;
  std::unordered_set<Formula, FormulaHash> seen;
  std::set<unsigned> vars;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (seen.contains(g)) return;
    if (g.is_binary()) {
      walk(g.left());
      walk(g.right());
    } else if (g.is_unary()) {
      walk(g.child());
    }
    seen.insert(g);
    info.subformulas.push_back(g);
    if (g.op() == Op::Diamond) ++info.diamonds;
    if (g.op() == Op::Forall) ++info.foralls;
    if (g.op() == Op::Var) vars.insert(g.var_index());
  };
  walk(f);
  info.variables.assign(vars.begin(), vars.end());
  return info;
}

Formula substitute(const Formula& f, const std::map<unsigned, Formula>& map) {
  switch (f.op()) {
    case Op::Var: {
      auto it = map.find(f.var_index());
      return it == map.end() ? f : it->second;
    }
    case Op::And: return Formula::conj(substitute(f.left(), map), substitute(f.right(), map));
    case Op::Or: return Formula::disj(substitute(f.left(), map), substitute(f.right(), map));
    case Op::Implies:
      return Formula::implies(substitute(f.left(), map), substitute(f.right(), map));
    case Op::Iff: return Formula::iff(substitute(f.left(), map), substitute(f.right(), map));
    case Op::Not: return Formula::neg(substitute(f.child(), map));
    case Op::Diamond: return Formula::diamond(substitute(f.child(), map));
    case Op::Forall: return Formula::forall(substitute(f.child(), map));
    case Op::Box: return Formula::box(substitute(f.child(), map));
    case Op::Exists: return Formula::exists(substitute(f.child(), map));
    case Op::Bottom:
    case Op::Top: return f;
  }
  return f;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& axiom_names() {
  static const std::vector<std::string> names = {"M", "T", "4", "N", "5", "bd", "shehtman",
                                                 "s5u-connect"};
  return names;
}

Formula axiom(std::string_view name, std::optional<unsigned> n) {
  using F = Formula;
  const auto p = F::var(1);
  const auto q = F::var(2);
  F f;
  if (name == "M") {
    f = F::implies(F::diamond(F::disj(p, q)), F::disj(F::diamond(p), F::diamond(q)));
  } else if (name == "T") {
    f = F::implies(p, F::diamond(p));
  } else if (name == "4") {
    f = F::implies(F::diamond(F::diamond(p)), F::diamond(p));
  } else if (name == "N") {
    f = F::neg(F::diamond(F::bottom()));
  } else if (name == "5") {
    f = F::implies(F::diamond(p), F::box(F::diamond(p)));
  } else if (name == "bd") {
    if (!n) throw PreconditionError("axiom bd requires n");
    if (*n == 0) throw PreconditionError("axiom bd requires n >= 1");
    // /\_{i=1}^{n+1} <>p_i -> \/_{1<=i<j<=n+1} <>(p_i & p_j)
    const unsigned k = *n + 1;
    F ante = F::diamond(F::var(1));
    for (unsigned i = 2; i <= k; ++i) ante = F::conj(ante, F::diamond(F::var(i)));
    std::optional<F> cons;
    for (unsigned i = 1; i <= k; ++i)
      for (unsigned j = i + 1; j <= k; ++j) {
        auto d = F::diamond(F::conj(F::var(i), F::var(j)));
        cons = cons ? F::disj(*cons, d) : d;
      }
    f = F::implies(ante, *cons);
  } else if (name == "shehtman") {
    f = F::implies(F::forall(F::disj(F::box(p), F::box(F::neg(p)))),
                   F::disj(F::forall(p), F::forall(F::neg(p))));
  } else if (name == "s5u-connect") {
    f = F::implies(F::diamond(p), F::exists(p));
  } else {
    throw PreconditionError("unknown axiom '" + std::string(name) + "'");
  }
  return desugar(f);
}

}  // namespace baire
