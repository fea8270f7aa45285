#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace baire {

/// Node kinds. The first five are primitive; the rest exist only before
/// desugaring.
enum class Op : std::uint8_t {
  Var,
  And,
  Not,
  Diamond,
  Forall,
  Or,
  Implies,
  Iff,
  Box,
  Exists,
  Bottom,
  Top,
};

/// Immutable formula tree with structural equality. Copies share nodes.
class Formula {
public:
  static Formula var(unsigned index);
  static Formula conj(Formula a, Formula b);
  static Formula neg(Formula a);
  static Formula diamond(Formula a);
  static Formula forall(Formula a);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula box(Formula a);
  static Formula exists(Formula a);
  static Formula bottom();
  static Formula top();

  Op op() const { return node_->op; }
  unsigned var_index() const { return node_->var; }
  /// Sole child of a unary node, left child of a binary one.
  const Formula& left() const { return node_->kids[0]; }
  const Formula& right() const { return node_->kids[1]; }
  const Formula& child() const { return left(); }

  bool is_unary() const;
  bool is_binary() const;
  /// Number of nodes in the tree.
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Formula& a, const Formula& b);

private:
  struct Node {
    Op op;
    unsigned var = 0;
    std::vector<Formula> kids;
    std::size_t size = 1;
    std::size_t hash = 0;
  };

  static Formula make(Op op, unsigned var, const Formula* l, const Formula* r);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// True when only Var, And, Not, Diamond and Forall occur.
bool is_desugared(const Formula& f);

/// Rewrites every derived connective into the primitive ones:
/// a | b = ~(~a & ~b), a -> b = ~(a & ~b), a <-> b = (a -> b) & (b -> a),
/// []a = ~<>~a, Ea = ~A~a, false = p0 & ~p0, true = ~false.
Formula desugar(const Formula& f);

struct ParseOptions {
  /// Variables must satisfy index < variable_budget.
  unsigned variable_budget = 64;
};

/// Parses the surface syntax and returns the desugared tree.
/// Throws SyntaxError with a 1-based line and column.
Formula parse(std::string_view text, const ParseOptions& opts = {});

/// Parses without desugaring.
Formula parse_surface(std::string_view text, const ParseOptions& opts = {});

/// Minimal-parenthesis rendering. Primitive trees are resugared where a
/// pattern matches ([], E, |, ->), so parse(render(f)) == f.
std::string render(const Formula& f);

struct SubformulaInfo {
  /// Distinct subtrees, children before parents, in first-occurrence order.
  std::vector<Formula> subformulas;
  int diamonds = 0;
  int foralls = 0;
  std::vector<unsigned> variables;
};

SubformulaInfo subformulas(const Formula& f);

/// Simultaneous substitution; variables absent from `map` are kept.
Formula substitute(const Formula& f, const std::map<unsigned, Formula>& map);

/// Named axioms over p1, p2, ...: M, T, 4, N, 5, bd (needs n >= 1),
/// shehtman, s5u-connect. Result is desugared.
Formula axiom(std::string_view name, std::optional<unsigned> n = std::nullopt);

/// Names accepted by axiom().
const std::vector<std::string>& axiom_names();

}  // namespace baire
