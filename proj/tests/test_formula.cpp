#include <doctest.h>

#include "baire/errors.hpp"
#include "baire/formula.hpp"
#include "generators.hpp"

using namespace baire;
using F = Formula;

namespace {

const F p0 = F::var(0);
const F p1 = F::var(1);
const F p2 = F::var(2);

int line_of(std::string_view text) {
  try {
    parse(text);
  } catch (const SyntaxError& e) {
    return e.line() * 1000 + e.column();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse builds desugared trees") {
  CHECK(parse("p0 & ~p1") == F::conj(p0, F::neg(p1)));
  const F five = F::neg(F::conj(F::diamond(p0), F::neg(F::neg(F::diamond(F::neg(F::diamond(p0)))))));
  CHECK(parse("<>p0 -> []<>p0") == five);
  CHECK(is_desugared(parse("A([]p0 | []~p0) -> Ap0 | A~p0")));
  CHECK(parse("A([]p0 | []~p0) -> Ap0 | A~p0") == substitute(axiom("shehtman"), {{1, p0}}));
}

TEST_CASE("precedence and associativity") {
  CHECK(parse_surface("p0 -> p1 -> p2") == F::implies(p0, F::implies(p1, p2)));
  CHECK(parse_surface("p0 | p1 & p2") == F::disj(p0, F::conj(p1, p2)));
  CHECK(parse_surface("p0 & p1 & p2") == F::conj(F::conj(p0, p1), p2));
  CHECK(parse_surface("p0 | p1 | p2") == F::disj(F::disj(p0, p1), p2));
  CHECK(parse_surface("p0 <-> p1 -> p2") == F::iff(p0, F::implies(p1, p2)));
  CHECK(parse_surface("~<>p0 & []p1") == F::conj(F::neg(F::diamond(p0)), F::box(p1)));
  CHECK(parse_surface("Ap0 -> Ep1") == F::implies(F::forall(p0), F::exists(p1)));
  CHECK(parse_surface("A~p0") == F::forall(F::neg(p0)));
}

TEST_CASE("constants") {
  CHECK(parse("false") == F::conj(p0, F::neg(p0)));
  CHECK(parse("true") == F::neg(F::conj(p0, F::neg(p0))));
  CHECK(desugar(F::bottom()) == parse("p0 & ~p0"));
}

TEST_CASE("syntax errors carry 1-based positions") {
  CHECK(line_of("p0 &") == 1005);
  CHECK(line_of("p0 &\n  & p1") == 2003);
  CHECK(line_of("(p0 | p1") == 1009);
  CHECK(line_of("p0 p1") == 1004);
  CHECK(line_of("p") == 1002);
  // Columns count code points, not bytes.
  CHECK(line_of("\xc3\xa9 & p0") == 1001);
  CHECK(line_of("p0 & \xc3\xa9") == 1006);
  CHECK(line_of("\xc3\xa9\xc3\xa9 q") == 1001);
}

TEST_CASE("variable budget") {
  CHECK_NOTHROW(parse("p63"));
  CHECK_THROWS_AS(parse("p64"), SyntaxError);
  CHECK_THROWS_AS(parse("p0 & p4", ParseOptions{4}), SyntaxError);
  CHECK_NOTHROW(parse("p0 & p3", ParseOptions{4}));
  CHECK_THROWS_AS(parse("p99999999999999999999"), SyntaxError);
}

TEST_CASE("render examples") {
  CHECK(render(p0) == "p0");
  CHECK(render(F::diamond(F::conj(p0, p1))) == "<>(p0 & p1)");
  CHECK(render(F::neg(F::diamond(F::neg(p2)))) == "[]p2");
  CHECK(render(parse("<>p0 -> []<>p0")) == "<>p0 -> []<>p0");
  // Or-patterns are matched before implication.
  CHECK(render(parse("(p0 -> p1) -> p2")) == "p0 & ~p1 | p2");
  CHECK(render(parse("p0 -> p1 -> p2")) == "p0 -> p1 -> p2");
  CHECK(render(parse("~(p0 & p1)")) == "~(p0 & p1)");
  CHECK(render(parse("Ep0")) == "Ep0");
}

TEST_CASE("subformula counts") {
  auto v = subformulas(p0);
  CHECK(v.subformulas.size() == 1);
  CHECK(v.diamonds == 0);

  auto five = subformulas(parse("<>p0 -> []<>p0"));
  CHECK(five.diamonds == 2);
  CHECK(five.variables == std::vector<unsigned>{0});

  auto bd1 = subformulas(axiom("bd", 1));
  CHECK(bd1.diamonds == 3);
  CHECK(bd1.variables == std::vector<unsigned>{1, 2});

  auto sh = subformulas(axiom("shehtman"));
  CHECK(sh.foralls == 3);
  CHECK(sh.diamonds == 2);

  // Children precede parents and entries are distinct.
  const auto info = subformulas(parse("<>(p0 & p1) & <>(p0 & p1)"));
  CHECK(info.subformulas.size() == 5);
  CHECK(info.subformulas.back() == parse("<>(p0 & p1) & <>(p0 & p1)"));
}

TEST_CASE("substitution") {
  CHECK(substitute(p0, {{0, p1}}) == p1);
  CHECK(substitute(F::diamond(p0), {{0, F::conj(p0, p1)}}) == F::diamond(F::conj(p0, p1)));
  const F f = parse("<>p0 & A(p1 -> p2)");
  CHECK(substitute(f, {{0, p0}, {1, p1}, {2, p2}}) == f);
  CHECK(substitute(f, {}) == f);
  // Simultaneous, not sequential.
  CHECK(substitute(F::conj(p0, p1), {{0, p1}, {1, p0}}) == F::conj(p1, p0));
}

TEST_CASE("substitution composes") {
  gen::FormulaSource src(11, gen::Shape{3, 10, 3, true});
  for (int i = 0; i < 200; ++i) {
    const F f = src.next();
    const std::map<unsigned, F> sigma{{0, src.next()}};
    const std::map<unsigned, F> tau{{1, src.next()}, {2, src.next()}};
    // tau after sigma: substitute tau into the images of sigma, keep tau elsewhere.
    std::map<unsigned, F> both = tau;
    for (const auto& [k, g] : sigma) both[k] = substitute(g, tau);
    CHECK(substitute(substitute(f, sigma), tau) == substitute(f, both));
  }
}

TEST_CASE("axiom library") {
  CHECK(axiom("T") == parse("p1 -> <>p1"));
  CHECK(axiom("4") == parse("<><>p1 -> <>p1"));
  CHECK(axiom("5") == parse("<>p1 -> []<>p1"));
  CHECK(axiom("M") == parse("<>(p1 | p2) -> <>p1 | <>p2"));
  CHECK(axiom("N") == parse("~<>false"));
  CHECK(axiom("bd", 1) == parse("<>p1 & <>p2 -> <>(p1 & p2)"));
  CHECK(axiom("bd", 2) == parse("<>p1 & <>p2 & <>p3 -> <>(p1 & p2) | <>(p1 & p3) | <>(p2 & p3)"));
  CHECK(axiom("s5u-connect") == parse("<>p1 -> Ep1"));
  for (unsigned n = 1; n <= 6; ++n) {
    const auto surface = parse_surface(render(axiom("bd", n)));
    REQUIRE(surface.op() == Op::Implies);
    int ante = 0, cons = 0;
    std::function<void(const F&, int&)> count = [&](const F& g, int& c) {
      if (g.op() == Op::Diamond) ++c;
      if (g.is_binary()) {
        count(g.left(), c);
        count(g.right(), c);
      } else if (g.is_unary()) {
        count(g.child(), c);
      }
    };
    count(surface.left(), ante);
    count(surface.right(), cons);
    CHECK(ante == static_cast<int>(n + 1));
    CHECK(cons == static_cast<int>(n * (n + 1) / 2));
    CHECK(subformulas(axiom("bd", n)).variables.size() == n + 1);
  }
  CHECK_THROWS_AS(axiom("bd"), PreconditionError);
  CHECK_THROWS_AS(axiom("K"), PreconditionError);
  CHECK(axiom_names().size() == 8);
}

TEST_CASE("round trip and idempotence on random formulas") {
  for (bool universal : {false, true}) {
    gen::FormulaSource src(universal ? 3 : 4, gen::Shape{4, 14, 4, universal});
    for (int i = 0; i < 1000; ++i) {
      const F f = src.next();
      CHECK(is_desugared(f));
      CHECK(desugar(f) == f);
      CHECK(parse(render(f)) == f);
    }
  }
}

TEST_CASE("structural equality and hashing") {
  CHECK(parse("p0 & p1") != parse("p1 & p0"));
  CHECK(FormulaHash{}(parse("<>(p0 & p1)")) == FormulaHash{}(F::diamond(F::conj(p0, p1))));
  CHECK(parse("<>p0 & p1").size() == 4);
}
