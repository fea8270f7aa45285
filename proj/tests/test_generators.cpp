#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"

// Known sequence counts keep the exhaustive suites honest about coverage.
TEST_CASE("labelled preorder counts") {
  const std::vector<std::size_t> expected{1, 1, 4, 29, 355, 6942};
  for (int n = 0; n <= 5; ++n) CHECK(gen::labeled_preorders(n).size() == expected[n]);
}

TEST_CASE("unlabelled preorder counts") {
  const std::vector<std::size_t> expected{1, 1, 3, 9, 33, 139, 718};
  for (int n = 1; n <= 6; ++n) CHECK(gen::unlabeled_preorders(n).size() == expected[n]);
}

TEST_CASE("canonical form is a relabelling invariant") {
  const gen::Succ chain{0b111, 0b110, 0b100};
  const gen::Succ shuffled{0b101, 0b111, 0b100};
  CHECK(gen::is_preorder(chain));
  CHECK(gen::is_preorder(shuffled));
  CHECK(gen::canonical(chain) == gen::canonical(shuffled));
  CHECK(gen::canonical(chain) != gen::canonical({0b011, 0b011, 0b100}));
}

TEST_CASE("structured frames are preorders in range") {
  const auto frames = gen::structured_frames(7, 8);
  CHECK(frames.size() > 50);
  for (const auto& fr : frames) {
    CHECK(fr.size() >= 7);
    CHECK(fr.size() <= 8);
    CHECK(oracle::Rel::of(fr).reflexive_transitive());
  }
}

TEST_CASE("formula source respects its shape") {
  gen::FormulaSource src(1, gen::Shape{2, 8, 3, true, 4});
  for (int i = 0; i < 200; ++i) {
    const auto f = src.next();
    const auto info = baire::subformulas(f);
    CHECK(info.foralls >= 1);
    CHECK(info.diamonds + info.foralls <= 4);
    CHECK(info.variables.size() <= 2);
  }
}

TEST_CASE("cluster oracle matches a full sweep") {
  gen::FormulaSource src(5, gen::Shape{2, 10, 3});
  for (int i = 0; i < 100; ++i) {
    const auto f = src.next();
    for (int n = 1; n <= 4; ++n)
      CHECK(oracle::valid_on_cluster(f, n) == oracle::valid_on_frame(oracle::cluster_rel({n}), f));
  }
}
