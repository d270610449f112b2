#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "cusp/group.hpp"
#include "cusp/rng.hpp"
#include "support/oracles.hpp"

using namespace cusp;

namespace {

MarkedGroup z2z2() {
  MarkedGroup g = MarkedGroup::free_product({MarkedGroup::free_abelian(2), MarkedGroup::free_abelian(2)});
  g.add_peripheral({0, 1});
  g.add_peripheral({2, 3});
  return g;
}

}  // namespace

TEST_CASE("free abelian cancellation") {
  MarkedGroup g = MarkedGroup::free_abelian(2);
  CHECK(g.format(g.parse("abA")) == "b");
  CHECK(g.format(g.parse("aabB")) == "aa");
  CHECK(g.format(g.parse("1")) == "1");
  CHECK(g.parse("ab") == g.parse("ba"));
}

TEST_CASE("free reduction") {
  MarkedGroup g = MarkedGroup::free_group(2);
  CHECK(g.format(g.parse("abBa")) == "aa");
  CHECK(g.format(g.parse("aA")) == "1");
  CHECK(g.parse("ab") != g.parse("ba"));
}

TEST_CASE("free product syllable cancellation") {
  MarkedGroup g = z2z2();
  CHECK(g.format(g.parse("acCb")) == "ab");
  CHECK(g.format(g.parse("acdCDb")) == "ab");  // abelian inner cancellation
  CHECK(g.format(g.parse("cabBAC")) == "1");
}

TEST_CASE("normal form is idempotent on random words") {
  MarkedGroup g = z2z2();
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Word w;
    const int len = static_cast<int>(rng.below(12));
    for (int i = 0; i < len; ++i) {
      w.push_back(letter(static_cast<int>(rng.below(4)), rng.below(2) == 1));
    }
    const Word once = g.normalize(w);
    CHECK(g.normalize(once) == once);
  }
}

TEST_CASE("unknown generator symbols are rejected") {
  MarkedGroup g = MarkedGroup::free_abelian(2);
  CHECK_THROWS_AS(g.parse("axb"), MalformedWordError);
  Word bad(1, letter(9, false));
  CHECK_THROWS_AS(g.normalize(bad), MalformedWordError);
}

TEST_CASE("neighbors of identity and of a word") {
  MarkedGroup z2 = MarkedGroup::free_abelian(2);
  CHECK(z2.neighbors(Word{}).size() == 4);

  MarkedGroup f2 = MarkedGroup::free_group(2);
  const auto nb = f2.neighbors(f2.parse("a"));
  CHECK(nb.size() == 4);
  std::set<std::string> names;
  for (const Word& w : nb) names.insert(f2.format(w));
  CHECK(names == std::set<std::string>{"1", "aa", "ab", "aB"});

  MarkedGroup g = z2z2();
  CHECK(g.neighbors(g.parse("a")).size() == 8);
}

TEST_CASE("neighbors relation is symmetric") {
  MarkedGroup g = z2z2();
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Word w;
    for (int i = 0; i < static_cast<int>(rng.below(6)); ++i) {
      w.push_back(letter(static_cast<int>(rng.below(4)), rng.below(2) == 1));
    }
    const Word x = g.normalize(w);
    for (const Word& y : g.neighbors(x)) {
      const auto back = g.neighbors(y);
      CHECK(std::find(back.begin(), back.end(), x) != back.end());
    }
  }
}

TEST_CASE("ball sizes") {
  MarkedGroup z2 = MarkedGroup::free_abelian(2);
  CHECK(z2.ball(Word{}, 1).size() == 5);
  CHECK(z2.ball(Word{}, 2).size() == 13);
  for (int r = 0; r <= 20; ++r) {
    CHECK(z2.ball(Word{}, r).size() == oracle::z2_ball_size(r));
  }
  MarkedGroup f2 = MarkedGroup::free_group(2);
  CHECK(f2.ball(Word{}, 2).size() == 17);
  CHECK_THROWS_AS(z2.ball(Word{}, 20, 100), SizeLimitError);
}

TEST_CASE("ball property: every element has a closer neighbour") {
  MarkedGroup g = z2z2();
  const auto ball = g.ball(Word{}, 3);
  for (const Word& x : ball) {
    if (x.empty()) continue;
    const int d = g.length(x);
    bool has_closer = false;
    for (const Word& y : g.neighbors(x)) {
      if (g.length(y) == d - 1) has_closer = true;
    }
    CHECK(has_closer);
  }
}

TEST_CASE("word metric symmetry") {
  MarkedGroup g = z2z2();
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Word a, b;
    for (int i = 0; i < static_cast<int>(rng.below(8)); ++i)
      a.push_back(letter(static_cast<int>(rng.below(4)), rng.below(2) == 1));
    for (int i = 0; i < static_cast<int>(rng.below(8)); ++i)
      b.push_back(letter(static_cast<int>(rng.below(4)), rng.below(2) == 1));
    const Word x = g.normalize(a), y = g.normalize(b);
    CHECK(g.distance(x, y) == g.distance(y, x));
  }
}

TEST_CASE("coset representatives match the examples") {
  MarkedGroup g = z2z2();
  CHECK(g.format(g.coset_representative(g.parse("ab"), 0)) == "1");
  CHECK(g.format(g.coset_representative(g.parse("ca"), 0)) == "c");
  CHECK(g.format(g.coset_representative(g.parse("c"), 1)) == "1");
  CHECK(g.format(g.coset_representative(g.parse("acb"), 0)) == "ac");
}

TEST_CASE("coset representative is shortlex-minimal and coset-invariant") {
  MarkedGroup g = z2z2();
  const auto ball = g.ball(Word{}, 4);
  for (int i = 0; i < 2; ++i) {
    for (const Word& x : ball) {
      const Word rep = g.coset_representative(x, i);
      // same coset iff same representative
      const Word off = g.coset_offset(x, i);
      CHECK(g.in_peripheral(off, i));
      CHECK(g.multiply(rep, off) == x);
      // representative is minimal: strictly shorter than any other coset
      // member unless equal
      CHECK(g.length(rep) <= g.length(x));
      CHECK(g.coset_representative(rep, i) == rep);
    }
  }
}

TEST_CASE("coset partition of a ball") {
  MarkedGroup g = z2z2();
  const auto ball = g.ball(Word{}, 3);
  std::map<Word, std::set<Word>> classes;
  for (const Word& x : ball) classes[g.coset_representative(x, 0)].insert(x);
  std::size_t total = 0;
  for (const auto& [rep, members] : classes) {
    total += members.size();
    // each class equals (rep * P_0) intersected with the ball
    for (const Word& x : members) {
      CHECK(g.in_peripheral(g.multiply(g.inverse(rep), x), 0));
    }
  }
  CHECK(total == ball.size());
}

TEST_CASE("peripheral balls embed isometrically") {
  MarkedGroup g = z2z2();
  const auto pball = g.peripheral_ball(0, 3);
  CHECK(pball.size() == oracle::z2_ball_size(3));
  for (const Word& p : pball) {
    CHECK(g.in_peripheral(p, 0));
    CHECK(g.length(p) <= 3);
  }
  CHECK(g.peripheral_ball_size(0, 3) == oracle::z2_ball_size(3));
  CHECK(g.peripheral_ball_size(0, 12) == oracle::z2_ball_size(12));
}

TEST_CASE("random peripheral elements are uniform-ish and in range") {
  MarkedGroup g = z2z2();
  Rng rng(5);
  std::map<std::string, int> counts;
  for (int i = 0; i < 4000; ++i) {
    Word p = g.random_peripheral_element(1, 2, rng);
    CHECK(g.in_peripheral(p, 1));
    const int len = g.length(p);
    CHECK(len >= 1);
    CHECK(len <= 2);
    ++counts[g.format(p)];
  }
  CHECK(counts.size() == 12);  // the twelve nontrivial elements of the 2-ball
  for (const auto& [name, c] : counts) CHECK(c > 150);
}

TEST_CASE("peripheral validation") {
  MarkedGroup g = MarkedGroup::free_product({MarkedGroup::free_abelian(2), MarkedGroup::free_abelian(2)});
  CHECK_THROWS_AS(g.add_peripheral({1, 2}), std::invalid_argument);  // spans two factors
  CHECK_THROWS_AS(g.add_peripheral({}), std::invalid_argument);
  CHECK_NOTHROW(g.add_peripheral({2, 3}));
}

TEST_CASE("free subgroup coset stripping") {
  MarkedGroup f2 = MarkedGroup::free_group(2);
  f2.add_peripheral({0});
  CHECK(f2.format(f2.coset_representative(f2.parse("aba"), 0)) == "ab");
  CHECK(f2.format(f2.coset_representative(f2.parse("abA"), 0)) == "ab");
  CHECK(f2.format(f2.coset_representative(f2.parse("aa"), 0)) == "1");
}

TEST_CASE("axis powers are geodesic") {
  for (MarkedGroup g : {MarkedGroup::free_abelian(2), MarkedGroup::free_group(2)}) {
    const Word step = g.axis_step();
    Word cur;
    for (int t = 1; t <= 12; ++t) {
      cur = g.multiply(cur, step);
      CHECK(g.length(cur) == t * static_cast<int>(step.size()));
    }
  }
  MarkedGroup g = z2z2();
  const Word step = g.axis_step();
  Word cur;
  for (int t = 1; t <= 8; ++t) {
    cur = g.multiply(cur, step);
    CHECK(g.length(cur) == t * 2);
  }
}
