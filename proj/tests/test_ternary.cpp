#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "support/naive.hpp"
#include "trif/rng.hpp"
#include "trif/ternary.hpp"

using namespace trif;

namespace {

TernaryCode code_of(const std::vector<std::string>& ws) {
  std::vector<TernaryWord> v;
  for (const std::string& s : ws) v.push_back(TernaryWord::from_string(s));
  return TernaryCode(std::move(v));
}

std::vector<std::string> strings_of(const TernaryCode& c) {
  std::vector<std::string> out;
  for (const TernaryWord& w : c) out.push_back(w.to_string());
  return out;
}

TernaryWord random_word(int n, Rng& rng) {
  TernaryWord w(n);
  for (int i = 0; i < n; ++i) w.set(i, int(rng.below(3)));
  return w;
}

}  // namespace

TEST_CASE("word string round trip and accessors") {
  TernaryWord w = TernaryWord::from_string("0120021");
  CHECK(w.size() == 7);
  CHECK(w.to_string() == "0120021");
  CHECK(w.get(0) == 0);
  CHECK(w.get(2) == 2);
  w.set(2, 1);
  CHECK(w.to_string() == "0110021");
  CHECK_THROWS_AS(TernaryWord::from_string("0130"), Error);
  CHECK_THROWS_AS(TernaryWord(65), Error);
  CHECK(TernaryWord::from_string("").size() == 0);
}

TEST_CASE("packed comparison is string lexicographic order") {
  Rng rng(7);
  for (int n : {1, 5, 31, 32, 33, 55, 64}) {
    for (int rep = 0; rep < 200; ++rep) {
      TernaryWord a = random_word(n, rng), b = random_word(n, rng);
      CHECK((a < b) == (a.to_string() < b.to_string()));
      CHECK((a == b) == (a.to_string() == b.to_string()));
    }
  }
}

TEST_CASE("code sorts, deduplicates, enforces uniform length") {
  TernaryCode c = code_of({"21", "00", "21", "10"});
  CHECK(c.size() == 3);
  CHECK(strings_of(c) == std::vector<std::string>{"00", "10", "21"});
  std::vector<TernaryWord> ragged{TernaryWord::from_string("00"),
                                  TernaryWord::from_string("000")};
  CHECK_THROWS_AS(TernaryCode(std::move(ragged)), Error);
}

TEST_CASE("trifference counting matches the naive oracle") {
  Rng rng(11);
  for (int n : {1, 3, 17, 32, 33, 64}) {
    for (int rep = 0; rep < 300; ++rep) {
      TernaryWord x = random_word(n, rng), y = random_word(n, rng), z = random_word(n, rng);
      int expect = naive::triple_count(x.to_string(), y.to_string(), z.to_string());
      CHECK(triffer_count(x, y, z) == expect);
      CHECK(std::popcount(triffer_positions(x, y, z)) == expect);
    }
  }
}

TEST_CASE("minimum triple trifference and witness order") {
  TernaryCode c = code_of({"00", "11", "22", "01"});
  TrifferenceReport rep = min_triple_trifference(c);
  REQUIRE(rep.min_count.has_value());
  CHECK(*rep.min_count == 0);
  REQUIRE(rep.witness.has_value());
  // sorted order is 00,01,11,22; the first triple (00,01,11) already misses
  CHECK(rep.witness->word[0].to_string() == "00");
  CHECK(rep.witness->word[1].to_string() == "01");
  CHECK(rep.witness->word[2].to_string() == "11");
  CHECK_FALSE(is_m_trifferent(c, 1).ok);

  TernaryCode canonical = code_of({"000", "111", "222"});
  CHECK(*min_triple_trifference(canonical).min_count == 3);
  CHECK(is_m_trifferent(canonical, 3).ok);
  CHECK_FALSE(is_m_trifferent(canonical, 4).ok);

  TernaryCode tiny = code_of({"00", "11"});
  CHECK_FALSE(min_triple_trifference(tiny).min_count.has_value());
  CHECK(is_m_trifferent(tiny, 99).ok);  // vacuous below three words
}

TEST_CASE("is_m_trifferent agrees with the naive oracle on random codes") {
  Rng rng(23);
  for (int rep = 0; rep < 150; ++rep) {
    int n = 2 + int(rng.below(6));
    int size = 3 + int(rng.below(5));
    std::vector<TernaryWord> ws;
    for (int i = 0; i < size; ++i) ws.push_back(random_word(n, rng));
    TernaryCode c(std::move(ws));
    for (int m = 1; m <= n; ++m)
      CHECK(is_m_trifferent(c, m).ok == naive::is_m_trifferent(strings_of(c), m));
  }
}

TEST_CASE("symmetries preserve every triple count") {
  Rng rng(31);
  for (int rep = 0; rep < 50; ++rep) {
    int n = 3 + int(rng.below(5));
    std::vector<TernaryWord> ws;
    for (int i = 0; i < 5; ++i) ws.push_back(random_word(n, rng));
    TernaryCode c(std::move(ws));
    // random permutation + per-coordinate symbol relabeling
    CodeSymmetry g;
    g.perm_to.resize(std::size_t(n));
    for (int i = 0; i < n; ++i) g.perm_to[std::size_t(i)] = i;
    for (int i = n - 1; i > 0; --i)
      std::swap(g.perm_to[std::size_t(i)], g.perm_to[rng.below(std::uint64_t(i) + 1)]);
    for (int i = 0; i < n; ++i) {
      std::array<std::uint8_t, 3> p{0, 1, 2};
      for (int j = 2; j > 0; --j) std::swap(p[std::size_t(j)], p[rng.below(std::uint64_t(j) + 1)]);
      g.symbol_perm.push_back(p);
    }
    TernaryCode mapped = apply_symmetry(c, g);
    REQUIRE(mapped.size() == c.size());
    auto before = min_triple_trifference(c), after = min_triple_trifference(mapped);
    CHECK(before.min_count == after.min_count);
  }
}

TEST_CASE("repetition lift multiplies trifference counts") {
  TernaryCode c = code_of({"000", "111", "222"});
  TernaryCode lifted = repetition_lift(c, 2);
  CHECK(lifted.word_length() == 6);
  CHECK(*min_triple_trifference(lifted).min_count == 6);
  CHECK_THROWS_AS(repetition_lift(code_of({"000"}), 30), Error);  // 3*30 > 64

  Rng rng(37);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<TernaryWord> ws;
    for (int i = 0; i < 4; ++i) ws.push_back(random_word(6, rng));
    TernaryCode base(std::move(ws));
    auto rep0 = min_triple_trifference(base);
    if (base.size() < 3) continue;
    TernaryCode l3 = repetition_lift(base, 3);
    CHECK(*min_triple_trifference(l3).min_count == 3 * *rep0.min_count);
  }
}

TEST_CASE("deleting one coordinate of an m-trifferent code keeps m-1") {
  // 2-trifferent witness of size 6 at n = 5 from the published table family
  TernaryCode c = code_of({"00000", "00111", "11022", "12201", "21210", "22122"});
  REQUIRE(is_m_trifferent(c, 2).ok);
  for (int i = 0; i < 5; ++i) {
    TernaryCode d = delete_coordinates(c, {i});
    CHECK(d.size() == c.size());
    CHECK(is_m_trifferent(d, 1).ok);
  }
  // collision rejection
  TernaryCode twin = code_of({"01", "02"});
  CHECK_THROWS_AS(delete_coordinates(twin, {1}), Error);
}

TEST_CASE("majority puncture keeps at least two thirds and stays m-trifferent") {
  TernaryCode c = code_of({"00000", "00111", "11022", "12201", "21210", "22122"});
  REQUIRE(is_m_trifferent(c, 2).ok);
  for (int i = 0; i < 5; ++i) {
    TernaryCode p = puncture_majority(c, i);
    CHECK(p.size() >= 4);  // ceil(2*6/3)
    CHECK(p.word_length() == 4);
    CHECK(is_m_trifferent(p, 2).ok);
  }
}
