#include <doctest.h>

#include "automorphism.hpp"
#include "support.hpp"

using namespace asymwalk;
using namespace asymwalk::testing;

TEST_SUITE("words") {
  TEST_CASE("reduce cancels adjacent inverse pairs") {
    CHECK(Word::reduce(2, std::vector<Letter>{1, -1, 2}) == W("b"));
    CHECK(Word::reduce(2, std::vector<Letter>{}).empty());
    CHECK(Word::reduce(2, std::vector<Letter>{1, 2, -2, -1, 1}) == W("a"));
  }

  TEST_CASE("reduce agrees with the fixpoint oracle on every raw string up to length 6") {
    const int rank = 2;
    const std::vector<Letter> alphabet{1, -1, 2, -2};
    for (std::size_t len = 0; len <= 6; ++len) {
      std::vector<std::size_t> idx(len, 0);
      while (true) {
        std::vector<Letter> raw;
        for (auto i : idx) raw.push_back(alphabet[i]);
        const Word w = Word::reduce(rank, raw);
        const auto expect = fixpoint_reduce(raw);
        REQUIRE(std::vector<Letter>(w.letters().begin(), w.letters().end()) == expect);
        std::size_t pos = 0;
        while (pos < len && ++idx[pos] == alphabet.size()) idx[pos++] = 0;
        if (pos == len) break;
      }
    }
  }

  TEST_CASE("reduce is idempotent and never lengthens") {
    for (int t = 0; t < 500; ++t) {
      const auto raw = random_raw(3, static_cast<std::size_t>(rng()() % 201));
      const Word w = Word::reduce(3, raw);
      CHECK(w.size() <= raw.size());
      CHECK(Word::reduce(3, w.letters()) == w);
    }
  }

  TEST_CASE("generator out of range is rejected") {
    CHECK_THROWS_AS(Word::reduce(2, std::vector<Letter>{3}), Error);
    CHECK_THROWS_AS(Word::parse(2, "c"), Error);
  }

  TEST_CASE("text format round-trips") {
    CHECK(W("1").empty());
    CHECK(W("").str().empty());
    CHECK(W("abAB").str() == "abAB");
    for (int t = 0; t < 200; ++t) {
      const Word w = random_word(4, 30);
      CHECK(Word::parse(4, w.str()) == w);
    }
  }

  TEST_CASE("concat") {
    CHECK(concat(W("a"), W("A")).empty());
    CHECK(concat(W("ab"), W("Ba")) == W("aa"));
    CHECK(concat(Word(2), W("abA")) == W("abA"));
    CHECK_THROWS_AS(concat(W("a", 2), W("a", 3)), Error);
  }

  TEST_CASE("concat is associative and invert is an anti-homomorphism") {
    for (int t = 0; t < 300; ++t) {
      const Word u = random_word(2, 12), v = random_word(2, 12), x = random_word(2, 12);
      CHECK(concat(concat(u, v), x) == concat(u, concat(v, x)));
      CHECK(invert(concat(u, v)) == concat(invert(v), invert(u)));
      CHECK(concat(u, invert(u)).empty());
    }
  }

  TEST_CASE("invert") {
    CHECK(invert(W("ab")) == W("BA"));
    CHECK(invert(Word(2)).empty());
    CHECK(invert(W("aBa")) == W("AbA"));
    for (int t = 0; t < 100; ++t) {
      const Word w = random_word(3, 20);
      CHECK(invert(invert(w)) == w);
    }
  }

  TEST_CASE("cyclic_reduce") {
    auto r = cyclic_reduce(W("abA"));
    CHECK(r.core == W("b"));
    CHECK(r.conjugator == W("a"));
    r = cyclic_reduce(W("ab"));
    CHECK(r.core == W("ab"));
    CHECK(r.conjugator.empty());
    r = cyclic_reduce(W("abbA"));
    CHECK(r.core == W("bb"));
    CHECK(r.conjugator == W("a"));
    CHECK(cyclic_reduce(Word(2)).core.empty());
  }

  TEST_CASE("cyclic_reduce reconstructs and matches the outer-strip oracle") {
    for (int t = 0; t < 500; ++t) {
      const Word w = random_word(2, 16);
      const auto r = cyclic_reduce(w);
      CHECK(r.core.size() <= w.size());
      CHECK(concat(r.conjugator, concat(r.core, invert(r.conjugator))) == w);
      CHECK(is_cyclically_reduced(r.core));
      CHECK(r.core.empty() == w.empty());
      std::vector<Letter> s(w.letters().begin(), w.letters().end());
      while (s.size() >= 2 && s.front() == -s.back()) {
        s.erase(s.begin());
        s.pop_back();
      }
      CHECK(std::vector<Letter>(r.core.letters().begin(), r.core.letters().end()) == s);
    }
  }

  TEST_CASE("power") {
    CHECK(power(W("ab"), 3) == W("ababab"));
    CHECK(power(W("ab"), -1) == W("BA"));
    CHECK(power(W("ab"), 0).empty());
  }

  TEST_CASE("word length cap raises overflow") {
    const std::size_t saved = word_length_cap();
    set_word_length_cap(10);
    CHECK_THROWS_AS(power(W("a"), 11), Error);
    try {
      (void)power(W("a"), 11);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::overflow);
    }
    set_word_length_cap(saved);
  }
}

TEST_SUITE("automorphism") {
  const auto fib = [] { return Automorphism::parse(2, {"ab", "a"}, {"b", "Ba"}, "fib"); };

  TEST_CASE("apply") {
    const Automorphism phi = fib();
    CHECK(phi.apply(W("b")) == W("a"));
    CHECK(phi.apply(W("A")) == W("BA"));
    CHECK(phi.apply(W("ab")) == W("aba"));
  }

  TEST_CASE("apply is a homomorphism") {
    const Automorphism phi = fib();
    for (int t = 0; t < 200; ++t) {
      const Word u = random_word(2, 10), v = random_word(2, 10);
      CHECK(phi.apply(concat(u, v)) == concat(phi.apply(u), phi.apply(v)));
    }
  }

  TEST_CASE("construction verifies inverse images") {
    CHECK_THROWS_AS(Automorphism::parse(2, {"ab", "a"}, {"b", "a"}), Error);
    CHECK_THROWS_AS(Automorphism::parse(2, {"ab", ""}, {"b", "Ba"}), Error);
    CHECK_THROWS_AS(Automorphism::parse(2, {"ab"}, {"b"}), Error);
  }

  TEST_CASE("compose") {
    const Automorphism phi = fib();
    const Automorphism id = Automorphism::identity(2);
    CHECK(compose(id, phi).images() == phi.images());
    CHECK(compose(phi, phi.inverse()).is_identity());
    const Automorphism sq = compose(phi, phi);
    CHECK(sq.images()[0] == W("aba"));
    CHECK(sq.images()[1] == W("ab"));
    CHECK_THROWS_AS(compose(phi, Automorphism::identity(3)), Error);
  }

  TEST_CASE("apply respects composition on random words") {
    const Automorphism phi = fib();
    const Automorphism psi = Automorphism::parse(2, {"aB", "b"}, {"ab", "b"});
    const Automorphism c = compose(phi, psi);
    for (int t = 0; t < 200; ++t) {
      const Word w = random_word(2, 10);
      CHECK(c.apply(w) == phi.apply(psi.apply(w)));
      CHECK(c.inverse().apply(c.apply(w)) == w);
    }
  }

  TEST_CASE("apply_cyclic returns a cyclically reduced image") {
    const Automorphism phi = fib();
    CHECK(phi.apply_cyclic(W("abA")) == W("a"));
  }
}
