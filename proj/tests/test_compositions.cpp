#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "zeta/compositions.hpp"
#include "zeta/errors.hpp"

using namespace zeta;

namespace {

// Recursive generation by first part; independent of the bitmask order.
void generate(int n, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(prefix);
    return;
  }
  for (int first = 1; first <= n; ++first) {
    prefix.push_back(first);
    generate(n - first, prefix, out);
    prefix.pop_back();
  }
}

std::vector<std::vector<int>> brute(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  generate(n, prefix, out);
  return out;
}

}  // namespace

TEST_CASE("counts") {
  CHECK(composition_count(0) == 1);
  CHECK(composition_count(1) == 1);
  for (int n = 1; n <= 20; ++n) {
    CHECK(composition_count(n) == (std::uint64_t{1} << (n - 1)));
    if (n <= 14) CHECK(brute(n).size() == composition_count(n));
  }
  CHECK(composition_count(62) == (std::uint64_t{1} << 61));
  CHECK_THROWS_AS(composition_count(-1), InvalidArgument);
  CHECK_THROWS_AS(composition_count(63), InvalidArgument);
}

TEST_CASE("index layout") {
  CHECK(decode(5, 0).parts() == std::vector<int>{5});
  CHECK(decode(5, 15).parts() == std::vector<int>{1, 1, 1, 1, 1});
  CHECK(decode(4, 1).parts() == std::vector<int>{1, 3});
  CHECK(decode(4, 4).parts() == std::vector<int>{3, 1});
  CHECK(decode(0, 0).parts().empty());
  CHECK_THROWS_AS(decode(4, 8), InvalidArgument);
}

TEST_CASE("decode is a bijection onto the compositions") {
  for (int n = 1; n <= 12; ++n) {
    std::set<std::vector<int>> seen;
    for (std::uint64_t k = 0; k < composition_count(n); ++k) {
      const Composition c = decode(n, k);
      CHECK(c.sum() == n);
      CHECK(encode(c) == k);
      seen.insert(c.parts());
    }
    const auto all = brute(n);
    CHECK(seen == std::set<std::vector<int>>(all.begin(), all.end()));
  }
}

TEST_CASE("decode_into matches decode") {
  std::vector<int> buf{9, 9, 9};
  for (std::uint64_t k = 0; k < composition_count(10); ++k) {
    decode_into(10, k, buf);
    CHECK(buf == decode(10, k).parts());
  }
}

TEST_CASE("composition validation") {
  CHECK_THROWS_AS(Composition({2, 0, 1}), InvalidArgument);
  CHECK_THROWS_AS(Composition({-1}), InvalidArgument);
  CHECK(Composition({2, 1}).sum() == 3);
}

TEST_CASE("key tuples") {
  const auto t = to_key_tuple(Composition({2, 1, 3}));
  REQUIRE(t.size() == 3);
  CHECK(t[0] == KeyEntry{2, 1});
  CHECK(t[1] == KeyEntry{3, 3});
  CHECK(t[2] == KeyEntry{6, 4});
  // Derived elements of a normal tuple cover each column exactly once.
  for (int n = 1; n <= 9; ++n) {
    for (const auto& c : enumerate(n)) {
      std::vector<int> cover(n + 1, 0);
      for (const auto& e : to_key_tuple(c)) {
        for (int col = e.column; col <= e.row; ++col) ++cover[col];
      }
      CHECK(std::all_of(cover.begin() + 1, cover.end(), [](int v) { return v == 1; }));
    }
  }
}

TEST_CASE("range iteration") {
  const auto r = enumerate(6);
  CHECK(r.size() == 32);
  std::uint64_t expected = 0;
  for (auto it = r.begin(); it != r.end(); ++it, ++expected) {
    CHECK(it.index() == expected);
    CHECK(*it == decode(6, expected));
  }
  CHECK(expected == 32);
  const auto sub = enumerate(6, 5, 9);
  CHECK(sub.size() == 4);
  CHECK(*sub.begin() == decode(6, 5));
  CHECK_THROWS_AS(enumerate(6, 5, 40), InvalidArgument);
  int count0 = 0;
  for (const auto& c : enumerate(0)) count0 += c.size() == 0 ? 1 : 100;
  CHECK(count0 == 1);
}

TEST_CASE("split_range covers the interval in order") {
  for (std::uint64_t total : {0ULL, 1ULL, 7ULL, 1000ULL}) {
    for (unsigned chunks : {1U, 3U, 8U, 2000U}) {
      const auto parts = split_range(total, chunks);
      std::uint64_t at = 0;
      for (const auto& p : parts) {
        CHECK(p.first == at);
        CHECK(p.last > p.first);
        at = p.last;
      }
      CHECK(at == total);
      CHECK(parts.size() <= chunks);
    }
  }
}

TEST_CASE("parallel reduction is deterministic and order preserving") {
  const int n = 14;
  auto seq = [](unsigned threads) {
    return reduce_compositions(
        n, threads, std::vector<std::uint64_t>{},
        [](std::vector<std::uint64_t>& acc, std::uint64_t index, std::span<const int> parts) {
          int s = 0;
          for (int p : parts) s += p;
          if (s == n) acc.push_back(index);
        },
        [](std::vector<std::uint64_t> a, const std::vector<std::uint64_t>& b) {
          a.insert(a.end(), b.begin(), b.end());
          return a;
        });
  };
  const auto one = seq(1);
  REQUIRE(one.size() == composition_count(n));
  for (std::uint64_t k = 0; k < one.size(); ++k) CHECK(one[k] == k);
  CHECK(seq(3) == one);
  CHECK(seq(8) == one);
}

TEST_CASE("exceptions in workers propagate") {
  auto run = [](unsigned threads) {
    return reduce_compositions(
        10, threads, 0,
        [](int&, std::uint64_t index, std::span<const int>) {
          if (index == 300) throw InvalidArgument("boom");
        },
        [](int a, int b) { return a + b; });
  };
  CHECK_THROWS_AS(run(1), InvalidArgument);
  CHECK_THROWS_AS(run(4), InvalidArgument);
}
