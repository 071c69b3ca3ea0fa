#pragma once

// Compositions of n (ordered tuples of positive parts summing to n), indexed
// by the (n-1)-bit cut mask: bit j of the index set means "cut between
// positions j+1 and j+2", part lengths are the gaps between cuts. Index 0 is
// (n), index 2^(n-1)-1 is (1,...,1). n = 0 has the single empty composition.

#include <cstddef>
#include <cstdint>
#include <exception>
#include <iterator>
#include <span>
#include <thread>
#include <vector>

namespace zeta {

/// Largest n whose index range [0, 2^(n-1)) fits the 64-bit index type.
inline constexpr int kMaxCompositionOrder = 62;

class Composition {
 public:
  Composition() = default;

  /// Throws InvalidArgument if any part is < 1.
  explicit Composition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  std::span<const int> view() const { return parts_; }
  int sum() const;
  std::size_t size() const { return parts_.size(); }

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition&, const Composition&) = default;

 private:
  friend class CompositionRange;
  friend Composition decode(int n, std::uint64_t index);
  std::vector<int> parts_;
};

/// A key element b_{row,column} of a triangular matrix, 1-based.
struct KeyEntry {
  int row;
  int column;
  friend bool operator==(const KeyEntry&, const KeyEntry&) = default;
};

/// Normal tuple of key elements: entry s is (N_s, N_{s-1}+1).
using KeyTuple = std::vector<KeyEntry>;

/// 2^(n-1), or 1 for n = 0. Throws InvalidArgument outside [0, 62].
std::uint64_t composition_count(int n);

Composition decode(int n, std::uint64_t index);
std::uint64_t encode(const Composition& c);

/// Allocation-free decode for hot loops; `parts` is cleared and refilled.
void decode_into(int n, std::uint64_t index, std::vector<int>& parts);

KeyTuple to_key_tuple(const Composition& c);

/// Lazy view over the compositions with indices in [first, last). Holds one
/// decoded composition at a time.
class CompositionRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Composition;
    using difference_type = std::ptrdiff_t;
    using pointer = const Composition*;
    using reference = const Composition&;

    iterator() = default;
    iterator(int n, std::uint64_t index, std::uint64_t last);

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    std::uint64_t index() const { return index_; }

    friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

   private:
    int n_ = 0;
    std::uint64_t index_ = 0;
    std::uint64_t last_ = 0;
    Composition current_;
  };

  CompositionRange(int n, std::uint64_t first, std::uint64_t last);

  iterator begin() const { return {n_, first_, last_}; }
  iterator end() const { return {n_, last_, last_}; }
  std::uint64_t size() const { return last_ - first_; }

 private:
  int n_;
  std::uint64_t first_;
  std::uint64_t last_;
};

CompositionRange enumerate(int n);
CompositionRange enumerate(int n, std::uint64_t first, std::uint64_t last);

struct IndexChunk {
  std::uint64_t first;
  std::uint64_t last;
};

/// Splits [0, total) into at most `chunks` contiguous nonempty pieces.
std::vector<IndexChunk> split_range(std::uint64_t total, unsigned chunks);

/// std::thread::hardware_concurrency(), at least 1.
unsigned default_threads();

/// Folds `body(acc, index, parts)` over every composition of n. Each thread
/// owns one contiguous index chunk and a private accumulator; the partial
/// results are merged in chunk order, so the result does not depend on
/// scheduling whenever `merge` is associative.
template <class Acc, class Body, class Merge>
Acc reduce_compositions(int n, unsigned threads, const Acc& identity, Body body, Merge merge) {
  const std::uint64_t total = composition_count(n);
  const auto chunks = split_range(total, threads == 0 ? 1 : threads);
  std::vector<Acc> partial(chunks.size(), identity);
  std::vector<std::exception_ptr> errors(chunks.size());

  auto run_chunk = [&](std::size_t c) {
    try {
      std::vector<int> parts;
      parts.reserve(static_cast<std::size_t>(n));
      for (std::uint64_t k = chunks[c].first; k < chunks[c].last; ++k) {
        decode_into(n, k, parts);
        body(partial[c], k, std::span<const int>(parts));
      }
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };

  {
    std::vector<std::jthread> workers;
    workers.reserve(chunks.size());
    for (std::size_t c = 1; c < chunks.size(); ++c) workers.emplace_back(run_chunk, c);
    if (!chunks.empty()) run_chunk(0);
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Acc result = identity;
  for (auto& p : partial) result = merge(std::move(result), std::move(p));
  return result;
}

}  // namespace zeta
