#include "zeta/compositions.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "zeta/errors.hpp"

namespace zeta {

namespace {

void check_order(int n) {
  if (n < 0 || n > kMaxCompositionOrder) {
    throw InvalidArgument("composition order n=" + std::to_string(n) + " outside [0, " +
                          std::to_string(kMaxCompositionOrder) + "]");
  }
}

}  // namespace

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_) {
    if (p < 1) throw InvalidArgument("composition part " + std::to_string(p) + " is not positive");
  }
}

int Composition::sum() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::uint64_t composition_count(int n) {
  check_order(n);
  return n == 0 ? 1 : std::uint64_t{1} << (n - 1);
}

void decode_into(int n, std::uint64_t index, std::vector<int>& parts) {
  parts.clear();
  if (n == 0) return;
  int len = 1;
  for (int j = 0; j < n - 1; ++j) {
    if ((index >> j) & 1U) {
      parts.push_back(len);
      len = 1;
    } else {
      ++len;
    }
  }
  parts.push_back(len);
}

Composition decode(int n, std::uint64_t index) {
  if (index >= composition_count(n)) {
    throw InvalidArgument("composition index " + std::to_string(index) + " out of range for n=" +
                          std::to_string(n));
  }
  Composition c;
  decode_into(n, index, c.parts_);
  return c;
}

std::uint64_t encode(const Composition& c) {
  std::uint64_t index = 0;
  int prefix = 0;
  const auto& parts = c.parts();
  for (std::size_t s = 0; s + 1 < parts.size(); ++s) {
    prefix += parts[s];
    index |= std::uint64_t{1} << (prefix - 1);
  }
  return index;
}

KeyTuple to_key_tuple(const Composition& c) {
  KeyTuple keys;
  keys.reserve(c.size());
  int prev = 0;
  for (int part : c.parts()) {
    keys.push_back({prev + part, prev + 1});
    prev += part;
  }
  return keys;
}

CompositionRange::iterator::iterator(int n, std::uint64_t index, std::uint64_t last)
    : n_(n), index_(index), last_(last) {
  if (index_ < last_) decode_into(n_, index_, current_.parts_);
}

CompositionRange::iterator& CompositionRange::iterator::operator++() {
  ++index_;
  if (index_ < last_) decode_into(n_, index_, current_.parts_);
  return *this;
}

CompositionRange::CompositionRange(int n, std::uint64_t first, std::uint64_t last)
    : n_(n), first_(first), last_(last) {
  const std::uint64_t total = composition_count(n);
  if (first > last || last > total) {
    throw InvalidArgument("index range [" + std::to_string(first) + ", " + std::to_string(last) +
                          ") outside [0, " + std::to_string(total) + ")");
  }
}

CompositionRange enumerate(int n) { return {n, 0, composition_count(n)}; }

CompositionRange enumerate(int n, std::uint64_t first, std::uint64_t last) { return {n, first, last}; }

std::vector<IndexChunk> split_range(std::uint64_t total, unsigned chunks) {
  std::vector<IndexChunk> out;
  if (total == 0) return out;
  const std::uint64_t k = std::min<std::uint64_t>(chunks == 0 ? 1 : chunks, total);
  const std::uint64_t base = total / k;
  const std::uint64_t extra = total % k;
  std::uint64_t first = 0;
  for (std::uint64_t c = 0; c < k; ++c) {
    const std::uint64_t len = base + (c < extra ? 1 : 0);
    out.push_back({first, first + len});
    first += len;
  }
  return out;
}

unsigned default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace zeta
