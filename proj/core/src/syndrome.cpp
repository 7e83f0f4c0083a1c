#include <algorithm>
#include <bit>
#include <limits>

#include "monogamy/errors.hpp"
#include "monogamy/qkd.hpp"
#include "monogamy/random.hpp"

namespace monogamy {

namespace {

constexpr std::uint64_t kCodeStream = 0xc0de;
constexpr std::size_t kMaxRowsPerChunk = 64;

struct Chunk {
  std::size_t begin = 0;
  std::size_t length = 0;
  std::size_t row_begin = 0;
  std::size_t rows = 0;
  // columns[b] is the parity-check column of string position begin + length - 1 - b,
  // so integer keys compare like the strings they encode.
  std::vector<std::uint64_t> columns;
};

std::vector<Chunk> layout(std::size_t m, std::size_t s, std::uint64_t code_seed) {
  if (m == 0) {
    if (s != 0) throw DimensionError("syndrome: nonzero syndrome length for an empty string");
    return {};
  }
  const std::size_t count = (m + kSyndromeChunk - 1) / kSyndromeChunk;
  std::vector<Chunk> chunks(count);
  for (std::size_t j = 0; j < count; ++j) {
    Chunk& c = chunks[j];
    c.begin = j * kSyndromeChunk;
    c.length = std::min(kSyndromeChunk, m - c.begin);
    c.row_begin = s * c.begin / m;
    const std::size_t row_end = s * (c.begin + c.length) / m;
    c.rows = row_end - c.row_begin;
    if (c.rows > kMaxRowsPerChunk) throw CapacityError("syndrome: more than 64 check rows in one chunk");
    const std::uint64_t mask = c.rows == 64 ? ~0ULL : ((1ULL << c.rows) - 1);
    Rng rng = make_rng(derive_seed(code_seed, kCodeStream, j));
    std::vector<std::uint64_t> by_position(c.length);
    for (auto& col : by_position) col = rng() & mask;
    c.columns.assign(by_position.rbegin(), by_position.rend());
  }
  return chunks;
}

std::uint64_t chunk_key(const BitString& bits, const Chunk& c) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < c.length; ++i) key = (key << 1) | (bits[c.begin + i] & 1U);
  return key;
}

std::uint64_t check(const Chunk& c, std::uint64_t key) {
  std::uint64_t out = 0;
  while (key != 0) {
    out ^= c.columns[static_cast<std::size_t>(std::countr_zero(key))];
    key &= key - 1;
  }
  return out;
}

}  // namespace

BitString toeplitz_hash(const BitString& seed_bits, const BitString& input, std::size_t ell) {
  const std::size_t m = input.size();
  const std::size_t expected = m + ell == 0 ? 0 : m + ell - 1;
  if (seed_bits.size() != expected) throw DimensionError("toeplitz_hash: seed length must be input_len + ell - 1");
  BitString out(ell, 0);
  for (std::size_t j = 0; j < ell; ++j) {
    std::uint8_t bit = 0;
    for (std::size_t i = 0; i < m; ++i) bit ^= seed_bits[j + m - 1 - i] & input[i];
    out[j] = bit & 1U;
  }
  return out;
}

BitString syndrome_encode(const BitString& x, std::size_t s, std::uint64_t code_seed) {
  BitString out(s, 0);
  for (const auto& c : layout(x.size(), s, code_seed)) {
    const std::uint64_t syn = check(c, chunk_key(x, c));
    for (std::size_t r = 0; r < c.rows; ++r) out[c.row_begin + r] = static_cast<std::uint8_t>((syn >> r) & 1U);
  }
  return out;
}

BitString syndrome_decode(const BitString& y, const BitString& syndrome, std::uint64_t code_seed) {
  BitString out = y;
  for (const auto& c : layout(y.size(), syndrome.size(), code_seed)) {
    std::uint64_t wanted = 0;
    for (std::size_t r = 0; r < c.rows; ++r) wanted |= static_cast<std::uint64_t>(syndrome[c.row_begin + r] & 1U) << r;
    const std::uint64_t ykey = chunk_key(y, c);
    const std::uint64_t target = wanted ^ check(c, ykey);
    const std::uint64_t limit = 1ULL << c.length;

    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t w = 0; w <= c.length && best == std::numeric_limits<std::uint64_t>::max(); ++w) {
      if (w == 0) {
        if (target == 0) best = ykey;
        continue;
      }
      // Gosper's hack over all length-bit words of weight w.
      for (std::uint64_t e = (1ULL << w) - 1; e < limit;) {
        if (check(c, e) == target) best = std::min(best, ykey ^ e);
        const std::uint64_t low = e & (~e + 1);
        const std::uint64_t ripple = e + low;
        e = (((ripple ^ e) >> 2) / low) | ripple;
      }
    }
    // The chunk always has a consistent word when the syndrome came from some string.
    if (best == std::numeric_limits<std::uint64_t>::max()) {
      throw ValidationError("syndrome_decode: no word matches the syndrome");
    }
    for (std::size_t i = 0; i < c.length; ++i) {
      out[c.begin + i] = static_cast<std::uint8_t>((best >> (c.length - 1 - i)) & 1U);
    }
  }
  return out;
}

}  // namespace monogamy
