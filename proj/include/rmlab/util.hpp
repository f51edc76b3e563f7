#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace rmlab {

// ---------------------------------------------------------------------------
// Errors. Refuted mathematical claims are ordinary return values, never
// exceptions; these types cover genuine failures only.
// ---------------------------------------------------------------------------

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid construction data: bad modulus, violated family condition, ...
struct validation_error : error {
  using error::error;
};

// An exact enumeration would exceed the configured budget.
struct budget_error : error {
  using error::error;
};

struct io_error : error {
  using error::error;
};

// ---------------------------------------------------------------------------
// Exact integer helpers. Counts of codewords/vectors stay below 2^63 at the
// scales this library accepts; intermediate products in the rank-weight
// formula can be larger, so those run in 128 bits.
// ---------------------------------------------------------------------------

using int128 = __int128;
using uint128 = unsigned __int128;

inline std::string to_string_u128(uint128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

inline std::string to_string_i128(int128 v) {
  if (v < 0) return "-" + to_string_u128(static_cast<uint128>(-v));
  return to_string_u128(static_cast<uint128>(v));
}

inline uint128 ipow128(uint64_t base, unsigned exp) {
  uint128 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    uint128 next = r * base;
    if (base != 0 && next / base != r) throw error("ipow128 overflow");
    r = next;
  }
  return r;
}

inline uint64_t ipow64(uint64_t base, unsigned exp) {
  uint128 r = ipow128(base, exp);
  if (r > UINT64_MAX) throw error("ipow64 overflow");
  return static_cast<uint64_t>(r);
}

// Gaussian binomial [m k]_q: the number of k-dimensional subspaces of an
// m-dimensional F_q-space. Exact, via the q-Pascal recurrence.
inline uint128 gauss_binom(int m, int k, uint64_t q) {
  if (k < 0 || k > m) return 0;
  if (k == 0 || k == m) return 1;
  std::vector<uint128> row(static_cast<size_t>(k) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= m; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) {
      // [i j] = [i-1 j-1] + q^j [i-1 j]
      uint128 t = row[j] * ipow128(q, static_cast<unsigned>(j));
      row[j] = row[j - 1] + t;
      if (row[j] < row[j - 1]) throw error("gauss_binom overflow");
    }
  }
  return row[k];
}

// ---------------------------------------------------------------------------
// Run configuration shared by every enumeration-backed operation.
// ---------------------------------------------------------------------------

struct RunConfig {
  // Max rank computations (codes) / vectors visited (subspaces) per call.
  std::uint64_t budget = std::uint64_t{1} << 24;
  // Worker threads for the big enumeration loops. Results are required to be
  // independent of this value.
  int workers = 1;
};

// Deterministic chunked reduction over [0, total). Each worker owns a
// contiguous range; partial results merge in worker order.
template <class Local, class Body, class Merge>
Local parallel_index_reduce(std::uint64_t total, int workers, Local init,
                            Body&& body, Merge&& merge) {
  if (workers <= 1 || total < 1024) {
    Local acc = init;
    for (std::uint64_t i = 0; i < total; ++i) body(acc, i);
    return acc;
  }
  int nw = workers;
  std::vector<Local> partial(static_cast<size_t>(nw), init);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nw));
  std::uint64_t chunk = (total + static_cast<std::uint64_t>(nw) - 1) /
                        static_cast<std::uint64_t>(nw);
  for (int w = 0; w < nw; ++w) {
    std::uint64_t lo = chunk * static_cast<std::uint64_t>(w);
    std::uint64_t hi = std::min(total, lo + chunk);
    pool.emplace_back([&, w, lo, hi]() {
      Local& acc = partial[static_cast<size_t>(w)];
      for (std::uint64_t i = lo; i < hi; ++i) body(acc, i);
    });
  }
  for (auto& t : pool) t.join();
  Local acc = init;
  for (int w = 0; w < nw; ++w) merge(acc, partial[static_cast<size_t>(w)]);
  return acc;
}

inline int gcd_int(int a, int b) {
  while (b != 0) {
    int t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

}  // namespace rmlab
