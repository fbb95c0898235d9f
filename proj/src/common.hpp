#pragma once

// Shared plumbing: error type, 128-bit integer aliases, deterministic RNG,
// compensated accumulation and a block-deterministic parallel_for.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace scslab {

using i64  = std::int64_t;
using u64  = std::uint64_t;
using i128 = __int128_t;
using u128 = __uint128_t;

enum class ErrorCode {
    Usage = 1,
    NotInvertible = 2,
    NotCoprime = 3,
    Overflow = 4,
    Domain = 5,
    Budget = 6,
    Io = 7,
    Vanishing = 8,
    MaxDepth = 9,
    Internal = 10,
    DqDoesNotDivideM = 11,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline std::string i128_to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? u128(-(v + 1)) + 1 : u128(v);
    std::string s;
    while (u > 0) {
        s.push_back(char('0' + int(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    return std::string(s.rbegin(), s.rend());
}

// Deterministic 64-bit generator (splitmix64). The sequence is fixed by the
// seed and identical on every platform; reports that quote a seed can be
// reproduced bit-for-bit.
struct Rng {
    u64 state;

    explicit Rng(u64 seed = 0) : state(seed) {}

    u64 next() {
        u64 z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [lo, hi], rejection sampled so the distribution does not
    // depend on the platform's library
    i64 uniform(i64 lo, i64 hi) {
        u64 span = u64(hi - lo) + 1;
        if (span == 0) return i64(next());  // full 64-bit range
        u64 limit = UINT64_MAX - UINT64_MAX % span;
        u64 v;
        do {
            v = next();
        } while (v >= limit);
        return lo + i64(v % span);
    }

    double uniform01() { return double(next() >> 11) * 0x1.0p-53; }
};

// Kahan-Babuska (Neumaier) compensated accumulator.
struct Kahan {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

int thread_budget();          // SCSLAB_THREADS (0/unset = hardware)
void set_thread_budget(int);  // programmatic override, 0 = auto

// Splits [0, n) into contiguous blocks, runs them on worker threads and
// returns. Callers that accumulate must do so per-block and merge in block
// order to stay deterministic.
void parallel_blocks(std::size_t n,
                     const std::function<void(std::size_t lo, std::size_t hi,
                                              std::size_t block)>& fn);

}  // namespace scslab
