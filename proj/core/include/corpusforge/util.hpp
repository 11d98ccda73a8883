#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

namespace corpusforge {

// 64-bit FNV-1a; used for content hashes in manifests and record headers.
std::uint64_t fnv1a64(std::string_view data);
std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t state = 0xcbf29ce484222325ull);

// splitmix64 step; also the seed mixer for derived generators.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c);

// xoshiro256++; fully specified bit arithmetic so streams are identical
// across platforms and compilers (std distributions are not).
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();
    // Unbiased uniform draw in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n);
    // Uniform in [0, 1) with 53 random bits.
    double unit();

  private:
    std::uint64_t s_[4];
};

std::string read_file(const std::filesystem::path& path);  // throws Error
void write_file(const std::filesystem::path& path, std::string_view content);

// Worker count: `requested` (0 = hardware), capped by CORPUSFORGE_THREADS.
std::size_t effective_threads(std::size_t requested);

// Runs fn(i) for i in [0, n) across workers. fn must only touch its own
// slot; results are then independent of scheduling.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

} // namespace corpusforge
