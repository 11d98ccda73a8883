#include "corpusforge/util.hpp"

#include <bit>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "corpusforge/error.hpp"

namespace corpusforge {

std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t state) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        state ^= p[i];
        state *= 0x100000001b3ull;
    }
    return state;
}

std::uint64_t fnv1a64(std::string_view data) { return fnv1a64(data.data(), data.size()); }

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t state = a;
    splitmix64(state);
    state ^= b;
    return splitmix64(state);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix_seed(mix_seed(a, b), c);
}

Rng::Rng(std::uint64_t seed) {
    for (auto& s : s_) {
        s = splitmix64(seed);
    }
}

std::uint64_t Rng::next() {
    const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) {
        throw DomainError("Rng::below: n must be positive");
    }
    if ((n & (n - 1)) == 0) {
        return next() & (n - 1);
    }
    // Bitmask rejection keeps the draw unbiased and platform-independent.
    const int bits = 64 - std::countl_zero(n - 1);
    const std::uint64_t mask = (bits >= 64) ? ~0ull : ((1ull << bits) - 1);
    while (true) {
        const std::uint64_t x = next() & mask;
        if (x < n) {
            return x;
        }
    }
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open file: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw Error("read failed: " + path.string());
    }
    return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open file for writing: " + path.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
        throw Error("write failed: " + path.string());
    }
}

std::size_t effective_threads(std::size_t requested) {
    std::size_t n = requested;
    if (n == 0) {
        n = std::thread::hardware_concurrency();
        if (n == 0) {
            n = 1;
        }
    }
    if (const char* cap = std::getenv("CORPUSFORGE_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(cap, &end, 10);
        if (end != cap && v > 0) {
            n = std::min<std::size_t>(n, v);
        }
    }
    return std::max<std::size_t>(n, 1);
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
    threads = std::min(std::max<std::size_t>(threads, 1), n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += threads) {
                    fn(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

MissingFilesError::MissingFilesError(std::vector<std::filesystem::path> paths)
    : Error([&paths] {
          std::string msg = "missing input files:";
          for (const auto& p : paths) {
              msg += "\n  " + p.string();
          }
          return msg;
      }()),
      paths_(std::move(paths)) {}

StageError::StageError(std::string stage, const std::string& cause)
    : Error("stage " + stage + " failed: " + cause), stage_(std::move(stage)) {}

} // namespace corpusforge
