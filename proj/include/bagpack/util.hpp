#pragma once

#include <charconv>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "bagpack/error.hpp"

namespace bagpack {

// Deterministic RNG wrapper. Bounded draws and shuffling are implemented by
// hand so that output streams depend only on the seed, not on the standard
// library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Unbiased draw in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = gen_();
        while (v >= limit) v = gen_();
        return v % n;
    }

private:
    std::mt19937_64 gen_;
};

// Fisher-Yates, fixed traversal order.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

// Shortest round-trip decimal form.
inline std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw Error("number formatting failed");
    return std::string(buf, end);
}

inline double parse_double(std::string_view s, const std::string& what) {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw InputError("invalid number '" + std::string(s) + "' in " + what);
    return v;
}

inline std::uint64_t parse_uint(std::string_view s, const std::string& what) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw InputError("invalid count '" + std::string(s) + "' in " + what);
    return v;
}

inline std::vector<std::string_view> split_on(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

}  // namespace bagpack
