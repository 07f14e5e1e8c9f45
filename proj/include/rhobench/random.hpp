#pragma once

#include <bit>
#include <cstdint>
#include <string_view>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

namespace rhobench
{
    // Boost distributions produce the same stream on every platform, unlike <random>'s.
    using Rng = boost::random::mt19937_64;

    namespace seeding
    {
        constexpr std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9e3779b97f4a7c15ULL;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        }

        constexpr std::uint64_t combine(std::uint64_t seed, std::uint64_t value)
        {
            return splitmix64(seed ^ splitmix64(value));
        }

        constexpr std::uint64_t fnv1a(std::string_view s)
        {
            std::uint64_t h = 0xcbf29ce484222325ULL;
            for (const char c : s)
            {
                h ^= static_cast<unsigned char>(c);
                h *= 0x100000001b3ULL;
            }
            return h;
        }

        inline std::uint64_t key(std::uint64_t v) { return v; }
        inline std::uint64_t key(std::int64_t v) { return static_cast<std::uint64_t>(v); }
        inline std::uint64_t key(int v) { return static_cast<std::uint64_t>(static_cast<std::int64_t>(v)); }
        inline std::uint64_t key(double v) { return std::bit_cast<std::uint64_t>(v); }
        inline std::uint64_t key(std::string_view v) { return fnv1a(v); }

        /// Order-sensitive 64-bit hash of a tuple of keys.
        template <typename... Ts>
        std::uint64_t hash(const Ts &...values)
        {
            std::uint64_t h = 0x6a09e667f3bcc909ULL;
            ((h = combine(h, key(values))), ...);
            return h;
        }
    }

    inline double uniform(Rng &rng, double lo, double hi)
    {
        return boost::random::uniform_real_distribution<double>(lo, hi)(rng);
    }

    inline std::int64_t uniform_int(Rng &rng, std::int64_t lo, std::int64_t hi)
    {
        return boost::random::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    }

    inline double standard_normal(Rng &rng)
    {
        return boost::random::normal_distribution<double>(0.0, 1.0)(rng);
    }
}
