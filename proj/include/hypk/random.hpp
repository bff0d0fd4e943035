#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace hypk {

// SplitMix64 step; also used as the seed mixer for per-path streams.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ (Blackman & Vigna). State seeded through SplitMix64 so a
// single 64-bit seed expands to a full, never-all-zero state.
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_next(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform on [0,1), 53-bit resolution
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform on (-1,1)
    double uniform_sym() { return 2.0 * uniform01() - 1.0; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::array<std::uint64_t, 4> state_{};
};

// Derives the stream seed for one path. Mixing the path index through the
// SplitMix64 finalizer keeps streams decorrelated for any (seed, index) grid.
inline std::uint64_t path_stream_seed(std::uint64_t seed, std::uint64_t path_index) {
    std::uint64_t s = seed ^ (0x632BE59BD9B4E019ULL + path_index * 0x9E3779B97F4A7C15ULL);
    std::uint64_t mixed = splitmix64_next(s);
    return mixed ^ seed;
}

// Marsaglia-Tsang ziggurat tables for the standard normal, 128 strips.
// Shared, immutable after construction.
class ZigguratTables {
  public:
    static const ZigguratTables& instance() {
        static const ZigguratTables tables;
        return tables;
    }

    std::uint32_t kn[128];
    double wn[128];
    double fn[128];
    static constexpr double kTailStart = 3.442619855899;

  private:
    ZigguratTables() {
        const double m1 = 2147483648.0;
        const double vn = 9.91256303526217e-3;
        double dn = kTailStart;
        double tn = dn;
        const double q = vn / std::exp(-0.5 * dn * dn);
        kn[0] = static_cast<std::uint32_t>((dn / q) * m1);
        kn[1] = 0;
        wn[0] = q / m1;
        wn[127] = dn / m1;
        fn[0] = 1.0;
        fn[127] = std::exp(-0.5 * dn * dn);
        for (int i = 126; i >= 1; --i) {
            dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
            kn[i + 1] = static_cast<std::uint32_t>((dn / tn) * m1);
            tn = dn;
            fn[i] = std::exp(-0.5 * dn * dn);
            wn[i] = dn / m1;
        }
    }
};

// Standard normal draws by the ziggurat method, one independent stream per
// path. Fully deterministic given the stream seed.
class NormalStream {
  public:
    explicit NormalStream(std::uint64_t stream_seed)
        : eng_(stream_seed), tables_(ZigguratTables::instance()) {}

    double next() {
        for (;;) {
            const std::int32_t hz = static_cast<std::int32_t>(
                static_cast<std::uint32_t>(eng_.next() >> 32));
            const std::uint32_t iz = static_cast<std::uint32_t>(hz) & 127u;
            const std::uint32_t mag =
                hz < 0 ? static_cast<std::uint32_t>(-static_cast<std::int64_t>(hz))
                       : static_cast<std::uint32_t>(hz);
            if (mag < tables_.kn[iz]) return hz * tables_.wn[iz];
            if (iz == 0) {
                // tail beyond kTailStart, Marsaglia's exponential wrap
                double x, y;
                do {
                    x = -std::log(positive_uniform()) / ZigguratTables::kTailStart;
                    y = -std::log(positive_uniform());
                } while (y + y < x * x);
                const double t = ZigguratTables::kTailStart + x;
                return hz > 0 ? t : -t;
            }
            const double x = hz * tables_.wn[iz];
            if (tables_.fn[iz] + eng_.uniform01() * (tables_.fn[iz - 1] - tables_.fn[iz]) <
                std::exp(-0.5 * x * x))
                return x;
        }
    }

    Xoshiro256pp& engine() { return eng_; }

  private:
    double positive_uniform() {
        // uniform on (0,1]; the log above must not see zero
        return (static_cast<double>(eng_.next() >> 11) + 1.0) * 0x1.0p-53;
    }

    Xoshiro256pp eng_;
    const ZigguratTables& tables_;
};

// Marsaglia polar method; retained as an independent sampler to cross-check
// the ziggurat in tests.
class PolarNormalStream {
  public:
    explicit PolarNormalStream(std::uint64_t stream_seed) : eng_(stream_seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = eng_.uniform_sym();
            v = eng_.uniform_sym();
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

  private:
    Xoshiro256pp eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace hypk
