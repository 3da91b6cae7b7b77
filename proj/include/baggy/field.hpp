#pragma once

#include <cstdint>
#include <ostream>

namespace baggy {

/// Element of the prime field modulo p = 2^61 - 1.
class Fp {
public:
    static constexpr std::uint64_t kModulus = (std::uint64_t{1} << 61) - 1;

    constexpr Fp() = default;
    constexpr explicit Fp(std::uint64_t v) : v_(reduce(v)) {}

    static constexpr Fp zero() { return Fp(); }
    static constexpr Fp one() { return Fp(1); }

    constexpr std::uint64_t value() const { return v_; }

    constexpr Fp& operator+=(Fp o) {
        v_ += o.v_;
        if (v_ >= kModulus) {
            v_ -= kModulus;
        }
        return *this;
    }
    constexpr Fp& operator-=(Fp o) {
        v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + kModulus - o.v_;
        return *this;
    }
    constexpr Fp& operator*=(Fp o) {
        unsigned __int128 prod = static_cast<unsigned __int128>(v_) * o.v_;
        std::uint64_t lo = static_cast<std::uint64_t>(prod) & kModulus;
        std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
        v_ = reduce(lo + hi);
        return *this;
    }

    friend constexpr Fp operator+(Fp a, Fp b) { return a += b; }
    friend constexpr Fp operator-(Fp a, Fp b) { return a -= b; }
    friend constexpr Fp operator*(Fp a, Fp b) { return a *= b; }
    constexpr bool operator==(const Fp&) const = default;

    constexpr Fp pow(std::uint64_t e) const {
        Fp base = *this;
        Fp acc = one();
        while (e != 0) {
            if (e & 1U) {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    /// Multiplicative inverse; zero maps to zero.
    constexpr Fp inverse() const { return pow(kModulus - 2); }

    friend std::ostream& operator<<(std::ostream& os, Fp x) { return os << x.v_; }

private:
    static constexpr std::uint64_t reduce(std::uint64_t v) {
        v = (v & kModulus) + (v >> 61);
        return v >= kModulus ? v - kModulus : v;
    }

    std::uint64_t v_ = 0;
};

} // namespace baggy
