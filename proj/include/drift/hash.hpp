#pragma once

#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>

namespace drift {

// 64-bit FNV-1a. Stable across platforms, used for vocabulary and model identity.
class Fnv1a {
public:
    void update(std::span<const std::byte> bytes) {
        for (auto b : bytes) {
            state_ ^= static_cast<std::uint64_t>(b);
            state_ *= 0x100000001b3ULL;
        }
    }
    void update(std::string_view s) { update(std::as_bytes(std::span(s.data(), s.size()))); }

    template <typename T>
    void update_value(const T& v) {
        update(std::as_bytes(std::span(&v, 1)));
    }

    std::uint64_t digest() const { return state_; }

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace drift
