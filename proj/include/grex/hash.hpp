#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

namespace grex {

/// 128-bit digest used as a color/signature identifier throughout the
/// refinement engines. Collisions are treated as negligible at corpus scale;
/// the WL engine additionally offers an exact interned mode for
/// cross-validation on small graphs.
struct Digest128 {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    friend auto operator<=>(const Digest128&, const Digest128&) = default;
};

struct Digest128Hash {
    std::size_t operator()(const Digest128& d) const noexcept {
        return static_cast<std::size_t>(d.hi * 0x9e3779b97f4a7c15ULL ^ d.lo);
    }
};

/// MurmurHash3 x64/128 over an arbitrary byte range.
Digest128 murmur3_128(const void* data, std::size_t len, std::uint64_t seed = 0);

inline Digest128 hash_bytes(std::span<const unsigned char> bytes, std::uint64_t seed = 0) {
    return murmur3_128(bytes.data(), bytes.size(), seed);
}

inline Digest128 hash_string(const std::string& s, std::uint64_t seed = 0) {
    return murmur3_128(s.data(), s.size(), seed);
}

/// Append-only byte buffer for building canonical encodings before hashing.
class ByteSink {
public:
    void clear() { buf_.clear(); }

    void put_u8(std::uint8_t v) { buf_.push_back(v); }

    void put_u32(std::uint32_t v) {
        unsigned char b[4];
        std::memcpy(b, &v, 4);
        buf_.insert(buf_.end(), b, b + 4);
    }

    void put_u64(std::uint64_t v) {
        unsigned char b[8];
        std::memcpy(b, &v, 8);
        buf_.insert(buf_.end(), b, b + 8);
    }

    void put_digest(const Digest128& d) {
        put_u64(d.hi);
        put_u64(d.lo);
    }

    void put_digests(std::span<const Digest128> ds) {
        static_assert(sizeof(Digest128) == 16);
        const auto* p = reinterpret_cast<const unsigned char*>(ds.data());
        buf_.insert(buf_.end(), p, p + ds.size() * sizeof(Digest128));
    }

    const std::vector<unsigned char>& bytes() const { return buf_; }

    Digest128 digest(std::uint64_t seed = 0) const {
        return murmur3_128(buf_.data(), buf_.size(), seed);
    }

private:
    std::vector<unsigned char> buf_;
};

}  // namespace grex
