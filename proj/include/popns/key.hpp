#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <functional>
#include <string>
#include <string_view>

namespace popns {

/// Opaque 160-bit key produced by the namespace digest.
class Key {
public:
    static constexpr std::size_t kSize = 20;
    using Bytes = std::array<std::uint8_t, kSize>;

    Key() = default;
    explicit Key(const Bytes& bytes) : bytes_(bytes) {}

    /// SHA-1 of `text`.
    static Key of(std::string_view text);

    const Bytes& bytes() const { return bytes_; }
    bool empty() const;
    std::string hex() const;

    friend auto operator<=>(const Key&, const Key&) = default;

private:
    Bytes bytes_{};
};

} // namespace popns

template <>
struct std::hash<popns::Key> {
    std::size_t operator()(const popns::Key& k) const noexcept
    {
        std::size_t h = 0;
        std::memcpy(&h, k.bytes().data(), sizeof h);
        return h;
    }
};
