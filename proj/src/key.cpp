#include "popns/key.hpp"

#include <openssl/sha.h>

#include <algorithm>

namespace popns {

Key Key::of(std::string_view text)
{
    Bytes out{};
    SHA1(reinterpret_cast<const unsigned char*>(text.data()), text.size(), out.data());
    return Key(out);
}

bool Key::empty() const
{
    return std::all_of(bytes_.begin(), bytes_.end(), [](std::uint8_t b) { return b == 0; });
}

std::string Key::hex() const
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(2 * kSize);
    for (auto b : bytes_) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xF]);
    }
    return s;
}

} // namespace popns
