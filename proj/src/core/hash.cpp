#include "pillars/core/hash.hpp"

#include <openssl/evp.h>

#include <stdexcept>
#include <vector>

namespace pillars {

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[md[i] >> 4];
        out += kHex[md[i] & 0xF];
    }
    return out;
}

std::string base64_encode(std::string_view data) {
    std::vector<unsigned char> out(4 * ((data.size() + 2) / 3) + 1);
    const int n = EVP_EncodeBlock(out.data(), reinterpret_cast<const unsigned char*>(data.data()), int(data.size()));
    return std::string(reinterpret_cast<const char*>(out.data()), std::size_t(n));
}

std::optional<std::string> base64_decode(std::string_view text) {
    std::string in;
    in.reserve(text.size());
    for (char c : text)
        if (c != '\n' && c != '\r' && c != ' ') in += c;
    if (in.size() % 4 != 0) return std::nullopt;
    std::vector<unsigned char> out(3 * (in.size() / 4) + 1);
    const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(in.data()), int(in.size()));
    if (n < 0) return std::nullopt;
    std::size_t len = std::size_t(n);
    // EVP_DecodeBlock counts padding as zero bytes.
    if (in.ends_with("==")) len -= 2;
    else if (in.ends_with("=")) len -= 1;
    return std::string(reinterpret_cast<const char*>(out.data()), len);
}

}  // namespace pillars
