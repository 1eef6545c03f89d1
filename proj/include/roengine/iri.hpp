#pragma once

#include <compare>
#include <functional>
#include <string>
#include <string_view>

#include "roengine/error.hpp"

namespace roengine {

/// Absolute identifier. Equality is exact text equality; no normalization.
class Iri {
public:
    Iri() = default;

    explicit Iri(std::string value) : value_(std::move(value)) {
        if (!is_valid(value_)) {
            fail(ErrorCode::InvalidArgument, "not an absolute IRI: '" + value_ + "'");
        }
    }

    static bool is_valid(std::string_view text) noexcept {
        if (text.empty()) return false;
        const auto colon = text.find(':');
        if (colon == std::string_view::npos || colon == 0) return false;
        if (!is_alpha(text[0])) return false;
        for (std::size_t i = 1; i < colon; ++i) {
            const char c = text[i];
            if (!(is_alpha(c) || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.')) return false;
        }
        for (const char c : text) {
            const auto u = static_cast<unsigned char>(c);
            if (u <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
                c == '\\' || c == '^' || c == '`') {
                return false;
            }
        }
        return true;
    }

    const std::string& str() const noexcept { return value_; }
    bool empty() const noexcept { return value_.empty(); }

    bool starts_with(std::string_view prefix) const noexcept { return value_.starts_with(prefix); }

    friend bool operator==(const Iri&, const Iri&) = default;
    friend auto operator<=>(const Iri&, const Iri&) = default;

private:
    static constexpr bool is_alpha(char c) noexcept { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

    std::string value_;
};

}  // namespace roengine

template <>
struct std::hash<roengine::Iri> {
    std::size_t operator()(const roengine::Iri& iri) const noexcept { return std::hash<std::string>{}(iri.str()); }
};
