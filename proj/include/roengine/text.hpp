#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <unicode/brkiter.h>
#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "roengine/error.hpp"

namespace roengine::text {

inline std::string to_utf8(const icu::UnicodeString& s) {
    std::string out;
    s.toUTF8String(out);
    return out;
}

inline icu::UnicodeString from_utf8(std::string_view s) {
    return icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<std::int32_t>(s.size())));
}

inline std::string nfc(std::string_view s) {
    UErrorCode status = U_ZERO_ERROR;
    const auto* normalizer = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) fail(ErrorCode::InvalidArgument, "ICU NFC normalizer unavailable");
    auto out = normalizer->normalize(from_utf8(s), status);
    if (U_FAILURE(status)) fail(ErrorCode::InvalidArgument, "text cannot be normalized");
    return to_utf8(out);
}

inline std::string lower(std::string_view s) {
    auto u = from_utf8(s);
    u.toLower(icu::Locale::getRoot());
    return to_utf8(u);
}

inline std::size_t code_points(std::string_view s) {
    return static_cast<std::size_t>(from_utf8(s).countChar32());
}

struct Token {
    std::string surface;
    std::string lower;
    std::size_t sentence = 0;
    bool sentence_start = false;
    bool capitalized = false;
    bool numeric = false;
    /// Punctuation (other than hyphens) separates this token from the previous one.
    bool after_break = false;
};

namespace detail {

inline std::unique_ptr<icu::BreakIterator> make_iterator(bool sentences) {
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::BreakIterator> it(sentences
                                               ? icu::BreakIterator::createSentenceInstance(icu::Locale::getRoot(), status)
                                               : icu::BreakIterator::createWordInstance(icu::Locale::getRoot(), status));
    if (U_FAILURE(status) || !it) fail(ErrorCode::InvalidArgument, "ICU break iterator unavailable");
    return it;
}

inline bool is_break_segment(const icu::UnicodeString& segment) {
    for (std::int32_t i = 0; i < segment.length();) {
        const UChar32 c = segment.char32At(i);
        if (!u_isUWhiteSpace(c) && c != '-' && c != 0x2010 && c != 0x2011) return true;
        i += U16_LENGTH(c);
    }
    return false;
}

}  // namespace detail

/// Words of `input` (after NFC) with sentence and punctuation structure.
/// Word boundaries follow Unicode segmentation rules.
inline std::vector<Token> tokenize(std::string_view input) {
    std::vector<Token> out;
    const auto u = from_utf8(nfc(input));
    thread_local const auto sentences = detail::make_iterator(true);
    thread_local const auto word_it = detail::make_iterator(false);
    sentences->setText(u);
    std::size_t sentence = 0;
    for (std::int32_t s_begin = sentences->first(), s_end = sentences->next(); s_end != icu::BreakIterator::DONE;
         s_begin = s_end, s_end = sentences->next(), ++sentence) {
        const icu::UnicodeString sentence_text(u, s_begin, s_end - s_begin);
        word_it->setText(sentence_text);
        bool first = true;
        bool pending_break = false;
        for (std::int32_t w_begin = word_it->first(), w_end = word_it->next(); w_end != icu::BreakIterator::DONE;
             w_begin = w_end, w_end = word_it->next()) {
            const icu::UnicodeString segment(sentence_text, w_begin, w_end - w_begin);
            const auto rule = word_it->getRuleStatus();
            if (rule == UBRK_WORD_NONE) {
                pending_break = pending_break || detail::is_break_segment(segment);
                continue;
            }
            Token t;
            t.surface = to_utf8(segment);
            auto low = segment;
            low.toLower(icu::Locale::getRoot());
            t.lower = to_utf8(low);
            t.sentence = sentence;
            t.sentence_start = first;
            const UChar32 c0 = segment.char32At(0);
            t.capitalized = u_isupper(c0) || u_istitle(c0);
            t.numeric = rule >= UBRK_WORD_NUMBER && rule < UBRK_WORD_NUMBER_LIMIT;
            t.after_break = !first && pending_break;
            out.push_back(std::move(t));
            first = false;
            pending_break = false;
        }
    }
    return out;
}

/// Lowercased word sequence, as used for matching lexicon entries.
inline std::vector<std::string> words(std::string_view input) {
    std::vector<std::string> out;
    for (auto& t : tokenize(input)) out.push_back(std::move(t.lower));
    return out;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace roengine::text
