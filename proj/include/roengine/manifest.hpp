#pragma once

// Canonical manifest format (.ttl-ro): a restricted Turtle/TriG dialect.
//
//   @base <ro-id/> .
//   @prefix name: <namespace> .          fixed order, see vocab::prefixes
//
//   subject  predicate  object ;         one triple per line, sorted by the
//           predicate  object .          printed (subject, predicate, object)
//
//   <annotation-id/body> {                one block per annotation body,
//   ...triples...                         ordered by annotation id
//   }
//
// Only IRIs, prefixed names, `a` and string literals with an optional
// datatype are supported. Blank nodes, collections and numeric shorthand
// literals are rejected.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "roengine/error.hpp"
#include "roengine/model.hpp"
#include "roengine/research_object.hpp"
#include "roengine/vocabulary.hpp"

namespace roengine {

inline constexpr std::string_view manifest_extension = ".ttl-ro";

namespace manifest_detail {

inline std::string format_double(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline std::optional<double> parse_double(std::string_view text) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view text) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return v;
}

inline void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

inline std::string quote(std::string_view text) {
    std::string out = "\"";
    for (const char c : text) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20 || c == 0x7F) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(static_cast<unsigned char>(c)));
                out += buf;
            } else {
                out += c;
            }
        }
    }
    out += '"';
    return out;
}

inline bool is_local_name(std::string_view local) {
    static const std::regex pattern(R"(^[A-Za-z0-9_]([A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?$)");
    return !local.empty() && std::regex_match(local.begin(), local.end(), pattern);
}

/// Prints IRIs and literals in their canonical compact form.
class TermPrinter {
public:
    explicit TermPrinter(std::string base) : base_(std::move(base)) {}

    std::string iri(const std::string& value, bool predicate_position = false) const {
        if (predicate_position && value == vocab::rdf_type) return "a";
        for (const auto& p : vocab::prefixes) {
            if (value.size() > p.ns.size() && value.compare(0, p.ns.size(), p.ns) == 0) {
                const auto local = std::string_view(value).substr(p.ns.size());
                if (is_local_name(local)) return std::string(p.name) + ":" + std::string(local);
            }
        }
        if (value.size() > base_.size() && value.compare(0, base_.size(), base_) == 0) {
            const auto rest = std::string_view(value).substr(base_.size());
            if (!Iri::is_valid(rest)) return "<" + std::string(rest) + ">";
        }
        return "<" + value + ">";
    }

    std::string term(const Term& t) const {
        if (const auto* i = std::get_if<Iri>(&t)) return iri(i->str());
        const auto& lit = std::get<Literal>(t);
        auto out = quote(lit.text);
        if (!lit.datatype.empty()) out += "^^" + iri(lit.datatype);
        return out;
    }

private:
    std::string base_;
};

struct PrintedTriple {
    std::string subject;
    std::string predicate;
    std::string object;

    friend auto operator<=>(const PrintedTriple&, const PrintedTriple&) = default;
};

inline void write_triples(std::ostringstream& out, std::vector<PrintedTriple> triples) {
    std::sort(triples.begin(), triples.end());
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const auto& t = triples[i];
        const bool first = i == 0 || triples[i - 1].subject != t.subject;
        const bool last = i + 1 == triples.size() || triples[i + 1].subject != t.subject;
        if (first) {
            if (i != 0) out << '\n';
            out << t.subject << "  " << t.predicate << "  " << t.object;
        } else {
            out << "        " << t.predicate << "  " << t.object;
        }
        out << (last ? " .\n" : " ;\n");
    }
}

inline std::string body_graph_name(const Annotation& a) { return a.id.str() + "/body"; }

/// Statements describing the object itself (everything except annotation bodies).
inline std::vector<Statement> describe(const ResearchObject& ro) {
    using namespace vocab;
    std::vector<Statement> out;
    const auto& id = ro.id;
    auto es_term = [](std::string_view name) { return expand("es", name); };
    out.push_back(make_statement(id, rdf_type, ro_research_object));
    out.push_back(make_statement(id, es_ro_type, es_term(to_string(ro.ro_type))));
    out.push_back(make_statement(id, es_status, es_term(to_string(ro.status))));
    for (const auto& c : ro.creators) out.push_back(make_literal_statement(id, dc_creator, c));
    out.push_back(make_literal_statement(id, dc_created, format_timestamp(ro.created), xsd_date_time));
    out.push_back(make_literal_statement(id, dc_modified, format_timestamp(ro.modified), xsd_date_time));

    for (const auto& r : ro.resources) {
        out.push_back(make_statement(id, ore_aggregates, r.id.str()));
        out.push_back(make_statement(r.id, expand("es", "kind"), es_term(to_string(r.kind))));
        out.push_back(make_literal_statement(r.id, dc_format, r.media_type));
        out.push_back(make_literal_statement(r.id, es_size_bytes, std::to_string(r.size_bytes), xsd_integer));
        out.push_back(make_literal_statement(
            r.id, r.content.kind == ContentRef::Kind::Inline ? es_content : es_location, r.content.value));
    }

    const auto& es = ro.es_meta;
    const auto xsd_double = expand("xsd", "double");
    if (es.geospatial) {
        out.push_back(make_literal_statement(id, es_west, format_double(es.geospatial->west), xsd_double));
        out.push_back(make_literal_statement(id, es_south, format_double(es.geospatial->south), xsd_double));
        out.push_back(make_literal_statement(id, es_east, format_double(es.geospatial->east), xsd_double));
        out.push_back(make_literal_statement(id, es_north, format_double(es.geospatial->north), xsd_double));
    }
    if (es.time_period) {
        out.push_back(
            make_literal_statement(id, es_period_start, format_timestamp(es.time_period->start), xsd_date_time));
        out.push_back(make_literal_statement(id, es_period_end, format_timestamp(es.time_period->end), xsd_date_time));
    }
    if (es.ipr) {
        out.push_back(make_literal_statement(id, es_copyright_start_year, std::to_string(es.ipr->start_year),
                                             xsd_integer));
        if (!es.ipr->copyright_holder.empty())
            out.push_back(make_literal_statement(id, es_copyright_holder, es.ipr->copyright_holder));
        if (!es.ipr->license.empty()) out.push_back(make_literal_statement(id, dc_license, es.ipr->license));
        if (!es.ipr->attribution.empty())
            out.push_back(make_literal_statement(id, es_attribution, es.ipr->attribution));
    }
    if (es.access) {
        out.push_back(make_statement(id, es_access_level, es_term(to_string(es.access->level))));
        if (!es.access->text.empty()) out.push_back(make_literal_statement(id, es_access_policy, es.access->text));
    }
    if (!es.discipline.empty()) out.push_back(make_literal_statement(id, es_discipline, es.discipline));
    if (es.doi) out.push_back(make_literal_statement(id, es_doi, *es.doi));
    if (!es.community.empty()) out.push_back(make_literal_statement(id, es_community, es.community));

    for (const auto& a : ro.annotations) {
        out.push_back(make_statement(a.id, rdf_type, oa_annotation));
        out.push_back(make_statement(a.id, oa_has_target, a.target.str()));
        out.push_back(make_statement(a.id, oa_has_body, body_graph_name(a)));
        out.push_back(make_literal_statement(a.id, dc_creator, a.creator));
        out.push_back(make_literal_statement(a.id, dc_created, format_timestamp(a.created), xsd_date_time));
        out.push_back(make_statement(a.id, es_provenance, es_term(to_string(a.provenance))));
    }
    return out;
}

}  // namespace manifest_detail

/// Every statement the object asserts: its description plus all annotation bodies.
inline std::vector<Statement> all_statements(const ResearchObject& ro) {
    auto out = manifest_detail::describe(ro);
    for (const auto& a : ro.annotations) out.insert(out.end(), a.body.begin(), a.body.end());
    return out;
}

/// Deterministic UTF-8 serialization; equal objects give identical bytes.
inline std::string serialize_manifest(const ResearchObject& ro) {
    using namespace manifest_detail;
    const std::string base = ro.id.str() + "/";
    const TermPrinter printer(base);

    auto print_all = [&](const std::vector<Statement>& statements) {
        std::vector<PrintedTriple> printed;
        printed.reserve(statements.size());
        for (const auto& s : statements) {
            printed.push_back({printer.iri(s.subject.str()), printer.iri(s.predicate.str(), true), printer.term(s.object)});
        }
        return printed;
    };

    std::ostringstream out;
    out << "@base <" << base << "> .\n";
    std::size_t width = 0;
    for (const auto& p : vocab::prefixes) width = std::max(width, p.name.size());
    for (const auto& p : vocab::prefixes) {
        out << "@prefix " << p.name << ':' << std::string(width - p.name.size() + 1, ' ') << '<' << p.ns << "> .\n";
    }
    out << '\n';
    write_triples(out, print_all(describe(ro)));

    std::vector<const Annotation*> annotations;
    for (const auto& a : ro.annotations) annotations.push_back(&a);
    std::sort(annotations.begin(), annotations.end(), [](const auto* a, const auto* b) { return a->id < b->id; });
    for (const auto* a : annotations) {
        out << '\n' << printer.iri(body_graph_name(*a)) << " {\n";
        write_triples(out, print_all(a->body));
        out << "}\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace manifest_detail {

struct Token {
    enum class Kind { IriRef, PrefixedName, A, String, Datatype, Dot, Semicolon, Comma, OpenBrace, CloseBrace,
                      Directive, End };
    Kind kind = Kind::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view input) : input_(input) {}

    Token next() {
        skip_space();
        Token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= input_.size()) return t;
        const char c = input_[pos_];
        switch (c) {
        case '.': advance(); t.kind = Token::Kind::Dot; return t;
        case ';': advance(); t.kind = Token::Kind::Semicolon; return t;
        case ',': advance(); t.kind = Token::Kind::Comma; return t;
        case '{': advance(); t.kind = Token::Kind::OpenBrace; return t;
        case '}': advance(); t.kind = Token::Kind::CloseBrace; return t;
        case '<': t.kind = Token::Kind::IriRef; t.text = read_iri_ref(t); return t;
        case '"': t.kind = Token::Kind::String; t.text = read_string(t); return t;
        case '^':
            if (pos_ + 1 < input_.size() && input_[pos_ + 1] == '^') {
                advance();
                advance();
                t.kind = Token::Kind::Datatype;
                return t;
            }
            throw SyntaxError(t.line, t.column, "unexpected '^'");
        case '@': {
            advance();
            t.kind = Token::Kind::Directive;
            t.text = read_word();
            return t;
        }
        default: break;
        }
        auto word = read_word();
        if (word.empty()) throw SyntaxError(t.line, t.column, std::string("unexpected character '") + c + "'");
        if (word == "a") {
            t.kind = Token::Kind::A;
            return t;
        }
        if (word.find(':') == std::string::npos) {
            throw SyntaxError(t.line, t.column, "expected a prefixed name, got '" + word + "'");
        }
        t.kind = Token::Kind::PrefixedName;
        t.text = std::move(word);
        return t;
    }

private:
    void advance() {
        if (input_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < input_.size()) {
            const char c = input_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (pos_ < input_.size() && input_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::string read_word() {
        std::string out;
        while (pos_ < input_.size()) {
            const char c = input_[pos_];
            const bool word_char = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                                   c == '_' || c == '-' || c == ':' || c == '.' ||
                                   static_cast<unsigned char>(c) >= 0x80;
            if (!word_char) break;
            // A '.' ends the word unless another name character follows it.
            if (c == '.') {
                if (pos_ + 1 >= input_.size()) break;
                const char n = input_[pos_ + 1];
                const bool continues = (n >= 'a' && n <= 'z') || (n >= 'A' && n <= 'Z') || (n >= '0' && n <= '9') ||
                                       n == '_' || n == '-' || n == ':';
                if (!continues) break;
            }
            out += c;
            advance();
        }
        return out;
    }

    std::string read_iri_ref(const Token& start) {
        advance();  // <
        std::string out;
        while (true) {
            if (pos_ >= input_.size() || input_[pos_] == '\n') {
                throw SyntaxError(start.line, start.column, "unterminated IRI reference");
            }
            const char c = input_[pos_];
            if (c == '>') {
                advance();
                return out;
            }
            if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"') {
                throw SyntaxError(line_, column_, "invalid character in IRI reference");
            }
            out += c;
            advance();
        }
    }

    std::uint32_t read_hex(std::size_t digits) {
        std::uint32_t v = 0;
        for (std::size_t i = 0; i < digits; ++i) {
            if (pos_ >= input_.size()) throw SyntaxError(line_, column_, "truncated escape");
            const char c = input_[pos_];
            v <<= 4;
            if (c >= '0' && c <= '9') v |= static_cast<std::uint32_t>(c - '0');
            else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint32_t>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') v |= static_cast<std::uint32_t>(c - 'A' + 10);
            else throw SyntaxError(line_, column_, "invalid hex digit in escape");
            advance();
        }
        return v;
    }

    std::string read_string(const Token& start) {
        advance();  // "
        std::string out;
        while (true) {
            if (pos_ >= input_.size() || input_[pos_] == '\n') {
                throw SyntaxError(start.line, start.column, "unterminated string literal");
            }
            const char c = input_[pos_];
            if (c == '"') {
                advance();
                return out;
            }
            if (c == '\\') {
                advance();
                if (pos_ >= input_.size()) throw SyntaxError(line_, column_, "truncated escape");
                const char e = input_[pos_];
                advance();
                switch (e) {
                case 'n': out += '\n'; break;
                case 'r': out += '\r'; break;
                case 't': out += '\t'; break;
                case 'b': out += '\b'; break;
                case 'f': out += '\f'; break;
                case '"': out += '"'; break;
                case '\'': out += '\''; break;
                case '\\': out += '\\'; break;
                case 'u': append_utf8(out, read_hex(4)); break;
                case 'U': append_utf8(out, read_hex(8)); break;
                default: throw SyntaxError(line_, column_ - 1, std::string("unknown escape '\\") + e + "'");
                }
                continue;
            }
            out += c;
            advance();
        }
    }

    std::string_view input_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

struct ParsedDocument {
    std::vector<Statement> default_graph;
    std::map<std::string, std::vector<Statement>> graphs;
};

class Parser {
public:
    explicit Parser(std::string_view input) : lexer_(input) { bump(); }

    ParsedDocument parse() {
        ParsedDocument doc;
        while (tok_.kind != Token::Kind::End) {
            if (tok_.kind == Token::Kind::Directive) {
                directive();
                continue;
            }
            const Token subject_token = tok_;
            const auto subject = subject_iri();
            if (tok_.kind == Token::Kind::OpenBrace) {
                bump();
                if (doc.graphs.contains(subject.str())) {
                    throw SyntaxError(subject_token.line, subject_token.column, "duplicate graph block");
                }
                auto& graph = doc.graphs[subject.str()];
                while (tok_.kind != Token::Kind::CloseBrace) {
                    if (tok_.kind == Token::Kind::End) throw error("unterminated graph block");
                    const auto s = subject_iri();
                    triples(s, graph);
                }
                bump();
            } else {
                triples(subject, doc.default_graph);
            }
        }
        return doc;
    }

private:
    void bump() { tok_ = lexer_.next(); }

    SyntaxError error(const std::string& message) const { return SyntaxError(tok_.line, tok_.column, message); }

    void expect(Token::Kind kind, const char* what) {
        if (tok_.kind != kind) throw error(std::string("expected ") + what);
        bump();
    }

    void directive() {
        const Token start = tok_;
        if (start.text == "base") {
            bump();
            if (tok_.kind != Token::Kind::IriRef) throw error("@base expects an IRI reference");
            base_ = tok_.text;
            bump();
            expect(Token::Kind::Dot, "'.' after @base");
        } else if (start.text == "prefix") {
            bump();
            if (tok_.kind != Token::Kind::PrefixedName || tok_.text.back() != ':' ||
                tok_.text.find(':') != tok_.text.size() - 1) {
                throw error("@prefix expects a name ending in ':'");
            }
            const auto name = tok_.text.substr(0, tok_.text.size() - 1);
            bump();
            if (tok_.kind != Token::Kind::IriRef) throw error("@prefix expects an IRI reference");
            prefixes_[name] = resolve_ref(tok_.text);
            bump();
            expect(Token::Kind::Dot, "'.' after @prefix");
        } else {
            throw SyntaxError(start.line, start.column, "unknown directive @" + start.text);
        }
    }

    std::string resolve_ref(const std::string& ref) const {
        if (Iri::is_valid(ref)) return ref;
        return base_ + ref;
    }

    Iri make_iri(const std::string& text) const {
        if (!Iri::is_valid(text)) throw error("not an absolute IRI: '" + text + "'");
        return Iri(text);
    }

    Iri iri_token() {
        Iri out;
        if (tok_.kind == Token::Kind::IriRef) {
            out = make_iri(resolve_ref(tok_.text));
        } else if (tok_.kind == Token::Kind::PrefixedName) {
            const auto colon = tok_.text.find(':');
            const auto prefix = tok_.text.substr(0, colon);
            const auto it = prefixes_.find(prefix);
            if (it == prefixes_.end()) throw error("undeclared prefix '" + prefix + "'");
            out = make_iri(it->second + tok_.text.substr(colon + 1));
        } else {
            throw error("expected an IRI");
        }
        bump();
        return out;
    }

    Iri subject_iri() {
        if (tok_.kind == Token::Kind::String) throw error("literal in subject position");
        return iri_token();
    }

    Iri verb() {
        if (tok_.kind == Token::Kind::A) {
            bump();
            return Iri(vocab::rdf_type);
        }
        if (tok_.kind == Token::Kind::String) throw error("literal in predicate position");
        return iri_token();
    }

    Term object() {
        if (tok_.kind == Token::Kind::String) {
            Literal lit{tok_.text, {}};
            bump();
            if (tok_.kind == Token::Kind::Datatype) {
                bump();
                lit.datatype = iri_token().str();
            }
            return lit;
        }
        if (tok_.kind == Token::Kind::A) throw error("'a' in object position");
        return iri_token();
    }

    void triples(const Iri& subject, std::vector<Statement>& out) {
        while (true) {
            const auto p = verb();
            out.push_back({subject, p, object()});
            while (tok_.kind == Token::Kind::Comma) {
                bump();
                out.push_back({subject, p, object()});
            }
            if (tok_.kind == Token::Kind::Semicolon) {
                bump();
                if (tok_.kind == Token::Kind::Dot) break;
                continue;
            }
            break;
        }
        expect(Token::Kind::Dot, "'.' to end the statement");
    }

    Lexer lexer_;
    Token tok_;
    std::string base_;
    std::map<std::string, std::string> prefixes_;
};

/// Groups statements by subject and pops them as they are interpreted, so
/// anything left over at the end is an unrecognized statement.
class StatementPool {
public:
    explicit StatementPool(const std::vector<Statement>& statements) {
        for (const auto& s : statements) by_subject_[s.subject.str()].push_back(s);
    }

    std::vector<Term> take(const Iri& subject, const std::string& predicate) {
        std::vector<Term> out;
        const auto it = by_subject_.find(subject.str());
        if (it == by_subject_.end()) return out;
        auto& list = it->second;
        for (auto s = list.begin(); s != list.end();) {
            if (s->predicate.str() == predicate) {
                out.push_back(s->object);
                s = list.erase(s);
            } else {
                ++s;
            }
        }
        return out;
    }

    std::vector<Iri> subjects_with(const std::string& predicate, const std::string& object) const {
        std::vector<Iri> out;
        for (const auto& [subject, list] : by_subject_) {
            for (const auto& s : list) {
                if (s.predicate.str() == predicate && term_text(s.object) == object && !is_literal(s.object)) {
                    out.push_back(s.subject);
                    break;
                }
            }
        }
        return out;
    }

    std::optional<Statement> leftover() const {
        for (const auto& [subject, list] : by_subject_) {
            if (!list.empty()) return list.front();
        }
        return std::nullopt;
    }

private:
    std::map<std::string, std::vector<Statement>> by_subject_;
};

[[noreturn]] inline void model_error(const std::string& message) { fail(ErrorCode::ModelError, message); }

inline const Term& single(const std::vector<Term>& terms, const Iri& subject, std::string_view what) {
    if (terms.size() != 1) {
        model_error(subject.str() + ": expected exactly one " + std::string(what) + ", found " +
                    std::to_string(terms.size()));
    }
    return terms.front();
}

inline std::optional<Term> optional_one(const std::vector<Term>& terms, const Iri& subject, std::string_view what) {
    if (terms.size() > 1) model_error(subject.str() + ": more than one " + std::string(what));
    if (terms.empty()) return std::nullopt;
    return terms.front();
}

inline const Literal& as_literal(const Term& t, std::string_view what) {
    if (!is_literal(t)) model_error(std::string(what) + " must be a literal");
    return std::get<Literal>(t);
}

inline const Iri& as_iri(const Term& t, std::string_view what) {
    if (is_literal(t)) model_error(std::string(what) + " must be an IRI");
    return std::get<Iri>(t);
}

inline Timestamp as_timestamp(const Term& t, std::string_view what) {
    const auto ts = parse_timestamp(as_literal(t, what).text);
    if (!ts) model_error(std::string(what) + " is not an ISO-8601 UTC timestamp");
    return *ts;
}

inline double as_double(const Term& t, std::string_view what) {
    const auto v = parse_double(as_literal(t, what).text);
    if (!v) model_error(std::string(what) + " is not a number");
    return *v;
}

template <typename Enum, std::size_t N>
Enum as_enum(const Term& t, const EnumNames<Enum, N>& names, std::string_view what) {
    const auto& iri = as_iri(t, what).str();
    const auto ns = vocab::expand("es", "");
    if (iri.starts_with(ns)) {
        if (const auto e = enum_from_name(names, std::string_view(iri).substr(ns.size()))) return *e;
    }
    model_error(std::string(what) + ": unknown value " + iri);
}

}  // namespace manifest_detail

/// Inverse of serialize_manifest(). Throws SyntaxError (with position) for
/// malformed text and Error{ModelError} for statement sets that do not
/// describe a valid research object.
inline ResearchObject parse_manifest(std::string_view text) {
    using namespace manifest_detail;
    using namespace vocab;
    auto doc = Parser(text).parse();
    StatementPool pool(doc.default_graph);

    const auto roots = pool.subjects_with(rdf_type, ro_research_object);
    if (roots.size() != 1) {
        model_error("manifest must describe exactly one ro:ResearchObject, found " + std::to_string(roots.size()));
    }
    ResearchObject ro;
    ro.id = roots.front();
    const auto& id = ro.id;
    pool.take(id, rdf_type);
    ro.ro_type = as_enum(single(pool.take(id, es_ro_type), id, "roType"), ro_type_names, "roType");
    ro.status = as_enum(single(pool.take(id, es_status), id, "status"), lifecycle_status_names, "status");
    for (const auto& c : pool.take(id, dc_creator)) ro.creators.push_back(as_literal(c, "creator").text);
    ro.created = as_timestamp(single(pool.take(id, dc_created), id, "created"), "created");
    ro.modified = as_timestamp(single(pool.take(id, dc_modified), id, "modified"), "modified");

    for (const auto& agg : pool.take(id, ore_aggregates)) {
        Resource r;
        r.id = as_iri(agg, "aggregated resource");
        r.kind = as_enum(single(pool.take(r.id, expand("es", "kind")), r.id, "kind"), resource_kind_names, "kind");
        r.media_type = as_literal(single(pool.take(r.id, dc_format), r.id, "format"), "format").text;
        const auto size = parse_int<std::uint64_t>(
            as_literal(single(pool.take(r.id, es_size_bytes), r.id, "sizeBytes"), "sizeBytes").text);
        if (!size) model_error(r.id.str() + ": sizeBytes is not a nonnegative integer");
        r.size_bytes = *size;
        const auto inline_content = pool.take(r.id, es_content);
        const auto location = pool.take(r.id, es_location);
        if (inline_content.size() + location.size() != 1) {
            model_error(r.id.str() + ": expected exactly one of es:content / es:location");
        }
        r.content = inline_content.empty()
                        ? ContentRef::locator(as_literal(location.front(), "location").text)
                        : ContentRef::inline_text(as_literal(inline_content.front(), "content").text);
        ro.resources.push_back(std::move(r));
    }

    auto& es = ro.es_meta;
    const auto west = optional_one(pool.take(id, es_west), id, "west");
    const auto south = optional_one(pool.take(id, es_south), id, "south");
    const auto east = optional_one(pool.take(id, es_east), id, "east");
    const auto north = optional_one(pool.take(id, es_north), id, "north");
    if (west || south || east || north) {
        if (!(west && south && east && north)) model_error(id.str() + ": incomplete geospatial extent");
        es.geospatial = GeoExtent{as_double(*west, "west"), as_double(*south, "south"), as_double(*east, "east"),
                                  as_double(*north, "north")};
    }
    const auto start = optional_one(pool.take(id, es_period_start), id, "periodStart");
    const auto end = optional_one(pool.take(id, es_period_end), id, "periodEnd");
    if (start || end) {
        if (!(start && end)) model_error(id.str() + ": incomplete time period");
        es.time_period = TimePeriod{as_timestamp(*start, "periodStart"), as_timestamp(*end, "periodEnd")};
    }
    const auto year = optional_one(pool.take(id, es_copyright_start_year), id, "copyrightStartYear");
    const auto holder = optional_one(pool.take(id, es_copyright_holder), id, "copyrightHolder");
    const auto license = optional_one(pool.take(id, dc_license), id, "license");
    const auto attribution = optional_one(pool.take(id, es_attribution), id, "attribution");
    if (year || holder || license || attribution) {
        if (!year) model_error(id.str() + ": intellectual property statements without a copyright start year");
        IntellectualProperty ipr;
        const auto y = parse_int<int>(as_literal(*year, "copyrightStartYear").text);
        if (!y) model_error(id.str() + ": copyrightStartYear is not an integer");
        ipr.start_year = *y;
        if (holder) ipr.copyright_holder = as_literal(*holder, "copyrightHolder").text;
        if (license) ipr.license = as_literal(*license, "license").text;
        if (attribution) ipr.attribution = as_literal(*attribution, "attribution").text;
        es.ipr = std::move(ipr);
    }
    const auto level = optional_one(pool.take(id, es_access_level), id, "accessLevel");
    const auto policy = optional_one(pool.take(id, es_access_policy), id, "accessPolicy");
    if (policy && !level) model_error(id.str() + ": access policy text without an access level");
    if (level) {
        es.access = AccessPolicy{as_enum(*level, access_level_names, "accessLevel"),
                                 policy ? as_literal(*policy, "accessPolicy").text : std::string{}};
    }
    if (const auto d = optional_one(pool.take(id, es_discipline), id, "discipline"))
        es.discipline = as_literal(*d, "discipline").text;
    if (const auto d = optional_one(pool.take(id, es_doi), id, "doi")) es.doi = as_literal(*d, "doi").text;
    if (const auto c = optional_one(pool.take(id, es_community), id, "community"))
        es.community = as_literal(*c, "community").text;

    std::set<std::string> used_graphs;
    for (const auto& aid : pool.subjects_with(rdf_type, oa_annotation)) {
        pool.take(aid, rdf_type);
        Annotation a;
        a.id = aid;
        a.target = as_iri(single(pool.take(aid, oa_has_target), aid, "hasTarget"), "hasTarget");
        const auto body_name = as_iri(single(pool.take(aid, oa_has_body), aid, "hasBody"), "hasBody").str();
        a.creator = as_literal(single(pool.take(aid, dc_creator), aid, "creator"), "creator").text;
        a.created = as_timestamp(single(pool.take(aid, dc_created), aid, "created"), "created");
        a.provenance = as_enum(single(pool.take(aid, es_provenance), aid, "provenance"), provenance_names, "provenance");
        const auto graph = doc.graphs.find(body_name);
        if (graph == doc.graphs.end() || graph->second.empty()) {
            model_error(aid.str() + ": annotation body graph <" + body_name + "> is missing or empty");
        }
        if (!used_graphs.insert(body_name).second) model_error(aid.str() + ": body graph shared by two annotations");
        a.body = graph->second;
        ro.annotations.push_back(std::move(a));
    }
    for (const auto& [name, statements] : doc.graphs) {
        if (!used_graphs.contains(name)) model_error("graph <" + name + "> does not belong to any annotation");
    }
    if (const auto extra = pool.leftover()) {
        model_error("unrecognized statement about " + extra->subject.str() + " with predicate " +
                    extra->predicate.str());
    }
    const auto violations = validate(ro);
    if (!violations.empty()) {
        model_error(violations.front().field + ": " + violations.front().rule);
    }
    return ro;
}

}  // namespace roengine
