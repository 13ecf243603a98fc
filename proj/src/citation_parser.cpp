#include "cocite/citation_parser.hpp"

#include "cocite/errors.hpp"
#include "cocite/kv_config.hpp"
#include "cocite/text_util.hpp"

#include <boost/regex/icu.hpp>

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

namespace cocite {

namespace {

using Iter = std::string_view::const_iterator;
using U32Match = boost::match_results<Iter>;

constexpr auto kSyntax = boost::regex::perl | boost::regex::icase;

// Article number list: "5", "10-12", "16, 203 та 215".
constexpr std::string_view kNumberList = "([0-9]+(?:\\s*[-–—]\\s*[0-9]+)?"
                                         "(?:\\s*(?:,|та|і|й)\\s*[0-9]+(?:\\s*[-–—]\\s*[0-9]+)?)*)";

boost::u32regex compile(const std::string& codex, const std::string& pattern, const std::string& full)
{
    try {
        return boost::make_u32regex(full, kSyntax);
    } catch (const std::exception& e) {
        throw PatternError(codex, pattern, e.what());
    }
}

std::string alternation(const std::vector<std::string>& patterns)
{
    std::string out = "(?:";
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        if (i) {
            out += '|';
        }
        out += "(?:" + patterns[i] + ")";
    }
    out += ")";
    return out;
}

struct BuiltinPattern {
    RecordKind kind;
    boost::u32regex re;
};

const std::vector<BuiltinPattern>& builtin_patterns()
{
    static const std::vector<BuiltinPattern> patterns = [] {
        std::vector<BuiltinPattern> out;
        out.push_back({RecordKind::constitutional,
                       boost::make_u32regex("Конституці[яїіює]\\s+України", kSyntax)});
        out.push_back({RecordKind::law_by_number,
                       boost::make_u32regex("Закон(?:у|ом|і)?\\s+України(?:\\s+від\\s+[0-9.]+(?:\\s+року)?)?"
                                            "\\s+№\\s*[0-9]+(?:-[0-9A-Za-zА-Яа-яІіЇїЄє]+)*",
                                            kSyntax)});
        out.push_back({RecordKind::case_reference,
                       boost::make_u32regex("справ[аиіуою]*\\s+№\\s*[0-9][0-9/\\-]*", kSyntax)});
        return out;
    }();
    return patterns;
}

struct Candidate {
    std::size_t start;
    std::size_t end;
    std::size_t codex; // index into entries
    std::string_view numbers;
};

std::vector<std::int32_t> parse_number_list(std::string_view list)
{
    std::vector<std::int32_t> out;
    std::size_t i = 0;
    std::int64_t pending = -1; // left end of a range awaiting its right end
    bool saw_dash = false;
    while (i < list.size()) {
        if (list[i] >= '0' && list[i] <= '9') {
            std::size_t j = i;
            while (j < list.size() && list[j] >= '0' && list[j] <= '9') {
                ++j;
            }
            std::int32_t value = 0;
            auto [ptr, ec] = std::from_chars(list.data() + i, list.data() + j, value);
            bool ok = ec == std::errc{} && value >= 1;
            if (saw_dash && pending >= 1) {
                if (ok) {
                    auto range = expand_range(static_cast<std::int32_t>(pending), value);
                    out.insert(out.end(), range.begin(), range.end());
                } else {
                    out.push_back(static_cast<std::int32_t>(pending));
                }
                pending = -1;
            } else {
                if (pending >= 1) {
                    out.push_back(static_cast<std::int32_t>(pending));
                }
                pending = ok ? value : -1;
            }
            saw_dash = false;
            i = j;
            continue;
        }
        // Any dash between two numbers makes a range.
        if (list[i] == '-') {
            saw_dash = true;
            ++i;
            continue;
        }
        if (list.substr(i, 3) == "–" || list.substr(i, 3) == "—") {
            saw_dash = true;
            i += 3;
            continue;
        }
        if (!is_ascii_space(list[i])) {
            saw_dash = false;
        }
        ++i;
    }
    if (pending >= 1) {
        out.push_back(static_cast<std::int32_t>(pending));
    }
    return out;
}

} // namespace

struct CodexPatternTable::Impl {
    struct CompiledCodex {
        std::vector<boost::u32regex> abbreviations; // anchored, boundary-terminated
    };
    struct MarkerGroup {
        boost::u32regex marker; // markers + number list + trailing space
        std::vector<std::size_t> codices;
    };

    std::vector<CodexPatterns> entries;
    std::vector<CompiledCodex> compiled;
    std::vector<MarkerGroup> groups;

    std::vector<Candidate> candidates(std::string_view text) const;
};

std::vector<Candidate> CodexPatternTable::Impl::candidates(std::string_view text) const
{
    std::vector<Candidate> found;
    const Iter begin = text.begin();
    const Iter end = text.end();
    for (const auto& group : groups) {
        std::size_t pos = 0;
        U32Match m;
        while (pos < text.size() && boost::u32regex_search(begin + pos, end, m, group.marker)) {
            auto mstart = static_cast<std::size_t>(m[0].first - begin);
            auto mend = static_cast<std::size_t>(m[0].second - begin);
            if (mstart > 0 && is_word_char(previous_code_point(text, mstart))) {
                pos = mstart + utf8_sequence_length(text[mstart]);
                continue;
            }
            std::size_t best_len = 0;
            std::size_t best_codex = 0;
            U32Match am;
            for (std::size_t codex : group.codices) {
                for (const auto& abbrev : compiled[codex].abbreviations) {
                    if (boost::u32regex_search(begin + mend, end, am, abbrev,
                                               boost::match_continuous)) {
                        auto len = static_cast<std::size_t>(am[0].second - am[0].first);
                        if (len > best_len) {
                            best_len = len;
                            best_codex = codex;
                        }
                    }
                }
            }
            std::string_view numbers;
            if (best_len > 0) {
                numbers = std::string_view(&*m[1].first, static_cast<std::size_t>(m[1].second - m[1].first));
            }
            if (best_len > 0 && !parse_number_list(numbers).empty()) {
                found.push_back({mstart, mend + best_len, best_codex, numbers});
                pos = mend + best_len;
            } else {
                pos = std::max(mend, mstart + 1);
            }
        }
    }
    // Leftmost first, then longest; overlapping later candidates are dropped.
    std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
        if (a.start != b.start) {
            return a.start < b.start;
        }
        if (a.end != b.end) {
            return a.end > b.end;
        }
        return a.codex < b.codex;
    });
    std::vector<Candidate> chosen;
    std::size_t last_end = 0;
    for (const auto& c : found) {
        if (chosen.empty() || c.start >= last_end) {
            chosen.push_back(c);
            last_end = c.end;
        }
    }
    return chosen;
}

CodexPatternTable::CodexPatternTable() : impl_(std::make_shared<Impl>()) {}

CodexPatternTable::CodexPatternTable(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

CodexPatternTable CodexPatternTable::from_entries(std::vector<CodexPatterns> entries)
{
    std::sort(entries.begin(), entries.end(),
              [](const CodexPatterns& a, const CodexPatterns& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].id == entries[i - 1].id) {
            throw DuplicateIdError(entries[i].id);
        }
    }

    auto impl = std::make_shared<Impl>();
    std::map<std::string, std::size_t> group_of_markers;
    for (std::size_t ci = 0; ci < entries.size(); ++ci) {
        const auto& e = entries[ci];
        if (e.id.empty()) {
            throw ConfigError("codex with empty id");
        }
        if (e.abbreviations.empty() || e.article_markers.empty()) {
            throw ConfigError("codex '" + e.id + "' needs at least one abbrev and one article pattern");
        }
        Impl::CompiledCodex compiled;
        for (const auto& a : e.abbreviations) {
            compiled.abbreviations.push_back(compile(e.id, a, "(?:" + a + ")(?![\\w])"));
        }
        for (const auto& mk : e.article_markers) {
            compile(e.id, mk, "(?:" + mk + ")");
        }
        impl->compiled.push_back(std::move(compiled));

        std::string key = alternation(e.article_markers);
        auto [it, inserted] = group_of_markers.emplace(key, impl->groups.size());
        if (inserted) {
            std::string full = key + "\\s*" + std::string(kNumberList) + "\\s+";
            impl->groups.push_back({compile(e.id, key, full), {}});
        }
        impl->groups[it->second].codices.push_back(ci);
    }
    impl->entries = std::move(entries);
    return CodexPatternTable(std::move(impl));
}

CodexPatternTable CodexPatternTable::load(std::string_view config_text)
{
    std::vector<CodexPatterns> entries;
    for (const auto& section : parse_kv_config(config_text)) {
        if (section.name.empty()) {
            if (!section.values.empty()) {
                throw ParseError(section.values.begin()->second.line,
                                 "keys outside a [codex] block");
            }
            continue;
        }
        if (section.name != "codex") {
            throw ParseError(section.line, "unknown section [" + section.name + "]");
        }
        CodexPatterns e;
        for (const auto& [key, value] : section.values) {
            if (key == "id") {
                e.id = value.as_string();
            } else if (key == "name") {
                e.name = value.as_string();
            } else if (key == "abbrev") {
                e.abbreviations = value.as_list();
            } else if (key == "article") {
                e.article_markers = value.as_list();
            } else {
                throw ParseError(value.line, "unknown key '" + key + "'");
            }
        }
        if (e.id.empty()) {
            throw ParseError(section.line, "[codex] block without id");
        }
        entries.push_back(std::move(e));
    }
    return from_entries(std::move(entries));
}

const std::vector<CodexPatterns>& CodexPatternTable::entries() const { return impl_->entries; }

const CodexPatterns* CodexPatternTable::find(std::string_view codex_id) const
{
    const auto& es = impl_->entries;
    auto it = std::lower_bound(es.begin(), es.end(), codex_id,
                               [](const CodexPatterns& e, std::string_view id) { return e.id < id; });
    return (it != es.end() && it->id == codex_id) ? &*it : nullptr;
}

bool CodexPatternTable::contains(std::string_view codex_id) const { return find(codex_id) != nullptr; }

std::string_view record_kind_name(RecordKind kind)
{
    switch (kind) {
    case RecordKind::codex_article: return "codex_article";
    case RecordKind::case_reference: return "case_reference";
    case RecordKind::constitutional: return "constitutional";
    case RecordKind::law_by_number: return "law_by_number";
    }
    return "?";
}

std::vector<std::int32_t> expand_range(std::int32_t start, std::int32_t end)
{
    if (start <= end && end - start <= kMaxRangeSpan) {
        std::vector<std::int32_t> out;
        out.reserve(static_cast<std::size_t>(end - start + 1));
        for (std::int32_t a = start; a <= end; ++a) {
            out.push_back(a);
        }
        return out;
    }
    return {start};
}

std::vector<CitationRef> extract_citations(std::string_view text, const CodexPatternTable& table)
{
    require_utf8(text);
    std::vector<CitationRef> out;
    const auto& impl = table.impl();
    for (const auto& c : impl.candidates(text)) {
        const auto& codex = impl.entries[c.codex].id;
        std::set<std::int32_t> seen;
        for (auto article : parse_number_list(c.numbers)) {
            if (seen.insert(article).second) {
                out.push_back({codex, article, {c.start, c.end}});
            }
        }
    }
    return out;
}

std::vector<RawExtractionRecord> extract_raw(std::string_view text, const CodexPatternTable& table)
{
    require_utf8(text);
    std::vector<RawExtractionRecord> out;
    for (const auto& c : table.impl().candidates(text)) {
        out.push_back({RecordKind::codex_article, std::string(text.substr(c.start, c.end - c.start)),
                       {c.start, c.end}});
    }
    const Iter begin = text.begin();
    for (const auto& bp : builtin_patterns()) {
        boost::u32regex_iterator<Iter> it(begin, text.end(), bp.re);
        for (boost::u32regex_iterator<Iter> stop; it != stop; ++it) {
            const auto& m = *it;
            auto s = static_cast<std::size_t>(m[0].first - begin);
            auto e = static_cast<std::size_t>(m[0].second - begin);
            out.push_back({bp.kind, m.str(), {s, e}});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.span.start < b.span.start;
    });
    return out;
}

std::string strip_citations(std::string_view text, const CodexPatternTable& table)
{
    require_utf8(text);
    std::string current(text);
    for (;;) {
        auto found = table.impl().candidates(current);
        if (found.empty()) {
            return current;
        }
        std::string next;
        next.reserve(current.size());
        std::size_t pos = 0;
        for (const auto& c : found) {
            next.append(current, pos, c.start - pos);
            next.push_back(' ');
            pos = c.end;
        }
        next.append(current, pos, std::string::npos);
        current = std::move(next);
    }
}

} // namespace cocite
