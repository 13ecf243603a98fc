#include "cocite/synthetic.hpp"

#include "cocite/cocitation.hpp"
#include "cocite/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

namespace cocite {

namespace {

struct CodexSpelling {
    const char* id;
    const char* abbrev;
    const char* genitive;
};

constexpr std::array<CodexSpelling, 13> kSpellings{{
    {"civ", "ЦК", "Цивільного кодексу України"},
    {"crim", "КК", "Кримінального кодексу України"},
    {"comm", "ГК", "Господарського кодексу України"},
    {"labour", "КЗпП", "Кодексу законів про працю України"},
    {"civ_proc", "ЦПК", "Цивільного процесуального кодексу України"},
    {"crim_proc", "КПК", "Кримінального процесуального кодексу України"},
    {"admin_off", "КУпАП", "Кодексу України про адміністративні правопорушення"},
    {"admin_proc", "КАС", "Кодексу адміністративного судочинства України"},
    {"comm_proc", "ГПК", "Господарського процесуального кодексу України"},
    {"family", "СК", "Сімейного кодексу України"},
    {"housing", "ЖК", "Житлового кодексу Української РСР"},
    {"land", "ЗК", "Земельного кодексу України"},
    {"tax", "ПК", "Податкового кодексу України"},
}};

const CodexSpelling& spelling(std::string_view codex)
{
    for (const auto& s : kSpellings) {
        if (codex == s.id) {
            return s;
        }
    }
    throw InvariantError("no spelling for codex '" + std::string(codex) + "'");
}

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h = (h ^ c) * 0x100000001b3ull;
    }
    return h;
}

double uniform(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

class WeightedPicker {
  public:
    WeightedPicker() = default;
    explicit WeightedPicker(const std::vector<double>& weights) : cum_(weights.size())
    {
        std::partial_sum(weights.begin(), weights.end(), cum_.begin());
    }
    std::size_t operator()(std::mt19937_64& rng) const
    {
        const double u = uniform(rng) * cum_.back();
        auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cum_.begin()), cum_.size() - 1);
    }

  private:
    std::vector<double> cum_;
};

// Consonant-vowel syllables never form the markers "ст." or "статт".
std::string pseudo_word(std::uint64_t i)
{
    static constexpr std::array<const char*, 16> consonants{"б", "в", "г", "д", "ж", "з", "к", "л",
                                                            "м", "н", "п", "р", "с", "т", "ф", "х"};
    static constexpr std::array<const char*, 8> vowels{"а", "е", "и", "о", "у", "я", "ю", "і"};
    std::uint64_t x = mix_seed(i, 0x5eed);
    const std::size_t syllables = 2 + x % 3;
    x /= 3;
    std::string w;
    for (std::size_t s = 0; s < syllables; ++s) {
        w += consonants[x % consonants.size()];
        x /= consonants.size();
        w += vowels[x % vowels.size()];
        x /= vowels.size();
    }
    return w;
}

constexpr std::uint64_t kFillerWords = 120;
constexpr std::uint64_t kTopicBase = 1000;
constexpr std::uint64_t kTopicWords = 8;
constexpr std::uint64_t kArticleBase = 1000000;

} // namespace

const std::vector<std::string>& synthetic_codices()
{
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& s : kSpellings) {
            out.emplace_back(s.id);
        }
        return out;
    }();
    return ids;
}

SyntheticCorpus generate_corpus(const SyntheticParams& p)
{
    if (p.codices == 0 || p.codices > kSpellings.size()) {
        throw ConfigError("synthetic codex count must lie in [1, " + std::to_string(kSpellings.size()) + "]");
    }
    if (p.articles < p.codices || p.templates == 0 || p.template_min < p.case_min ||
        p.template_max < p.template_min || p.case_max < p.case_min || p.case_min == 0 ||
        p.template_max > p.articles) {
        throw ConfigError("inconsistent synthetic corpus sizes");
    }
    if (!(p.epsilon >= 0.0 && p.epsilon < 1.0) || !(p.shift >= 0.0 && p.shift <= 1.0)) {
        throw ConfigError("synthetic epsilon must lie in [0, 1) and shift in [0, 1]");
    }

    SyntheticCorpus corpus;
    corpus.params = p;
    for (std::size_t i = 0; i < p.articles; ++i) {
        corpus.articles.push_back({synthetic_codices()[i % p.codices], static_cast<std::int32_t>(1 + i / p.codices)});
    }
    std::sort(corpus.articles.begin(), corpus.articles.end());

    std::mt19937_64 rng(mix_seed(p.seed, 0xa27));
    std::vector<std::size_t> rank(p.articles);
    std::iota(rank.begin(), rank.end(), 0);
    std::shuffle(rank.begin(), rank.end(), rng);
    std::vector<double> weight(p.articles);
    std::vector<std::vector<double>> codex_weight(p.codices, std::vector<double>(p.articles, 0.0));
    for (std::size_t a = 0; a < p.articles; ++a) {
        weight[a] = 1.0 / std::pow(static_cast<double>(rank[a] + 1), p.zipf);
        const auto c = static_cast<std::size_t>(
            std::find(synthetic_codices().begin(), synthetic_codices().end(), corpus.articles[a].codex) -
            synthetic_codices().begin());
        codex_weight[c][a] = weight[a];
    }
    const WeightedPicker global(weight);
    std::vector<WeightedPicker> by_codex;
    for (const auto& w : codex_weight) {
        by_codex.emplace_back(w);
    }

    for (std::size_t t = 0; t < 2 * p.templates; ++t) {
        const std::size_t home = t % p.codices;
        const std::size_t k = uniform_index(rng, p.template_min, p.template_max);
        std::vector<ArticleIndex> members;
        for (std::size_t attempt = 0; members.size() < k && attempt < 100 * k; ++attempt) {
            const auto a = static_cast<ArticleIndex>(uniform(rng) < p.home_codex ? by_codex[home](rng) : global(rng));
            if (std::find(members.begin(), members.end(), a) == members.end()) {
                members.push_back(a);
            }
        }
        for (ArticleIndex a = 0; members.size() < k; ++a) {
            if (std::find(members.begin(), members.end(), a) == members.end()) {
                members.push_back(a);
            }
        }
        std::sort(members.begin(), members.end());
        corpus.templates.push_back(std::move(members));
    }
    std::vector<double> template_weight(p.templates);
    for (std::size_t t = 0; t < p.templates; ++t) {
        template_weight[t] = 1.0 / std::sqrt(static_cast<double>(t + 1));
    }
    const WeightedPicker pick_template(template_weight);

    for (std::size_t y = 0; y < p.years; ++y) {
        const auto year = static_cast<std::int32_t>(p.first_year + static_cast<std::int32_t>(y));
        const double eta = 1.0 - std::pow(1.0 - p.epsilon, static_cast<double>(y));
        std::vector<std::uint8_t> shifted(p.templates, 0);
        std::mt19937_64 year_rng(mix_seed(p.seed, 0x51f7, static_cast<std::uint64_t>(year)));
        for (auto& s : shifted) {
            s = uniform(year_rng) < p.shift;
        }
        for (std::size_t j = 0; j < p.cases_per_year; ++j) {
            std::mt19937_64 crng(mix_seed(p.seed, static_cast<std::uint64_t>(year), j));
            std::size_t t = pick_template(crng);
            if (j >= p.cases_per_year / 2 && shifted[t]) {
                t += p.templates;
            }
            const auto& members = corpus.templates[t];
            std::vector<ArticleIndex> pool = members;
            std::shuffle(pool.begin(), pool.end(), crng);
            const std::size_t m = uniform_index(crng, p.case_min, std::min(p.case_max, pool.size()));
            std::vector<ArticleIndex> cited;
            for (std::size_t i = 0; i < m; ++i) {
                const auto a = uniform(crng) < eta ? static_cast<ArticleIndex>(global(crng)) : pool[i];
                if (std::find(cited.begin(), cited.end(), a) == cited.end()) {
                    cited.push_back(a);
                }
            }
            for (std::size_t i = m; cited.size() < p.case_min && i < pool.size(); ++i) {
                if (std::find(cited.begin(), cited.end(), pool[i]) == cited.end()) {
                    cited.push_back(pool[i]);
                }
            }
            std::vector<Citation> citations;
            for (auto a : cited) {
                std::uint32_t occ = 1;
                while (occ < 4 && uniform(crng) < 0.35) {
                    ++occ;
                }
                citations.push_back({corpus.articles[a], occ});
            }
            std::sort(citations.begin(), citations.end(),
                      [](const Citation& x, const Citation& z) { return x.id < z.id; });
            char doc_id[32];
            std::snprintf(doc_id, sizeof doc_id, "%d-%06zu", year, j);
            corpus.decisions.push_back({doc_id, year, std::move(citations)});
            corpus.case_template.push_back(static_cast<std::uint32_t>(t));
        }
    }
    return corpus;
}

std::unordered_map<std::string, std::string> render_texts(const SyntheticCorpus& corpus)
{
    std::unordered_map<std::string, std::string> out;
    for (std::size_t d = 0; d < corpus.decisions.size(); ++d) {
        const auto& rec = corpus.decisions[d];
        std::mt19937_64 rng(mix_seed(corpus.params.seed, fnv1a(rec.doc_id), 0x7e47));
        const std::uint64_t topic = kTopicBase + corpus.case_template[d] % corpus.params.templates * kTopicWords;

        std::vector<ArticleId> mentions;
        for (const auto& c : rec.citations) {
            mentions.insert(mentions.end(), c.occurrences, c.id);
        }
        std::shuffle(mentions.begin(), mentions.end(), rng);

        std::string text;
        auto words = [&](std::size_t lo, std::size_t hi) {
            const std::size_t n = uniform_index(rng, lo, hi);
            for (std::size_t i = 0; i < n; ++i) {
                const auto w = uniform(rng) < 0.5 ? topic + uniform_index(rng, 0, kTopicWords - 1)
                                                  : uniform_index(rng, 0, kFillerWords - 1);
                if (!text.empty() && text.back() != ' ') {
                    text += ' ';
                }
                text += pseudo_word(w);
            }
        };
        for (std::size_t i = 0; i < mentions.size(); ++i) {
            words(4, 12);
            const auto& sp = spelling(mentions[i].codex);
            std::string numbers = std::to_string(mentions[i].article);
            std::string marker;
            if (i + 1 < mentions.size() && mentions[i + 1].codex == mentions[i].codex &&
                mentions[i + 1].article != mentions[i].article && uniform(rng) < 0.25) {
                numbers += (uniform(rng) < 0.7 ? ", " : " та ") + std::to_string(mentions[i + 1].article);
                marker = uniform(rng) < 0.5 ? "ст. ст." : "статей";
                ++i;
            } else {
                const double u = uniform(rng);
                marker = u < 0.7 ? "ст." : (u < 0.9 ? "статті" : "статтею");
            }
            const double v = uniform(rng);
            std::string codex = v < 0.7 ? std::string(sp.abbrev) + " України"
                                        : (v < 0.85 ? std::string(sp.abbrev) : std::string(sp.genitive));
            if (codex == "ЖК України" && uniform(rng) < 0.5) {
                codex = "ЖК УРСР";
            }
            text += uniform(rng) < 0.5 ? ", відповідно до " : " згідно з ";
            text += marker + " " + numbers + " " + codex + ".";
        }
        words(6, 16);
        text += ".";
        out.emplace(rec.doc_id, std::move(text));
    }
    return out;
}

std::vector<std::pair<ArticleId, std::string>> render_article_texts(const SyntheticCorpus& corpus)
{
    const std::size_t n = corpus.articles.size();
    std::vector<std::vector<std::uint32_t>> containing(n);
    for (std::size_t t = 0; t < corpus.params.templates; ++t) {
        for (auto a : corpus.templates[t]) {
            containing[a].push_back(static_cast<std::uint32_t>(t));
        }
    }
    std::vector<std::pair<ArticleId, std::string>> out;
    for (std::size_t a = 0; a < n; ++a) {
        std::mt19937_64 rng(mix_seed(corpus.params.seed, a, 0xa7e));
        std::string text = "Стаття " + std::to_string(corpus.articles[a].article) + ".";
        for (std::uint64_t k = 0; k < 6; ++k) {
            text += ' ' + pseudo_word(kArticleBase + a * 8 + k);
        }
        for (auto t : containing[a]) {
            for (std::uint64_t k = 0; k < kTopicWords; ++k) {
                if (uniform(rng) < 0.5) {
                    text += ' ' + pseudo_word(kTopicBase + t * kTopicWords + k);
                }
            }
        }
        for (std::size_t k = 0; k < 10; ++k) {
            text += ' ' + pseudo_word(uniform_index(rng, 0, kFillerWords - 1));
        }
        text += '.';
        out.emplace_back(corpus.articles[a], std::move(text));
    }
    return out;
}

std::string synthetic_embeddings_jsonl(const std::vector<ArticleId>& articles, std::int32_t year_a,
                                       std::int32_t year_b, const std::map<std::string, double>& angle,
                                       std::size_t per_year, std::size_t dim, double noise, std::uint64_t seed)
{
    if (dim < 2) {
        throw ConfigError("embedding dimension must be at least 2");
    }
    std::string out;
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto normalize = [](std::vector<double>& v) {
        double norm = 0.0;
        for (double x : v) {
            norm += x * x;
        }
        norm = std::sqrt(norm);
        for (double& x : v) {
            x /= norm;
        }
    };
    for (const auto& id : articles) {
        std::mt19937_64 rng(mix_seed(seed, fnv1a(id.str())));
        std::vector<double> u(dim), w(dim);
        for (auto& x : u) {
            x = gauss(rng);
        }
        normalize(u);
        for (auto& x : w) {
            x = gauss(rng);
        }
        double proj = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            proj += u[i] * w[i];
        }
        for (std::size_t i = 0; i < dim; ++i) {
            w[i] -= proj * u[i];
        }
        normalize(w);
        auto it = angle.find(id.codex);
        const double theta = it == angle.end() ? 0.0 : it->second;
        for (const std::int32_t year : {year_a, year_b}) {
            const double th = year == year_b ? theta : 0.0;
            for (std::size_t k = 0; k < per_year; ++k) {
                std::vector<double> v(dim);
                for (std::size_t i = 0; i < dim; ++i) {
                    v[i] = std::cos(th) * u[i] + std::sin(th) * w[i] + noise * gauss(rng);
                }
                nlohmann::ordered_json rec;
                rec["codex"] = id.codex;
                rec["article"] = id.article;
                rec["year"] = year;
                rec["vector"] = v;
                out += rec.dump();
                out += '\n';
            }
        }
    }
    return out;
}

} // namespace cocite
