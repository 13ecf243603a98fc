#include "cocite/citation_parser.hpp"

namespace cocite {

namespace {

constexpr std::string_view kConfig = R"conf(# Ukrainian codices. Markers and abbreviations are ICU regexes matched
# case-insensitively.

[codex]
id = "admin_off"
name = "Кодекс України про адміністративні правопорушення"
abbrev = ['КУпАП(?:\s+України)?', 'Кодекс\w*\s+України\s+про\s+адміністративні\s+правопорушення']
article = ['ст\.\s*ст\.', 'ст\.', 'статт[іяеюі]\w*', 'статей']

[codex]
id = "admin_proc"
name = "Кодекс адміністративного судочинства України"
abbrev = ['КАС(?:\s+України)?', 'Кодекс\w*\s+адміністративного\s+судочинства(?:\s+України)?']
article = ['ст\.\s*ст\.', 'ст\.', 'статт[іяеюі]\w*', 'статей']

[codex]
id = "civ"
name = "Цивільний кодекс України"
abbrev = ['ЦК(?:\s+України)?', 'Цивільн\w+\s+кодекс\w*(?:\s+України)?']
article = ['ст\.\s*ст\.', 'ст\.', 'статт[іяеюі]\w*', 'статей']

[codex]
id = "civ_proc"
name = "Цивільний процесуальний кодекс України"
abbrev = ['ЦПК(?:\s+України)?', 'Цивільн\w+\s+процесуальн\w+\s+кодекс\w*(?:\s+України)?']
article = ['ст\.\s*ст\.', 'ст\.', 'статт[іяеюі]\w*', 'статей']

[codex]
id = "comm"
name = "Господарський кодекс України"
abbrev = ['ГК(?:\s+України)?', 'Господарськ\w+\s+кодекс\w*(?:\s+України)?']
article = ['ст\.\s*ст\.', 'ст\.', 'статт[іяеюі]\w*', 'статей']

[codex]
id = "comm_proc"
name = "Господарський процесуальний кодекс України"
abbrev = ['ГПК(?:\s+України)?', 'Господарськ\w+\s+процесуальн\w+\s+кодекс\w*(?:\s+України)?']
article = ['ст\.\s*ст\.', 'ст\.', 'статт[іяеюі]\w*', 'статей']

[codex]
id = "crim"
name = "Кримінальний кодекс України"
abbrev = ['КК(?:\s+України)?', 'Кримінальн\w+\s+кодекс\w*(?:\s+України)?']
article = ['ст\.\s*ст\.', 'ст\.', 'статт[іяеюі]\w*', 'статей']

[codex]
id = "crim_proc"
name = "Кримінальний процесуальний кодекс України"
abbrev = ['КПК(?:\s+України)?', 'Кримінальн\w+\s+процесуальн\w+\s+кодекс\w*(?:\s+України)?']
article = ['ст\.\s*ст\.', 'ст\.', 'статт[іяеюі]\w*', 'статей']

[codex]
id = "family"
name = "Сімейний кодекс України"
abbrev = ['СК(?:\s+України)?', 'Сімейн\w+\s+кодекс\w*(?:\s+України)?']
article = ['ст\.\s*ст\.', 'ст\.', 'статт[іяеюі]\w*', 'статей']

[codex]
id = "housing"
name = "Житловий кодекс Української РСР"
abbrev = ['ЖК(?:\s+(?:України|УРСР|Української\s+РСР))?', 'Житлов\w+\s+кодекс\w*(?:\s+(?:України|Української\s+РСР))?']
article = ['ст\.\s*ст\.', 'ст\.', 'статт[іяеюі]\w*', 'статей']

[codex]
id = "labour"
name = "Кодекс законів про працю України"
abbrev = ['КЗпП(?:\s+України)?', 'Кодекс\w*\s+законів\s+про\s+працю(?:\s+України)?']
article = ['ст\.\s*ст\.', 'ст\.', 'статт[іяеюі]\w*', 'статей']

[codex]
id = "land"
name = "Земельний кодекс України"
abbrev = ['ЗК(?:\s+України)?', 'Земельн\w+\s+кодекс\w*(?:\s+України)?']
article = ['ст\.\s*ст\.', 'ст\.', 'статт[іяеюі]\w*', 'статей']

[codex]
id = "tax"
name = "Податковий кодекс України"
abbrev = ['ПК(?:\s+України)?', 'Податков\w+\s+кодекс\w*(?:\s+України)?']
article = ['ст\.\s*ст\.', 'ст\.', 'статт[іяеюі]\w*', 'статей']
)conf";

} // namespace

std::string_view ukrainian_pattern_config() { return kConfig; }

} // namespace cocite
