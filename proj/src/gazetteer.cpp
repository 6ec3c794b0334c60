#include <array>
#include <string_view>
#include <utility>

#include "scimap/corpus.hpp"

namespace scimap {

namespace {

// Country names as they appear at the tail of bibliographic affiliation strings.
constexpr std::array<std::string_view, 200> kCountries = {
    "afghanistan", "albania", "algeria", "andorra", "angola", "antigua and barbuda",
    "argentina", "armenia", "australia", "austria", "azerbaijan", "bahamas", "bahrain",
    "bangladesh", "barbados", "belarus", "belgium", "belize", "benin", "bhutan", "bolivia",
    "bosnia and herzegovina", "botswana", "brazil", "brunei darussalam", "bulgaria",
    "burkina faso", "burundi", "cambodia", "cameroon", "canada", "cape verde",
    "central african republic", "chad", "chile", "china", "colombia", "comoros", "congo",
    "costa rica", "cote d'ivoire", "croatia", "cuba", "cyprus", "czech republic",
    "democratic republic congo", "denmark", "djibouti", "dominica", "dominican republic",
    "ecuador", "egypt", "el salvador", "equatorial guinea", "eritrea", "estonia", "eswatini",
    "ethiopia", "fiji", "finland", "france", "gabon", "gambia", "georgia", "germany", "ghana",
    "greece", "grenada", "guatemala", "guinea", "guinea-bissau", "guyana", "haiti",
    "honduras", "hong kong", "hungary", "iceland", "india", "indonesia", "iran", "iraq",
    "ireland", "israel", "italy", "jamaica", "japan", "jordan", "kazakhstan", "kenya",
    "kiribati", "kosovo", "kuwait", "kyrgyzstan", "laos", "latvia", "lebanon", "lesotho",
    "liberia", "libyan arab jamahiriya", "liechtenstein", "lithuania", "luxembourg", "macao",
    "madagascar", "malawi", "malaysia", "maldives", "mali", "malta", "marshall islands",
    "mauritania", "mauritius", "mexico", "micronesia", "moldova", "monaco", "mongolia",
    "montenegro", "morocco", "mozambique", "myanmar", "namibia", "nauru", "nepal",
    "netherlands", "new zealand", "nicaragua", "niger", "nigeria", "north korea",
    "north macedonia", "norway", "oman", "pakistan", "palau", "palestine", "panama",
    "papua new guinea", "paraguay", "peru", "philippines", "poland", "portugal",
    "puerto rico", "qatar", "romania", "russian federation", "rwanda",
    "saint kitts and nevis", "saint lucia", "saint vincent and the grenadines", "samoa",
    "san marino", "sao tome and principe", "saudi arabia", "senegal", "serbia", "seychelles",
    "sierra leone", "singapore", "slovakia", "slovenia", "solomon islands", "somalia",
    "south africa", "south korea", "south sudan", "spain", "sri lanka", "sudan", "suriname",
    "sweden", "switzerland", "syrian arab republic", "taiwan", "tajikistan", "tanzania",
    "thailand", "timor-leste", "togo", "tonga", "trinidad and tobago", "tunisia", "turkey",
    "turkmenistan", "tuvalu", "uganda", "ukraine", "united arab emirates", "united kingdom",
    "united states", "uruguay", "uzbekistan", "vanuatu", "vatican city", "venezuela",
    "viet nam", "yemen", "zambia", "zimbabwe",
};

// alias -> modern canonical name
constexpr std::array<std::pair<std::string_view, std::string_view>, 36> kAliases = {{
    {"usa", "united states"},
    {"us", "united states"},
    {"united states of america", "united states"},
    {"uk", "united kingdom"},
    {"great britain", "united kingdom"},
    {"england", "united kingdom"},
    {"scotland", "united kingdom"},
    {"wales", "united kingdom"},
    {"northern ireland", "united kingdom"},
    {"west germany", "germany"},
    {"east germany", "germany"},
    {"federal republic of germany", "germany"},
    {"german democratic republic", "germany"},
    {"ussr", "russian federation"},
    {"soviet union", "russian federation"},
    {"russia", "russian federation"},
    {"czechoslovakia", "czech republic"},
    {"czechia", "czech republic"},
    {"yugoslavia", "serbia"},
    {"serbia and montenegro", "serbia"},
    {"korea", "south korea"},
    {"republic of korea", "south korea"},
    {"korea (south)", "south korea"},
    {"vietnam", "viet nam"},
    {"pr china", "china"},
    {"p r china", "china"},
    {"people's republic of china", "china"},
    {"hong kong sar", "hong kong"},
    {"burma", "myanmar"},
    {"zaire", "democratic republic congo"},
    {"macedonia", "north macedonia"},
    {"swaziland", "eswatini"},
    {"ivory coast", "cote d'ivoire"},
    {"libya", "libyan arab jamahiriya"},
    {"syria", "syrian arab republic"},
    {"the netherlands", "netherlands"},
}};

Gazetteer make_bundled() {
  Gazetteer g;
  for (const auto name : kCountries) g.add(name, name);
  for (const auto& [alias, country] : kAliases) g.add(alias, country);
  return g;
}

}  // namespace

const Gazetteer& Gazetteer::bundled() {
  static const Gazetteer instance = make_bundled();
  return instance;
}

}  // namespace scimap
