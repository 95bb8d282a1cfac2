#pragma once

// Most-frequent-tag lookup over a small embedded lexicon. Unknown words are
// tagged as nouns, numerals as NUM. Good enough for keyword filtering on
// lemmatized abstracts; not a sequence tagger.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace drift::corpus {

enum class PosTag { noun, verb, adj, adv, pron, det, adp, conj, num, prt };

inline std::string_view to_string(PosTag tag) {
    switch (tag) {
    case PosTag::noun: return "noun";
    case PosTag::verb: return "verb";
    case PosTag::adj: return "adj";
    case PosTag::adv: return "adv";
    case PosTag::pron: return "pron";
    case PosTag::det: return "det";
    case PosTag::adp: return "adp";
    case PosTag::conj: return "conj";
    case PosTag::num: return "num";
    case PosTag::prt: return "prt";
    }
    return "noun";
}

inline std::optional<PosTag> parse_pos_tag(std::string_view s) {
    static const std::unordered_map<std::string_view, PosTag> names = {
        {"noun", PosTag::noun}, {"verb", PosTag::verb}, {"adj", PosTag::adj},
        {"adv", PosTag::adv},   {"pron", PosTag::pron}, {"det", PosTag::det},
        {"adp", PosTag::adp},   {"conj", PosTag::conj}, {"num", PosTag::num},
        {"prt", PosTag::prt},
    };
    std::string lower(s);
    for (auto& c : lower)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    auto it = names.find(lower);
    if (it == names.end())
        return std::nullopt;
    return it->second;
}

namespace detail {

inline const std::unordered_map<std::string_view, PosTag>& pos_lexicon() {
    using enum PosTag;
    static const std::unordered_map<std::string_view, PosTag> lex = {
        // determiners, pronouns, adpositions, conjunctions
        {"the", det}, {"a", det}, {"an", det}, {"this", det}, {"that", det}, {"these", det},
        {"those", det}, {"each", det}, {"every", det}, {"some", det}, {"any", det},
        {"no", det}, {"all", det}, {"both", det}, {"either", det}, {"neither", det},
        {"it", pron}, {"we", pron}, {"they", pron}, {"our", pron}, {"their", pron},
        {"its", pron}, {"i", pron}, {"you", pron}, {"he", pron}, {"she", pron},
        {"them", pron}, {"us", pron}, {"which", pron}, {"who", pron}, {"what", pron},
        {"of", adp}, {"in", adp}, {"on", adp}, {"for", adp}, {"with", adp}, {"by", adp},
        {"from", adp}, {"at", adp}, {"into", adp}, {"over", adp}, {"under", adp},
        {"between", adp}, {"through", adp}, {"across", adp}, {"without", adp},
        {"within", adp}, {"via", adp}, {"among", adp}, {"towards", adp}, {"toward", adp},
        {"and", conj}, {"or", conj}, {"but", conj}, {"nor", conj}, {"while", conj},
        {"whereas", conj}, {"although", conj}, {"because", conj}, {"if", conj},
        {"to", prt}, {"not", prt}, {"up", prt}, {"out", prt},
        // numerals
        {"one", num}, {"two", num}, {"three", num}, {"four", num}, {"five", num},
        {"first", adj}, {"second", adj}, {"third", adj},
        // verbs (lemma forms as produced by the lemmatizer)
        {"be", verb}, {"is", verb}, {"are", verb}, {"was", verb}, {"were", verb},
        {"have", verb}, {"has", verb}, {"do", verb}, {"can", verb}, {"may", verb},
        {"present", verb}, {"propose", verb}, {"show", verb}, {"use", verb}, {"train", verb},
        {"learn", verb}, {"improve", verb}, {"evaluate", verb}, {"achieve", verb},
        {"outperform", verb}, {"introduce", verb}, {"describe", verb}, {"apply", verb},
        {"build", verb}, {"generate", verb}, {"predict", verb}, {"extract", verb},
        {"obtain", verb}, {"require", verb}, {"compare", verb}, {"investigate", verb},
        {"explore", verb}, {"analyze", verb}, {"analyse", verb}, {"demonstrate", verb},
        {"capture", verb}, {"provide", verb}, {"leverage", verb}, {"encode", verb},
        {"decode", verb}, {"translate", verb}, {"identify", verb}, {"detect", verb},
        {"classify", verb}, {"focus", verb}, {"address", verb}, {"develop", verb},
        {"design", verb}, {"perform", verb}, {"reduce", verb}, {"increase", verb},
        {"allow", verb}, {"enable", verb}, {"make", verb}, {"take", verb}, {"give", verb},
        {"find", verb}, {"consider", verb}, {"incorporate", verb}, {"combine", verb},
        {"exploit", verb}, {"release", verb}, {"annotate", verb}, {"fine-tune", verb},
        {"finetune", verb}, {"pretrain", verb}, {"suggest", verb}, {"study", verb},
        {"solve", verb}, {"establish", verb}, {"report", verb}, {"measure", verb},
        // adjectives
        {"neural", adj}, {"deep", adj}, {"new", adj}, {"large", adj}, {"small", adj},
        {"novel", adj}, {"different", adj}, {"effective", adj}, {"efficient", adj},
        {"semantic", adj}, {"syntactic", adj}, {"linguistic", adj}, {"lexical", adj},
        {"statistical", adj}, {"multilingual", adj}, {"cross-lingual", adj},
        {"crosslingual", adj}, {"natural", adj}, {"human", adj}, {"automatic", adj},
        {"supervised", adj}, {"unsupervised", adj}, {"pretrained", adj}, {"generative", adj},
        {"discriminative", adj}, {"contextual", adj}, {"textual", adj}, {"visual", adj},
        {"recurrent", adj}, {"convolutional", adj}, {"probabilistic", adj}, {"bayesian", adj},
        {"good", adj}, {"better", adj}, {"best", adj}, {"high", adj}, {"low", adj},
        {"strong", adj}, {"simple", adj}, {"robust", adj}, {"accurate", adj},
        {"existing", adj}, {"previous", adj}, {"recent", adj}, {"current", adj},
        {"important", adj}, {"significant", adj}, {"competitive", adj}, {"available", adj},
        {"public", adj}, {"open", adj}, {"various", adj}, {"specific", adj},
        {"general", adj}, {"single", adj}, {"multiple", adj}, {"global", adj}, {"local", adj},
        {"english", adj}, {"chinese", adj}, {"spoken", adj}, {"written", adj},
        {"abstractive", adj}, {"extractive", adj}, {"joint", adj}, {"hierarchical", adj},
        {"structured", adj}, {"empirical", adj}, {"challenging", adj}, {"key", adj},
        // adverbs
        {"also", adv}, {"however", adv}, {"significantly", adv}, {"furthermore", adv},
        {"moreover", adv}, {"well", adv}, {"only", adv}, {"very", adv}, {"often", adv},
        {"jointly", adv}, {"automatically", adv}, {"effectively", adv}, {"substantially", adv},
        {"recently", adv}, {"finally", adv}, {"then", adv}, {"thus", adv}, {"still", adv},
        {"directly", adv}, {"further", adv}, {"largely", adv}, {"widely", adv},
    };
    return lex;
}

}  // namespace detail

inline PosTag tag_word(std::string_view word) {
    if (word.empty())
        return PosTag::noun;
    bool numeric = true;
    for (char c : word)
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.' && c != ',')
            numeric = false;
    if (numeric)
        return PosTag::num;
    const auto& lex = detail::pos_lexicon();
    if (auto it = lex.find(word); it != lex.end())
        return it->second;
    return PosTag::noun;
}

}  // namespace drift::corpus
