#pragma once

#include <set>
#include <string>
#include <string_view>
#include <unordered_set>

namespace drift::corpus {

// General English function words.
inline const std::unordered_set<std::string>& english_stopwords() {
    static const std::unordered_set<std::string> words = {
        "a", "about", "above", "after", "again", "against", "all", "also", "am", "an", "and",
        "any", "are", "aren", "as", "at", "be", "because", "been", "before", "being", "below",
        "between", "both", "but", "by", "can", "could", "couldn", "did", "didn", "do", "does",
        "doesn", "doing", "don", "down", "during", "each", "etc", "few", "for", "from",
        "further", "had", "hadn", "has", "hasn", "have", "haven", "having", "he", "her", "here",
        "hers", "herself", "him", "himself", "his", "how", "however", "i", "if", "in", "into",
        "is", "isn", "it", "its", "itself", "just", "may", "me", "might", "more", "most",
        "must", "my", "myself", "no", "nor", "not", "now", "of", "off", "on", "once", "only",
        "or", "other", "our", "ours", "ourselves", "out", "over", "own", "same", "she",
        "should", "shouldn", "so", "some", "such", "than", "that", "the", "their", "theirs",
        "them", "themselves", "then", "there", "these", "they", "this", "those", "through",
        "thus", "to", "too", "under", "until", "up", "upon", "us", "very", "via", "was",
        "wasn", "we", "were", "weren", "what", "when", "where", "whether", "which", "while",
        "who", "whom", "why", "will", "with", "within", "without", "won", "would", "wouldn",
        "you", "your", "yours", "yourself", "yourselves", "whose", "yet", "therefore",
        "although", "among", "often", "well", "many", "much", "several", "one", "two",
    };
    return words;
}

// Words that saturate research abstracts without carrying topic information.
// Inflected forms are listed so the check works before lemmatization too.
inline std::set<std::string> default_domain_stopwords() {
    return {
        "paper",    "papers",    "system",   "systems",  "result",    "results",  "approach",
        "approaches", "method",  "methods",  "propose",  "proposed",  "proposes", "proposing",
        "show",     "shows",     "showed",   "shown",    "showing",
        "study",    "studies",   "work",     "works",    "use",       "used",     "using",
        "uses",     "based",     "also",     "article",  "task",      "tasks",    "new",
        "different", "problem",  "problems", "demonstrate", "demonstrates", "demonstrated",
        "describe", "describes", "described", "introduce", "introduces", "introduced",
        "achieve",  "achieves",  "achieved", "provide",  "provides",  "provided", "state",
        "art",      "experiment", "experiments", "experimental", "performance", "improve",
        "improves", "improved",  "significantly",
    };
}

}  // namespace drift::corpus
