//
// Copyright 2026 The medkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "medkit/wordlist.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

namespace medkit {

namespace {

// Frequency-ordered common-English head plus crisis-domain vocabulary.
constexpr std::string_view kWords[] = {
    "the", "of", "and", "a", "to", "in", "is", "you", "that", "it", "he",
    "was", "for", "on", "are", "as", "with", "his", "they", "i", "at", "be",
    "this", "have", "from", "or", "one", "had", "by", "word", "but", "not",
    "what", "all", "were", "we", "when", "your", "can", "said", "there",
    "use", "an", "each", "which", "she", "do", "how", "their", "if", "will",
    "up", "other", "about", "out", "many", "then", "them", "these", "so",
    "some", "her", "would", "make", "like", "him", "into", "time", "has",
    "look", "two", "more", "write", "go", "see", "number", "no", "way",
    "could", "people", "my", "than", "first", "water", "been", "call",
    "who", "oil", "its", "now", "find", "long", "down", "day", "did", "get",
    "come", "made", "may", "part", "over", "new", "sound", "take", "only",
    "little", "work", "know", "place", "year", "live", "me", "back", "give",
    "most", "very", "after", "thing", "our", "just", "name", "good",
    "sentence", "man", "think", "say", "great", "where", "help", "through",
    "much", "before", "line", "right", "too", "mean", "old", "any", "same",
    "tell", "boy", "follow", "came", "want", "show", "also", "around",
    "form", "three", "small", "set", "put", "end", "does", "another",
    "well", "large", "must", "big", "even", "such", "because", "turn",
    "here", "why", "ask", "went", "men", "read", "need", "land",
    "different", "home", "us", "move", "try", "kind", "hand", "picture",
    "again", "change", "off", "play", "spell", "air", "away", "animal",
    "house", "point", "page", "letter", "mother", "answer", "found",
    "study", "still", "learn", "should", "america", "world", "high",
    "every", "near", "add", "food", "between", "own", "below", "country",
    "plant", "last", "school", "father", "keep", "tree", "never", "start",
    "city", "earth", "eye", "light", "thought", "head", "under", "story",
    "saw", "left", "dont", "few", "while", "along", "might", "close",
    "something", "seem", "next", "hard", "open", "example", "begin",
    "life", "always", "those", "both", "paper", "together", "got", "group",
    "often", "run", "important", "until", "children", "side", "feet",
    "car", "mile", "night", "walk", "white", "sea", "began", "grow",
    "took", "river", "four", "carry", "state", "once", "book", "hear",
    "stop", "without", "second", "later", "miss", "idea", "enough", "eat",
    "face", "watch", "far", "really", "almost", "let", "above", "girl",
    "sometimes", "mountain", "cut", "young", "talk", "soon", "list",
    "song", "being", "leave", "family", "body", "music", "color", "stand",
    "sun", "questions", "fish", "area", "mark", "dog", "horse", "birds",
    "problem", "complete", "room", "knew", "since", "ever", "piece",
    "told", "usually", "didnt", "friends", "easy", "heard", "order",
    "red", "door", "sure", "become", "top", "ship", "across", "today",
    "during", "short", "better", "best", "however", "low", "hours",
    "black", "products", "happened", "whole", "measure", "remember",
    "early", "waves", "reached", "listen", "wind", "rock", "space",
    "covered", "fast", "several", "hold", "himself", "toward", "five",
    "step", "morning", "passed", "vowel", "true", "hundred", "against",
    "pattern", "numeral", "table", "north", "slowly", "money", "map",
    "farm", "pulled", "draw", "voice", "seen", "cold", "cried", "plan",
    "notice", "south", "sing", "war", "ground", "fall", "king", "town",
    "unit", "figure", "certain", "field", "travel", "wood", "fire",
    "upon", "done", "english", "road", "half", "ten", "fly", "gave",
    "box", "finally", "wait", "correct", "oh", "quickly", "person",
    "became", "shown", "minutes", "strong", "verb", "stars", "front",
    "feel", "fact", "inches", "street", "decided", "contain", "course",
    "surface", "produce", "building", "ocean", "class", "note", "nothing",
    "rest", "carefully", "scientists", "inside", "wheels", "stay",
    "green", "known", "island", "week", "less", "machine", "base", "ago",
    "stood", "gone", "grass", "million", "smoke", "lost", "fell", "heat",
    "full", "check", "game", "shape", "equate", "hot", "mine", "bring",
    "yes", "distant", "fill", "east", "paint", "language", "among",
    "grand", "ball", "yet", "wave", "drop", "heart", "am", "present",
    "heavy", "dance", "engine", "position", "arm", "wide", "sail",
    "material", "size", "vary", "settle", "speak", "weight", "general",
    "ice", "matter", "circle", "pair", "include", "divide", "syllable",
    "felt", "perhaps", "pick", "sudden", "count", "square", "reason",
    "length", "represent", "art", "subject", "region", "energy", "hunt",
    "probable", "bed", "brother", "egg", "ride", "cell", "believe",
    "fraction", "forest", "sit", "race", "window", "store", "summer",
    "train", "sleep", "prove", "lone", "leg", "exercise", "wall", "catch",
    "mount", "wish", "sky", "board", "joy", "winter", "sat", "written",
    "wild", "instrument", "kept", "glass", "grew", "dark", "seed", "coast",
    "bright", "gas", "weather", "month", "main", "spring", "observe",
    "child", "straight", "consonant", "nation", "dictionary", "milk",
    "speed", "method", "organ", "pay", "age", "section", "dress", "cloud",
    "surprise", "quiet", "stone", "tiny", "climb", "cool", "design",
    "poor", "lot", "experiment", "bottom", "key", "iron", "single",
    "stick", "flat", "twenty", "skin", "smile", "crease", "hole", "trade",
    "melody", "trip", "office", "receive", "row", "mouth", "exact",
    "symbol", "die", "least", "trouble", "shout", "except", "wrote",
    "cloth", "contrast", "special", "mind", "behind", "clear", "tail",
    "producing", "stream", "fit", "team", "god", "bone", "rail",
    "imagine", "provide", "agree", "thus", "capital", "chair", "danger",
    "fruit", "rich", "thick", "soldier", "process", "operate", "practice",
    "separate", "difficult", "doctor", "please", "protect", "noon",
    "crop", "modern", "element", "hit", "student", "corner", "party",
    "supply", "whose", "locate", "ring", "character", "insect", "caught",
    "period", "indicate", "radio", "spoke", "atom", "history", "effect",
    "electric", "expect", "bone", "rope", "cotton", "apple", "unusual",
    "died", "dies", "dying", "due", "shaking", "shake", "shook", "quake",
    "earthquake", "earthquakes", "flood", "floods", "flooding", "flooded",
    "fires", "wildfire", "wildfires", "burning", "burned", "burns",
    "blaze", "flames", "flame", "storm", "storms", "hurricane",
    "hurricanes", "tornado", "cyclone", "typhoon", "tsunami", "landslide",
    "drought", "disaster", "disasters", "damage", "damaged", "damages",
    "destroy", "destroyed", "destruction", "collapse", "collapsed",
    "bridge", "bridges", "roads", "buildings", "infrastructure", "nature",
    "natural", "human", "humans", "injured", "injury", "injuries",
    "victim", "victims", "dead", "death", "deaths", "killed", "kills",
    "rescue", "rescued", "relief", "emergency", "evacuate", "evacuated",
    "evacuation", "shelter", "warning", "alert", "survivors", "survivor",
    "trapped", "debris", "rubble", "ruins", "aftermath", "crisis",
    "urgent", "breaking", "news", "report", "reported", "reports",
    "photo", "photos", "video", "videos", "tweet", "tweets", "post",
    "posts", "share", "shared", "please", "pray", "prayers", "praying",
    "stay", "safe", "safety", "scary", "scared", "terrible", "horrible",
    "awful", "massive", "huge", "severe", "heavy", "strong", "powerful",
    "intense", "rising", "spread", "spreading", "burnt", "ash", "dust",
    "mud", "rain", "raining", "rains", "snow", "hail", "lightning",
    "thunder", "waves", "tide", "coastal", "village", "neighborhood",
    "residents", "families", "homes", "houses", "street", "streets",
    "highway", "railway", "airport", "hospital", "hospitals", "firefighters",
    "firefighter", "police", "ambulance", "army", "volunteers", "donate",
    "donations", "aid", "support", "recover", "recovery", "rebuild",
    "rebuilding", "cleanup", "crews", "crew", "officials", "government",
    "mayor", "governor", "county", "district", "region", "area", "zone",
    "miles", "kilometers", "magnitude", "epicenter", "aftershock",
    "aftershocks", "tremor", "tremors", "richter", "alarm", "sirens",
    "downtown", "bushfire", "firestorm", "inferno", "scorched", "charred",
    "submerged", "overflow", "levee", "dam", "embankment", "riverbank",
};

// Function words for the modality-evidence heuristic: a caption made only
// of these carries no event signal.
constexpr std::string_view kStopwords[] = {
    "a", "an", "the", "this", "that", "these", "those", "it", "its", "is",
    "am", "are", "was", "were", "be", "been", "being", "i", "me", "my",
    "we", "us", "our", "you", "your", "he", "him", "his", "she", "her",
    "they", "them", "their", "of", "in", "on", "at", "to", "for", "from",
    "with", "by", "as", "and", "or", "but", "not", "no", "so", "if",
    "then", "than", "too", "very", "just", "here", "there", "what",
    "when", "where", "who", "how", "why", "which", "wow", "omg", "lol",
    "rt", "via", "pls", "plz",
};

const std::unordered_set<std::string_view>& dictionary_set() {
  static const std::unordered_set<std::string_view> set(std::begin(kWords),
                                                        std::end(kWords));
  return set;
}

const std::unordered_set<std::string_view>& stopword_set() {
  static const std::unordered_set<std::string_view> set(std::begin(kStopwords),
                                                        std::end(kStopwords));
  return set;
}

}  // namespace

std::span<const std::string_view> dictionary_words() {
  return {std::begin(kWords), std::end(kWords)};
}

bool dictionary_contains(std::string_view word) {
  return dictionary_set().count(word) > 0;
}

bool is_stopword(std::string_view word) {
  return stopword_set().count(word) > 0;
}

}  // namespace medkit
