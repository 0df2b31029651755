#include "lsreal/types.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "lsreal/errors.hpp"

namespace lsreal {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw DimensionError("alphabet must contain at least one mode");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw DimensionError("mode names must be nonempty");
    if (!seen.insert(n).second) throw DimensionError("duplicate mode name '" + n + "'");
  }
}

std::optional<int> Alphabet::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

int Alphabet::index_of(std::string_view name) const {
  if (auto q = find(name)) return *q;
  throw UnknownIndex("unknown mode '" + std::string(name) + "'");
}

Word Word::from_names(const Alphabet& alphabet, std::span<const std::string> names) {
  std::vector<int> letters;
  letters.reserve(names.size());
  for (const auto& n : names) letters.push_back(alphabet.index_of(n));
  return Word(std::move(letters));
}

Word Word::operator+(const Word& rhs) const {
  std::vector<int> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(std::move(out));
}

std::string Word::to_string(const Alphabet& alphabet) const {
  if (letters_.empty()) return "ε";
  std::string s;
  for (int q : letters_) s += alphabet.name(q);
  return s;
}

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base)
      throw DimensionError("word space too large");
    r *= base;
  }
  return r;
}

std::size_t word_count(std::size_t alphabet_size, int maxlen) {
  if (maxlen < 0) return 0;
  if (alphabet_size == 1) return static_cast<std::size_t>(maxlen) + 1;
  return (ipow(alphabet_size, maxlen + 1) - 1) / (alphabet_size - 1);
}

std::size_t word_id(const Word& w, std::size_t alphabet_size) {
  std::size_t value = 0;
  for (int q : w) value = value * alphabet_size + static_cast<std::size_t>(q);
  return word_offset(alphabet_size, static_cast<int>(w.size())) + value;
}

Word word_from_id(std::size_t id, std::size_t alphabet_size) {
  int len = 0;
  while (word_offset(alphabet_size, len + 1) <= id) ++len;
  std::size_t value = id - word_offset(alphabet_size, len);
  std::vector<int> letters(static_cast<std::size_t>(len));
  for (int i = len - 1; i >= 0; --i) {
    letters[static_cast<std::size_t>(i)] = static_cast<int>(value % alphabet_size);
    value /= alphabet_size;
  }
  return Word(std::move(letters));
}

std::string SeriesIndex::to_string(const Alphabet& alphabet) const {
  if (is_input()) {
    const auto& c = as_input();
    return "(" + alphabet.name(c.mode) + "," + std::to_string(c.channel + 1) + ")";
  }
  return as_tag();
}

std::vector<SeriesIndex> canonical_index_set(std::size_t alphabet_size, int m,
                                             std::vector<std::string> tags) {
  std::sort(tags.begin(), tags.end());
  std::vector<SeriesIndex> out;
  out.reserve(alphabet_size * static_cast<std::size_t>(m) + tags.size());
  for (std::size_t q = 0; q < alphabet_size; ++q)
    for (int j = 0; j < m; ++j) out.push_back(SeriesIndex::input(static_cast<int>(q), j));
  for (auto& t : tags) out.push_back(SeriesIndex::tag(std::move(t)));
  return out;
}

std::optional<std::size_t> find_index(std::span<const SeriesIndex> set, const SeriesIndex& j) {
  for (std::size_t k = 0; k < set.size(); ++k)
    if (set[k] == j) return k;
  return std::nullopt;
}

}  // namespace lsreal
