#pragma once

#include <compare>
#include <initializer_list>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lsreal {

/// Ordered set of discrete modes. The order is the enumeration used for
/// stacking outputs, enumerating words and laying out Hankel blocks.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(int letter) const { return names_.at(static_cast<std::size_t>(letter)); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<int> find(std::string_view name) const;
  /// Throws UnknownIndex when the name is not a mode of this alphabet.
  int index_of(std::string_view name) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
};

/// Finite word over an alphabet, stored as letter indices. The empty word is
/// the default-constructed value.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<int> letters) : letters_(letters) {}
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

  /// Builds a word from mode names.
  static Word from_names(const Alphabet& alphabet, std::span<const std::string> names);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<int>& letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  void push_back(int letter) { letters_.push_back(letter); }

  /// Concatenation: (w + v) reads w first, then v.
  Word operator+(const Word& rhs) const;

  std::string to_string(const Alphabet& alphabet) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<int> letters_;
};

// Dense word numbering. Words are numbered length-lexicographically: all
// words of length k come before those of length k+1, and within one length
// the first letter is the most significant digit in base D.

/// Number of words of length at most `maxlen` over D letters.
std::size_t word_count(std::size_t alphabet_size, int maxlen);
/// Position of the first word of length `len`.
inline std::size_t word_offset(std::size_t alphabet_size, int len) {
  return len <= 0 ? 0 : word_count(alphabet_size, len - 1);
}
std::size_t word_id(const Word& w, std::size_t alphabet_size);
Word word_from_id(std::size_t id, std::size_t alphabet_size);
std::size_t ipow(std::size_t base, int exp);

/// Series index in J: either an input channel (q0, j) or an initial-state tag.
/// Channels are 0-based in the C++ API; file formats use 1-based numbering.
struct InputChannel {
  int mode = 0;
  int channel = 0;
  friend auto operator<=>(const InputChannel&, const InputChannel&) = default;
};

struct InitialTag {
  std::string name;
  friend auto operator<=>(const InitialTag&, const InitialTag&) = default;
};

class SeriesIndex {
 public:
  SeriesIndex(InputChannel c) : value_(c) {}
  SeriesIndex(InitialTag t) : value_(std::move(t)) {}

  static SeriesIndex input(int mode, int channel) { return InputChannel{mode, channel}; }
  static SeriesIndex tag(std::string name) { return InitialTag{std::move(name)}; }

  bool is_input() const { return std::holds_alternative<InputChannel>(value_); }
  bool is_tag() const { return !is_input(); }
  const InputChannel& as_input() const { return std::get<InputChannel>(value_); }
  const std::string& as_tag() const { return std::get<InitialTag>(value_).name; }

  std::string to_string(const Alphabet& alphabet) const;

  friend bool operator==(const SeriesIndex&, const SeriesIndex&) = default;

 private:
  std::variant<InputChannel, InitialTag> value_;
};

/// Canonical index set: input channels in alphabet-then-channel order,
/// followed by the tags in name order.
std::vector<SeriesIndex> canonical_index_set(std::size_t alphabet_size, int m,
                                             std::vector<std::string> tags);

std::optional<std::size_t> find_index(std::span<const SeriesIndex> set, const SeriesIndex& j);

}  // namespace lsreal
