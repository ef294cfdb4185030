#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace freedep {

/// A signed generator of the free group. Generators are the lowercase ASCII
/// letters 'a'..'z'; the inverse of 'a' is written 'A'. Packed as
/// 2 * generator + inverse, so comparing codes gives a < A < b < B < ...
class Letter {
 public:
  static constexpr int kMaxGenerators = 26;
  static constexpr int kCodes = 2 * kMaxGenerators;

  constexpr Letter() = default;
  constexpr Letter(int generator, bool inverse)
      : code_(static_cast<std::uint8_t>(2 * generator + (inverse ? 1 : 0))) {}

  static constexpr Letter from_code(int code) {
    return Letter(code >> 1, (code & 1) != 0);
  }
  /// Throws InputError for anything outside [a-zA-Z].
  static Letter from_char(char c);

  constexpr int generator() const { return code_ >> 1; }
  constexpr bool is_inverse() const { return (code_ & 1) != 0; }
  constexpr int code() const { return code_; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1); }
  constexpr Letter positive() const { return Letter(generator(), false); }
  char to_char() const;

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::uint8_t code_ = 0;
};

/// Ordered set of generators. The order drives lexical tie-breaking
/// (a < a^-1 < b < b^-1 < ... in alphabet order) and echelon prefixes.
class Alphabet {
 public:
  Alphabet() = default;
  /// Throws InputError on repeated or non-lowercase letters.
  explicit Alphabet(std::string_view letters);

  static Alphabet from_generators(std::vector<int> generators);

  std::size_t size() const { return generators_.size(); }
  bool empty() const { return generators_.empty(); }
  const std::vector<int>& generators() const { return generators_; }
  bool contains(int generator) const;
  bool contains(Letter letter) const { return contains(letter.generator()); }
  /// Position of the generator in this alphabet, or -1.
  int position(int generator) const;
  /// Sort key of a signed letter: 2 * position + inverse.
  int order(Letter letter) const;
  /// Signed letters in lexical order.
  std::vector<Letter> letters() const;

  Alphabet prefix(std::size_t count) const;
  /// This alphabet followed by the letters of `other` it does not contain.
  Alphabet merged(const Alphabet& other) const;
  bool disjoint(const Alphabet& other) const;

  std::string to_string() const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<int> generators_;
};

namespace detail {

// Stack-based free reduction for any symbol type with inverse().
template <class Symbol>
std::vector<Symbol> free_reduce(std::span<const Symbol> raw) {
  std::vector<Symbol> out;
  out.reserve(raw.size());
  for (const Symbol& s : raw) {
    if (!out.empty() && out.back() == s.inverse()) {
      out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace detail

/// A freely reduced word; the empty word is the identity.
class Word {
 public:
  Word() = default;

  /// Free reduction of an arbitrary letter sequence.
  static Word reduce(std::span<const Letter> raw);
  /// As above, rejecting letters outside `alphabet` with InputError.
  static Word reduce(std::span<const Letter> raw, const Alphabet& alphabet);

  /// Parses "abA", "a^10b^-2", "1" (identity) or "". Whitespace is ignored.
  static Word parse(std::string_view text);
  static Word parse(std::string_view text, const Alphabet& alphabet);

  static Word letter(Letter l) { return Word(std::vector<Letter>{l}); }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  Word power(int exponent) const;
  Word prefix(std::size_t length) const;
  Word suffix_from(std::size_t start) const;
  bool uses_only(const Alphabet& alphabet) const;
  /// Sorted generators occurring in the word.
  std::vector<int> generators() const;

  /// Plain letters, "1" for the identity.
  std::string to_string() const;
  /// Runs collapsed to powers: "a^2bA^3".
  std::string to_compact_string() const;

  friend Word operator*(const Word& lhs, const Word& rhs);
  bool operator==(const Word&) const = default;
  /// Code order, used only for container keys.
  auto operator<=>(const Word& other) const = default;

 private:
  explicit Word(std::vector<Letter> reduced) : letters_(std::move(reduced)) {}
  std::vector<Letter> letters_;
};

/// Shortlex order with letters ranked by `alphabet`.
bool shortlex_less(const Word& lhs, const Word& rhs, const Alphabet& alphabet);

/// Letter of a formal word over subgroup-generator tags g1..gr and the
/// variable x. Packed as 2 * index + inverse, index 0 being x.
class FormalSymbol {
 public:
  constexpr FormalSymbol() = default;
  static constexpr FormalSymbol variable(bool inverse = false) {
    return FormalSymbol(inverse ? 1u : 0u);
  }
  /// g_index with index >= 1.
  static constexpr FormalSymbol generator(std::uint32_t index, bool inverse = false) {
    return FormalSymbol(2 * index + (inverse ? 1u : 0u));
  }

  constexpr bool is_variable() const { return (code_ >> 1) == 0; }
  /// 1-based generator index; 0 for x.
  constexpr std::uint32_t index() const { return code_ >> 1; }
  constexpr bool is_inverse() const { return (code_ & 1) != 0; }
  constexpr FormalSymbol inverse() const { return FormalSymbol(code_ ^ 1u); }

  constexpr auto operator<=>(const FormalSymbol&) const = default;

 private:
  explicit constexpr FormalSymbol(std::uint32_t code) : code_(code) {}
  std::uint32_t code_ = 0;
};

/// Freely reduced word in H * <x>, written over tags for a fixed generating
/// tuple of H plus the variable x.
class FormalWord {
 public:
  FormalWord() = default;

  static FormalWord reduce(std::span<const FormalSymbol> raw);
  static FormalWord variable(int exponent = 1);
  static FormalWord generator(std::uint32_t index, int exponent = 1);

  /// Parses "g1 x^-2", "x g2 X G1", "1". Tokens are g<i> or x, optionally
  /// followed by ^<int>; uppercase G/X denote inverses.
  static FormalWord parse(std::string_view text);

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const std::vector<FormalSymbol>& symbols() const { return symbols_; }

  FormalWord inverse() const;
  FormalWord power(int exponent) const;
  /// Largest generator index used, 0 if none.
  std::uint32_t max_generator_index() const;
  /// Signed exponent sum of x.
  int variable_exponent_sum() const;

  std::string to_string() const;

  friend FormalWord operator*(const FormalWord& lhs, const FormalWord& rhs);
  bool operator==(const FormalWord&) const = default;

 private:
  explicit FormalWord(std::vector<FormalSymbol> reduced) : symbols_(std::move(reduced)) {}
  std::vector<FormalSymbol> symbols_;
};

/// All reduced words of length <= max_length over `alphabet`, in shortlex order.
std::vector<Word> enumerate_reduced_words(const Alphabet& alphabet, std::size_t max_length);

}  // namespace freedep
