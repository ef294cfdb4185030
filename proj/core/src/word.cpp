#include "freedep/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "freedep/errors.hpp"

namespace freedep {

namespace {

bool is_blank(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Parses "^<int>" at text[pos], advancing pos. Returns 1 when absent.
int parse_exponent(std::string_view text, std::size_t& pos) {
  if (pos >= text.size() || text[pos] != '^') return 1;
  ++pos;
  const char* begin = text.data() + pos;
  const char* end = text.data() + text.size();
  int value = 0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr == begin) {
    throw InputError("bad exponent at position " + std::to_string(pos) + " in \"" +
                     std::string(text) + "\"");
  }
  pos += static_cast<std::size_t>(ptr - begin);
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

template <class Symbol>
void append_power(std::vector<Symbol>& out, Symbol s, int exponent) {
  if (exponent < 0) {
    s = s.inverse();
    exponent = -exponent;
  }
  out.insert(out.end(), static_cast<std::size_t>(exponent), s);
}

}  // namespace

Letter Letter::from_char(char c) {
  if (c >= 'a' && c <= 'z') return Letter(c - 'a', false);
  if (c >= 'A' && c <= 'Z') return Letter(c - 'A', true);
  throw InputError(std::string("not a letter: '") + c + "'");
}

char Letter::to_char() const {
  return static_cast<char>((is_inverse() ? 'A' : 'a') + generator());
}

Alphabet::Alphabet(std::string_view letters) {
  for (char c : letters) {
    if (is_blank(c) || c == ',') continue;
    if (c < 'a' || c > 'z') {
      throw InputError(std::string("alphabet letters must be lowercase, got '") + c + "'");
    }
    const int g = c - 'a';
    if (contains(g)) throw InputError(std::string("repeated alphabet letter '") + c + "'");
    generators_.push_back(g);
  }
}

Alphabet Alphabet::from_generators(std::vector<int> generators) {
  Alphabet a;
  for (int g : generators) {
    if (g < 0 || g >= Letter::kMaxGenerators) throw InputError("generator out of range");
    if (a.contains(g)) throw InputError("repeated generator");
    a.generators_.push_back(g);
  }
  return a;
}

bool Alphabet::contains(int generator) const { return position(generator) >= 0; }

int Alphabet::position(int generator) const {
  auto it = std::find(generators_.begin(), generators_.end(), generator);
  return it == generators_.end() ? -1 : static_cast<int>(it - generators_.begin());
}

int Alphabet::order(Letter letter) const {
  return 2 * position(letter.generator()) + (letter.is_inverse() ? 1 : 0);
}

std::vector<Letter> Alphabet::letters() const {
  std::vector<Letter> out;
  out.reserve(2 * generators_.size());
  for (int g : generators_) {
    out.emplace_back(g, false);
    out.emplace_back(g, true);
  }
  return out;
}

Alphabet Alphabet::prefix(std::size_t count) const {
  Alphabet a;
  count = std::min(count, generators_.size());
  a.generators_.assign(generators_.begin(), generators_.begin() + static_cast<long>(count));
  return a;
}

Alphabet Alphabet::merged(const Alphabet& other) const {
  Alphabet a = *this;
  for (int g : other.generators_) {
    if (!a.contains(g)) a.generators_.push_back(g);
  }
  return a;
}

bool Alphabet::disjoint(const Alphabet& other) const {
  return std::none_of(generators_.begin(), generators_.end(),
                      [&](int g) { return other.contains(g); });
}

std::string Alphabet::to_string() const {
  std::string s;
  for (int g : generators_) s.push_back(static_cast<char>('a' + g));
  return s;
}

Word Word::reduce(std::span<const Letter> raw) { return Word(detail::free_reduce(raw)); }

Word Word::reduce(std::span<const Letter> raw, const Alphabet& alphabet) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!alphabet.contains(raw[i])) {
      throw InputError(std::string("letter '") + raw[i].to_char() + "' at position " +
                       std::to_string(i) + " is not in alphabet {" + alphabet.to_string() + "}");
    }
  }
  return reduce(raw);
}

Word Word::parse(std::string_view text) {
  const std::string_view body = trim(text);
  if (body.empty() || body == "1") return Word();
  std::vector<Letter> raw;
  std::size_t pos = 0;
  while (pos < body.size()) {
    const char c = body[pos];
    if (is_blank(c)) {
      ++pos;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw InputError("unexpected '" + std::string(1, c) + "' at position " +
                       std::to_string(pos) + " in word \"" + std::string(body) + "\"");
    }
    const Letter l = Letter::from_char(c);
    ++pos;
    append_power(raw, l, parse_exponent(body, pos));
  }
  return reduce(raw);
}

Word Word::parse(std::string_view text, const Alphabet& alphabet) {
  Word w = parse(text);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!alphabet.contains(w[i])) {
      throw InputError(std::string("letter '") + w[i].to_char() + "' in word \"" +
                       std::string(trim(text)) + "\" is not in alphabet {" +
                       alphabet.to_string() + "}");
    }
  }
  return w;
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& l : out) l = l.inverse();
  return Word(std::move(out));
}

Word Word::power(int exponent) const {
  const Word base = exponent < 0 ? inverse() : *this;
  Word out;
  for (int i = 0; i < std::abs(exponent); ++i) out = out * base;
  return out;
}

Word Word::prefix(std::size_t length) const {
  length = std::min(length, letters_.size());
  return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<long>(length)));
}

Word Word::suffix_from(std::size_t start) const {
  start = std::min(start, letters_.size());
  return Word(std::vector<Letter>(letters_.begin() + static_cast<long>(start), letters_.end()));
}

bool Word::uses_only(const Alphabet& alphabet) const {
  return std::all_of(letters_.begin(), letters_.end(),
                     [&](Letter l) { return alphabet.contains(l); });
}

std::vector<int> Word::generators() const {
  std::vector<int> gens;
  for (Letter l : letters_) gens.push_back(l.generator());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

std::string Word::to_string() const {
  if (letters_.empty()) return "1";
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(l.to_char());
  return s;
}

std::string Word::to_compact_string() const {
  if (letters_.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < letters_.size();) {
    std::size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    s.push_back(letters_[i].to_char());
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

Word operator*(const Word& lhs, const Word& rhs) {
  std::vector<Letter> out = lhs.letters_;
  for (Letter l : rhs.letters_) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out));
}

bool shortlex_less(const Word& lhs, const Word& rhs, const Alphabet& alphabet) {
  if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const int a = alphabet.order(lhs[i]);
    const int b = alphabet.order(rhs[i]);
    if (a != b) return a < b;
  }
  return false;
}

FormalWord FormalWord::reduce(std::span<const FormalSymbol> raw) {
  return FormalWord(detail::free_reduce(raw));
}

FormalWord FormalWord::variable(int exponent) {
  std::vector<FormalSymbol> raw;
  append_power(raw, FormalSymbol::variable(), exponent);
  return FormalWord(std::move(raw));
}

FormalWord FormalWord::generator(std::uint32_t index, int exponent) {
  if (index == 0) throw InputError("generator tags are 1-based");
  std::vector<FormalSymbol> raw;
  append_power(raw, FormalSymbol::generator(index), exponent);
  return FormalWord(std::move(raw));
}

FormalWord FormalWord::parse(std::string_view text) {
  const std::string_view body = trim(text);
  if (body.empty() || body == "1") return FormalWord();
  std::vector<FormalSymbol> raw;
  std::size_t pos = 0;
  while (pos < body.size()) {
    const char c = body[pos];
    if (is_blank(c) || c == '*') {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    FormalSymbol symbol;
    if (c == 'x' || c == 'X') {
      symbol = FormalSymbol::variable(c == 'X');
      ++pos;
    } else if (c == 'g' || c == 'G') {
      ++pos;
      const char* begin = body.data() + pos;
      std::uint32_t index = 0;
      auto [ptr, ec] = std::from_chars(begin, body.data() + body.size(), index);
      if (ec != std::errc() || ptr == begin || index == 0) {
        throw InputError("bad generator tag at position " + std::to_string(start) +
                         " in \"" + std::string(body) + "\"");
      }
      pos += static_cast<std::size_t>(ptr - begin);
      symbol = FormalSymbol::generator(index, c == 'G');
    } else {
      throw InputError("unexpected '" + std::string(1, c) + "' at position " +
                       std::to_string(pos) + " in \"" + std::string(body) + "\"");
    }
    append_power(raw, symbol, parse_exponent(body, pos));
  }
  return reduce(raw);
}

FormalWord FormalWord::inverse() const {
  std::vector<FormalSymbol> out(symbols_.rbegin(), symbols_.rend());
  for (FormalSymbol& s : out) s = s.inverse();
  return FormalWord(std::move(out));
}

FormalWord FormalWord::power(int exponent) const {
  const FormalWord base = exponent < 0 ? inverse() : *this;
  FormalWord out;
  for (int i = 0; i < std::abs(exponent); ++i) out = out * base;
  return out;
}

std::uint32_t FormalWord::max_generator_index() const {
  std::uint32_t m = 0;
  for (FormalSymbol s : symbols_) m = std::max(m, s.index());
  return m;
}

int FormalWord::variable_exponent_sum() const {
  int sum = 0;
  for (FormalSymbol s : symbols_) {
    if (s.is_variable()) sum += s.is_inverse() ? -1 : 1;
  }
  return sum;
}

std::string FormalWord::to_string() const {
  if (symbols_.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < symbols_.size();) {
    std::size_t j = i;
    while (j < symbols_.size() && symbols_[j] == symbols_[i]) ++j;
    const FormalSymbol s = symbols_[i];
    if (!first) out << ' ';
    first = false;
    if (s.is_variable()) {
      out << 'x';
    } else {
      out << 'g' << s.index();
    }
    const long exponent = static_cast<long>(j - i) * (s.is_inverse() ? -1 : 1);
    if (exponent != 1) out << '^' << exponent;
    i = j;
  }
  return out.str();
}

FormalWord operator*(const FormalWord& lhs, const FormalWord& rhs) {
  std::vector<FormalSymbol> out = lhs.symbols_;
  for (FormalSymbol s : rhs.symbols_) {
    if (!out.empty() && out.back() == s.inverse()) {
      out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return FormalWord(std::move(out));
}

std::vector<Word> enumerate_reduced_words(const Alphabet& alphabet, std::size_t max_length) {
  const std::vector<Letter> letters = alphabet.letters();
  std::vector<Word> all{Word()};
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const std::size_t layer_end = all.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      const Word w = all[i];
      for (Letter l : letters) {
        if (!w.empty() && w[w.size() - 1] == l.inverse()) continue;
        all.push_back(w * Word::letter(l));
      }
    }
    layer_begin = layer_end;
  }
  return all;
}

}  // namespace freedep
