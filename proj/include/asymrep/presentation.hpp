#pragma once

// Finitely presented groups: a small DSL, word algebra in the free or abelian
// normal form, and balls of words used as the finite subsets F.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asymrep {

enum class NormalForm { free, abelian };

struct Letter {
  std::size_t generator = 0;
  int sign = 1;  // +1 or -1

  auto operator<=>(const Letter&) const = default;
};

/// A word over generator indices. Not necessarily reduced; see reduce_word.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  static Word letter(std::size_t generator, int sign = 1);

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  NormalForm normal_form = NormalForm::free;

  std::size_t rank() const noexcept { return generators.size(); }
  std::optional<std::size_t> find_generator(std::string_view name) const;
};

/// Parses `<gens | relators>`. The normal form is abelian exactly when every
/// relator is a commutator of two distinct generators and every pair is covered.
GroupPresentation parse_presentation(std::string_view text);

/// As above with an explicit normal form; abelian is rejected unless the
/// relators are exactly the generator-pair commutators.
GroupPresentation parse_presentation(std::string_view text, NormalForm normal_form);

/// Parses a bare word (`term+`) against the generators of `p`.
Word parse_word(std::string_view text, const GroupPresentation& p);

std::string format_word(const Word& w, const GroupPresentation& p);
std::string format_presentation(const GroupPresentation& p);

/// True when the relators make `p` the free abelian group on its generators.
bool relators_are_full_commutators(const GroupPresentation& p);

Word reduce_word(const Word& w, NormalForm normal_form);
Word word_inverse(const Word& w);
Word word_multiply(const Word& u, const Word& v, const GroupPresentation& p);

/// Ordered, inversion-closed set of normal-form words containing the identity.
class FiniteSubset {
 public:
  /// Validates closure under inversion, presence of the identity and uniqueness.
  static FiniteSubset from_words(const GroupPresentation& p, std::vector<Word> words);

  const std::vector<Word>& words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_.size(); }
  std::optional<int> radius() const noexcept { return radius_; }
  NormalForm normal_form() const noexcept { return normal_form_; }
  std::size_t rank() const noexcept { return rank_; }

  bool contains(const Word& normal_form_word) const;
  std::optional<std::size_t> index_of(const Word& normal_form_word) const;

 private:
  friend FiniteSubset ball(const GroupPresentation& p, int r);
  FiniteSubset() = default;

  std::vector<Word> words_;
  std::map<Word, std::size_t> index_;
  std::optional<int> radius_;
  NormalForm normal_form_ = NormalForm::free;
  std::size_t rank_ = 0;
};

/// All normal forms of products of at most r generator letters, in BFS order.
FiniteSubset ball(const GroupPresentation& p, int r);

}  // namespace asymrep
