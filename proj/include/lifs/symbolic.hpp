#ifndef LIFS_SYMBOLIC_HPP
#define LIFS_SYMBOLIC_HPP

#include <set>
#include <string>
#include <vector>

#include "lifs/errors.hpp"

namespace lifs {

// A finite word over the alphabet {0, ..., K-1}, earlier symbols first.
using Word = std::vector<int>;

std::string word_to_string(const Word& w);

// All length-n words in lexicographic order.
std::vector<Word> all_words(int alphabet, int length);

// Words compatible with a transition matrix: matrix[i][j] == 1 permits a step
// from symbol j to symbol i, and words list the earlier symbol first, so a
// word u is accepted when matrix[u[t+1]][u[t]] == 1 for every t.
std::vector<Word> walk_words(const std::vector<std::vector<int>>& matrix,
                             int length);

// A factorial language truncated at a finite horizon: all admissible words of
// every length up to max_length (length 0 is the empty word, always present).
class LanguageSample {
 public:
  LanguageSample(int alphabet, std::vector<Word> words);

  int alphabet() const { return alphabet_; }
  int max_length() const { return max_length_; }
  bool contains(const Word& w) const;
  const std::vector<Word>& words_of_length(int n) const;
  std::size_t word_count(int n) const { return words_of_length(n).size(); }

 private:
  int alphabet_ = 0;
  int max_length_ = 0;
  std::vector<std::vector<Word>> by_length_;
  std::set<Word> index_;
};

// True when every contiguous factor of every sampled word is also sampled.
bool check_factorial(const LanguageSample& sample);

// Number of distinct follower sets over the admissible words of length m,
// with followers truncated to the sample horizon: two words are identified
// when they admit exactly the same continuations v with |v| <= max_length-m.
// A strictly growing count across m is a finite witness against soficity.
std::size_t follower_set_count(const LanguageSample& sample, int m);

struct SftCheck {
  bool consistent = true;
  Word witness;  // a word rejected by the language whose window factors are
                 // all admissible; empty when consistent
};

// Tests whether the sample is consistent with a memory-k shift of finite
// type: the one-step follower set of every admissible word must coincide
// with that of its length-k tail. The first violation (shortest word, then
// lexicographic) is returned as tail-consistent counterexample u.s.
SftCheck is_k_step_sft(const LanguageSample& sample, int k);

}  // namespace lifs

#endif  // LIFS_SYMBOLIC_HPP
