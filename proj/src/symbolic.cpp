#include "lifs/symbolic.hpp"

#include <algorithm>
#include <map>

namespace lifs {

std::string word_to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (int sym : w) {
    if (sym < 0 || sym > 9) {
      s += '(' + std::to_string(sym) + ')';
    } else {
      s += static_cast<char>('0' + sym);
    }
  }
  return s;
}

std::vector<Word> all_words(int alphabet, int length) {
  if (alphabet < 1) fail(ErrorCode::BadWord, "alphabet must be nonempty");
  if (length < 0) fail(ErrorCode::BadWord, "negative word length");
  std::vector<Word> out;
  Word w(static_cast<std::size_t>(length), 0);
  while (true) {
    out.push_back(w);
    int i = length - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == alphabet - 1) {
      w[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++w[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<Word> walk_words(const std::vector<std::vector<int>>& matrix,
                             int length) {
  const int k = static_cast<int>(matrix.size());
  if (k < 1) fail(ErrorCode::BadWord, "empty transition matrix");
  for (const auto& row : matrix)
    if (static_cast<int>(row.size()) != k)
      fail(ErrorCode::BadWord, "transition matrix is not square");
  if (length < 0) fail(ErrorCode::BadWord, "negative word length");
  std::vector<Word> out;
  Word w;
  w.reserve(static_cast<std::size_t>(length));
  auto dfs = [&](auto&& self, int depth) -> void {
    if (depth == length) {
      out.push_back(w);
      return;
    }
    for (int s = 0; s < k; ++s) {
      if (!w.empty() &&
          matrix[static_cast<std::size_t>(s)]
                [static_cast<std::size_t>(w.back())] == 0)
        continue;
      w.push_back(s);
      self(self, depth + 1);
      w.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

LanguageSample::LanguageSample(int alphabet, std::vector<Word> words)
    : alphabet_(alphabet) {
  if (alphabet < 1) fail(ErrorCode::BadWord, "alphabet must be nonempty");
  for (Word& w : words) {
    for (int s : w)
      if (s < 0 || s >= alphabet)
        fail(ErrorCode::BadWord, "symbol outside the alphabet");
    max_length_ = std::max(max_length_, static_cast<int>(w.size()));
  }
  by_length_.assign(static_cast<std::size_t>(max_length_) + 1, {});
  for (Word& w : words) {
    if (index_.insert(w).second)
      by_length_[w.size()].push_back(std::move(w));
  }
  index_.insert(Word{});
  for (auto& bucket : by_length_) std::sort(bucket.begin(), bucket.end());
  if (by_length_[0].empty()) by_length_[0].push_back(Word{});
}

bool LanguageSample::contains(const Word& w) const {
  return index_.count(w) != 0;
}

const std::vector<Word>& LanguageSample::words_of_length(int n) const {
  if (n < 0 || n > max_length_)
    fail(ErrorCode::DepthExceeded, "length outside the sampled horizon");
  return by_length_[static_cast<std::size_t>(n)];
}

bool check_factorial(const LanguageSample& sample) {
  for (int n = 1; n <= sample.max_length(); ++n) {
    for (const Word& w : sample.words_of_length(n)) {
      // Dropping one symbol from either end stays admissible iff all factors
      // do (by induction over length).
      Word head(w.begin(), w.end() - 1);
      Word tail(w.begin() + 1, w.end());
      if (!sample.contains(head) || !sample.contains(tail)) return false;
    }
  }
  return true;
}

namespace {

// Sorted list of all sampled continuations of w up to the horizon.
std::vector<Word> follower_signature(const LanguageSample& sample,
                                     const Word& w) {
  std::vector<Word> sig;
  const int budget = sample.max_length() - static_cast<int>(w.size());
  Word ext = w;
  auto dfs = [&](auto&& self, int depth) -> void {
    if (depth > 0) sig.push_back(Word(ext.begin() + static_cast<long>(w.size()),
                                      ext.end()));
    if (depth == budget) return;
    for (int s = 0; s < sample.alphabet(); ++s) {
      ext.push_back(s);
      if (sample.contains(ext)) self(self, depth + 1);
      ext.pop_back();
    }
  };
  dfs(dfs, 0);
  return sig;
}

}  // namespace

std::size_t follower_set_count(const LanguageSample& sample, int m) {
  if (m < 0 || m > sample.max_length())
    fail(ErrorCode::DepthExceeded, "length outside the sampled horizon");
  std::set<std::vector<Word>> distinct;
  for (const Word& w : sample.words_of_length(m))
    distinct.insert(follower_signature(sample, w));
  return distinct.size();
}

SftCheck is_k_step_sft(const LanguageSample& sample, int k) {
  if (k < 0) fail(ErrorCode::BadWord, "negative memory");
  SftCheck res;
  // In a memory-k language the admissibility of u.s depends only on the
  // length-k tail of u, so scan words from length k+1 up; by factoriality a
  // violation is always "tail allows s but u does not".
  for (int m = k + 1; m + 1 <= sample.max_length(); ++m) {
    for (const Word& u : sample.words_of_length(m)) {
      const Word tail(u.end() - k, u.end());
      for (int s = 0; s < sample.alphabet(); ++s) {
        Word ts = tail;
        ts.push_back(s);
        if (!sample.contains(ts)) continue;
        Word us = u;
        us.push_back(s);
        if (!sample.contains(us)) {
          res.consistent = false;
          res.witness = us;
          return res;
        }
      }
    }
  }
  return res;
}

}  // namespace lifs
