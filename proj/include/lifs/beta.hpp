#ifndef LIFS_BETA_HPP
#define LIFS_BETA_HPP

#include <vector>

#include "lifs/ifs.hpp"
#include "lifs/symbolic.hpp"

namespace lifs {

// Expansions in a non-integer base beta > 1: the map x -> beta*x mod 1,
// its greedy digit sequences, the Parry classification of the digits of
// one, the derived interval system whose branches invert the map, and
// the lexicographic word test those digits induce.

enum class ParryKind { Simple, Periodic, Undetermined };

struct ParryClass {
  ParryKind kind = ParryKind::Undetermined;
  int length = 0;     // Simple: position of the last nonzero digit
  int preperiod = 0;  // Periodic
  int period = 0;     // Periodic
  int depth = 0;      // Undetermined: reliable digits consulted
};

// One greedy digit run with its certified prefix. Digits are computed in
// extended precision with a running error bound that also accounts for
// the half-ulp uncertainty of the double inputs; `reliable` counts the
// leading digits whose floor cannot flip within that bound. When the
// orbit meets an integer inside the error bound, the run asserts the
// exact hit (`zero_tail`), and the all-zero continuation is exact.
struct DigitRun {
  std::vector<int> digits;
  int reliable = 0;
  bool zero_tail = false;
};

struct BetaSystem {
  long double beta = 0.0L;
  int m = 0;                // ceil(beta), alphabet {0, ..., m-1}
  std::vector<int> digits;  // digit sequence of 1
  int reliable = 0;
  bool zero_tail = false;
  ParryClass classification;
};

// beta * x mod 1 (so 1 maps to the fractional part of beta).
double beta_map(double beta, double x);

// Greedy digits of x in base beta: d_k = floor(beta * T^{k-1}(x)).
// `beta_err` overrides the assumed input uncertainty of beta (pass the
// bracket width when beta came from a root search); negative means the
// default half-ulp. BadConfig unless beta > 1, 0 <= x <= 1, depth >= 1.
DigitRun greedy_digits(long double beta, long double x, int depth,
                       long double beta_err = -1.0L);

// Assembles the system: digit sequence of 1 to `depth` and its
// classification. Integer beta uses the constant convention
// d(1) = (beta-1, beta-1, ...). BadConfig unless beta > 1, depth >= 4.
BetaSystem make_beta_system(double beta, int depth = 64);

// Classification from the certified digit prefix (at most `depth`
// digits): Simple on an exact zero tail, Periodic when a repetition
// with at least two full periods and four digits of margin is visible,
// otherwise Undetermined. Never claims aperiodicity. BadConfig for
// depth < 4 or tol < 0.
ParryClass classify_parry(const BetaSystem& b, int depth, double tol);

// The interval system inverting the map: f_j(x) = (x+j)/beta on
// X_j = [0,1] for j <= m-2 and X_{m-1} = [0, beta-(m-1)], at the given
// grid level. IntegerBeta when the last domain would degenerate.
LocalIFS beta_local_ifs(const BetaSystem& b, int level);

enum class LexStatus { Yes, No, Undetermined };

// The digit-sequence order test: every shift of c must be
// lexicographically <= the digit sequence of 1, comparing at most
// `depth` positions. Comparisons that would need digits beyond the
// certified prefix return Undetermined. BadWord for symbols outside
// {0, ..., m-1}; BadConfig for depth < 1.
LexStatus lex_admissible(const BetaSystem& b, const Word& c, int depth);

// Root of beta = 4 + sum_i 4 * beta^-(n_1 + ... + n_i + i) over the
// first `depth` terms of the strictly increasing run lengths, found by
// bisection on (4,5) to the requested residual. The returned system
// carries the digit prefix 4 0^{n_1} 4 ... 4 (known by construction
// through the last included 4); beyond it the digits are left
// uncertified, so the classification stays Undetermined. BadConfig for
// malformed runs; NoRoot if the bracket fails.
BetaSystem solve_sparse_beta(const std::vector<int>& runs, int depth,
                             double tol);

// All words over the sub-alphabet passing the order test, lengths
// 1..max_length. Words whose test is Undetermined are omitted (the
// certified prefix decides every comparison when max_length stays below
// it). BadConfig for an empty or out-of-range alphabet.
LanguageSample restricted_words(const BetaSystem& b,
                                const std::vector<int>& alphabet,
                                int max_length);

}  // namespace lifs

#endif  // LIFS_BETA_HPP
