#include "lifs/beta.hpp"

#include <algorithm>
#include <cmath>

namespace lifs {

namespace {

// Relative rounding slack per extended-precision operation, taken a bit
// above the 64-bit-mantissa epsilon.
constexpr long double kEps = 2e-19L;
// Relative half-ulp of a double input.
constexpr long double kHalfUlp = 1.2e-16L;
// Integer hits are only asserted while the accumulated error is still
// this small; a near-integer approach under a bigger bar is treated as
// a coincidence and ends certification instead.
constexpr long double kSnapCap = 1e-9L;

bool is_integer(long double x) { return std::floor(x) == x; }

int last_nonzero(const std::vector<int>& d) {
  for (std::size_t i = d.size(); i-- > 0;)
    if (d[i] != 0) return static_cast<int>(i) + 1;
  return 0;
}

}  // namespace

double beta_map(double beta, double x) {
  if (beta <= 1.0) fail(ErrorCode::BadConfig, "base must exceed one");
  if (x < 0.0 || x > 1.0) fail(ErrorCode::BadConfig, "point outside [0,1]");
  const double y = beta * x;
  return y - std::floor(y);
}

DigitRun greedy_digits(long double beta, long double x, int depth,
                       long double beta_err) {
  if (beta <= 1.0L) fail(ErrorCode::BadConfig, "base must exceed one");
  if (x < 0.0L || x > 1.0L) fail(ErrorCode::BadConfig, "point outside [0,1]");
  if (depth < 1) fail(ErrorCode::BadConfig, "need at least one digit");
  if (beta_err < 0.0L) beta_err = beta * kHalfUlp;

  DigitRun run;
  run.digits.assign(static_cast<std::size_t>(depth), 0);
  long double xerr = std::abs(x) * kHalfUlp;
  bool certain = true;
  for (int k = 0; k < depth; ++k) {
    const long double y = beta * x;
    const long double yerr =
        beta_err * x + beta * xerr + kEps * std::abs(y) + 1e-30L;
    const long double fl = std::floor(y);
    const long double dist = std::min(y - fl, fl + 1.0L - y);
    if (certain && dist <= yerr && yerr < kSnapCap) {
      // The orbit value is an integer within the certified bound; assert
      // the exact hit, which makes the remaining digits exact zeros.
      const auto n = static_cast<int>(std::llround(static_cast<double>(y)));
      run.digits[static_cast<std::size_t>(k)] = n;
      run.reliable = depth;
      run.zero_tail = true;
      return run;
    }
    run.digits[static_cast<std::size_t>(k)] = static_cast<int>(fl);
    if (certain && yerr < dist / 2.0L)
      run.reliable = k + 1;
    else
      certain = false;
    x = y - fl;
    xerr = yerr + kEps;
  }
  return run;
}

BetaSystem make_beta_system(double beta, int depth) {
  if (beta <= 1.0) fail(ErrorCode::BadConfig, "base must exceed one");
  if (depth < 4) fail(ErrorCode::BadConfig, "need at least four digits");

  BetaSystem b;
  b.beta = static_cast<long double>(beta);
  b.m = static_cast<int>(std::ceil(beta));
  if (is_integer(b.beta)) {
    // Constant convention for whole bases: the digit sequence of 1 is
    // (beta-1) repeated, an immediately periodic expansion.
    b.m = static_cast<int>(beta);
    b.digits.assign(static_cast<std::size_t>(depth),
                    static_cast<int>(beta) - 1);
    b.reliable = depth;
    b.classification =
        ParryClass{ParryKind::Periodic, 0, /*preperiod=*/0, /*period=*/1, 0};
    return b;
  }
  DigitRun run = greedy_digits(b.beta, 1.0L, depth);
  b.digits = std::move(run.digits);
  b.reliable = run.reliable;
  b.zero_tail = run.zero_tail;
  b.classification = classify_parry(b, depth, 0.0);
  return b;
}

ParryClass classify_parry(const BetaSystem& b, int depth, double tol) {
  if (depth < 4) fail(ErrorCode::BadConfig, "need at least four digits");
  if (tol < 0.0) fail(ErrorCode::BadConfig, "negative tolerance");
  const int r = std::min({depth, b.reliable,
                          static_cast<int>(b.digits.size())});
  if (b.zero_tail) {
    ParryClass c;
    c.kind = ParryKind::Simple;
    c.length = last_nonzero(b.digits);
    return c;
  }
  // Smallest visible period, then earliest start; require two full
  // periods plus four digits of slack before trusting a repetition.
  for (int period = 1; 2 * period + 4 <= r; ++period) {
    for (int pre = 0; pre + 2 * period + 4 <= r; ++pre) {
      bool repeats = true;
      for (int i = pre; i + period < r && repeats; ++i)
        repeats = b.digits[static_cast<std::size_t>(i + period)] ==
                  b.digits[static_cast<std::size_t>(i)];
      if (repeats) {
        ParryClass c;
        c.kind = ParryKind::Periodic;
        c.preperiod = pre;
        c.period = period;
        return c;
      }
    }
  }
  ParryClass c;
  c.kind = ParryKind::Undetermined;
  c.depth = r;
  return c;
}

LocalIFS beta_local_ifs(const BetaSystem& b, int level) {
  if (is_integer(b.beta))
    fail(ErrorCode::IntegerBeta, "whole base degenerates the last domain");
  const double beta = static_cast<double>(b.beta);
  const double lambda = 1.0 / beta;
  std::vector<SpaceMap> maps;
  std::vector<SpaceSet> domains;
  for (int j = 0; j < b.m; ++j) {
    maps.emplace_back(make_contraction(
        AffineMap::scale_translate(lambda, static_cast<double>(j) * lambda),
        lambda));
    const double hi = (j == b.m - 1) ? beta - (b.m - 1) : 1.0;
    domains.emplace_back(cover_box(1, level, Point::make(0.0),
                                   Point::make(hi)));
  }
  return make_local_ifs(std::move(maps), std::move(domains));
}

LexStatus lex_admissible(const BetaSystem& b, const Word& c, int depth) {
  if (depth < 1) fail(ErrorCode::BadConfig, "need a positive depth");
  for (int s : c)
    if (s < 0 || s >= b.m)
      fail(ErrorCode::BadWord, "symbol outside the digit alphabet");
  const std::size_t known = std::min(
      b.digits.size(),
      static_cast<std::size_t>(b.zero_tail ? depth : b.reliable));
  for (std::size_t shift = 0; shift < c.size(); ++shift) {
    const std::size_t len =
        std::min(c.size() - shift, static_cast<std::size_t>(depth));
    bool decided = false;
    for (std::size_t i = 0; i < len && !decided; ++i) {
      // Digit i of the reference sequence: exact zeros continue a
      // certified zero tail, everything else past `known` is unknown.
      int ref;
      if (i < known)
        ref = b.digits[i];
      else if (b.zero_tail)
        ref = 0;
      else
        return LexStatus::Undetermined;
      const int cur = c[shift + i];
      if (cur > ref) return LexStatus::No;
      if (cur < ref) decided = true;  // this shift is strictly below
    }
  }
  return LexStatus::Yes;
}

BetaSystem solve_sparse_beta(const std::vector<int>& runs, int depth,
                             double tol) {
  if (depth < 1 || static_cast<std::size_t>(depth) > runs.size())
    fail(ErrorCode::BadConfig, "depth must address given run lengths");
  if (tol <= 0.0) fail(ErrorCode::BadConfig, "need a positive residual bound");
  for (std::size_t i = 0; i < static_cast<std::size_t>(depth); ++i) {
    if (runs[i] < 1) fail(ErrorCode::BadConfig, "run lengths must be positive");
    if (i > 0 && runs[i] <= runs[i - 1])
      fail(ErrorCode::BadConfig, "run lengths must strictly increase");
  }

  // Exponents e_i = i + n_1 + ... + n_i of the defining series.
  std::vector<int> exps;
  int acc = 0;
  for (int i = 0; i < depth; ++i) {
    acc += runs[static_cast<std::size_t>(i)] + 1;
    exps.push_back(acc);
  }
  const auto residual = [&exps](long double beta) {
    long double s = beta - 4.0L;
    for (int e : exps) s -= 4.0L * std::pow(beta, static_cast<long double>(-e));
    return s;
  };
  long double lo = 4.0L + 1e-18L, hi = 5.0L;
  if (!(residual(lo) < 0.0L) || !(residual(hi) > 0.0L))
    fail(ErrorCode::NoRoot, "series root left the (4,5) bracket");
  for (int it = 0; it < 200 && hi - lo > 1e-19L * hi; ++it) {
    const long double mid = (lo + hi) / 2.0L;
    (residual(mid) < 0.0L ? lo : hi) = mid;
  }
  const long double root = (lo + hi) / 2.0L;
  if (std::abs(static_cast<double>(residual(root))) >= tol)
    fail(ErrorCode::NoRoot, "bisection could not reach the residual bound");

  BetaSystem b;
  b.beta = root;
  b.m = 5;
  // Digits of 1 known by construction: 4, then 0-runs separated by 4s,
  // ending on the last 4 the truncation justifies.
  b.digits.push_back(4);
  for (int i = 0; i < depth; ++i) {
    for (int z = 0; z < runs[static_cast<std::size_t>(i)]; ++z)
      b.digits.push_back(0);
    b.digits.push_back(4);
  }
  b.reliable = static_cast<int>(b.digits.size());
  b.zero_tail = false;
  b.classification.kind = ParryKind::Undetermined;
  b.classification.depth = b.reliable;
  return b;
}

LanguageSample restricted_words(const BetaSystem& b,
                                const std::vector<int>& alphabet,
                                int max_length) {
  if (max_length < 1) fail(ErrorCode::BadConfig, "need a positive depth");
  if (alphabet.empty()) fail(ErrorCode::BadConfig, "empty alphabet");
  std::vector<int> symbols = alphabet;
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  for (int s : symbols)
    if (s < 0 || s >= b.m)
      fail(ErrorCode::BadConfig, "alphabet outside the digit range");

  // A failed order test stays failed under extension, so grow admissible
  // words only.
  std::vector<Word> all;
  std::vector<Word> frontier{Word{}};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (int s : symbols) {
        Word e = w;
        e.push_back(s);
        if (lex_admissible(b, e, max_length) == LexStatus::Yes) {
          all.push_back(e);
          next.push_back(std::move(e));
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return LanguageSample(b.m, std::move(all));
}

}  // namespace lifs
