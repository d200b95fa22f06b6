#include "ramify/analyzer.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>

#include "ramify/error.hpp"

namespace ramify {

namespace {

struct Term {
  std::int64_t value = 0;
  std::int64_t index = 0;
};

// Valuations n v(binom(i, j) f_i alpha^{i-n}) for i in [j, n]; the minimizer
// count lets residues_of() insist on a unique one.
std::vector<Term> point_terms(const BinomialContext& ctx, const EisensteinData& f, std::int64_t j) {
  const std::int64_t n = f.degree();
  std::vector<Term> out;
  for (std::int64_t i = j; i <= n; ++i)
    if (const auto Fi = f.F(i)) out.push_back({n * (ctx.B(i, j) + *Fi - 1) + i, i});
  return out;
}

}  // namespace

std::vector<Point> ramification_points(const BinomialContext& ctx, const EisensteinData& f) {
  std::vector<Point> out;
  for (std::int64_t j = 1; j <= f.degree(); ++j) {
    const auto terms = point_terms(ctx, f, j);
    if (terms.empty()) continue;
    const auto best = std::min_element(terms.begin(), terms.end(),
                                       [](const Term& a, const Term& b) { return a.value < b.value; });
    out.push_back({j, best->value});
  }
  return out;
}

RamPolygon polygon_of(const BinomialContext& ctx, const EisensteinData& f) {
  f.validate();
  const auto pts = ramification_points(ctx, f);
  return RamPolygon::make(ctx.p(), f.degree(), lower_convex_hull(pts));
}

FinePolygon fine_of(const BinomialContext& ctx, const EisensteinData& f) {
  const RamPolygon P = polygon_of(ctx, f);
  std::vector<Point> on_hull;
  for (const auto& pt : ramification_points(ctx, f))
    if (P.at(pt.x) == Rational(pt.J)) on_hull.push_back(pt);
  return FinePolygon::make(ctx.p(), f.degree(), std::move(on_hull));
}

FinePolygonWithResidues residues_of(const BinomialContext& ctx, const EisensteinData& f) {
  const auto& field = ctx.base();
  const std::int64_t n = f.degree();
  FinePolygon Pstar = fine_of(ctx, f);
  const FqElement x = field.neg(f.digit(0, 1));

  std::vector<FqElement> residues;
  for (const auto& pt : Pstar.points()) {
    const auto terms = point_terms(ctx, f, pt.x);
    const auto count = std::count_if(terms.begin(), terms.end(), [&](const Term& t) { return t.value == pt.J; });
    if (count != 1) fail(ErrorCode::Internal, "minimizer at j = " + std::to_string(pt.x) + " is not unique");
    const std::int64_t b = std::find_if(terms.begin(), terms.end(), [&](const Term& t) { return t.value == pt.J; })->index;
    const auto d = decompose(pt.J, n);
    if (d.b != b) fail(ErrorCode::Internal, "minimizer at j = " + std::to_string(pt.x) + " disagrees with R_j mod n");
    // rho_j = beta(b, j) phi_b (-phi_0)^{-(a+1)}
    residues.push_back(field.mul(field.mul(ctx.beta(b, pt.x), f.phi(b)), field.pow(x, -(d.a + 1))));
  }
  return FinePolygonWithResidues::make(ctx, std::move(Pstar), std::move(residues));
}

InvariantWithUnif unif_of(const BinomialContext& ctx, const EisensteinData& f) {
  return {residues_of(ctx, f), f.digit(0, 1)};
}

Analysis analyze(const BinomialContext& ctx, const EisensteinData& f) {
  auto inv = unif_of(ctx, f);
  return {ramification_points(ctx, f), inv.residues.polygon.hull(), std::move(inv)};
}

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : src_(text) {}

  std::map<std::int64_t, std::int64_t> parse() {
    if (peek() == '\0') fail(ErrorCode::Parse, "empty polynomial");
    std::map<std::int64_t, std::int64_t> coeffs;
    bool first = true;
    while (peek() != '\0') {
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = src_[pos_++] == '-';
      } else if (!first) {
        error("expected '+' or '-'");
      }
      first = false;
      auto [coef, exp] = term();
      if (negative) coef = -coef;
      std::int64_t& slot = coeffs[exp];
      if (__builtin_add_overflow(slot, coef, &slot)) error("coefficient overflow");
    }
    std::erase_if(coeffs, [](const auto& kv) { return kv.second == 0; });
    return coeffs;
  }

 private:
  // Whitespace separates tokens but may not split one.
  char peek() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::Parse, what + " at position " + std::to_string(pos_) + " in \"" + src_ + "\"");
  }

  std::int64_t number() {
    peek();
    std::int64_t v = 0;
    const auto* begin = src_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(begin, src_.data() + src_.size(), v);
    if (ec == std::errc::result_out_of_range) error("number out of range");
    if (ec != std::errc()) error("expected a number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return v;
  }

  std::pair<std::int64_t, std::int64_t> term() {
    std::int64_t coef = 1;
    bool has_coef = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coef = number();
      has_coef = true;
      if (peek() == '*') ++pos_;
    }
    if (peek() != 'x') {
      if (!has_coef) error("expected a term");
      return {coef, 0};
    }
    ++pos_;
    std::int64_t exp = 1;
    if (peek() == '^') {
      ++pos_;
      exp = number();
    }
    return {coef, exp};
  }

  std::string src_;
  std::size_t pos_ = 0;
};

std::int64_t positive_mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

}  // namespace

EisensteinData parse_integer_polynomial(const BaseField& field, std::string_view text) {
  if (field.f() != 1 || field.e() != 1 || field.gamma() != field.one())
    fail(ErrorCode::InvalidArgument, "integer polynomial input needs the base field Q_p");
  const std::int64_t p = field.p();
  const auto coeffs = PolyParser(text).parse();
  if (coeffs.empty()) fail(ErrorCode::NotEisenstein, "zero polynomial");

  const auto [n, lead] = *coeffs.rbegin();
  if (n < 1) fail(ErrorCode::NotEisenstein, "polynomial has degree 0");
  if (lead != 1) fail(ErrorCode::NotEisenstein, "polynomial is not monic");

  // Digits k with p^k <= |c|; the leading digit sits at k = v_p(c).
  std::int64_t depth = 1;
  for (const auto& [i, c] : coeffs) {
    if (i == n) continue;
    if (c % p != 0) fail(ErrorCode::NotEisenstein, "coefficient of x^" + std::to_string(i) + " is not divisible by p");
    std::int64_t k = 0;
    for (std::int64_t m = c < 0 ? -(c / p) : c / p; m > 0; m /= p) ++k;
    depth = std::max(depth, k);
  }
  const auto f0 = coeffs.find(0);
  if (f0 == coeffs.end() || (f0->second / p) % p == 0)
    fail(ErrorCode::NotEisenstein, "constant coefficient does not have valuation exactly 1");

  EisensteinData f(field, n, depth);
  for (const auto& [i, c] : coeffs) {
    if (i == n) continue;
    // c mod p^{depth+1}, digit by digit; the result is the p-adic expansion.
    std::int64_t rest = c / p;
    for (std::int64_t k = 1; k <= depth; ++k) {
      const std::int64_t digit = positive_mod(rest, p);
      f.set_digit(i, k, field.from_int(digit));
      rest = (rest - digit) / p;
    }
  }
  f.validate();
  return f;
}

void survey_tables(const BinomialContext& ctx, std::int64_t n, std::int64_t digit_bound,
                   const std::function<void(const EisensteinData&)>& fn) {
  require(n >= 1 && digit_bound >= 1, "survey needs n >= 1 and digit bound >= 1");
  const auto& field = ctx.base();
  const std::uint64_t q = field.q();
  std::uint64_t total = 1;
  for (std::int64_t s = 0; s < n * digit_bound; ++s) {
    if (total > kSurveyGuard / q) fail(ErrorCode::GuardExceeded, "survey exceeds q^(n*bound) <= 2^24");
    total *= q;
  }

  const auto all = field.elements();
  const auto units = field.units();
  EisensteinData f(field, n, digit_bound);
  struct Slot {
    std::int64_t i, k;
    const std::vector<FqElement>* values;
  };
  std::vector<Slot> slots;
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t k = 1; k <= digit_bound; ++k) slots.push_back({i, k, (i == 0 && k == 1) ? &units : &all});
  for (const auto& s : slots) f.set_digit(s.i, s.k, s.values->front());

  std::vector<std::size_t> pos(slots.size(), 0);
  for (;;) {
    fn(f);
    std::size_t idx = slots.size();
    for (;;) {
      if (idx == 0) return;
      --idx;
      if (++pos[idx] < slots[idx].values->size()) {
        f.set_digit(slots[idx].i, slots[idx].k, (*slots[idx].values)[pos[idx]]);
        break;
      }
      pos[idx] = 0;
      f.set_digit(slots[idx].i, slots[idx].k, slots[idx].values->front());
    }
  }
}

SurveyResult brute_force_survey(const BinomialContext& ctx, std::int64_t n, std::int64_t digit_bound) {
  SurveyResult out;
  survey_tables(ctx, n, digit_bound, [&](const EisensteinData& f) {
    ++out.fine_counts[fine_of(ctx, f)];
    ++out.tables;
  });
  return out;
}

}  // namespace ramify
