#include "ramify/residue_field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "ramify/error.hpp"

namespace ramify {

namespace detail {

struct FieldTables {
  std::int64_t p = 0;
  int f = 0;
  std::uint32_t q = 0;
  std::vector<int> modulus;          // constant first, monic, length f + 1
  std::vector<std::uint32_t> weight; // weight[i] = p^{f-1-i}
  std::vector<std::uint32_t> exp;    // exp[i] = code of g^i, i < q - 1
  std::vector<std::uint32_t> log;    // log[code], undefined at 0
  FqElement generator;
};

}  // namespace detail

namespace {

using Poly = std::vector<std::int64_t>;

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

// Remainder of a modulo the monic polynomial m, both constant first.
Poly poly_rem(Poly a, const Poly& m, std::int64_t p) {
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::int64_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - dm;
      for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = mod(a[shift + i] - lead * m[i], p);
    }
    a.pop_back();
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::int64_t p) {
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return poly_rem(std::move(r), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t k, const Poly& m, std::int64_t p) {
  Poly result(m.size() - 1, 0);
  result[0] = 1;
  while (k > 0) {
    if (k & 1u) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    k >>= 1u;
  }
  return result;
}

bool poly_is_zero(const Poly& a) {
  return std::all_of(a.begin(), a.end(), [](std::int64_t c) { return c == 0; });
}

// Brute-force irreducibility: no monic divisor of degree 1..deg/2.
bool is_irreducible(const Poly& m, std::int64_t p) {
  const int deg = static_cast<int>(m.size()) - 1;
  for (int d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly g(static_cast<std::size_t>(d) + 1, 0);
      std::uint64_t t = c;
      for (int i = 0; i < d; ++i) {
        g[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(t % static_cast<std::uint64_t>(p));
        t /= static_cast<std::uint64_t>(p);
      }
      g[static_cast<std::size_t>(d)] = 1;
      if (poly_is_zero(poly_rem(m, g, p))) return false;
    }
  }
  return true;
}

}  // namespace

BaseField BaseField::make(std::int64_t p, int f, int e, std::string_view gamma_spec) {
  require(is_prime(p), "p must be prime, got " + std::to_string(p));
  require(f >= 1, "residue degree f must be >= 1");
  require(e >= 1, "ramification index e must be >= 1");
  std::uint64_t q = 1;
  for (int i = 0; i < f; ++i) {
    q *= static_cast<std::uint64_t>(p);
    if (q > kMaxOrder) fail(ErrorCode::GuardExceeded, "residue field order exceeds 2^20");
  }

  auto t = std::make_shared<detail::FieldTables>();
  t->p = p;
  t->f = f;
  t->q = static_cast<std::uint32_t>(q);
  t->weight.resize(static_cast<std::size_t>(f));
  std::uint32_t w = 1;
  for (int i = f - 1; i >= 0; --i) {
    t->weight[static_cast<std::size_t>(i)] = w;
    w *= static_cast<std::uint32_t>(p);
  }

  auto decode = [&](std::uint32_t code) {
    Poly c(static_cast<std::size_t>(f));
    for (int i = 0; i < f; ++i)
      c[static_cast<std::size_t>(i)] = (code / t->weight[static_cast<std::size_t>(i)]) % static_cast<std::uint32_t>(p);
    return c;
  };
  auto encode = [&](const Poly& c) {
    std::uint32_t code = 0;
    for (int i = 0; i < f && i < static_cast<int>(c.size()); ++i)
      code += static_cast<std::uint32_t>(c[static_cast<std::size_t>(i)]) * t->weight[static_cast<std::size_t>(i)];
    return code;
  };

  // Lexicographically least monic irreducible of degree f, constant first.
  Poly modulus;
  for (std::uint32_t code = 0; code < q; ++code) {
    Poly m = decode(code);
    m.push_back(1);
    if (is_irreducible(m, p)) {
      modulus = std::move(m);
      break;
    }
  }
  if (modulus.empty()) fail(ErrorCode::Internal, "no irreducible modulus found");
  t->modulus.assign(modulus.begin(), modulus.end());

  // Least primitive element.
  const auto factors = prime_factors(static_cast<std::int64_t>(q - 1));
  std::uint32_t gen = 0;
  for (std::uint32_t code = 1; code < q && gen == 0; ++code) {
    const Poly g = decode(code);
    bool primitive = true;
    for (std::int64_t r : factors) {
      Poly x = poly_powmod(g, (q - 1) / static_cast<std::uint64_t>(r), modulus, p);
      Poly one_poly(static_cast<std::size_t>(f), 0);
      one_poly[0] = 1;
      if (x == one_poly) {
        primitive = false;
        break;
      }
    }
    if (primitive) gen = code;
  }
  if (gen == 0) fail(ErrorCode::Internal, "no primitive element found");
  t->generator = FqElement{gen};

  t->exp.resize(q - 1);
  t->log.assign(q, 0);
  Poly cur(static_cast<std::size_t>(f), 0);
  cur[0] = 1;
  const Poly g = decode(gen);
  for (std::uint32_t i = 0; i + 1 < q; ++i) {
    const std::uint32_t code = encode(cur);
    t->exp[i] = code;
    t->log[code] = i;
    cur = poly_mulmod(cur, g, modulus, p);
    cur.resize(static_cast<std::size_t>(f), 0);
  }

  BaseField field;
  field.tables_ = std::move(t);
  field.e_ = e;
  field.gamma_ = field.parse(gamma_spec);
  require(!field.gamma_.is_zero(), "gamma must be nonzero");
  return field;
}

std::int64_t BaseField::p() const { return tables_->p; }
int BaseField::f() const { return tables_->f; }
int BaseField::e() const { return e_; }
std::uint32_t BaseField::q() const { return tables_->q; }
const std::vector<int>& BaseField::modulus() const { return tables_->modulus; }
FqElement BaseField::generator() const { return tables_->generator; }
FqElement BaseField::one() const { return FqElement{tables_->weight[0]}; }

FqElement BaseField::from_int(std::int64_t v) const {
  return FqElement{static_cast<std::uint32_t>(mod(v, tables_->p)) * tables_->weight[0]};
}

std::int64_t BaseField::to_int(FqElement x) const {
  const std::uint32_t w = tables_->weight[0];
  if (x.code() % w != 0) fail(ErrorCode::InvalidArgument, "element is not in the prime subfield");
  return x.code() / w;
}

std::vector<int> BaseField::coefficients(FqElement x) const {
  std::vector<int> c(static_cast<std::size_t>(tables_->f));
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = static_cast<int>((x.code() / tables_->weight[i]) % static_cast<std::uint32_t>(tables_->p));
  return c;
}

FqElement BaseField::from_coefficients(std::span<const int> coeffs) const {
  require(coeffs.size() <= static_cast<std::size_t>(tables_->f), "too many coefficients for F_q element");
  std::uint32_t code = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    code += static_cast<std::uint32_t>(mod(coeffs[i], tables_->p)) * tables_->weight[i];
  return FqElement{code};
}

FqElement BaseField::add(FqElement a, FqElement b) const {
  const auto p = static_cast<std::uint32_t>(tables_->p);
  std::uint32_t code = 0;
  for (std::uint32_t w : tables_->weight) {
    const std::uint32_t da = (a.code() / w) % p;
    const std::uint32_t db = (b.code() / w) % p;
    code += ((da + db) % p) * w;
  }
  return FqElement{code};
}

FqElement BaseField::neg(FqElement a) const {
  const auto p = static_cast<std::uint32_t>(tables_->p);
  std::uint32_t code = 0;
  for (std::uint32_t w : tables_->weight) {
    const std::uint32_t d = (a.code() / w) % p;
    code += ((p - d) % p) * w;
  }
  return FqElement{code};
}

FqElement BaseField::sub(FqElement a, FqElement b) const { return add(a, neg(b)); }

FqElement BaseField::mul(FqElement a, FqElement b) const {
  if (a.is_zero() || b.is_zero()) return FqElement{};
  const std::uint32_t order = tables_->q - 1;
  const std::uint64_t l = static_cast<std::uint64_t>(tables_->log[a.code()]) + tables_->log[b.code()];
  return FqElement{tables_->exp[static_cast<std::size_t>(l % order)]};
}

FqElement BaseField::inv(FqElement a) const {
  if (a.is_zero()) fail(ErrorCode::InvalidArgument, "inverse of zero");
  const std::uint32_t order = tables_->q - 1;
  const std::uint32_t l = tables_->log[a.code()];
  return FqElement{tables_->exp[(order - l) % order]};
}

FqElement BaseField::pow(FqElement a, std::int64_t k) const {
  if (a.is_zero()) {
    if (k == 0) return one();
    if (k < 0) fail(ErrorCode::InvalidArgument, "negative power of zero");
    return FqElement{};
  }
  const auto order = static_cast<std::int64_t>(tables_->q - 1);
  // Reduce first so the product cannot overflow.
  const std::int64_t l = mod(static_cast<std::int64_t>(tables_->log[a.code()]) * mod(k, order), order);
  return FqElement{tables_->exp[static_cast<std::size_t>(l)]};
}

std::uint32_t BaseField::log(FqElement a) const {
  if (a.is_zero()) fail(ErrorCode::InvalidArgument, "log of zero");
  return tables_->log[a.code()];
}

std::vector<FqElement> BaseField::elements() const {
  std::vector<FqElement> out(tables_->q);
  for (std::uint32_t c = 0; c < tables_->q; ++c) out[c] = FqElement{c};
  return out;
}

std::vector<FqElement> BaseField::units() const {
  std::vector<FqElement> out;
  out.reserve(tables_->q - 1);
  for (std::uint32_t c = 1; c < tables_->q; ++c) out.emplace_back(c);
  return out;
}

std::string BaseField::to_string(FqElement x) const {
  std::ostringstream os;
  const auto c = coefficients(x);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ',';
    os << c[i];
  }
  return os.str();
}

FqElement BaseField::parse(std::string_view text) const {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s.push_back(ch);
  if (s == "g") return generator();
  require(!s.empty(), "empty field element");
  std::vector<int> coeffs;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = std::min(s.find(',', pos), s.size());
    const std::string tok = s.substr(pos, next - pos);
    try {
      std::size_t used = 0;
      const long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      coeffs.push_back(static_cast<int>(mod(v, tables_->p)));
    } catch (const std::logic_error&) {
      fail(ErrorCode::Parse, "malformed field element '" + std::string(text) + "'");
    }
    pos = next + 1;
  }
  return from_coefficients(coeffs);
}

bool operator==(const BaseField& a, const BaseField& b) {
  return a.p() == b.p() && a.f() == b.f() && a.e() == b.e() && a.gamma() == b.gamma();
}

namespace {

// Extended gcd with g >= 0 and g = x * a + y * b.
void ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& g, std::int64_t& x, std::int64_t& y) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t quot = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - quot * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - quot * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - quot * t);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  x = old_s;
  y = old_t;
}

}  // namespace

std::vector<FqElement> solve_power_system(const BaseField& field, std::span<const PowerEquation> eqs) {
  for (const auto& eq : eqs) require(!eq.value.is_zero(), "power system right-hand sides must be nonzero");

  std::vector<PowerEquation> sys(eqs.begin(), eqs.end());
  const auto order = static_cast<std::int64_t>(field.q() - 1);
  sys.push_back({order, field.one()});

  // K = gcd(k_i) = sum b_i k_i; the b_i only matter modulo q - 1.
  std::int64_t K = 0;
  std::vector<std::int64_t> b(sys.size(), 0);
  for (std::size_t i = 0; i < sys.size(); ++i) {
    std::int64_t g = 0, x = 0, y = 0;
    ext_gcd(K, sys[i].exponent, g, x, y);
    for (std::size_t j = 0; j < i; ++j) b[j] = mod(mod(b[j], order) * mod(x, order), order);
    b[i] = mod(y, order);
    K = g;
  }

  FqElement A = field.one();
  for (std::size_t i = 0; i < sys.size(); ++i) A = field.mul(A, field.pow(sys[i].value, b[i]));

  for (const auto& eq : sys)
    if (field.pow(A, eq.exponent / K) != eq.value) return {};

  std::vector<FqElement> out;
  for (FqElement x : field.units())
    if (field.pow(x, K) == A) out.push_back(x);
  return out;
}

FqElement AdditiveMap::apply(const BaseField& field, FqElement x) const {
  const auto c = field.coefficients(x);
  FqElement acc;
  for (std::size_t i = 0; i < c.size() && i < basis_images.size(); ++i)
    acc = field.add(acc, field.mul(field.from_int(c[i]), basis_images[i]));
  return acc;
}

std::vector<FqElement> additive_coset_representatives(const BaseField& field, const AdditiveMap& map,
                                                      FqElement scale) {
  const auto p = field.p();
  const auto f = static_cast<std::size_t>(field.f());

  // Row-reduce the spanning set of scale * Image(map).
  std::vector<std::vector<std::int64_t>> rows;
  if (!scale.is_zero()) {
    for (FqElement img : map.basis_images) {
      const auto c = field.coefficients(field.mul(scale, img));
      rows.emplace_back(c.begin(), c.end());
    }
  }
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < f && rank < rows.size(); ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    std::int64_t inv = 1;
    for (std::int64_t c = 1; c < p; ++c)
      if ((rows[rank][col] * c) % p == 1) inv = c;
    for (auto& v : rows[rank]) v = (v * inv) % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const std::int64_t factor = rows[r][col];
      for (std::size_t k = 0; k < f; ++k) rows[r][k] = mod(rows[r][k] - factor * rows[rank][k], p);
    }
    pivots.push_back(col);
    ++rank;
  }
  rows.resize(rank);

  auto canonical = [&](FqElement x) {
    auto c = field.coefficients(x);
    for (std::size_t r = 0; r < rank; ++r) {
      const std::int64_t factor = c[pivots[r]];
      if (factor == 0) continue;
      for (std::size_t k = 0; k < f; ++k) c[k] = static_cast<int>(mod(c[k] - factor * rows[r][k], p));
    }
    return field.from_coefficients(c).code();
  };

  std::unordered_set<std::uint32_t> seen;
  std::vector<FqElement> reps;
  for (FqElement x : field.elements())
    if (seen.insert(canonical(x)).second) reps.push_back(x);
  return reps;
}

std::vector<FqElement> orbit_representatives(const BaseField& field, std::int64_t J,
                                             std::span<const std::int64_t> constraint_exponents) {
  std::unordered_set<std::uint32_t> subgroup;
  for (FqElement d : field.units()) {
    bool ok = true;
    for (std::int64_t k : constraint_exponents)
      if (field.pow(d, k) != field.one()) ok = false;
    if (ok) subgroup.insert(field.pow(d, -J).code());
  }

  std::vector<bool> covered(field.q(), false);
  std::vector<FqElement> reps;
  for (FqElement x : field.units()) {
    if (covered[x.code()]) continue;
    reps.push_back(x);
    for (std::uint32_t h : subgroup) covered[field.mul(x, FqElement{h}).code()] = true;
  }
  return reps;
}

}  // namespace ramify
