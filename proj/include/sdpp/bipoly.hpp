#pragma once
// Sparse polynomials in x and y with uint64 coefficients taken mod 2^c and
// y-exponents taken mod q (so y lives in the ring Z[y]/(y^q - 1)).

#include <map>
#include <sstream>

#include "sdpp/base.hpp"

namespace sdpp {

struct PolyContext {
  unsigned c = 64;   // coefficient modulus is 2^c
  int q = 1;         // y-exponent modulus
  u64 xcap = ~0ull;  // inclusive bound on x-degrees; exceeding it is an error

  bool operator==(const PolyContext&) const = default;

  u64 mask() const { return mod_mask(c); }
  void check(const PolyContext& o) const {
    require(*this == o, Err::ContextMismatch, "polynomial contexts differ");
  }
};

struct Monomial {
  u64 x = 0;
  int y = 0;  // stored reduced mod q
  auto operator<=>(const Monomial&) const = default;
};

class BiPoly {
 public:
  PolyContext ctx;
  // ordered by (x, y); minimal term is begin()
  std::map<Monomial, u64> terms;

  BiPoly() = default;
  explicit BiPoly(PolyContext c) : ctx(c) {}

  static BiPoly zero(PolyContext c) { return BiPoly(c); }
  static BiPoly constant(PolyContext c, u64 v) {
    BiPoly p(c);
    p.add_term(0, 0, v);
    return p;
  }
  static BiPoly monomial(PolyContext c, u64 xd, int yd, u64 coeff) {
    BiPoly p(c);
    p.add_term(xd, yd, coeff);
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(u64 xd, int yd, u64 coeff) {
    require(ctx.q >= 1, Err::ContextMismatch, "context has q < 1");
    require(xd <= ctx.xcap, Err::DegreeCapExceeded,
            "x-degree " + std::to_string(xd) + " over cap");
    Monomial m{xd, mod_pos(yd, ctx.q)};
    u64& slot = terms[m];
    slot = (slot + coeff) & ctx.mask();
    if (slot == 0) terms.erase(m);
  }

  u64 coeff(u64 xd, int yd) const {
    auto it = terms.find(Monomial{xd, mod_pos(yd, ctx.q)});
    return it == terms.end() ? 0 : it->second;
  }

  BiPoly& operator+=(const BiPoly& o) {
    ctx.check(o.ctx);
    for (auto& [m, v] : o.terms) add_term(m.x, m.y, v);
    return *this;
  }
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }

  BiPoly& operator-=(const BiPoly& o) {
    ctx.check(o.ctx);
    for (auto& [m, v] : o.terms) add_term(m.x, m.y, (~v + 1) & ctx.mask());
    return *this;
  }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }

  BiPoly& scale(u64 s) {
    s &= ctx.mask();
    std::map<Monomial, u64> out;
    for (auto& [m, v] : terms) {
      u64 w = (v * s) & ctx.mask();
      if (w) out[m] = w;
    }
    terms.swap(out);
    return *this;
  }

  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    a.ctx.check(b.ctx);
    BiPoly out(a.ctx);
    for (auto& [ma, va] : a.terms)
      for (auto& [mb, vb] : b.terms)
        out.add_term(ma.x + mb.x, ma.y + mb.y, (va * vb) & a.ctx.mask());
    return out;
  }

  // coefficient of y^t as a polynomial in x alone (same context, q kept)
  BiPoly y_component(int t) const {
    int yt = mod_pos(t, ctx.q);
    BiPoly out(ctx);
    for (auto& [m, v] : terms)
      if (m.y == yt) out.add_term(m.x, 0, v);
    return out;
  }

  // least (x, y) term, or nothing
  const std::pair<const Monomial, u64>* min_term() const {
    return terms.empty() ? nullptr : &*terms.begin();
  }

  bool operator==(const BiPoly& o) const { return ctx == o.ctx && terms == o.terms; }

  std::string str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, v] : terms) {
      if (!first) os << " + ";
      first = false;
      os << v;
      if (m.x) os << "*x^" << m.x;
      if (m.y) os << "*y^" << m.y;
    }
    return os.str();
  }
};

}  // namespace sdpp
