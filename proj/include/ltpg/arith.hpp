#pragma once
// Exact coefficient arithmetic: finite fields F_{p^d} with canonical moduli,
// the truncated unramified ring O_F/p^K with per-element precision tracking,
// truncated power series, and exact sparse Laurent polynomials.

#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltpg {

using i64 = long long;
using i128 = __int128;

struct arith_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct precision_error : arith_error {
  using arith_error::arith_error;
};

bool is_prime(i64 n);
i64 ipow(i64 b, i64 e);          // overflow-checked
i64 mod_norm(i64 a, i64 m);      // representative in [0, m)
i64 pow_mod(i64 b, i64 e, i64 m);
int p_val(i64 n, i64 p);         // p-adic valuation, n != 0

// Binomial coefficient mod p (Lucas); n, k may be large.
i64 binom_mod_p(i64 n, i64 k, i64 p);
// Binomial coefficient mod p^K via p-stripped product; intended for small k.
i64 binom_mod_pk(i64 n, i64 k, i64 p, int K);

struct PrimeParams {
  i64 p;
  int f;
  i64 q;
  i64 xi;
  int e;
  static PrimeParams make(i64 p, int f, int e = 1);
};

// ---------------------------------------------------------------------------
// Finite field k = F_{p^deg}, fixed canonical modulus.

struct FieldCtx {
  i64 p;
  int deg;
  std::vector<i64> modulus;  // monic; modulus[i] = coeff of x^i, size deg+1
  i64 order() const;         // p^deg

  // Canonical modulus: among monic irreducible degree-deg polynomials over
  // F_p, the one whose coefficient word (c_{deg-1},...,c_1,c_0) is
  // lexicographically least, i.e. least value sum c_i p^i.
  static const FieldCtx* get(i64 p, int deg);
};

struct FieldElem {
  const FieldCtx* ctx = nullptr;
  std::vector<i64> c;  // size ctx->deg, entries in [0, p)

  bool is_zero() const;
  bool operator==(const FieldElem&) const = default;
};

FieldElem fe_make(const FieldCtx* ctx, i64 integer);
FieldElem fe_gen(const FieldCtx* ctx);  // residue of x
FieldElem fe_add(const FieldElem&, const FieldElem&);
FieldElem fe_sub(const FieldElem&, const FieldElem&);
FieldElem fe_neg(const FieldElem&);
FieldElem fe_mul(const FieldElem&, const FieldElem&);
FieldElem fe_inv(const FieldElem&);
FieldElem fe_pow(const FieldElem&, i64 e);  // e may be negative for units
bool fe_is_square(const FieldElem&);
FieldElem fe_sqrt(const FieldElem&);  // requires square
// Enumeration index in [0, p^deg): digits c_0 + c_1 p + ...
i64 fe_index(const FieldElem&);
FieldElem fe_from_index(const FieldCtx* ctx, i64 idx);
std::string fe_str(const FieldElem&);

// ---------------------------------------------------------------------------
// O_F/p^K, F/Q_p unramified of degree f: (Z/p^K)[X]/(M), M the integer lift
// of the canonical F_q modulus. Elements carry prec = number of guaranteed
// p-adic digits; ops use the valuation-aware min rule.

struct WittCtx {
  i64 p;
  int f;
  int K;
  i64 pK;                    // p^K, kept < 2^62
  std::vector<i64> modulus;  // lift of FieldCtx::get(p,f)->modulus
  const FieldCtx* residue_field;
  static const WittCtx* get(i64 p, int f, int K);
};

struct WittElem {
  const WittCtx* ctx = nullptr;
  std::vector<i64> c;  // size f, entries in [0, p^K)
  int prec = 0;        // value is guaranteed mod p^prec

  bool is_zero() const;  // stored residue zero (prec-insensitive)
};

WittElem w_make(const WittCtx* ctx, i64 integer);  // prec = K
WittElem w_from_coeffs(const WittCtx* ctx, const std::vector<i64>& coeffs);
WittElem w_add(const WittElem&, const WittElem&);
WittElem w_sub(const WittElem&, const WittElem&);
WittElem w_neg(const WittElem&);
WittElem w_mul(const WittElem&, const WittElem&);
WittElem w_inv(const WittElem&);          // unit required
WittElem w_div_p(const WittElem&);        // requires stored value in pO; prec-1
WittElem w_pow(const WittElem&, i64 e);   // e >= 0, or unit with e < 0
int w_val(const WittElem&);               // min(val of residue, prec)
bool w_is_unit(const WittElem&);
bool w_eq_mod_prec(const WittElem&, const WittElem&);  // agree mod p^min(prec)
FieldElem w_reduce(const WittElem&);      // mod p, needs prec >= 1
WittElem w_teichmueller(const WittCtx* ctx, const FieldElem& c0);
std::string w_str(const WittElem&);

// ---------------------------------------------------------------------------
// Truncated power series over a coefficient ring C (FieldElem or WittElem).
// trunc is exclusive: coefficients at degrees >= trunc are unknown.

template <class C>
struct TruncSeries {
  std::map<i64, C> c;  // degree -> nonzero coefficient, degrees in [0, trunc)
  i64 trunc = 0;

  void set(i64 d, const C& v) {
    if (d < 0) throw arith_error("series degree < 0");
    if (d >= trunc) return;
    if (v.is_zero())
      c.erase(d);
    else
      c[d] = v;
  }
  const C* get(i64 d) const {
    auto it = c.find(d);
    return it == c.end() ? nullptr : &it->second;
  }
  i64 val() const {  // valuation; trunc if no term stored
    return c.empty() ? trunc : c.begin()->first;
  }
};

template <class C>
TruncSeries<C> ts_zero(i64 trunc) {
  TruncSeries<C> r;
  r.trunc = trunc;
  return r;
}

template <class C, class Add>
TruncSeries<C> ts_add_impl(const TruncSeries<C>& a, const TruncSeries<C>& b,
                           Add add) {
  TruncSeries<C> r;
  r.trunc = std::min(a.trunc, b.trunc);
  for (auto& [d, v] : a.c)
    if (d < r.trunc) r.c[d] = v;
  for (auto& [d, v] : b.c) {
    if (d >= r.trunc) continue;
    auto it = r.c.find(d);
    if (it == r.c.end())
      r.c[d] = v;
    else {
      it->second = add(it->second, v);
      if (it->second.is_zero()) r.c.erase(it);
    }
  }
  return r;
}

template <class C, class Add, class Mul>
TruncSeries<C> ts_mul_impl(const TruncSeries<C>& a, const TruncSeries<C>& b,
                           Add add, Mul mul) {
  TruncSeries<C> r;
  // min rule, refined by the factor valuations
  r.trunc = std::min(a.trunc + b.val(), b.trunc + a.val());
  for (auto& [da, va] : a.c)
    for (auto& [db, vb] : b.c) {
      i64 d = da + db;
      if (d >= r.trunc) break;
      C t = mul(va, vb);
      if (t.is_zero()) continue;
      auto it = r.c.find(d);
      if (it == r.c.end())
        r.c[d] = t;
      else {
        it->second = add(it->second, t);
        if (it->second.is_zero()) r.c.erase(it);
      }
    }
  return r;
}

using FSeries = TruncSeries<FieldElem>;
using WSeries = TruncSeries<WittElem>;

FSeries fs_add(const FSeries&, const FSeries&);
FSeries fs_sub(const FSeries&, const FSeries&);
FSeries fs_mul(const FSeries&, const FSeries&);
FSeries fs_scal(const FieldElem&, const FSeries&);
// Composition outer(inner); inner must have zero constant term.
FSeries fs_compose(const FSeries& outer, const FSeries& inner);
FSeries fs_pow(const FSeries&, i64 e);  // e >= 0
// Inverse of a unit series (nonzero constant term), to the given trunc.
FSeries fs_inv_unit(const FSeries&);
// t -> t^q substitution.
FSeries fs_frob_sub(const FSeries&, i64 q);
std::string fs_str(const FSeries&);

WSeries ws_add(const WSeries&, const WSeries&);
WSeries ws_mul(const WSeries&, const WSeries&);
WSeries ws_compose(const WSeries& outer, const WSeries& inner);
FSeries ws_reduce(const WSeries&);  // coefficientwise mod p

// ---------------------------------------------------------------------------
// Exact sparse Laurent polynomials over k.

struct LaurentPoly {
  std::map<i64, FieldElem> c;  // degree -> nonzero coefficient

  bool is_zero() const { return c.empty(); }
  bool operator==(const LaurentPoly&) const = default;
};

LaurentPoly lp_zero();
LaurentPoly lp_mono(i64 deg, const FieldElem& v);
LaurentPoly lp_add(const LaurentPoly&, const LaurentPoly&);
LaurentPoly lp_sub(const LaurentPoly&, const LaurentPoly&);
LaurentPoly lp_neg(const LaurentPoly&);
LaurentPoly lp_mul(const LaurentPoly&, const LaurentPoly&);
LaurentPoly lp_scal(const FieldElem&, const LaurentPoly&);
LaurentPoly lp_shift(const LaurentPoly&, i64 deg);
LaurentPoly lp_frob_sub(const LaurentPoly&, i64 q);  // t -> t^q
std::string lp_str(const LaurentPoly&);

}  // namespace ltpg
