#include "ltpg/arith.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace ltpg {

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

i64 ipow(i64 b, i64 e) {
  i64 r = 1;
  for (i64 i = 0; i < e; ++i) {
    if (b != 0 && r > (i64(1) << 62) / (b < 0 ? -b : b))
      throw arith_error("ipow overflow");
    r *= b;
  }
  return r;
}

i64 mod_norm(i64 a, i64 m) {
  assert(m > 0);
  a %= m;
  return a < 0 ? a + m : a;
}

i64 pow_mod(i64 b, i64 e, i64 m) {
  assert(e >= 0 && m > 0);
  i64 r = 1;
  b = mod_norm(b, m);
  while (e) {
    if (e & 1) r = i64((i128)r * b % m);
    b = i64((i128)b * b % m);
    e >>= 1;
  }
  return r;
}

int p_val(i64 n, i64 p) {
  assert(n != 0);
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

i64 binom_mod_p(i64 n, i64 k, i64 p) {
  if (k < 0 || k > n) return 0;
  i64 r = 1;
  while (n > 0 || k > 0) {
    i64 nd = n % p, kd = k % p;
    if (kd > nd) return 0;
    // C(nd, kd) mod p, digits < p
    i64 num = 1, den = 1;
    for (i64 i = 0; i < kd; ++i) {
      num = num * ((nd - i) % p) % p;
      den = den * ((i + 1) % p) % p;
    }
    r = r * num % p * pow_mod(den, p - 2, p) % p;
    n /= p;
    k /= p;
  }
  return r;
}

i64 binom_mod_pk(i64 n, i64 k, i64 p, int K) {
  if (k < 0 || k > n) return 0;
  i64 pk = ipow(p, K);
  // product formula with p-factors stripped, then restored
  i64 unit = 1;
  i64 val = 0;
  for (i64 i = 1; i <= k; ++i) {
    i64 num = n - k + i, den = i;
    val += p_val(num, p) - p_val(den, p);
    while (num % p == 0) num /= p;
    while (den % p == 0) den /= p;
    unit = i64((i128)unit * mod_norm(num, pk) % pk);
    // den is a unit mod p^K
    i64 dinv = pow_mod(mod_norm(den, pk), pk / p * (p - 1) - 1, pk);
    unit = i64((i128)unit * dinv % pk);
  }
  assert(val >= 0);
  if (val >= K) return 0;
  return i64((i128)unit * ipow(p, val) % pk);
}

PrimeParams PrimeParams::make(i64 p, int f, int e) {
  if (!is_prime(p) || p < 3) throw arith_error("p must be an odd prime >= 3");
  if (f < 1 || f > 16) throw arith_error("f out of range [1,16]");
  if (e < 1) throw arith_error("e must be >= 1");
  PrimeParams pp;
  pp.p = p;
  pp.f = f;
  pp.q = ipow(p, f);
  pp.xi = pp.q - 1;
  pp.e = e;
  return pp;
}

// ---------------------------------------------------------------------------
// FieldCtx

namespace {

// reduce poly (any size) mod (monic modulus, p) into size deg
std::vector<i64> poly_reduce(std::vector<i64> a, const std::vector<i64>& mod,
                             i64 p, int deg) {
  for (int i = (int)a.size() - 1; i >= deg; --i) {
    i64 c = mod_norm(a[i], p);
    if (c) {
      for (int j = 0; j <= deg; ++j)
        a[i - deg + j] = mod_norm(a[i - deg + j] - c * mod[j], p);
    }
    a.pop_back();
  }
  a.resize(deg, 0);
  for (auto& x : a) x = mod_norm(x, p);
  return a;
}

std::vector<i64> poly_mul_mod(const std::vector<i64>& a,
                              const std::vector<i64>& b,
                              const std::vector<i64>& mod, i64 p, int deg) {
  std::vector<i64> r(2 * deg - 1, 0);
  for (int i = 0; i < deg; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < deg; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return poly_reduce(std::move(r), mod, p, deg);
}

// degree of a dense coefficient vector, -1 for zero
int poly_deg(const std::vector<i64>& a) {
  for (int i = (int)a.size() - 1; i >= 0; --i)
    if (a[i]) return i;
  return -1;
}

// monic gcd over F_p
std::vector<i64> poly_gcd(std::vector<i64> a, std::vector<i64> b, i64 p) {
  while (poly_deg(b) >= 0) {
    int db = poly_deg(b);
    i64 lead_inv = pow_mod(b[db], p - 2, p);
    // a mod b
    for (int i = poly_deg(a); i >= db; i = poly_deg(a)) {
      i64 c = a[i] * lead_inv % p;
      for (int j = 0; j <= db; ++j)
        a[i - db + j] = mod_norm(a[i - db + j] - c * b[j], p);
    }
    std::swap(a, b);
  }
  int da = poly_deg(a);
  if (da >= 0) {
    i64 inv = pow_mod(a[da], p - 2, p);
    for (auto& x : a) x = x * inv % p;
  }
  return a;
}

bool poly_is_irreducible(const std::vector<i64>& mod, i64 p, int deg) {
  if (deg == 1) return true;
  auto frob_pow = [&](int k) {  // x^{p^k} mod (mod)
    std::vector<i64> x(deg, 0);
    x[1] = 1;
    for (int it = 0; it < k; ++it) {
      std::vector<i64> r(deg, 0);
      r[0] = 1;
      std::vector<i64> base = x;
      i64 e = p;
      while (e) {
        if (e & 1) r = poly_mul_mod(r, base, mod, p, deg);
        base = poly_mul_mod(base, base, mod, p, deg);
        e >>= 1;
      }
      x = r;
    }
    return x;
  };
  std::vector<i64> xx(deg, 0);
  xx[1] = 1;
  if (frob_pow(deg) != xx) return false;
  // Rabin: for each prime r | deg, gcd(x^{p^{deg/r}} - x, mod) must be 1
  for (int r = 2; r <= deg; ++r) {
    if (deg % r != 0 || !is_prime(r)) continue;
    std::vector<i64> g = frob_pow(deg / r);
    g[1] = mod_norm(g[1] - 1, p);
    std::vector<i64> full = mod;  // includes leading 1, size deg+1
    std::vector<i64> gc = poly_gcd(full, g, p);
    if (poly_deg(gc) != 0) return false;
  }
  return true;
}

std::mutex g_ctx_mutex;

}  // namespace

i64 FieldCtx::order() const { return ipow(p, deg); }

const FieldCtx* FieldCtx::get(i64 p, int deg) {
  if (!is_prime(p)) throw arith_error("composite p");
  if (deg < 1) throw arith_error("deg < 1");
  static std::map<std::pair<i64, int>, std::unique_ptr<FieldCtx>> cache;
  std::lock_guard<std::mutex> lk(g_ctx_mutex);
  auto key = std::make_pair(p, deg);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second.get();

  auto ctx = std::make_unique<FieldCtx>();
  ctx->p = p;
  ctx->deg = deg;
  // enumerate lower words in increasing value order c_0 + c_1 p + ...
  i64 total = ipow(p, deg);
  bool found = false;
  for (i64 w = 0; w < total && !found; ++w) {
    std::vector<i64> m(deg + 1, 0);
    i64 t = w;
    for (int i = 0; i < deg; ++i) {
      m[i] = t % p;
      t /= p;
    }
    m[deg] = 1;
    if (poly_is_irreducible(m, p, deg)) {
      ctx->modulus = m;
      found = true;
    }
  }
  if (!found) throw arith_error("no irreducible modulus found");
  auto* raw = ctx.get();
  cache[key] = std::move(ctx);
  return raw;
}

// ---------------------------------------------------------------------------
// FieldElem

bool FieldElem::is_zero() const {
  for (i64 x : c)
    if (x) return false;
  return true;
}

FieldElem fe_make(const FieldCtx* ctx, i64 integer) {
  FieldElem e;
  e.ctx = ctx;
  e.c.assign(ctx->deg, 0);
  e.c[0] = mod_norm(integer, ctx->p);
  return e;
}

FieldElem fe_gen(const FieldCtx* ctx) {
  FieldElem e = fe_make(ctx, 0);
  if (ctx->deg == 1)
    e.c[0] = mod_norm(-ctx->modulus[0], ctx->p);
  else
    e.c[1] = 1;
  return e;
}

static void fe_check(const FieldElem& a, const FieldElem& b) {
  if (a.ctx != b.ctx) throw arith_error("field context mismatch");
}

FieldElem fe_add(const FieldElem& a, const FieldElem& b) {
  fe_check(a, b);
  FieldElem r = a;
  for (int i = 0; i < a.ctx->deg; ++i) r.c[i] = mod_norm(r.c[i] + b.c[i], a.ctx->p);
  return r;
}

FieldElem fe_sub(const FieldElem& a, const FieldElem& b) {
  fe_check(a, b);
  FieldElem r = a;
  for (int i = 0; i < a.ctx->deg; ++i) r.c[i] = mod_norm(r.c[i] - b.c[i], a.ctx->p);
  return r;
}

FieldElem fe_neg(const FieldElem& a) { return fe_sub(fe_make(a.ctx, 0), a); }

FieldElem fe_mul(const FieldElem& a, const FieldElem& b) {
  fe_check(a, b);
  FieldElem r;
  r.ctx = a.ctx;
  r.c = poly_mul_mod(a.c, b.c, a.ctx->modulus, a.ctx->p, a.ctx->deg);
  return r;
}

FieldElem fe_pow(const FieldElem& a, i64 e) {
  if (e < 0) return fe_pow(fe_inv(a), -e);
  FieldElem r = fe_make(a.ctx, 1);
  FieldElem b = a;
  while (e) {
    if (e & 1) r = fe_mul(r, b);
    b = fe_mul(b, b);
    e >>= 1;
  }
  return r;
}

FieldElem fe_inv(const FieldElem& a) {
  if (a.is_zero()) throw arith_error("inverse of zero");
  return fe_pow(a, a.ctx->order() - 2);
}

bool fe_is_square(const FieldElem& a) {
  if (a.is_zero()) return true;
  return fe_pow(a, (a.ctx->order() - 1) / 2) == fe_make(a.ctx, 1);
}

FieldElem fe_sqrt(const FieldElem& a) {
  if (a.is_zero()) return a;
  if (!fe_is_square(a)) throw arith_error("not a square");
  // brute force; fields here are tiny
  for (i64 i = 0; i < a.ctx->order(); ++i) {
    FieldElem x = fe_from_index(a.ctx, i);
    if (fe_mul(x, x) == a) return x;
  }
  throw arith_error("sqrt not found");
}

i64 fe_index(const FieldElem& a) {
  i64 idx = 0;
  for (int i = a.ctx->deg - 1; i >= 0; --i) idx = idx * a.ctx->p + a.c[i];
  return idx;
}

FieldElem fe_from_index(const FieldCtx* ctx, i64 idx) {
  FieldElem e;
  e.ctx = ctx;
  e.c.assign(ctx->deg, 0);
  for (int i = 0; i < ctx->deg; ++i) {
    e.c[i] = idx % ctx->p;
    idx /= ctx->p;
  }
  return e;
}

std::string fe_str(const FieldElem& a) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < a.ctx->deg; ++i) os << (i ? "," : "") << a.c[i];
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// WittCtx / WittElem

const WittCtx* WittCtx::get(i64 p, int f, int K) {
  if (K < 1) throw arith_error("K < 1");
  const FieldCtx* kf = FieldCtx::get(p, f);
  static std::map<std::tuple<i64, int, int>, std::unique_ptr<WittCtx>> cache;
  static std::mutex mx;
  std::lock_guard<std::mutex> lk(mx);
  auto key = std::make_tuple(p, f, K);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second.get();
  auto ctx = std::make_unique<WittCtx>();
  ctx->p = p;
  ctx->f = f;
  ctx->K = K;
  ctx->pK = ipow(p, K);
  if (ctx->pK >= (i64(1) << 62)) throw arith_error("p^K too large");
  ctx->residue_field = kf;
  ctx->modulus = kf->modulus;  // entries already in [0,p)
  auto* raw = ctx.get();
  cache[key] = std::move(ctx);
  return raw;
}

bool WittElem::is_zero() const {
  for (i64 x : c)
    if (x) return false;
  return true;
}

WittElem w_make(const WittCtx* ctx, i64 integer) {
  WittElem e;
  e.ctx = ctx;
  e.c.assign(ctx->f, 0);
  e.c[0] = mod_norm(integer, ctx->pK);
  e.prec = ctx->K;
  return e;
}

WittElem w_from_coeffs(const WittCtx* ctx, const std::vector<i64>& coeffs) {
  if ((int)coeffs.size() != ctx->f) throw arith_error("coeff size != f");
  WittElem e;
  e.ctx = ctx;
  e.c.resize(ctx->f);
  for (int i = 0; i < ctx->f; ++i) e.c[i] = mod_norm(coeffs[i], ctx->pK);
  e.prec = ctx->K;
  return e;
}

static void w_check(const WittElem& a, const WittElem& b) {
  if (a.ctx != b.ctx) throw arith_error("witt context mismatch");
}

int w_val(const WittElem& a) {
  int v = a.ctx->K;
  for (i64 x : a.c)
    if (x) v = std::min(v, p_val(x, a.ctx->p));
  return std::min(v, a.prec);
}

WittElem w_add(const WittElem& a, const WittElem& b) {
  w_check(a, b);
  WittElem r = a;
  r.prec = std::min(a.prec, b.prec);
  for (int i = 0; i < a.ctx->f; ++i) r.c[i] = mod_norm(r.c[i] + b.c[i], a.ctx->pK);
  return r;
}

WittElem w_sub(const WittElem& a, const WittElem& b) {
  w_check(a, b);
  WittElem r = a;
  r.prec = std::min(a.prec, b.prec);
  for (int i = 0; i < a.ctx->f; ++i) r.c[i] = mod_norm(r.c[i] - b.c[i], a.ctx->pK);
  return r;
}

WittElem w_neg(const WittElem& a) { return w_sub(w_make(a.ctx, 0), a); }

WittElem w_mul(const WittElem& a, const WittElem& b) {
  w_check(a, b);
  const auto* ctx = a.ctx;
  std::vector<i64> prod(2 * ctx->f - 1, 0);
  for (int i = 0; i < ctx->f; ++i) {
    if (!a.c[i]) continue;
    for (int j = 0; j < ctx->f; ++j)
      prod[i + j] = i64(((i128)prod[i + j] + (i128)a.c[i] * b.c[j]) % ctx->pK);
  }
  // reduce by monic modulus
  for (int i = (int)prod.size() - 1; i >= ctx->f; --i) {
    i64 cc = mod_norm(prod[i], ctx->pK);
    if (cc) {
      for (int j = 0; j < ctx->f; ++j)
        prod[i - ctx->f + j] = i64(
            (((i128)prod[i - ctx->f + j] - (i128)cc * ctx->modulus[j]) % ctx->pK +
             ctx->pK) %
            ctx->pK);
    }
  }
  WittElem r;
  r.ctx = ctx;
  r.c.assign(prod.begin(), prod.begin() + ctx->f);
  for (auto& x : r.c) x = mod_norm(x, ctx->pK);
  // valuation-aware precision: error a*eb + b*ea + ea*eb
  int va = w_val(a), vb = w_val(b);
  r.prec = std::min({va + b.prec, vb + a.prec, a.prec + b.prec, ctx->K});
  return r;
}

bool w_is_unit(const WittElem& a) {
  if (a.prec < 1) return false;
  for (i64 x : a.c)
    if (x % a.ctx->p) return true;
  return false;
}

WittElem w_inv(const WittElem& a) {
  if (!w_is_unit(a)) throw arith_error("inverse of non-unit");
  const auto* ctx = a.ctx;
  // invert the residue in F_q, lift, then Hensel iterate x -> x(2 - a x)
  FieldElem rbar = fe_inv(w_reduce(a));
  WittElem x = w_from_coeffs(ctx, rbar.c);
  WittElem two = w_make(ctx, 2);
  for (int lifted = 1; lifted < ctx->K; lifted *= 2)
    x = w_mul(x, w_sub(two, w_mul(a, x)));
  x.prec = a.prec;
  return x;
}

WittElem w_div_p(const WittElem& a) {
  const auto* ctx = a.ctx;
  if (a.prec < 1) throw precision_error("divide_by_p: no guaranteed digits");
  WittElem r = a;
  for (int i = 0; i < ctx->f; ++i) {
    if (r.c[i] % ctx->p) throw arith_error("divide_by_p: value not divisible");
    r.c[i] /= ctx->p;
  }
  r.prec = a.prec - 1;
  return r;
}

WittElem w_pow(const WittElem& a, i64 e) {
  if (e < 0) return w_pow(w_inv(a), -e);
  WittElem r = w_make(a.ctx, 1);
  WittElem b = a;
  while (e) {
    if (e & 1) r = w_mul(r, b);
    b = w_mul(b, b);
    e >>= 1;
  }
  // a unit to any power keeps the base precision; the generic mul rule already
  // handles the rest, but r of e=0 has prec K which is fine.
  return r;
}

bool w_eq_mod_prec(const WittElem& a, const WittElem& b) {
  // elements may live at different digit counts over the same residue field
  if (!a.ctx || !b.ctx || a.ctx->residue_field != b.ctx->residue_field)
    throw arith_error("witt context mismatch");
  int pr = std::min({a.prec, b.prec, a.ctx->K, b.ctx->K});
  if (pr <= 0) return true;
  i64 m = ipow(a.ctx->p, pr);
  for (int i = 0; i < a.ctx->f; ++i)
    if (mod_norm(a.c[i] - b.c[i], m) != 0) return false;
  return true;
}

FieldElem w_reduce(const WittElem& a) {
  if (a.prec < 1) throw precision_error("reduce: no guaranteed digits");
  FieldElem r;
  r.ctx = a.ctx->residue_field;
  r.c.resize(a.ctx->f);
  for (int i = 0; i < a.ctx->f; ++i) r.c[i] = mod_norm(a.c[i], a.ctx->p);
  return r;
}

WittElem w_teichmueller(const WittCtx* ctx, const FieldElem& c0) {
  if (c0.ctx != ctx->residue_field) throw arith_error("wrong residue field");
  WittElem x = w_from_coeffs(ctx, c0.c);
  i64 q = ipow(ctx->p, ctx->f);
  for (int it = 0; it < ctx->K + 1; ++it) x = w_pow(x, q);
  x.prec = ctx->K;
  return x;
}

std::string w_str(const WittElem& a) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < a.ctx->f; ++i) os << (i ? "," : "") << a.c[i];
  os << "]@" << a.prec;
  return os.str();
}

// ---------------------------------------------------------------------------
// series instantiations

FSeries fs_add(const FSeries& a, const FSeries& b) {
  return ts_add_impl(a, b, fe_add);
}
FSeries fs_sub(const FSeries& a, const FSeries& b) {
  FSeries nb;
  nb.trunc = b.trunc;
  for (auto& [d, v] : b.c) nb.c[d] = fe_neg(v);
  return ts_add_impl(a, nb, fe_add);
}

FSeries fs_mul(const FSeries& a, const FSeries& b) {
  return ts_mul_impl(a, b, fe_add, fe_mul);
}

FSeries fs_scal(const FieldElem& s, const FSeries& a) {
  FSeries r;
  r.trunc = a.trunc;
  if (s.is_zero()) return r;
  for (auto& [d, v] : a.c) {
    FieldElem t = fe_mul(s, v);
    if (!t.is_zero()) r.c[d] = t;
  }
  return r;
}

FSeries fs_compose(const FSeries& outer, const FSeries& inner) {
  if (inner.get(0)) throw arith_error("compose: inner constant term nonzero");
  i64 iv = inner.val();
  if (iv <= 0) iv = 1;
  FSeries r;
  r.trunc = std::min(outer.trunc * iv, inner.trunc);
  if (outer.c.empty()) return r;
  if (inner.c.empty()) {  // zero inner: only outer's constant term survives
    if (const FieldElem* o0 = outer.get(0)) r.set(0, *o0);
    return r;
  }
  // Horner over the sparse outer support, highest degree first.
  auto it = outer.c.rbegin();
  i64 prev_deg = it->first;
  FSeries acc;
  acc.trunc = r.trunc;
  acc.set(0, it->second);
  ++it;
  for (; it != outer.c.rend(); ++it) {
    acc = fs_mul(acc, fs_pow(inner, prev_deg - it->first));
    acc.trunc = r.trunc;
    FSeries term;
    term.trunc = r.trunc;
    term.set(0, it->second);
    acc = fs_add(acc, term);
    prev_deg = it->first;
  }
  if (prev_deg > 0) {
    acc = fs_mul(acc, fs_pow(inner, prev_deg));
    acc.trunc = r.trunc;
  }
  r.c = std::move(acc.c);
  for (auto itc = r.c.begin(); itc != r.c.end();)
    itc = itc->first >= r.trunc ? r.c.erase(itc) : std::next(itc);
  return r;
}

FSeries fs_pow(const FSeries& a, i64 e) {
  assert(e >= 0);
  FSeries r;
  r.trunc = e == 0 ? a.trunc : a.trunc + (e - 1) * a.val();
  if (e == 0) {
    if (a.c.empty()) throw arith_error("pow: zero series to power 0");
    r.set(0, fe_make(a.c.begin()->second.ctx, 1));
    return r;
  }
  FSeries b = a;
  bool first = true;
  while (e) {
    if (e & 1) {
      r = first ? b : fs_mul(r, b);
      first = false;
    }
    e >>= 1;
    if (e) b = fs_mul(b, b);
  }
  return r;
}

FSeries fs_inv_unit(const FSeries& a) {
  const FieldElem* a0 = a.get(0);
  if (!a0) throw arith_error("inv: not a unit series");
  FieldElem inv0 = fe_inv(*a0);
  FSeries r;
  r.trunc = a.trunc;
  r.set(0, inv0);
  // Newton: x -> x(2 - a x), doubling accuracy
  FSeries two;
  two.trunc = a.trunc;
  two.set(0, fe_make(a0->ctx, 2));
  for (i64 acc = 1; acc < a.trunc; acc *= 2) {
    FSeries t = fs_sub(two, fs_mul(a, r));
    t.trunc = a.trunc;
    r = fs_mul(r, t);
    r.trunc = a.trunc;
  }
  return r;
}

FSeries fs_frob_sub(const FSeries& a, i64 q) {
  FSeries r;
  r.trunc = a.trunc == 0 ? 0 : (a.trunc - 1) * q + 1;
  for (auto& [d, v] : a.c) r.set(d * q, v);
  return r;
}

std::string fs_str(const FSeries& a) {
  std::ostringstream os;
  bool first = true;
  for (auto& [d, v] : a.c) {
    os << (first ? "" : " + ") << fe_str(v) << "*t^" << d;
    first = false;
  }
  if (first) os << "0";
  os << " (mod t^" << a.trunc << ")";
  return os.str();
}

WSeries ws_add(const WSeries& a, const WSeries& b) {
  return ts_add_impl(a, b, w_add);
}
WSeries ws_mul(const WSeries& a, const WSeries& b) {
  return ts_mul_impl(a, b, w_add, w_mul);
}

WSeries ws_compose(const WSeries& outer, const WSeries& inner) {
  if (inner.get(0)) throw arith_error("compose: inner constant term nonzero");
  i64 iv = inner.val();
  if (iv <= 0) iv = 1;
  WSeries r;
  r.trunc = std::min(outer.trunc * iv, inner.trunc);
  if (outer.c.empty()) return r;
  if (inner.c.empty()) {
    if (const WittElem* o0 = outer.get(0)) r.set(0, *o0);
    return r;
  }
  auto it = outer.c.rbegin();
  i64 prev_deg = it->first;
  WSeries acc;
  acc.trunc = r.trunc;
  acc.set(0, it->second);
  ++it;
  auto wpow = [&](const WSeries& s, i64 e) {
    WSeries res;
    res.trunc = r.trunc;
    res.set(0, w_make(s.c.begin()->second.ctx, 1));
    WSeries b = s;
    while (e) {
      if (e & 1) {
        res = ws_mul(res, b);
        res.trunc = r.trunc;
      }
      e >>= 1;
      if (e) {
        b = ws_mul(b, b);
        b.trunc = r.trunc;
      }
    }
    return res;
  };
  for (; it != outer.c.rend(); ++it) {
    acc = ws_mul(acc, wpow(inner, prev_deg - it->first));
    acc.trunc = r.trunc;
    WSeries term;
    term.trunc = r.trunc;
    term.set(0, it->second);
    acc = ws_add(acc, term);
    prev_deg = it->first;
  }
  if (prev_deg > 0) {
    acc = ws_mul(acc, wpow(inner, prev_deg));
    acc.trunc = r.trunc;
  }
  r.c = std::move(acc.c);
  for (auto itc = r.c.begin(); itc != r.c.end();)
    itc = itc->first >= r.trunc ? r.c.erase(itc) : std::next(itc);
  return r;
}

FSeries ws_reduce(const WSeries& a) {
  FSeries r;
  r.trunc = a.trunc;
  for (auto& [d, v] : a.c) {
    FieldElem t = w_reduce(v);
    if (!t.is_zero()) r.c[d] = t;
  }
  return r;
}

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly lp_zero() { return {}; }

LaurentPoly lp_mono(i64 deg, const FieldElem& v) {
  LaurentPoly r;
  if (!v.is_zero()) r.c[deg] = v;
  return r;
}

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r = a;
  for (auto& [d, v] : b.c) {
    auto it = r.c.find(d);
    if (it == r.c.end())
      r.c[d] = v;
    else {
      it->second = fe_add(it->second, v);
      if (it->second.is_zero()) r.c.erase(it);
    }
  }
  return r;
}

LaurentPoly lp_neg(const LaurentPoly& a) {
  LaurentPoly r;
  for (auto& [d, v] : a.c) r.c[d] = fe_neg(v);
  return r;
}

LaurentPoly lp_sub(const LaurentPoly& a, const LaurentPoly& b) {
  return lp_add(a, lp_neg(b));
}

LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (auto& [da, va] : a.c)
    for (auto& [db, vb] : b.c) {
      FieldElem t = fe_mul(va, vb);
      if (t.is_zero()) continue;
      auto it = r.c.find(da + db);
      if (it == r.c.end())
        r.c[da + db] = t;
      else {
        it->second = fe_add(it->second, t);
        if (it->second.is_zero()) r.c.erase(it);
      }
    }
  return r;
}

LaurentPoly lp_scal(const FieldElem& s, const LaurentPoly& a) {
  LaurentPoly r;
  if (s.is_zero()) return r;
  for (auto& [d, v] : a.c) {
    FieldElem t = fe_mul(s, v);
    if (!t.is_zero()) r.c[d] = t;
  }
  return r;
}

LaurentPoly lp_shift(const LaurentPoly& a, i64 deg) {
  LaurentPoly r;
  for (auto& [d, v] : a.c) r.c[d + deg] = v;
  return r;
}

LaurentPoly lp_frob_sub(const LaurentPoly& a, i64 q) {
  LaurentPoly r;
  for (auto& [d, v] : a.c) r.c[d * q] = v;
  return r;
}

std::string lp_str(const LaurentPoly& a) {
  std::ostringstream os;
  bool first = true;
  for (auto& [d, v] : a.c) {
    os << (first ? "" : " + ") << fe_str(v) << "*t^" << d;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace ltpg
