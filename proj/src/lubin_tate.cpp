#include "ltpg/lubin_tate.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

namespace ltpg {

int log_ceil(i64 q, i64 x) {
  assert(x >= 1);
  int L = 0;
  i64 v = 1;
  while (v < x) {
    v *= q;
    ++L;
  }
  return L;
}

int lt_default_prec(const PrimeParams& pp, i64 t_bound) {
  return log_ceil(pp.q, t_bound) + 3;
}

namespace {

// Flat coefficient engine for the recursion hot path: elements of O_F/p^K as
// f consecutive i64 entries, with per-slot precision alongside.
struct FlatRing {
  const WittCtx* ctx;
  int f;
  i64 p, pK;
  int K;

  explicit FlatRing(const WittCtx* c)
      : ctx(c), f(c->f), p(c->p), pK(c->pK), K(c->K) {}

  void mul(const i64* a, const i64* b, i64* out) const {
    i64 buf[31] = {0};
    for (int i = 0; i < f; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < f; ++j)
        buf[i + j] =
            (i64)(((i128)buf[i + j] + (i128)a[i] * b[j]) % pK);
    }
    const auto& M = ctx->modulus;
    for (int i = 2 * f - 2; i >= f; --i) {
      i64 c = buf[i];
      if (c)
        for (int j = 0; j < f; ++j)
          buf[i - f + j] = (i64)(
              (((i128)buf[i - f + j] - (i128)c * M[j]) % pK + pK) % pK);
    }
    std::copy(buf, buf + f, out);
  }

  int val_of(const i64* a) const {
    int v = K;
    for (int i = 0; i < f; ++i) {
      i64 x = a[i];
      if (!x) continue;
      int w = 0;
      while (x % p == 0) {
        x /= p;
        ++w;
      }
      v = std::min(v, w);
    }
    return v;
  }

  bool is_zero(const i64* a) const {
    for (int i = 0; i < f; ++i)
      if (a[i]) return false;
    return true;
  }
};

// One truncated series on the degree grid k + Z>=0*xi.
struct Tab {
  int slots = 0;
  std::vector<i64> v;         // slots * f values
  std::vector<int16_t> prec;  // per slot

  void init(int n, int f, int K) {
    slots = n;
    v.assign((size_t)n * f, 0);
    prec.assign(n, (int16_t)K);
  }
};

WittElem slot_to_witt(const FlatRing& R, const Tab& t, int s) {
  WittElem e;
  e.ctx = R.ctx;
  e.c.assign(t.v.begin() + (size_t)s * R.f, t.v.begin() + (size_t)(s + 1) * R.f);
  e.prec = t.prec[s];
  return e;
}

void add_scaled_into(const FlatRing& R, Tab& dst, int ds, const i64* term,
                     int term_prec) {
  i64* d = &dst.v[(size_t)ds * R.f];
  for (int i = 0; i < R.f; ++i) d[i] = mod_norm(d[i] + term[i], R.pK);
  dst.prec[ds] = (int16_t)std::min<int>(dst.prec[ds], term_prec);
}

}  // namespace

LTSeries lt_coeffs(const WittElem& gamma_in, i64 t_bound, int K) {
  const WittCtx* src = gamma_in.ctx;
  i64 p = src->p;
  int f = src->f;
  PrimeParams pp = PrimeParams::make(p, f);
  i64 q = pp.q, xi = pp.xi;
  if (t_bound < 1) throw arith_error("t_bound < 1");
  if (K < 2 + log_ceil(q, t_bound))
    throw arith_error("precision budget K too small for requested bound");
  if (src->K < K || gamma_in.prec < K)
    throw arith_error("gamma carries fewer digits than requested K");
  const WittCtx* ctx = WittCtx::get(p, f, K);
  WittElem gamma = w_from_coeffs(ctx, gamma_in.c);
  if (!w_is_unit(gamma)) throw arith_error("gamma must be a unit");

  FlatRing R(ctx);
  const int L = (int)((t_bound - 1) / xi);  // series slots j: degree 1 + j*xi

  // powers S^k on the grid k + Z>=0*xi, k = 1..q
  std::vector<Tab> pow((size_t)q + 1);
  for (i64 k = 1; k <= q; ++k) {
    int n = t_bound >= k ? (int)((t_bound - k) / xi) + 1 : 0;
    pow[k].init(n, f, K);
  }
  Tab acc;  // accumulator for the binomial sum, on the series grid
  acc.init(L + 1, f, K);

  // small binomials C(k,r) mod p^K for k <= q
  std::vector<std::vector<i64>> pasc((size_t)q + 1);
  pasc[0] = {1};
  for (i64 k = 1; k <= q; ++k) {
    pasc[k].assign(k + 1, 0);
    pasc[k][0] = pasc[k][k] = 1;
    for (i64 r = 1; r < k; ++r)
      pasc[k][r] = mod_norm(pasc[k - 1][r - 1] + pasc[k - 1][r], ctx->pK);
  }

  WittElem one = w_make(ctx, 1);
  WittElem pw = w_make(ctx, p);

  LTSeries out;
  out.ctx = ctx;
  out.bound = t_bound;

  std::vector<i64> tbuf(f);
  for (int j = 0; j <= L; ++j) {
    i64 n = 1 + (i64)j * xi;
    WittElem an;
    if (n == 1) {
      an = gamma;
    } else {
      WittElem A = slot_to_witt(R, acc, j);
      WittElem B = slot_to_witt(R, pow[q], (int)((n - q) / xi));
      WittElem bracket = w_sub(A, B);
      an = w_div_p(bracket);  // throws if not divisible / no digits left
      if (n - 1 < K)
        an = w_mul(an, w_inv(w_sub(one, w_pow(pw, n - 1))));
      if (an.prec < 1)
        throw precision_error("coefficient precision exhausted; increase K");
    }
    out.coeffs.emplace(n, an);

    // binomial-sum pushes: p^jj * C(n, jj) * a_n lands at n + (n-jj)*xi
    for (int jj = 0; jj < K; ++jj) {
      i64 jp = n - jj;
      if (jp < 1) break;
      i64 n2 = n + jp * xi;
      if (n2 > t_bound) continue;
      i64 B = binom_mod_pk(n, jj, p, K);
      WittElem term = w_mul(w_mul(w_make(ctx, B), w_pow(pw, jj)), an);
      add_scaled_into(R, acc, (int)((n2 - 1) / xi), term.c.data(), term.prec);
    }

    // power-table updates: (S + a_n t^n)^k, descending k so lower powers
    // are still the old values
    int v_an = w_val(an);
    for (i64 k = std::min<i64>(q, t_bound); k >= 2; --k) {
      if (pow[k].slots == 0) continue;
      WittElem cr = one;  // a_n^r
      for (i64 r = 1; r <= k; ++r) {
        if (r * n + k - r > t_bound) break;
        if ((i64)r * v_an >= K && r > 1) break;  // all further terms vanish
        cr = w_mul(cr, an);
        WittElem s = w_mul(w_make(ctx, pasc[k][r]), cr);
        int v_s = w_val(s), p_s = s.prec;
        if (v_s >= K && p_s >= K) continue;
        i64 base = (i64)r * j;  // target slot offset
        if (r == k) {
          int ds = (int)base;
          if (ds < pow[k].slots) {
            add_scaled_into(R, pow[k], ds, s.c.data(), s.prec);
          }
          continue;
        }
        const Tab& lo = pow[k - r];
        int mmax = std::min<i64>(lo.slots, pow[k].slots - base);
        for (int m = 0; m < mmax; ++m) {
          const i64* sv = &lo.v[(size_t)m * f];
          if (R.is_zero(sv) && lo.prec[m] >= K) continue;
          R.mul(s.c.data(), sv, tbuf.data());
          int v_src = R.val_of(sv);
          int tp = std::min(
              {v_s + (int)lo.prec[m], v_src + p_s, p_s + (int)lo.prec[m], K});
          add_scaled_into(R, pow[k], (int)base + m, tbuf.data(), tp);
        }
      }
    }
    if (pow[1].slots > j) {
      i64* d = &pow[1].v[(size_t)j * f];
      std::copy(an.c.begin(), an.c.end(), d);
      pow[1].prec[j] = (int16_t)an.prec;
    }
  }
  return out;
}

LTSeries lt_coeffs(const PrimeParams& pp, i64 gamma, i64 t_bound, int K) {
  const WittCtx* ctx = WittCtx::get(pp.p, pp.f, K);
  return lt_coeffs(w_make(ctx, gamma), t_bound, K);
}

FSeries lt_mod_p(const PrimeParams& pp, const WittElem& gamma, i64 t_bound) {
  int K = lt_default_prec(pp, t_bound);
  LTSeries lt = lt_coeffs(gamma, t_bound, K);
  FSeries r = ts_zero<FieldElem>(t_bound + 1);
  for (auto& [n, a] : lt.coeffs) r.set(n, w_reduce(a));
  return r;
}

// ---------------------------------------------------------------------------
// dense packed composition for series supported on 1 + Z>=0*xi

namespace {

struct FqTables {
  int q;
  std::vector<unsigned char> add, mul;
  unsigned char at_add(int a, int b) const { return add[(size_t)a * q + b]; }
  unsigned char at_mul(int a, int b) const { return mul[(size_t)a * q + b]; }
};

FqTables build_tables(const FieldCtx* kf) {
  i64 q = kf->order();
  if (q > 128) throw arith_error("packed composition supports q <= 128 only");
  FqTables t;
  t.q = (int)q;
  t.add.resize((size_t)q * q);
  t.mul.resize((size_t)q * q);
  for (i64 a = 0; a < q; ++a) {
    FieldElem fa = fe_from_index(kf, a);
    for (i64 b = 0; b < q; ++b) {
      FieldElem fb = fe_from_index(kf, b);
      t.add[(size_t)a * q + b] = (unsigned char)fe_index(fe_add(fa, fb));
      t.mul[(size_t)a * q + b] = (unsigned char)fe_index(fe_mul(fa, fb));
    }
  }
  return t;
}

// c = a*b truncated to length n (z-degree < n)
void dense_mul(const FqTables& T, const std::vector<unsigned char>& a,
               const std::vector<unsigned char>& b, int n,
               std::vector<unsigned char>& out) {
  out.assign(n, 0);
  int na = std::min<int>((int)a.size(), n);
  for (int i = 0; i < na; ++i) {
    unsigned char ai = a[i];
    if (!ai) continue;
    const unsigned char* mrow = &T.mul[(size_t)ai * T.q];
    int nb = std::min<int>((int)b.size(), n - i);
    for (int jl = 0; jl < nb; ++jl) {
      unsigned char prod = mrow[b[jl]];
      if (prod) out[i + jl] = T.at_add(out[i + jl], prod);
    }
  }
}

}  // namespace

FSeries lt_compose_mod_p(const PrimeParams& pp, const FSeries& outer,
                         const FSeries& inner, i64 bound) {
  i64 xi = pp.xi;
  if (outer.trunc <= bound || inner.trunc <= bound)
    throw arith_error("compose: operands truncated below requested bound");
  const FieldCtx* kf = nullptr;
  if (!outer.c.empty())
    kf = outer.c.begin()->second.ctx;
  else if (!inner.c.empty())
    kf = inner.c.begin()->second.ctx;
  FSeries res = ts_zero<FieldElem>(bound + 1);
  if (!kf) return res;

  int L = (int)((bound - 1) / xi);
  auto pack = [&](const FSeries& s) {
    std::vector<unsigned char> v(L + 1, 0);
    for (auto& [d, c] : s.c) {
      if (d > bound) continue;
      if ((d - 1) % xi != 0)
        throw arith_error("compose: support not on the index grid");
      v[(d - 1) / xi] = (unsigned char)fe_index(c);
    }
    return v;
  };
  FqTables T = build_tables(kf);
  std::vector<unsigned char> A = pack(outer), B = pack(inner);

  // outer(inner) = t * B(z) * sum_j A_j (z * B(z)^xi)^j,  z = t^xi
  std::vector<unsigned char> C(L + 1, 0), tmp;
  {  // C = B^xi
    std::vector<unsigned char> base = B, r(L + 1, 0);
    r[0] = (unsigned char)fe_index(fe_make(kf, 1));
    i64 e = xi;
    while (e) {
      if (e & 1) {
        dense_mul(T, r, base, L + 1, tmp);
        r.swap(tmp);
      }
      e >>= 1;
      if (e) {
        dense_mul(T, base, base, L + 1, tmp);
        base.swap(tmp);
      }
    }
    C.swap(r);
  }
  std::vector<unsigned char> H(L + 1, 0);
  for (int j = L; j >= 0; --j) {
    // H = shift(H*C) + A_j
    dense_mul(T, H, C, L, tmp);
    H.assign(L + 1, 0);
    std::copy(tmp.begin(), tmp.begin() + L, H.begin() + 1);
    H[0] = A[j] ? T.at_add(H[0], A[j]) : H[0];
  }
  dense_mul(T, B, H, L + 1, tmp);
  for (int j = 0; j <= L; ++j)
    if (tmp[j]) res.set(1 + (i64)j * xi, fe_from_index(kf, tmp[j]));
  return res;
}

// ---------------------------------------------------------------------------
// identity verifier

VerifyReport lt_verify_identities(const PrimeParams& pp,
                                  const std::vector<WittElem>& gammas,
                                  i64 index_bound, int K) {
  i64 p = pp.p, q = pp.q, xi = pp.xi;
  if (index_bound < 2 * q * q)
    throw arith_error("identity check needs index_bound >= 2q^2");
  VerifyReport rep;
  const WittCtx* ctx = WittCtx::get(p, pp.f, K);
  const FieldCtx* kf = ctx->residue_field;
  WittElem one = w_make(ctx, 1);
  WittElem pw = w_make(ctx, p);

  auto note = [&](const WittElem& g, const std::string& what) {
    rep.fail("gamma=" + w_str(g) + ": " + what);
  };

  std::vector<LTSeries> series;
  for (const WittElem& g0 : gammas) {
    WittElem g = w_from_coeffs(ctx, g0.c);
    LTSeries lt = lt_coeffs(g, index_bound, K);
    series.push_back(lt);

    // a_1 = gamma
    ++rep.checked;
    if (!w_eq_mod_prec(*lt.get(1), g)) note(g, "first coefficient");

    // a_q = (g^q - g)/(p^q - p)
    ++rep.checked;
    WittElem denom_unit = w_div_p(w_sub(w_pow(pw, q), pw));
    WittElem aq = w_mul(w_div_p(w_sub(w_pow(g, q), g)), w_inv(denom_unit));
    if (!w_eq_mod_prec(*lt.get(q), aq)) note(g, "q-th coefficient");

    // a_{2q-1} = q (p^xi - g^xi) / (p - p^{2q-1}) * a_q
    ++rep.checked;
    WittElem num = w_mul(w_make(ctx, q), w_sub(w_pow(pw, xi), w_pow(g, xi)));
    WittElem u2 = w_sub(one, w_pow(pw, 2 * q - 2));
    WittElem expect = w_mul(w_mul(w_div_p(num), w_inv(u2)), *lt.get(q));
    if (!w_eq_mod_prec(*lt.get(2 * q - 1), expect))
      note(g, "coefficient at 2q-1");

    // residue-level pattern on the window (q, q^2)
    if (pp.f >= 2) {
      FieldElem gbar = w_reduce(g);
      FieldElem aqbar = w_reduce(*lt.get(q));
      i64 pf1 = ipow(p, pp.f - 1);
      std::map<i64, FieldElem> expected;
      for (i64 r = 1; r < p; ++r) {
        i64 n = (r * pf1 + 1) * xi + 1;
        i64 cpr = binom_mod_pk(p, r, p, 2) / p;  // C(p,r)/p is a unit integer
        FieldElem v = fe_mul(fe_make(kf, -cpr),
                             fe_mul(gbar, fe_pow(fe_mul(aqbar, fe_inv(gbar)),
                                                 r * pf1)));
        expected.emplace(n, v);
      }
      for (i64 n = q + xi; n < q * q; n += xi) {
        ++rep.checked;
        FieldElem got = w_reduce(*lt.get(n));
        auto it = expected.find(n);
        FieldElem want = it == expected.end() ? fe_make(kf, 0) : it->second;
        if (!(got == want))
          note(g, "window coefficient at index " + std::to_string(n));
      }
    }

    // expansion of [gamma] for gamma = 1 in the residue field
    if (w_reduce(g) == fe_make(kf, 1)) {
      i64 pf1 = ipow(p, pp.f - 1);
      i64 n_exc = (pf1 + 1) * xi + 1;
      i64 window = (2 * pf1 + 1) * xi + 1;
      FieldElem aqbar = w_reduce(*lt.get(q));
      for (i64 n = 1; n < window; n += xi) {
        ++rep.checked;
        FieldElem got = w_reduce(*lt.get(n));
        FieldElem want = fe_make(kf, 0);
        if (n == 1)
          want = fe_make(kf, 1);
        else if (n == q)
          want = aqbar;
        else if (n == n_exc)
          want = fe_neg(fe_pow(aqbar, pf1));
        if (!(got == want))
          note(g, "unipotent expansion at index " + std::to_string(n));
      }
    }
  }

  // cocycle on consecutive pairs; the residue-field statement is the sharp
  // one, over O_F it fails by (g^{q-1}-1)(h^{q-1}-1)/(p^q-p)
  for (size_t i = 0; i + 1 < gammas.size(); ++i) {
    WittElem g = w_from_coeffs(ctx, gammas[i].c);
    WittElem h = w_from_coeffs(ctx, gammas[i + 1].c);
    WittElem gh = w_mul(g, h);
    LTSeries lt = lt_coeffs(gh, q, K);
    ++rep.checked;
    FieldElem lhs = w_reduce(w_mul(*lt.get(q), w_inv(gh)));
    FieldElem rhs = w_reduce(w_add(w_mul(*series[i].get(q), w_inv(g)),
                                   w_mul(*series[i + 1].get(q), w_inv(h))));
    if (!(lhs == rhs)) note(gh, "cocycle for the q-th coefficient");
  }
  return rep;
}

}  // namespace ltpg
