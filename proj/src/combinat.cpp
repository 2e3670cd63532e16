#include "ltpg/combinat.hpp"

#include <algorithm>

namespace ltpg {

static void check_f(int f) {
  if (f < 1 || f > 16) throw arith_error("subset degree out of range");
}

FSubset FSubset::empty(int f) {
  check_f(f);
  return FSubset{f, 0};
}

FSubset FSubset::full(int f) {
  check_f(f);
  return FSubset{f, (1ull << f) - 1};
}

FSubset FSubset::of(int f, std::initializer_list<i64> xs) {
  FSubset s = empty(f);
  for (i64 x : xs) s.mask |= 1ull << pi_mod(x, f);
  return s;
}

FSubset FSubset::from_mask(int f, unsigned long long m) {
  check_f(f);
  if (m >> f) throw arith_error("subset mask out of range");
  return FSubset{f, m};
}

FSubset FSubset::with(i64 x) const {
  return FSubset{f, mask | (1ull << pi_mod(x, f))};
}

int FSubset::size() const { return __builtin_popcountll(mask); }

bool FSubset::subset_of(const FSubset& o) const {
  return f == o.f && (mask & ~o.mask) == 0;
}

FSubset FSubset::complement() const {
  return FSubset{f, ~mask & ((1ull << f) - 1)};
}

FSubset FSubset::unite(const FSubset& o) const {
  return FSubset{f, mask | o.mask};
}

FSubset FSubset::intersect(const FSubset& o) const {
  return FSubset{f, mask & o.mask};
}

FSubset FSubset::minus(const FSubset& o) const {
  return FSubset{f, mask & ~o.mask};
}

FSubset FSubset::shift(i64 d) const {
  int r = pi_mod(d, f);
  unsigned long long lo = (mask << r) & ((1ull << f) - 1);
  unsigned long long hi = r ? (mask >> (f - r)) : 0;
  return FSubset{f, lo | hi};
}

FSubset FSubset::lower() const {
  FSubset s = empty(f);
  for (int j = 0; j < f; ++j)
    if (contains(j) && !contains(j - 1)) s.mask |= 1ull << j;
  return s;
}

FSubset FSubset::upper() const { return complement().lower(); }

FSubset FSubset::c1() const { return complement().shift(1); }

i64 FSubset::run_end(i64 j) const {
  if (!contains(j) || contains(j - 1))
    throw arith_error("run_end needs a block start");
  i64 k = j + 1;
  while (contains(k)) ++k;
  return k;
}

std::vector<int> FSubset::elements() const {
  std::vector<int> out;
  for (int j = 0; j < f; ++j)
    if (contains(j)) out.push_back(j);
  return out;
}

std::string FSubset::str() const {
  std::string s = "{";
  bool first = true;
  for (int j : elements()) {
    if (!first) s += ",";
    s += std::to_string(j);
    first = false;
  }
  return s + "}";
}

i64 Digits::ell_at(i64 i) const {
  if (i < 0) throw arith_error("ell_at needs a nonnegative index");
  i64 out = 0;
  for (int j = 0; j < pp.f; ++j)
    out += (i64)m_at(j + i) * ipow(pp.p, j + i);
  return out;
}

FSubset e_set(const Digits& d) {
  const int f = d.pp.f, p = (int)d.pp.p;
  FSubset e = FSubset::empty(f);
  for (int i = 0; i < f; ++i) {
    for (i64 r = i - 1; r >= i - f; --r) {
      if (d.m_at(r) != p - 1) continue;
      bool mid = true;
      for (i64 s = r + 1; s < i && mid; ++s) mid = d.m_at(s) == p - 2;
      if (mid) {
        e = e.with(i);
        break;
      }
    }
  }
  return e;
}

static FSubset e_anti_window(const Digits& d, i64 lo_off) {
  const int f = d.pp.f, p = (int)d.pp.p;
  FSubset e = FSubset::empty(f);
  for (int i = 0; i < f; ++i) {
    for (i64 j = i - 1; j >= i - f + lo_off; --j) {
      if (d.a_at(j) != p) continue;
      bool mid = true;
      for (i64 s = j + 1; s < i && mid; ++s) mid = d.a_at(s) == p - 1;
      if (mid) {
        e = e.with(i);
        break;
      }
    }
  }
  return e;
}

FSubset e_set_anti(const Digits& d) { return e_anti_window(d, 0); }

FSubset e_set_strict(const Digits& d) { return e_anti_window(d, 1); }

FSubset d_set(const Digits& d) { return d.e_mask.complement(); }

Digits digits_of(const PrimeParams& pp, i64 ell) {
  if (ell < 0 || ell > pp.q - 2) throw arith_error("class out of range");
  Digits d;
  d.pp = pp;
  d.ell = ell;
  d.m.resize(pp.f);
  d.a.resize(pp.f);
  i64 v = ell;
  for (int i = 0; i < pp.f; ++i) {
    d.m[i] = (int)(v % pp.p);
    v /= pp.p;
  }
  // 1 + digits of (-ell - xi/(p-1)) mod xi
  i64 w = mod_norm(-ell - pp.xi / (pp.p - 1), pp.xi);
  for (int i = 0; i < pp.f; ++i) {
    d.a[i] = (int)(w % pp.p) + 1;
    w /= pp.p;
  }
  d.e_mask = e_set(d);
  d.e_nu = e_set_strict(d);
  return d;
}

int sigma_of(const Digits& d, i64 j) { return d.in_d(j) ? 1 : 2; }

DMapVal id_construct(const Digits& d, i64 i_prime) {
  const int f = d.pp.f, p = (int)d.pp.p;
  i64 ipp = i_prime;
  int guard = 0;
  while (d.m_at(ipp - 1) == p - 1) {
    --ipp;
    if (++guard > f) throw arith_error("digit vector is all p-1");
  }
  DMapVal out;
  if (d.in_d(ipp)) {
    out.id = pi_mod(ipp, f);
    out.md = (ipp - out.id) / f;
  } else {
    out.id = pi_mod(ipp - 1, f);
    out.md = (ipp - 1 - out.id) / f;
  }
  out.ie = pi_mod(i_prime, f);
  out.me = (i_prime - out.ie) / f;
  return out;
}

int id_closed(const Digits& d, i64 i) {
  const int f = d.pp.f, p = (int)d.pp.p;
  for (i64 j = i - 1; j >= i - f; --j) {
    if (d.a_at(j) != p) continue;
    bool mid = true;
    for (i64 s = j + 1; s < i && mid; ++s) mid = d.a_at(s) == p - 1;
    if (mid) return pi_mod(j, f);
  }
  return pi_mod(i, f);
}

int nu_map(const Digits& lt, const Digits& lb, i64 x) {
  if (lt.e_nu.contains(x)) return pi_mod(x, lt.pp.f);
  return id_closed(lb, pi_mod(x, lt.pp.f));
}

FSubset nu_image(const Digits& lt, const Digits& lb, const FSubset& s) {
  FSubset out = FSubset::empty(s.f);
  for (int x : s.elements()) out = out.with(nu_map(lt, lb, x));
  return out;
}

int delta_map(const Digits& lb, i64 j) {
  return pi_mod(id_closed(lb, j + 1) - 1, lb.pp.f);
}

FSubset delta_image(const Digits& lb, const FSubset& s) {
  FSubset out = FSubset::empty(s.f);
  for (int x : s.elements()) out = out.with(delta_map(lb, x));
  return out;
}

std::vector<int> mu_choices(const Digits& lb, const FSubset& Jc) {
  std::vector<int> out;
  FSubset img = delta_image(lb, Jc);
  if (img.subset_of(Jc)) return out;
  for (int x : img.minus(Jc).elements()) out.push_back(x);
  return out;
}

std::vector<i64> mu_raw(const Digits& lb, const FSubset& Jc, int i1) {
  const int f = lb.pp.f;
  i64 j1 = 0;
  bool found = false;
  for (i64 j = i1 + 1; j <= i1 + f && !found; ++j)
    if (Jc.contains(j) && delta_map(lb, j) == i1) {
      j1 = j;
      found = true;
    }
  if (!found) throw arith_error("seed is not a delta value on the complement");
  std::vector<i64> js{j1};
  for (i64 j = j1 + 1; j < j1 + f; ++j)
    if (Jc.contains(j)) js.push_back(j);
  std::vector<i64> is{i1};
  for (size_t k = 1; k < js.size(); ++k) {
    i64 j = js[k];
    int dv = delta_map(lb, j);
    i64 dhat = j - pi_mod(j - dv, f);  // largest representative <= j
    is.push_back(is[k - 1] < dhat ? dhat : j);
  }
  return is;
}

FSubset mu_of_choice(const Digits& lb, const FSubset& Jc, int i1) {
  FSubset out = FSubset::empty(Jc.f);
  for (i64 x : mu_raw(lb, Jc, i1)) out = out.with(x);
  return out;
}

FSubset mu_of(const Digits& lb, const FSubset& Jc) {
  std::vector<int> seeds = mu_choices(lb, Jc);
  if (seeds.empty()) return Jc;
  return mu_of_choice(lb, Jc, seeds.front());
}

bool is_maximal(const Digits& lt, const FSubset& J) {
  const int f = lt.pp.f, p = (int)lt.pp.p;
  if (lt.ell == 0 && J == FSubset::full(f)) return false;
  FSubset Jc = J.complement();
  for (int i = 0; i < f; ++i) {
    if (lt.a_at(i) != p) continue;
    bool mid = true, blk = true;
    for (int j = i + 1; j <= i + f - 1; ++j) {
      blk = blk && J.contains(j - 1);
      if (lt.a_at(j) == 1 && mid && blk && Jc.contains(j)) return false;
      mid = mid && lt.a_at(j) == p - 1;
    }
    // a run (p, p-1, ..., p-1) may not step from J into the complement
    for (int x = i + 1; x <= i + f - 1; ++x) {
      if (lt.a_at(x) != p - 1) break;
      if (J.contains(x - 1) && Jc.contains(x)) return false;
    }
  }
  return true;
}

i64 succ_ell_value(const Digits& lt, const FSubset& J) {
  i64 s = 0;
  for (int j = 0; j < lt.pp.f; ++j) {
    i64 term = (i64)lt.a[j] * ipow(lt.pp.p, j) % lt.pp.xi;
    s += J.contains(j) ? term : -term;
  }
  return mod_norm(s, lt.pp.xi);
}

VerifyReport verify_goldin(const PrimeParams& pp) {
  VerifyReport rep;
  const int f = pp.f;
  for (i64 lt_ell = 0; lt_ell <= pp.q - 2; ++lt_ell) {
    Digits lt = digits_of(pp, lt_ell);
    for (unsigned long long m = 0; m < (1ull << f); ++m) {
      FSubset J = FSubset::from_mask(f, m);
      if (!is_maximal(lt, J)) continue;
      FSubset Jc = J.complement();
      i64 lb_ell = succ_ell_value(lt, J);
      Digits lb = digits_of(pp, lb_ell);
      ++rep.checked;
      auto note = [&](const std::string& what) {
        rep.fail("ell=" + std::to_string(lt_ell) + " J=" + J.str() + " -> " +
                 std::to_string(lb_ell) + ": " + what);
      };
      FSubset jc1 = J.c1();
      std::vector<int> vals;
      for (int x : jc1.elements()) vals.push_back(nu_map(lt, lb, x));
      std::vector<int> sorted = vals;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        note("nu is not injective on the shifted complement");
        continue;
      }
      FSubset img = FSubset::empty(f);
      for (int v : vals) img = img.with(v);
      FSubset mu = mu_of(lb, Jc);
      if (!(img.shift(-1) == mu)) {
        note("nu image shifted by -1 is " + img.shift(-1).str() +
             " but mu is " + mu.str());
        continue;
      }
      if (mu.size() != Jc.size()) note("mu dropped elements: " + mu.str());
      for (int seed : mu_choices(lb, Jc))
        if (!(mu_of_choice(lb, Jc, seed) == mu))
          note("mu depends on the seed " + std::to_string(seed));
    }
  }
  return rep;
}

}  // namespace ltpg
