#pragma once
// Digit-level combinatorics on F = Z/fZ: subset calculus, the two digit
// systems attached to a class in [0, q-2], the D/E split, the shift maps
// i_D/i_E, nu, delta, mu, and maximality of complements.

#include <initializer_list>

#include "ltpg/arith.hpp"
#include "ltpg/verify.hpp"

namespace ltpg {

// representative of x in [0, f)
inline int pi_mod(i64 x, int f) { return (int)(((x % f) + f) % f); }

// subset of F = Z/fZ as a bitmask; all element arguments are reduced mod f
struct FSubset {
  int f = 0;
  unsigned long long mask = 0;

  static FSubset empty(int f);
  static FSubset full(int f);
  static FSubset of(int f, std::initializer_list<i64> xs);
  static FSubset from_mask(int f, unsigned long long m);

  bool contains(i64 x) const { return (mask >> pi_mod(x, f)) & 1u; }
  FSubset with(i64 x) const;
  int size() const;
  bool operator==(const FSubset& o) const {
    return f == o.f && mask == o.mask;
  }
  bool subset_of(const FSubset& o) const;
  FSubset complement() const;
  FSubset unite(const FSubset& o) const;
  FSubset intersect(const FSubset& o) const;
  FSubset minus(const FSubset& o) const;
  FSubset shift(i64 d) const;  // {x + d : x in this}
  FSubset lower() const;       // J^-  = {j in J : j-1 not in J}
  FSubset upper() const;       // J^+  = (J^c)^-
  FSubset c1() const;          // J^{c,1} = J^c + 1
  // for j in J^-: the least integer > j with Pi(j') not in J; the blocks
  // [j, run_end(j)-1] over j in J^- partition J
  i64 run_end(i64 j) const;
  std::vector<int> elements() const;
  std::string str() const;
};

// the two canonical digit vectors of a class ell in [0, q-2]:
// ell = sum m_i p^i with m in [0,p-1]^f not all p-1, and
// ell = -sum a_i p^i mod xi with a in [1,p]^f not all p
struct Digits {
  PrimeParams pp;
  i64 ell = 0;
  std::vector<int> m, a;
  FSubset e_mask;  // E(ell) from the standard-digit description
  // variant split used by nu: the anti-digit pattern may not wrap a full
  // period, so the f classes whose anti-digits are p-1 except a single p
  // lose their wrap-only memberships
  FSubset e_nu;

  int m_at(i64 i) const { return m[pi_mod(i, pp.f)]; }
  int a_at(i64 i) const { return a[pi_mod(i, pp.f)]; }
  // ell_{[i]} = sum_{j<f} m_{j+i} p^{j+i}, exact integer, i >= 0
  i64 ell_at(i64 i) const;
  bool in_e(i64 i) const { return e_mask.contains(i); }
  bool in_d(i64 i) const { return !e_mask.contains(i); }
};

Digits digits_of(const PrimeParams& pp, i64 ell);

// E(ell) via standard digits: i such that some r in [i-f, i-1] has
// m_r = p-1 and m_s = p-2 for all r < s < i
FSubset e_set(const Digits& d);
// the same set via anti-digits: some j < i with a_j = p and a_s = p-1
// strictly between
FSubset e_set_anti(const Digits& d);
// anti-digit route without the full-period pattern j = i-f
FSubset e_set_strict(const Digits& d);
FSubset d_set(const Digits& d);

// 1 if Pi(j) lies in D(ell), else 2
int sigma_of(const Digits& d, i64 j);

// the shift maps attached to an integer position
struct DMapVal {
  int id;   // i_D in F
  i64 md;   // m_D
  int ie;   // i_E = Pi(i')
  i64 me;   // m_E
};
DMapVal id_construct(const Digits& d, i64 i_prime);
// closed form: Pi(min({j < i : a_j = p, a_s = p-1 for j < s < i} u {i}))
int id_closed(const Digits& d, i64 i);

// nu(x) = i_D^{lb}(x) for x in D(lt), x for x in E(lt), with the D/E split
// taken in the strict (no full-period wrap) sense
int nu_map(const Digits& lt, const Digits& lb, i64 x);
FSubset nu_image(const Digits& lt, const Digits& lb, const FSubset& s);

// delta(j) = Pi(i_D^{lb}(j+1) - 1)
int delta_map(const Digits& lb, i64 j);
FSubset delta_image(const Digits& lb, const FSubset& s);

// mu(J^c): equal to J^c when delta(J^c) is contained in J^c, otherwise the
// iterative construction seeded at an admissible i1
std::vector<int> mu_choices(const Digits& lb, const FSubset& Jc);
std::vector<i64> mu_raw(const Digits& lb, const FSubset& Jc, int i1);
FSubset mu_of_choice(const Digits& lb, const FSubset& Jc, int i1);
FSubset mu_of(const Digits& lb, const FSubset& Jc);

// no block of J ends right before a J^c position carrying the pattern
// (p, p-1, ..., p-1, 1) in the anti-digits, no run (p, p-1, ..., p-1)
// stepping from J into J^c, and J != F when ell = 0
bool is_maximal(const Digits& lt, const FSubset& J);

// the unique class lb with lt >_J lb:
// lb = sum_{j in J} a_j p^j - sum_{j in J^c} a_j p^j mod xi
i64 succ_ell_value(const Digits& lt, const FSubset& J);

// exhaustive check over (ell, J) with J^c maximal: nu restricted to J^{c,1}
// is injective, its image shifted by -1 equals mu(J^c), mu has full size
// and is independent of the seed choice
VerifyReport verify_goldin(const PrimeParams& pp);

}  // namespace ltpg
