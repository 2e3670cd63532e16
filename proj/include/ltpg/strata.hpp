#pragma once
// Stratification combinatorics at fixed (p, f): points of the two index
// sets D (pairs (ell, I) plus classes mod q+1) and E (triples (ell, u, I)
// plus classes mod q^2-1), the shadow order succ_J on D, the degeneration
// relation rhd on E, Serre weight sets with multiplicities, and exhaustive
// verifiers for the structure statements on small instances.

#include <cstdint>
#include <string>
#include <vector>

#include "ltpg/combinat.hpp"
#include "ltpg/verify.hpp"

namespace ltpg {

// Point of D: either a pair (ell, I) with ell in [0, xi) and I a subset of
// the position set, or an irreducible class hh in Z/(q+1) stored in [0, q].
struct StratumD {
  bool irr = false;
  i64 ell = 0;
  FSubset iset;
  i64 hh = 0;

  static StratumD red(i64 ell, FSubset iset);
  static StratumD irred(const PrimeParams& pp, i64 hh);

  bool operator==(const StratumD& o) const;
  bool operator<(const StratumD& o) const;
  std::string str() const;
};

// Point of E, stored canonically. An irreducible class [h] mod q^2-1 is
// identified with [q*h]; the stored representative is the smaller of the
// two. A triple (ell, u, {}) labels the same stratum as (-ell, u-ell, {});
// the stored representative is the lexicographically smaller pair (ell, u).
// Triples with nonempty I are unambiguous.
struct StratumE {
  bool irr = false;
  i64 ell = 0;
  i64 u = 0;
  FSubset iset;
  i64 h = 0;

  static StratumE red(const PrimeParams& pp, i64 ell, i64 u, FSubset iset);
  static StratumE irred(const PrimeParams& pp, i64 h);

  bool operator==(const StratumE& o) const;
  bool operator<(const StratumE& o) const;
  std::string str() const;
};

// ell' = swap partner of ell, u' likewise: (ell, u, {}) and swap_pair(ell, u)
// with empty I label the same stratum. Involution.
std::pair<i64, i64> swap_pair(const PrimeParams& pp, i64 ell, i64 u);

// Projection E -> D: forget u, reduce h mod q+1. For an irreducible class
// the result depends on the chosen representative of [h]; the stored one is
// used. projection_matches accepts either representative.
StratumD project(const PrimeParams& pp, const StratumE& e);
bool projection_matches(const PrimeParams& pp, const StratumE& e, const StratumD& d);

// Reducible-to-reducible successor relation on classes: lt succeeds to lb
// along J iff lb = sum_{j in J} a_j p^j - sum_{j not in J} a_j p^j mod xi,
// with a the anti-digits of lt.
bool succ_ell(const PrimeParams& pp, i64 lt, i64 lb, const FSubset& J);

// The value succ_ell picks out (succ_ell(pp, lt, lb, J) iff lb == this).
i64 succ_ell_of(const PrimeParams& pp, i64 lt, const FSubset& J);

// Reducible-to-irreducible successor relation: ell succeeds to h mod q+1
// along J iff h = sum_{j in J} a_j p^j - sum_{j not in J} a_j p^j mod q+1
// for some valid anti-digit tuple of ell (tuples (1,..,1) and (p,..,p)
// both represent ell = (p-2)/(p-1)*xi and give different h).
bool succ_plus(const PrimeParams& pp, i64 ell, i64 h, const FSubset& J);

// Full shadow order on D along a fixed J.
//  (ell, I) over (lb, Ib): succ_ell, J^- and J^+ inside I, and
//      Ib contained in nu(I intersect J^{c,1}).
//  (ell, I) over [[h]]: I^c cap {0} inside J^+ cup J^- inside I cup {0},
//      and succ_plus.
//  Irreducible sources have no outgoing relations here.
bool succ_D(const PrimeParams& pp, const StratumD& a, const StratumD& b, const FSubset& J);

// Exists-J form, and the witness list.
bool succ_D_some(const PrimeParams& pp, const StratumD& a, const StratumD& b);
std::vector<FSubset> succ_D_witnesses(const PrimeParams& pp, const StratumD& a,
                                      const StratumD& b);

// One admissible block move out of (lt, ut, It): positions i1 < i2 with
// i2 - i1 < f, both at least 2f, J the reduced block [i2, i1+f-1].
struct BlockMove {
  i64 i1 = 0;
  i64 i2 = 0;
  FSubset jset;   // reduction of [i2, i1+f-1]
  i64 lb = 0;     // successor class along jset
  FSubset ibar;   // nu-image of It minus {i1 mod f}
  i64 w = 0;      // transition offset mod xi; ub = ut - lt - w
  i64 ub = 0;
};

// The offset w = sigma(i2) p^i2 - sigma(i1) p^i1 - sum_{i1 <= i < i2} m_i p^i
// reduced mod xi. Depends on i1, i2 only through their reductions and
// the gap i2 - i1.
i64 block_w(const PrimeParams& pp, i64 lt, i64 i1, i64 i2);

// The congruence pair cutting out ub given ut: 2(ut - ub) = lt - lb mod xi
// and ut - ub - lt in xi Z + p^i1 [0, sum_{j<=i2-i1} p^j]. For each ut there
// is exactly one ub mod xi.
bool block_congruences(const PrimeParams& pp, i64 lt, i64 lb, i64 ut, i64 ub, i64 i1,
                       i64 i2);

// All block moves out of (lt, ut, It) whose position constraints It must
// satisfy: {i1 mod f, i2 mod f} inside It inside [i1, i2] mod f.
std::vector<BlockMove> block_moves(const PrimeParams& pp, i64 lt, i64 ut,
                                   const FSubset& It);

// Degeneration relation on E (reflexive on irreducibles: [h] and [qh] are
// one stored point). Inputs and outputs are canonical representatives.
bool rhd(const PrimeParams& pp, const StratumE& a, const StratumE& b);

// All one-step successors of e under rhd, canonical, sorted, deduplicated,
// including e itself.
std::vector<StratumE> rhd_successors(const PrimeParams& pp, const StratumE& e);

// Reflexive-transitive closure of rhd from e.
std::vector<StratumE> rhd_closure(const PrimeParams& pp, const StratumE& e);

// Highest weight data of an irreducible mod-p representation of GL2:
// twist digits d and anti-digits a of the defining class, plus the
// Steinberg flag.
struct SerreWeight {
  std::vector<int> d;
  std::vector<int> a;
  bool steinberg = false;

  bool operator==(const SerreWeight& o) const;
  bool operator<(const SerreWeight& o) const;
  std::string str() const;
};

// Weight attached to the pair (ell, u): a = anti-digits of ell, d = base-p
// digits of (ell - u) mod xi.
SerreWeight serre_weight(const PrimeParams& pp, i64 ell, i64 u);

// Steinberg-type weight attached to u: a = (p, ..., p), d determined by
// u = -sum (1 + d_i) p^i mod xi.
SerreWeight serre_weight_st(const PrimeParams& pp, i64 u);

struct WeightEntry {
  SerreWeight w;
  i64 ell = 0;
  i64 u = 0;
  i64 mult = 0;
};

// Multiplicity of the D-point d at the class ell: number of J with
// (ell, I) over d for some I (I = F always realizes an admissible J).
i64 mult_count_j(const PrimeParams& pp, i64 ell, const StratumD& d);

// Companion count from the minimal-I description: number of I that are
// minimal among sources of some fixed witness J. Agrees with mult_count_j
// on most instances but not all; mult_count_j is the count used downstream.
i64 mult_count_i(const PrimeParams& pp, i64 ell, const StratumD& d);

// Weights of the closed stratum of e: one entry per class lt whose full
// flag stratum (lt, u, F) degenerates into e, with the unique u, the
// attached weight, and the multiplicity of [[e]] at lt; plus, when the
// twin class (p-2)/(p-1)*xi occurs, its Steinberg companion with the same
// u and multiplicity. Sorted by (ell, steinberg).
std::vector<WeightEntry> weight_set(const PrimeParams& pp, const StratumE& e);

// Enumeration of all canonical E-points with memoized successor lists and
// closure rows (bitsets over the node order). Node order: sorted by
// StratumE::operator<.
class StrataUniverse {
 public:
  explicit StrataUniverse(const PrimeParams& pp);

  const PrimeParams& params() const { return pp_; }
  const std::vector<StratumE>& nodes() const { return nodes_; }
  i64 index_of(const StratumE& e) const;  // -1 if absent
  const std::vector<i64>& succs(i64 idx);
  bool reaches(i64 src, i64 dst);
  std::vector<i64> closure_of(i64 src);

 private:
  const std::vector<std::uint64_t>& closure_row(i64 idx);

  PrimeParams pp_;
  std::vector<StratumE> nodes_;
  std::vector<std::vector<i64>> succs_;
  std::vector<char> succs_done_;
  std::vector<std::vector<std::uint64_t>> closure_;
  std::vector<char> closure_done_;
  i64 words_ = 0;
};

// Exhaustive checks. Each throws budget_error when (q-1) * 4^f exceeds
// the cap.

// Decomposition and composition of the shadow order: every succ_D along a
// J with nonempty lower boundary decomposes into steps with one-element
// lower boundary, blocks (J empty or full) act by a single step on shrunk
// position sets, and every composite of two relations is a relation.
VerifyReport verify_tobbu(const PrimeParams& pp, i64 budget = 1'000'000);

// Factorization through one-element position sets: (ell, I) over [[h]]
// iff it factors as (ell, I) over (lb, {i}) over [[h]] with prefix or
// suffix second step.
VerifyReport verify_ostersa(const PrimeParams& pp, i64 budget = 1'000'000);

// Closure of the full flag stratum: (lt, ut, F) reaches (lb, ub, Ib) iff
// some J relates the projections with Ib inside nu(J^{c,1}), and ut is
// then unique mod xi; same for irreducible targets via succ_plus.
VerifyReport verify_marienmai(const PrimeParams& pp, i64 budget = 1'000'000);

// Compatibility of rhd with the shadow order under projection: every
// one-step degeneration projects to a succ_D with small lower boundary,
// except the isolated-vanishing steps, which are classified exactly; and
// every shadow relation with small lower boundary lifts uniquely.
VerifyReport verify_fernandodrei(const PrimeParams& pp, i64 budget = 1'000'000);

}  // namespace ltpg
