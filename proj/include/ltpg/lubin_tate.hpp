#pragma once
// Multiplication series [gamma](t) of the formal group Phi(t) = p t + t^q:
// coefficient recursion over O_F/p^K with precision tracking, mod-p
// reductions, and the verifier for all stated coefficient identities.

#include "ltpg/arith.hpp"
#include "ltpg/verify.hpp"

namespace ltpg {

// [gamma](t) = sum over the index set N = 1 + Z>=0*(q-1) of a_n t^n.
struct LTSeries {
  const WittCtx* ctx = nullptr;
  i64 bound = 0;                    // indices n in N with n <= bound computed
  std::map<i64, WittElem> coeffs;   // keyed by n in N (zeros stored too)

  const WittElem* get(i64 n) const {
    auto it = coeffs.find(n);
    return it == coeffs.end() ? nullptr : &it->second;
  }
};

// Smallest L with q^L >= x (x >= 1).
int log_ceil(i64 q, i64 x);

// Default precision budget for a given coefficient bound.
int lt_default_prec(const PrimeParams& pp, i64 t_bound);

// Coefficients a_n for n in N, n <= t_bound, in O_F/p^K. gamma must be a
// unit known to at least K digits. Requires K >= 2 + log_ceil(q, t_bound).
LTSeries lt_coeffs(const WittElem& gamma, i64 t_bound, int K);
// gamma embedded from an integer.
LTSeries lt_coeffs(const PrimeParams& pp, i64 gamma, i64 t_bound, int K);

// Reduction of [gamma] mod p, truncated after degree t_bound.
FSeries lt_mod_p(const PrimeParams& pp, const WittElem& gamma, i64 t_bound);

// Composition outer(inner) mod p for series supported on N, up to t-degree
// bound. Dense packed arithmetic; agrees with fs_compose on the overlap.
FSeries lt_compose_mod_p(const PrimeParams& pp, const FSeries& outer,
                         const FSeries& inner, i64 bound);

// Checks every stated coefficient identity for each sampled gamma, the
// cocycle identity on consecutive pairs, and the vanishing pattern on the
// index window (q, q^2). index_bound must be >= 2q^2.
VerifyReport lt_verify_identities(const PrimeParams& pp,
                                  const std::vector<WittElem>& gammas,
                                  i64 index_bound, int K);

}  // namespace ltpg
