#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "ltpg/lubin_tate.hpp"

using namespace ltpg;

namespace {

WittElem rand_unit(const WittCtx* ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> d(0, ctx->pK - 1);
  for (;;) {
    std::vector<i64> c(ctx->f);
    for (auto& x : c) x = d(rng);
    WittElem w = w_from_coeffs(ctx, c);
    if (w_is_unit(w)) return w;
  }
}

WSeries lt_to_wseries(const LTSeries& lt) {
  WSeries s = ts_zero<WittElem>(lt.bound + 1);
  for (auto& [n, a] : lt.coeffs)
    if (!a.is_zero()) s.set(n, a);
  return s;
}

}  // namespace

TEST_CASE("frozen small examples at p=3, f=1") {
  PrimeParams pp = PrimeParams::make(3, 1);

  SECTION("gamma = 2") {
    LTSeries lt = lt_coeffs(pp, 2, 9, 4);
    const WittElem* a3 = lt.get(3);
    REQUIRE(a3 != nullptr);
    // (2^3 - 2)/(3^3 - 3) = 6/24 = 1/4, and 1/4 = 61 mod 81
    CHECK(w_reduce(*a3) == fe_make(w_reduce(*a3).ctx, 1));
    WittElem quarter = w_inv(w_make(a3->ctx, 4));
    CHECK(w_eq_mod_prec(*a3, quarter));
    CHECK(lt.get(2) == nullptr);
    CHECK(lt.get(5) != nullptr);
    CHECK(lt.get(4) == nullptr);
  }

  SECTION("gamma = 1 gives the identity series") {
    LTSeries lt = lt_coeffs(pp, 1, 25, 5);
    REQUIRE(lt.get(1) != nullptr);
    CHECK(w_eq_mod_prec(*lt.get(1), w_make(lt.ctx, 1)));
    for (i64 n = 3; n <= 25; n += 2) {
      REQUIRE(lt.get(n) != nullptr);
      CHECK(w_val(*lt.get(n)) >= lt.get(n)->prec);  // stored residue is 0
    }
  }

  SECTION("gamma = 1 + 3") {
    LTSeries lt = lt_coeffs(pp, 4, 9, 4);
    // a_3 = (4^3 - 4)/(3^3 - 3) = 60/24 = 5/2
    WittElem want = w_mul(w_make(lt.ctx, 5), w_inv(w_make(lt.ctx, 2)));
    CHECK(w_eq_mod_prec(*lt.get(3), want));
    CHECK(w_reduce(*lt.get(3)) == fe_make(lt.ctx->residue_field, 1));
  }
}

TEST_CASE("teichmueller gamma gives a scalar multiple of t") {
  PrimeParams pp = PrimeParams::make(3, 2);
  const WittCtx* ctx = WittCtx::get(3, 2, lt_default_prec(pp, 100));
  // teichmueller lift of a generator of F_9
  WittElem g = w_teichmueller(ctx, fe_gen(ctx->residue_field));
  LTSeries lt = lt_coeffs(g, 100, 5);
  CHECK(w_eq_mod_prec(*lt.get(1), g));
  for (auto& [n, a] : lt.coeffs) {
    if (n == 1) continue;
    INFO("index " << n);
    CHECK(w_val(a) >= a.prec);
  }
  FSeries f = lt_mod_p(pp, g, 100);
  CHECK(f.c.size() == 1);
  CHECK(f.c.begin()->first == 1);
}

TEST_CASE("formal group equivariance at small bound") {
  // [gamma](Phi(t)) = Phi([gamma](t)) coefficientwise up to the bound
  [[maybe_unused]] PrimeParams pp = PrimeParams::make(3, 1);
  const WittCtx* ctx = WittCtx::get(3, 1, 6);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 4; ++trial) {
    WittElem g = rand_unit(ctx, rng);
    LTSeries lt = lt_coeffs(g, 27, 6);
    WSeries S = lt_to_wseries(lt);
    WSeries phi = ts_zero<WittElem>(28);
    phi.set(1, w_make(ctx, 3));
    phi.set(3, w_make(ctx, 1));
    WSeries lhs = ws_compose(S, phi);
    WSeries cube = ws_mul(ws_mul(S, S), S);
    WSeries rhs = ws_add(ws_compose(phi, S), ts_zero<WittElem>(28));
    // rhs = p*S + S^3 computed directly must agree with phi(S)
    WSeries direct = ts_zero<WittElem>(28);
    for (auto& [d, c] : S.c) direct.set(d, w_mul(w_make(ctx, 3), c));
    for (auto& [d, c] : cube.c) {
      if (d >= direct.trunc) continue;
      const WittElem* prev = direct.get(d);
      direct.set(d, prev ? w_add(*prev, c) : c);
    }
    for (i64 d = 1; d < 28; ++d) {
      const WittElem* a = lhs.get(d);
      const WittElem* b = direct.get(d);
      const WittElem* r = rhs.get(d);
      INFO("trial " << trial << " degree " << d);
      if (a || b) {
        REQUIRE(a != nullptr);
        REQUIRE(b != nullptr);
        CHECK(w_eq_mod_prec(*a, *b));
      }
      if (a || r) {
        REQUIRE(a != nullptr);
        REQUIRE(r != nullptr);
        CHECK(w_eq_mod_prec(*a, *r));
      }
    }
  }
}

TEST_CASE("coefficients are stable under raising the precision budget") {
  [[maybe_unused]] PrimeParams pp = PrimeParams::make(3, 2);
  const WittCtx* lo = WittCtx::get(3, 2, 5);
  const WittCtx* hi = WittCtx::get(3, 2, 7);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<i64> d(0, lo->pK - 1);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<i64> c(2);
    for (auto& x : c) x = d(rng);
    WittElem gl = w_from_coeffs(lo, c);
    if (!w_is_unit(gl)) {
      --trial;
      continue;
    }
    WittElem gh = w_from_coeffs(hi, c);  // same residues, more digits
    LTSeries a = lt_coeffs(gl, 200, 5);
    LTSeries b = lt_coeffs(gh, 200, 7);
    for (auto& [n, av] : a.coeffs) {
      const WittElem* bv = b.get(n);
      REQUIRE(bv != nullptr);
      INFO("index " << n << " prec " << av.prec);
      CHECK(av.prec >= 1);
      CHECK(bv->prec >= 1);
      CHECK(w_eq_mod_prec(av, *bv));
    }
  }
}

TEST_CASE("mod-p composition agrees with generic series composition") {
  PrimeParams pp = PrimeParams::make(3, 1);
  i64 bound = 36;
  const WittCtx* ctx = WittCtx::get(3, 1, lt_default_prec(pp, bound));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 3; ++trial) {
    WittElem g = rand_unit(ctx, rng);
    WittElem h = rand_unit(ctx, rng);
    FSeries fg = lt_mod_p(pp, g, bound);
    FSeries fh = lt_mod_p(pp, h, bound);
    FSeries fast = lt_compose_mod_p(pp, fg, fh, bound);
    FSeries slow = fs_compose(fg, fh);
    for (i64 d = 1; d <= bound; ++d) {
      const FieldElem* x = fast.get(d);
      const FieldElem* y = slow.get(d);
      INFO("degree " << d);
      CHECK((x == nullptr) == (y == nullptr));
      if (x && y) CHECK(*x == *y);
    }
    // composition law itself
    FSeries fgh = lt_mod_p(pp, w_mul(g, h), bound);
    for (i64 d = 1; d <= bound; ++d) {
      const FieldElem* x = fast.get(d);
      const FieldElem* y = fgh.get(d);
      INFO("law degree " << d);
      CHECK((x == nullptr) == (y == nullptr));
      if (x && y) CHECK(*x == *y);
    }
  }
}

TEST_CASE("identity verifier passes on sampled units") {
  std::mt19937_64 rng(5);
  for (auto [p, f] : {std::pair<i64, i64>{3, 1}, {3, 2}}) {
    PrimeParams pp = PrimeParams::make(p, f);
    i64 bound = 2 * pp.q * pp.q;
    int K = lt_default_prec(pp, bound);
    const WittCtx* ctx = WittCtx::get(p, f, K);
    std::vector<WittElem> gs;
    gs.push_back(w_make(ctx, 1));          // identity
    gs.push_back(w_make(ctx, 1 + p));      // unipotent
    gs.push_back(w_teichmueller(ctx, fe_make(ctx->residue_field, 2)));
    while ((i64)gs.size() < 8) gs.push_back(rand_unit(ctx, rng));
    VerifyReport rep = lt_verify_identities(pp, gs, bound, K);
    INFO("p=" << p << " f=" << f);
    for (auto& s : rep.counterexamples) UNSCOPED_INFO(s);
    CHECK(rep.ok());
    CHECK(rep.checked > 0);
  }
}

TEST_CASE("precondition violations throw") {
  PrimeParams pp = PrimeParams::make(3, 1);
  const WittCtx* ctx = WittCtx::get(3, 1, 4);
  CHECK_THROWS_AS(lt_coeffs(pp, 2, 100, 4), arith_error);   // K too small
  CHECK_THROWS_AS(lt_coeffs(pp, 3, 9, 4), arith_error);     // not a unit
  CHECK_THROWS_AS(lt_coeffs(pp, 2, 0, 4), arith_error);     // empty bound
  WittElem g = w_make(ctx, 2);
  CHECK_THROWS_AS(lt_coeffs(g, 9, 6), arith_error);  // too few digits known
  FSeries small = ts_zero<FieldElem>(5);
  CHECK_THROWS_AS(lt_compose_mod_p(pp, small, small, 10), arith_error);
}
