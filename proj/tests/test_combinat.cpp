#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "ltpg/arith.hpp"
#include "ltpg/combinat.hpp"

using namespace ltpg;

namespace {

const std::vector<std::pair<i64, int>> kSmall = {{3, 1}, {3, 2}, {3, 3},
                                                 {5, 1}, {5, 2}, {5, 3}};

}  // namespace

TEST_CASE("subset calculus") {
  for (int f = 1; f <= 5; ++f) {
    for (unsigned long long m = 0; m < (1ull << f); ++m) {
      FSubset J = FSubset::from_mask(f, m);
      FSubset Jc = J.complement();
      REQUIRE(J.unite(Jc) == FSubset::full(f));
      REQUIRE(J.intersect(Jc) == FSubset::empty(f));
      REQUIRE(J.size() + Jc.size() == f);
      REQUIRE(J.shift(3).shift(-3) == J);
      REQUIRE(J.lower().size() == J.upper().size());
      REQUIRE(Jc.unite(J.lower()).minus(J.upper()) == J.c1());
      REQUIRE(J.c1() == Jc.shift(1));
      // the blocks starting at J^- partition J
      FSubset covered = FSubset::empty(f);
      for (int j : J.lower().elements()) {
        i64 e = J.run_end(j);
        REQUIRE(e - j <= f);
        for (i64 x = j; x < e; ++x) {
          REQUIRE(!covered.contains(x));
          covered = covered.with(x);
        }
      }
      if (!(J == FSubset::full(f))) REQUIRE(covered == J);
    }
  }
  REQUIRE(FSubset::of(4, {1, 3, 5}).str() == "{1,3}");
}

TEST_CASE("digit systems are bijective") {
  for (auto [p, f] : kSmall) {
    PrimeParams pp = PrimeParams::make(p, f);
    std::set<std::vector<int>> seen_a;
    for (i64 ell = 0; ell <= pp.q - 2; ++ell) {
      Digits d = digits_of(pp, ell);
      i64 back = 0, anti = 0;
      for (int i = 0; i < f; ++i) {
        REQUIRE((d.m[i] >= 0 && d.m[i] < p));
        REQUIRE((d.a[i] >= 1 && d.a[i] <= p));
        back += d.m[i] * ipow(p, i);
        anti += d.a[i] * ipow(p, i);
      }
      REQUIRE(back == ell);
      REQUIRE(mod_norm(-anti, pp.xi) == ell);
      seen_a.insert(d.a);
    }
    REQUIRE((i64)seen_a.size() == pp.xi);
  }
  PrimeParams pp = PrimeParams::make(3, 2);
  REQUIRE(digits_of(pp, 6).m == std::vector<int>{0, 2});
  REQUIRE(digits_of(pp, 6).a == std::vector<int>{1, 3});
  REQUIRE(digits_of(pp, 5).m == std::vector<int>{2, 1});
  REQUIRE(digits_of(pp, 5).a == std::vector<int>{2, 3});
  REQUIRE(digits_of(pp, 0).a == std::vector<int>{2, 2});
  REQUIRE(digits_of(pp, 4).a == std::vector<int>{1, 1});
  REQUIRE(digits_of(pp, 2).a == std::vector<int>{3, 1});
  REQUIRE(digits_of(pp, 7).a == std::vector<int>{3, 2});
  REQUIRE_THROWS_AS(digits_of(pp, 8), arith_error);
  REQUIRE_THROWS_AS(digits_of(pp, -1), arith_error);
}

TEST_CASE("the two descriptions of E agree") {
  for (auto [p, f] : kSmall) {
    PrimeParams pp = PrimeParams::make(p, f);
    for (i64 ell = 0; ell <= pp.q - 2; ++ell) {
      Digits d = digits_of(pp, ell);
      INFO("p=" << p << " f=" << f << " ell=" << ell);
      REQUIRE(e_set(d) == e_set_anti(d));
      REQUIRE(d.e_mask == e_set(d));
    }
  }
  PrimeParams pp = PrimeParams::make(3, 2);
  REQUIRE(e_set(digits_of(pp, 6)) == FSubset::of(2, {0}));
  REQUIRE(e_set(digits_of(pp, 5)) == FSubset::of(2, {0, 1}));
  REQUIRE(e_set(digits_of(pp, 0)) == FSubset::empty(2));
  REQUIRE(e_set(digits_of(pp, 2)) == FSubset::of(2, {1}));
  REQUIRE(e_set(digits_of(pp, 4)) == FSubset::empty(2));
  REQUIRE(d_set(digits_of(pp, 0)) == FSubset::full(2));
  // the strict split differs exactly on the two classes whose anti digits
  // are one p next to p-1
  for (i64 ell = 0; ell <= 7; ++ell) {
    Digits d = digits_of(pp, ell);
    if (ell == 5 || ell == 7)
      REQUIRE(d.e_nu == d.e_mask.minus(FSubset::of(2, {ell == 5 ? 1 : 0})));
    else
      REQUIRE(d.e_nu == d.e_mask);
  }
  // sigma alternates by coset of D
  Digits d6 = digits_of(pp, 6);
  for (int j = -4; j <= 4; ++j)
    REQUIRE(sigma_of(d6, j) == (pi_mod(j, 2) == 0 ? 2 : 1));
  Digits d0 = digits_of(pp, 0);
  for (int j = -4; j <= 4; ++j) REQUIRE(sigma_of(d0, j) == 1);
}

TEST_CASE("sigma reconstructs the anti digits") {
  for (auto [p, f] : kSmall) {
    PrimeParams pp = PrimeParams::make(p, f);
    for (i64 ell = 0; ell <= pp.q - 2; ++ell) {
      Digits d = digits_of(pp, ell);
      for (int i = 0; i < f; ++i) {
        INFO("p=" << p << " f=" << f << " ell=" << ell << " i=" << i);
        REQUIRE(d.a_at(i) == sigma_of(d, i + 1) * p - sigma_of(d, i) - d.m_at(i));
      }
    }
  }
}

TEST_CASE("shift map construction matches its closed form") {
  for (auto [p, f] : kSmall) {
    PrimeParams pp = PrimeParams::make(p, f);
    for (i64 ell = 0; ell <= pp.q - 2; ++ell) {
      Digits d = digits_of(pp, ell);
      for (i64 ip = -2 * f; ip <= 4 * f; ++ip) {
        DMapVal v = id_construct(d, ip);
        INFO("p=" << p << " f=" << f << " ell=" << ell << " i'=" << ip);
        REQUIRE(v.id == id_closed(d, ip));
        REQUIRE(v.ie == pi_mod(ip, f));
        REQUIRE(v.ie + v.me * f == ip);
      }
    }
  }
  PrimeParams pp = PrimeParams::make(3, 2);
  Digits d6 = digits_of(pp, 6), d5 = digits_of(pp, 5), d2 = digits_of(pp, 2),
         d0 = digits_of(pp, 0), d4 = digits_of(pp, 4);
  for (i64 x = 0; x < 2; ++x) {
    REQUIRE(id_closed(d6, x) == 1);
    REQUIRE(id_closed(d5, x) == 1);
    REQUIRE(id_closed(d2, x) == 0);
    REQUIRE(id_closed(d0, x) == (int)x);
    REQUIRE(id_closed(d4, x) == (int)x);
  }
  REQUIRE(id_construct(d6, 0).md == -1);
  REQUIRE(id_construct(d6, 1).md == 0);
}

TEST_CASE("position weights separate and bound the classes") {
  for (auto [p, f] : kSmall) {
    if (p == 5 && f == 3) continue;
    PrimeParams pp = PrimeParams::make(p, f);
    i64 tail = 0;
    for (int s = 0; s < f; ++s) tail += ipow(p, s);
    for (i64 ell = 0; ell <= pp.q - 2; ++ell) {
      Digits d = digits_of(pp, ell);
      auto wt = [&](i64 j) {
        return sigma_of(d, j) * pp.xi * ipow(p, j) - d.ell_at(j);
      };
      // doubling separation needs sigma(j2) >= sigma(j1) or a full period gap;
      // an E-position can sit closer than that above a D-position: a=(p,1)
      // gives wt = (54, 60, ...) at p=3
      for (i64 j2 = 1; j2 < 2 * f; ++j2)
        for (i64 j1 = 0; j1 < j2; ++j1) {
          if (sigma_of(d, j2) < sigma_of(d, j1) && j2 < j1 + f) continue;
          INFO("p=" << p << " f=" << f << " ell=" << ell << " j1=" << j1
                    << " j2=" << j2);
          REQUIRE(wt(j2) > 2 * wt(j1));
        }
      for (int i = 0; i < f; ++i)
        if (d.in_e(i)) REQUIRE(d.ell_at(i) >= ipow(p, i) * (pp.q - tail));
      for (i64 i = 0; i <= 2 * f; ++i) {
        i64 rhs = 0;
        for (i64 j = i; j < i + f; ++j) rhs -= d.a_at(j) * ipow(p, j);
        REQUIRE(d.ell_at(i) - sigma_of(d, i) * ipow(p, i) * pp.xi == rhs);
      }
    }
  }
}

TEST_CASE("nu and delta on frozen classes") {
  PrimeParams pp = PrimeParams::make(3, 2);
  Digits d4 = digits_of(pp, 4), d6 = digits_of(pp, 6), d2 = digits_of(pp, 2);
  // D(4) = F, so nu is the shift map of the target class
  for (i64 x = 0; x < 2; ++x) {
    REQUIRE(nu_map(d4, d6, x) == 1);
    REQUIRE(nu_map(d4, d2, x) == 0);
    REQUIRE(nu_map(d4, d4, x) == (int)x);
  }
  REQUIRE(nu_image(d4, d6, FSubset::full(2)) == FSubset::of(2, {1}));
  // on the two degenerate classes nu follows the strict split
  Digits d5 = digits_of(pp, 5), d7 = digits_of(pp, 7);
  REQUIRE(nu_map(d5, d7, 0) == 0);
  REQUIRE(nu_map(d5, d7, 1) == 0);
  REQUIRE(nu_map(d7, d5, 0) == 1);
  REQUIRE(nu_map(d7, d5, 1) == 1);
  for (i64 j = 0; j < 2; ++j) {
    REQUIRE(delta_map(d6, j) == 0);
    REQUIRE(delta_map(d2, j) == 1);
    REQUIRE(delta_map(d4, j) == pi_mod(j, 2));
  }
}

TEST_CASE("mu follows the complement or the seeded walk") {
  PrimeParams pp = PrimeParams::make(3, 2);
  Digits d6 = digits_of(pp, 6);
  // delta_6 is constant 0
  REQUIRE(mu_choices(d6, FSubset::of(2, {0})).empty());
  REQUIRE(mu_of(d6, FSubset::of(2, {0})) == FSubset::of(2, {0}));
  REQUIRE(mu_of(d6, FSubset::empty(2)) == FSubset::empty(2));
  REQUIRE(mu_choices(d6, FSubset::of(2, {1})) == std::vector<int>{0});
  REQUIRE(mu_of(d6, FSubset::of(2, {1})) == FSubset::of(2, {0}));
  REQUIRE_THROWS_AS(mu_raw(d6, FSubset::of(2, {1}), 1), arith_error);
}

TEST_CASE("maximal complements") {
  PrimeParams pp = PrimeParams::make(3, 2);
  for (i64 ell = 0; ell <= 7; ++ell) {
    Digits d = digits_of(pp, ell);
    REQUIRE(is_maximal(d, FSubset::empty(2)));
    REQUIRE(is_maximal(d, FSubset::full(2)) == (ell != 0));
  }
  // anti digits (3,1): the pattern sits at the block {0} with 1 outside
  Digits d2 = digits_of(pp, 2);
  REQUIRE_FALSE(is_maximal(d2, FSubset::of(2, {0})));
  REQUIRE(is_maximal(d2, FSubset::of(2, {1})));
  PrimeParams p31 = PrimeParams::make(3, 1);
  REQUIRE_FALSE(is_maximal(digits_of(p31, 0), FSubset::full(1)));
  REQUIRE(is_maximal(digits_of(p31, 0), FSubset::empty(1)));
  REQUIRE(is_maximal(digits_of(p31, 1), FSubset::full(1)));
  // runs (p, p-1, ...) crossing out of J disqualify the complement
  Digits d7 = digits_of(pp, 7);
  REQUIRE_FALSE(is_maximal(d7, FSubset::of(2, {0})));
  REQUIRE(is_maximal(d7, FSubset::of(2, {1})));
  Digits d5 = digits_of(pp, 5);
  REQUIRE_FALSE(is_maximal(d5, FSubset::of(2, {1})));
  REQUIRE(is_maximal(d5, FSubset::of(2, {0})));
  PrimeParams p33 = PrimeParams::make(3, 3);
  Digits d8 = digits_of(p33, 8);
  REQUIRE(d8.a == std::vector<int>{3, 2, 1});
  REQUIRE_FALSE(is_maximal(d8, FSubset::of(3, {0})));
  REQUIRE_FALSE(is_maximal(d8, FSubset::of(3, {0, 2})));
  REQUIRE(is_maximal(d8, FSubset::of(3, {1})));
  Digits d22 = digits_of(p33, 22);
  REQUIRE(d22.a == std::vector<int>{3, 3, 2});
  REQUIRE_FALSE(is_maximal(d22, FSubset::of(3, {1})));
  REQUIRE_FALSE(is_maximal(d22, FSubset::of(3, {0, 1})));
  REQUIRE(is_maximal(d22, FSubset::of(3, {2})));
}

TEST_CASE("successor class under a direction set") {
  PrimeParams pp = PrimeParams::make(3, 2);
  REQUIRE(succ_ell_value(digits_of(pp, 4), FSubset::of(2, {0})) == 6);
  for (auto [p, f] : kSmall) {
    PrimeParams par = PrimeParams::make(p, f);
    for (i64 ell = 0; ell <= par.q - 2; ++ell) {
      Digits d = digits_of(par, ell);
      REQUIRE(succ_ell_value(d, FSubset::empty(f)) == ell);
      REQUIRE(succ_ell_value(d, FSubset::full(f)) == mod_norm(-ell, par.xi));
    }
  }
}

TEST_CASE("nu images of shifted complements match mu exhaustively") {
  for (auto [p, f] : {std::pair<i64, int>{3, 2}, {3, 3}, {5, 2}}) {
    VerifyReport rep = verify_goldin(PrimeParams::make(p, f));
    INFO("p=" << p << " f=" << f);
    for (size_t i = 0; i < rep.counterexamples.size() && i < 5; ++i)
      UNSCOPED_INFO(rep.counterexamples[i]);
    REQUIRE(rep.ok());
    REQUIRE(rep.checked > 0);
  }
}
