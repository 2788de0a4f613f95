// Copyright 2026 The modelock Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "modelock/circlemap.hpp"
#include "modelock/error.hpp"
#include "modelock/extrema.hpp"
#include "modelock/mapspec.hpp"
#include "oracles.hpp"

using namespace modelock;

namespace {

const Bits kBits{128};

CircleLift standard_quarter() { return CircleLift::standard(Expr::parse("1/(4*pi)")); }
CircleLift golden_conjrot() { return CircleLift::conjugated_rotation(Expr::parse("golden"), Expr::parse("0.1")); }
BigReal num(const char* s, Bits bits = kBits) { return Expr::parse(s).eval(bits); }

}  // namespace

TEST_CASE("pure rotation evaluates as a translation") {
  const TranslatedLift m(CircleLift::rotation(Expr::integer(0)), num("0.25"));
  CHECK(eval(m, num("0.5")) == num("0.75"));
  const auto j = eval_jet(m, num("0.3"));
  CHECK(j.slope == 1);
}

TEST_CASE("standard family at x = 1/4") {
  const TranslatedLift m(standard_quarter(), BigReal(kBits));
  const BigReal expect = num("0.25 + 1/(4*pi)");
  CHECK(abs(eval(m, num("0.25")) - expect) < ldexp2(-120, kBits));
  CHECK(eval(m, num("0.25")).to_double() == doctest::Approx(0.329577).epsilon(1e-6));
}

TEST_CASE("lift commutes with integer translation") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (const auto& base : {standard_quarter(), golden_conjrot(), CircleLift::rotation(Expr::parse("0.37"))}) {
    const TranslatedLift m(base, num("0.1"));
    for (int i = 0; i < 25; ++i) {
      const BigReal x(u(rng), kBits);
      CHECK(abs(eval(m, x + 1) - eval(m, x) - 1) <= ldexp2(-120, kBits));
      CHECK(abs(displacement(m, 1, 3, x + 1) - displacement(m, 1, 3, x)) <= ldexp2(-120, kBits));
    }
  }
}

TEST_CASE("slope matches a centered difference") {
  for (const auto& base : {standard_quarter(), golden_conjrot()}) {
    const TranslatedLift m(base, num("0.05"));
    const BigReal x = num("0.3141"), h = ldexp2(-40, kBits);
    const BigReal fd = (eval(m, x + h) - eval(m, x - h)) / (h * 2);
    CHECK(abs(eval_jet(m, x).slope - fd) < ldexp2(-60, kBits));
    const Jet g = displacement_jet(m, 1, 3, x);
    const BigReal gfd = (displacement(m, 1, 3, x + h) - displacement(m, 1, 3, x - h)) / (h * 2);
    CHECK(abs(g.slope - gfd) < ldexp2(-60, kBits));
  }
}

TEST_CASE("complex evaluation") {
  SUBCASE("rotation shifts the imaginary axis") {
    const TranslatedLift m(CircleLift::rotation(Expr::parse("0.37")), BigReal(kBits));
    const BigComplex z = eval_complex(m, BigComplex(BigReal(kBits), BigReal(1, kBits)));
    CHECK(z.re == num("0.37"));
    CHECK(z.im == 1);
  }
  SUBCASE("restriction to the real line") {
    const TranslatedLift m(standard_quarter(), num("0.1"));
    const BigReal x = num("0.123");
    const BigComplex z = eval_complex(m, BigComplex(x, BigReal(kBits)));
    CHECK(abs(z.re - eval(m, x)) < ldexp2(-120, kBits));
    CHECK(z.im.is_zero());
    const TranslatedLift c(golden_conjrot(), num("0.1"));
    const BigComplex w = eval_complex(c, BigComplex(x, BigReal(kBits)));
    CHECK(abs(w.re - eval(c, x)) < ldexp2(-115, kBits));
    CHECK(abs(w.im) < ldexp2(-115, kBits));
  }
  SUBCASE("standard family off the axis against an exponential series") {
    const TranslatedLift m(standard_quarter(), BigReal(kBits));
    const BigComplex z(num("0.1"), num("0.2"));
    const BigComplex got = eval_complex(m, z);
    const Bits wide{256};
    const BigReal a = num("1/(4*pi)", wide);
    const BigComplex arg(BigReal::pi(wide) * 2 * num("0.1", wide), BigReal::pi(wide) * 2 * num("0.2", wide));
    const BigComplex s = oracle::sin_by_exponentials(arg);
    const BigComplex expect(num("0.1", wide) + a * s.re, num("0.2", wide) + a * s.im);
    CHECK(abs(got.re - expect.re) < 1e-25);
    CHECK(abs(got.im - expect.im) < 1e-25);
  }
  SUBCASE("conjugated rotation inside and outside the inversion strip") {
    const CircleLift base = golden_conjrot();
    CHECK(base.strip_height() == doctest::Approx(0.0420).epsilon(0.01));
    const TranslatedLift m(base, BigReal(kBits));
    const BigReal th = num("golden");
    // F(Psi(w)) = Psi(w + theta) holds off the axis too.
    const BigComplex w(num("0.3"), num("0.02"));
    const BigComplex two_pi(BigReal::pi(kBits) * 2, BigReal(kBits));
    const BigReal eps = num("0.1");
    const BigComplex psi_w = w + sin(w * two_pi) * eps;
    BigComplex shifted = w;
    shifted.re += th;
    const BigComplex expect = shifted + sin(shifted * two_pi) * eps;
    const BigComplex got = eval_complex(m, psi_w);
    CHECK(abs(got - expect) < ldexp2(-110, kBits));
    CHECK_THROWS_AS(eval_complex(m, BigComplex(num("0.5"), num("0.1"))), Error);
  }
}

TEST_CASE("iterates") {
  const TranslatedLift rot(CircleLift::rotation(Expr::parse("0.3")), BigReal(kBits));
  CHECK(abs(iterate(rot, 5, BigReal(kBits)) - num("1.5")) < ldexp2(-120, kBits));
  const TranslatedLift m(standard_quarter(), num("0.1"));
  CHECK(iterate(m, 1, num("0.2")) == eval(m, num("0.2")));
  CHECK_THROWS_AS(iterate(m, 0, num("0.2")), Error);

  const Bits wide{256};
  const BigReal a = num("1/(4*pi)", wide), t = num("0.1", wide);
  const BigReal ref = oracle::compose([&](const BigReal& x) { return oracle::standard_map(a, t, x); }, 3, num("0.2", wide));
  CHECK(abs(iterate(m, 3, num("0.2")) - ref) <= ldexp2(-128 + 8, kBits));
}

TEST_CASE("displacement closed forms and oracle") {
  const TranslatedLift m(standard_quarter(), BigReal(kBits));
  CHECK(abs(displacement(m, 0, 1, num("0.25")) - num("1/(4*pi)")) < ldexp2(-120, kBits));
  const TranslatedLift rot(CircleLift::rotation(Expr::parse("0.37")), BigReal(kBits));
  for (long q : {1L, 3L, 7L}) {
    CHECK(abs(displacement(rot, 1, q, num("0.9")) - (num("0.37") * q - 1)) < ldexp2(-118, kBits));
  }
  const TranslatedLift c(golden_conjrot(), BigReal(kBits));
  const Bits wide{256};
  const BigReal th = num("golden", wide), eps = num("0.1", wide), zero(wide);
  const BigReal x = num("0.3", wide);
  const BigReal ref = oracle::compose([&](const BigReal& y) { return oracle::conj_map(th, eps, zero, y); }, 2, x) - x - 1;
  CHECK(abs(displacement(c, 1, 2, num("0.3")) - ref) <= ldexp2(-128 + 8, kBits));
}

TEST_CASE("conjugacy identity on a grid") {
  const TranslatedLift m(golden_conjrot(), BigReal(kBits));
  const BigReal eps = num("0.1"), th = num("golden");
  BigReal worst(kBits);
  for (long j = 0; j < 1000; ++j) {
    const BigReal x = BigReal(j, kBits) / 1000;
    worst = max(worst, abs(eval(m, conjugacy_psi(eps, x)) - conjugacy_psi(eps, x + th)));
  }
  CHECK(worst <= ldexp2(-128 + 8, kBits));
  const BigReal y = num("0.77");
  CHECK(abs(conjugacy_psi(eps, conjugacy_psi_inverse(eps, y)) - y) <= ldexp2(-124, kBits));
}

TEST_CASE("iterates grow at least as fast as the translation parameter") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (const auto& base : {standard_quarter(), golden_conjrot()}) {
    const TranslatedLift m1(base, num("0.01")), m2(base, num("0.0125"));
    for (int i = 0; i < 20; ++i) {
      const BigReal x(u(rng), kBits);
      for (long k : {1L, 4L, 9L}) CHECK(iterate(m2, k, x) - iterate(m1, k, x) >= num("0.0025") - ldexp2(-120, kBits));
    }
  }
}

TEST_CASE("monotonicity validation") {
  CHECK_NOTHROW(CircleLift::standard(Expr::parse("0.159")));
  CHECK_THROWS_AS(CircleLift::standard(Expr::parse("0.2")), Error);
  // Fails the coefficient-sum test but is still increasing: |F' - 1| <= 2 pi sqrt(0.02).
  CHECK_NOTHROW(CircleLift::trig_poly(Expr::integer(0), {Expr::parse("0.1")}, {Expr::parse("0.1")}));
  CHECK_THROWS_AS(CircleLift::trig_poly(Expr::integer(0), {Expr::parse("0.1"), Expr::parse("0.1")},
                                        {Expr::parse("0.1")}),
                  Error);
  CHECK_THROWS_AS(CircleLift::conjugated_rotation(Expr::parse("golden"), Expr::parse("0.2")), Error);
}

TEST_CASE("displacement extrema") {
  const BigReal tol = ldexp2(-60, kBits);
  SUBCASE("sine displacement") {
    const TranslatedLift m(standard_quarter(), BigReal(kBits));
    const Enclosure e = displacement_extrema(m, 0, 1, default_extrema_grid(1), tol);
    const BigReal a = num("1/(4*pi)");
    CHECK(e.lo <= -a);
    CHECK(e.lo >= -a - tol);
    CHECK(e.hi >= a);
    CHECK(e.hi <= a + tol);
  }
  SUBCASE("rotation is degenerate") {
    const TranslatedLift m(CircleLift::rotation(Expr::parse("0.37")), BigReal(kBits));
    const Enclosure e = displacement_extrema(m, 1, 3, 64, tol);
    CHECK(abs(e.lo - num("0.11")) < ldexp2(-120, kBits));
    CHECK(e.lo == e.hi);
  }
  SUBCASE("two-fold displacement against a dense scan") {
    const TranslatedLift m(standard_quarter(), num("0.1"));
    const ExtremaResult r = displacement_extrema_detail(m, 0, 2, default_extrema_grid(2), tol);
    const double a = 1.0 / (4.0 * std::numbers::pi);
    auto f = [&](double x) { return x + 0.1 + a * std::sin(2.0 * std::numbers::pi * x); };
    const auto s = oracle::scan_extrema([&](double x) { return f(f(x)) - x; }, 1000000);
    CHECK(r.bounds.lo.to_double() == doctest::Approx(s.min_value).epsilon(1e-12));
    CHECK(r.bounds.hi.to_double() == doctest::Approx(s.max_value).epsilon(1e-12));
    CHECK(r.bounds.hi - r.max_found <= tol);
    CHECK(r.min_found - r.bounds.lo <= tol);
  }
  SUBCASE("enclosure holds at random points") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0, 1);
    const TranslatedLift m(golden_conjrot(), num("-0.1"));
    const Enclosure e = displacement_extrema(m, 1, 5, default_extrema_grid(5), tol);
    for (int i = 0; i < 100; ++i) {
      const BigReal g = displacement(m, 1, 5, BigReal(u(rng), kBits));
      CHECK(e.lo - tol <= g);
      CHECK(g <= e.hi + tol);
    }
  }
  SUBCASE("argument checks") {
    const TranslatedLift m(standard_quarter(), BigReal(kBits));
    CHECK_THROWS_AS(displacement_extrema(m, 0, 8, 10, tol), Error);
    CHECK_THROWS_AS(displacement_extrema(m, 0, 1, 100, BigReal(kBits)), Error);
  }
}

TEST_CASE("serial and parallel grids agree exactly") {
  const TranslatedLift m(golden_conjrot(), num("0.02"));
  const auto xs = unit_grid(97, kBits);
  const auto a = sample_displacement(m, 2, 3, xs, Exec::serial);
  const auto b = sample_displacement(m, 2, 3, xs, Exec::parallel);
  for (size_t i = 0; i < xs.size(); ++i) {
    CHECK(a[i].value == b[i].value);
    CHECK(a[i].slope == b[i].slope);
  }
  CHECK_THROWS_AS(for_each_index(Exec::parallel, 10,
                                 [](long i) {
                                   if (i == 6) throw Error(Errc::inconclusive, "six");
                                 }),
                  Error);
}

TEST_CASE("map specs") {
  const CircleLift s = parse_map_spec("standard a=1/(4*pi)");
  CHECK(s.kind() == LiftKind::trig_poly);
  CHECK(s.b().at(0).text() == "1/(4*pi)");
  const CircleLift c = parse_map_spec("conjrot theta=golden eps=0.1");
  CHECK(c.kind() == LiftKind::conjugated_rotation);
  CHECK(parse_map_spec(c.describe()).describe() == c.describe());
  const CircleLift t = parse_map_spec("trigpoly c0=0.1 a=[0, 0.01] b=[0.05, 1/(8*pi^2)]");
  CHECK(t.a().size() == 2);
  CHECK(parse_map_spec(t.describe()).describe() == t.describe());
  CHECK(parse_map_spec("kind=rotation theta=0.37").kind() == LiftKind::pure_rotation);
  CHECK_THROWS_AS(parse_map_spec("standard"), Error);
  CHECK_THROWS_AS(parse_map_spec("standard a=0.1 zeta=2"), Error);
  CHECK_THROWS_AS(parse_map_spec("spiral a=1"), Error);
  CHECK_THROWS_AS(parse_map_spec("trigpoly a=[0.1"), Error);

  const auto path = std::filesystem::temp_directory_path() / "modelock_map_test.txt";
  {
    std::ofstream f(path);
    f << "# synthetic ring\nkind = conjrot\ntheta = golden\nepsilon = 1/10\n";
  }
  const CircleLift f = load_map_file(path);
  CHECK(f.kind() == LiftKind::conjugated_rotation);
  CHECK(f.epsilon().eval(kBits) == num("0.1"));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_map_file(path), Error);
}
