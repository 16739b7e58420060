#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "galembed/arena.hpp"
#include "galembed/element_io.hpp"
#include "galembed/errors.hpp"
#include "support.hpp"

#include <random>

using namespace galembed;
using testsupport::random_element;

namespace {

const Arena& r7() {
  static const Arena a({3, Variant::R, 7});
  return a;
}

const Arena& c7() {
  static const Arena a({3, Variant::C, 7});
  return a;
}

FieldElement el(const std::string& s, const Arena& a = r7()) { return parse_element(s, a); }

// evaluates a polynomial at a point
GaloisField::Elem eval(const GaloisField& F, const Poly& f, GaloisField::Elem x) {
  GaloisField::Elem acc = 0;
  for (int k = f.degree(); k >= 0; --k) acc = F.add(F.mul(acc, x), f.coeff(k));
  return acc;
}

bool has_root(const GaloisField& F, const Poly& f) {
  for (GaloisField::Elem x = 0; x < F.size(); ++x)
    if (eval(F, f, x) == 0) return true;
  return false;
}

}  // namespace

TEST_CASE("finite fields") {
  const auto F7 = GaloisField::of_order(7);
  CHECK(F7->generator() == 3);
  const auto F49 = GaloisField::of_order(49);
  CHECK(F49->degree() == 2);
  for (GaloisField::Elem a = 1; a < F49->size(); ++a) {
    CHECK(F49->mul(a, F49->inv(a)) == 1);
    CHECK(F49->exp(F49->log(a)) == a);
    // Frobenius is additive and fixes F_7
    for (GaloisField::Elem b = 0; b < F49->size(); b += 5)
      CHECK(F49->frobenius(F49->add(a, b), 1) == F49->add(F49->frobenius(a, 1), F49->frobenius(b, 1)));
  }
  for (GaloisField::Elem a = 0; a < 7; ++a) CHECK(F49->frobenius(a, 1) == a);
  CHECK_THROWS_AS(GaloisField::of_order(12), InvalidParameter);
}

TEST_CASE("factorization examples") {
  const auto& F = *GaloisField::of_order(7);
  // s^3 - 1
  auto f = poly_factor(F, Poly({6, 0, 0, 1}));
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0].first == Poly({6, 1}));
  CHECK(f.factors[1].first == Poly({5, 1}));
  CHECK(f.factors[2].first == Poly({3, 1}));
  // s^3 - 3
  f = poly_factor(F, Poly({4, 0, 0, 1}));
  REQUIRE(f.factors.size() == 1);
  CHECK(f.factors[0].second == 1);
  CHECK(poly_is_irreducible(F, Poly({4, 0, 0, 1})));
  // s^2
  f = poly_factor(F, Poly({0, 0, 1}));
  REQUIRE(f.factors.size() == 1);
  CHECK(f.factors[0] == std::pair<Poly, int>{Poly::x(), 2});
  CHECK_THROWS(poly_factor(F, Poly()));
}

TEST_CASE("factorization reproduces its input and yields irreducibles") {
  std::mt19937 rng(17);
  for (std::int64_t q : {7, 13, 25, 49}) {
    const auto& F = *GaloisField::of_order(q);
    for (int n = 0; n < 40; ++n) {
      Poly f = testsupport::random_poly(F, rng, static_cast<int>(testsupport::uniform(rng, 1, 6)));
      if (n % 4 == 0) f = poly_mul(F, f, f);
      const auto fac = poly_factor(F, f);
      Poly prod({fac.unit});
      for (const auto& [g, e] : fac.factors) {
        CHECK(g.lead() == 1);
        prod = poly_mul(F, prod, poly_pow(F, g, static_cast<std::uint64_t>(e)));
        // below degree 4 irreducible means no roots
        if (g.degree() >= 2 && g.degree() <= 3) CHECK_FALSE(has_root(F, g));
      }
      CHECK(prod == f);
      // deterministic
      const auto again = poly_factor(F, f);
      CHECK(again.factors == fac.factors);
    }
  }
}

TEST_CASE("arena R at q = 7") {
  const Arena& a = r7();
  CHECK(a.xi() == 2);
  CHECK(a.upsilon() == 0);
  CHECK(a.sigma(el("s")) == el("2*s"));
  CHECK(a.sigma(el("s+6")) == el("2*(s+3)"));
  CHECK(a.sigma(el("t-1")) == el("t-1"));
  CHECK(a.norm(el("s")) == el("t"));
  CHECK(a.norm(el("s+6")) == el("t-1"));
  CHECK(a.norm(el("5")) == el("5^3"));
  CHECK(a.pth_root(el("t")) == el("s"));
  CHECK(a.pth_root(el("6")) == el("3"));
  CHECK_FALSE(a.pth_root(el("3")));
  CHECK(a.hilbert90(el("1")) == el("1"));
  CHECK(a.hilbert90(el("2")) == el("s"));
  CHECK(a.hilbert90(el("2*(s+3)/(s+6)")) == el("s+6"));
  CHECK_THROWS_AS(a.hilbert90(el("s")), PreconditionError);
  CHECK(a.decompose_F_class(el("t")) == std::pair<int, FieldElement>{1, el("1")});
  CHECK(a.decompose_F_class(el("(t-1)^3")) == std::pair<int, FieldElement>{0, el("t-1")});
  CHECK(a.decompose_F_class(el("t^4")) == std::pair<int, FieldElement>{1, el("t")});
  CHECK_THROWS_AS(a.decompose_F_class(el("s")), InvalidInput);
  CHECK_THROWS_AS(a.decompose_F_class(el("t-1")), InvalidInput);
}

TEST_CASE("arena configuration is validated") {
  CHECK_THROWS_AS(Arena({3, Variant::R, 11}), InvalidParameter);  // 3 does not divide 10
  CHECK_THROWS_AS(Arena({4, Variant::R, 13}), InvalidParameter);
  CHECK_THROWS_AS(Arena({3, Variant::R, 19}), InvalidParameter);  // 9 | 18
  CHECK_NOTHROW(Arena({3, Variant::R, 13}));
  CHECK_NOTHROW(Arena({5, Variant::R, 11}));
  CHECK_NOTHROW(Arena({3, Variant::C, 4}));
}

TEST_CASE("sigma is a field automorphism of order p") {
  std::mt19937 rng(3);
  for (const Arena* a : {&r7(), &c7()}) {
    for (int n = 0; n < 50; ++n) {
      const FieldElement x = random_element(*a, rng);
      const FieldElement y = random_element(*a, rng);
      CHECK(a->sigma(x * y) == a->sigma(x) * a->sigma(y));
      const auto sum = field_add(x, y);
      const auto sum_images = field_add(a->sigma(x), a->sigma(y));
      CHECK(sum.has_value() == sum_images.has_value());
      if (sum && sum_images) CHECK(a->sigma(*sum) == *sum_images);
      CHECK(a->sigma(x, a->p()) == x);
    }
  }
}

TEST_CASE("norm and p-th roots") {
  std::mt19937 rng(4);
  for (const Arena* a : {&r7(), &c7()}) {
    for (int n = 0; n < 50; ++n) {
      const FieldElement x = random_element(*a, rng);
      const FieldElement y = random_element(*a, rng);
      const FieldElement nx = a->norm(x);
      CHECK(a->in_base(nx));
      CHECK(a->norm(x * y) == nx * a->norm(y));
      CHECK(a->norm(a->sigma(x)) == nx);
      const auto r = a->pth_root(x.pow(a->p()));
      REQUIRE(r);
      CHECK(r->pow(a->p()) == x.pow(a->p()));
      if (const auto rx = a->pth_root(x)) CHECK(rx->pow(a->p()) == x);
    }
  }
}

TEST_CASE("hilbert 90 on norm-one elements") {
  std::mt19937 rng(90);
  for (const Arena* a : {&r7(), &c7()}) {
    for (int n = 0; n < 100; ++n) {
      const FieldElement x = random_element(*a, rng);
      const FieldElement c = a->rho(x);
      CHECK(a->norm(c).is_one());
      const FieldElement b = a->hilbert90(c);
      CHECK(a->sigma(b) / b == c);
    }
  }
}

TEST_CASE("upsilon is 0 for R and 1 for C") {
  {
    const Arena& a = r7();
    const auto& F = *a.field();
    // xi is not a p-th power in F_q
    CHECK(F.pow(a.xi(), (F.size() - 1) / 3) != 1);
    // every class of J_1 met here has index 0: constants, xi, and fixed atoms of degree <= 3
    for (GaloisField::Elem c = 1; c < F.size(); ++c) CHECK(a.index(a.constant(c)) == 0);
    CHECK(a.index(a.rho(a.variable_element())) == 0);
    int fixed = 0;
    for (int d = 1; d <= 3; ++d) {
      testsupport::for_each_vector(d, 7, [&](const FpVector& v) {
        std::vector<GaloisField::Elem> c(v.data(), v.data() + d);
        c.push_back(1);
        const Poly f(c);
        if (!poly_is_irreducible(F, f) || f == Poly::x() || a.atom_orbit(f).size() != 1) return;
        ++fixed;
        CHECK(a.index(a.from_poly(f)) == 0);
      });
    }
    CHECK(fixed > 0);
    CHECK(a.index(a.variable_element()) == 1);
  }
  {
    const Arena& a = c7();
    const auto& F = *a.field();
    bool found = false;
    for (std::int64_t k = 0; k < F.size() - 1 && !found; ++k) {
      const auto e = a.index(a.constant(F.exp(k)));
      found = e && *e != 0;
    }
    CHECK(found);
    CHECK(a.index(a.alpha()) == 1);
    CHECK(a.rho(a.a_root()) == a.constant(a.xi()));
  }
}

TEST_CASE("element grammar") {
  const FieldElement x = el("3*(s+6)^2*(s^2+1)^-1");
  CHECK(x.factors().size() == 2);
  CHECK(x.unit() == 3);
  CHECK(el("(s^3+6)") == el("(s+6)*(s+5)*(s+3)"));
  CHECK(el("(s^3+6)").factors().size() == 3);
  CHECK_THROWS_AS(el("0"), InvalidInput);
  CHECK_THROWS_AS(el("s-s"), InvalidInput);
  CHECK_THROWS_AS(el("s+"), ParseError);
  CHECK_THROWS_AS(el("(s+1"), ParseError);
  CHECK_THROWS_AS(el("1/(s-s)"), ParseError);
  CHECK_THROWS_AS(el("z"), ParseError);         // F_7 has no z
  CHECK_THROWS_AS(el("s", c7()), ParseError);   // arena C uses t
  CHECK_NOTHROW(el("z*(t-1)", c7()));
  try {
    el("s+#");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
  CHECK(el("t") == el("s^3"));
  CHECK(el("-1") == el("6"));
  CHECK(el("2/3") == el("3"));
}

TEST_CASE("render and parse round-trip") {
  std::mt19937 rng(100);
  for (const Arena* a : {&r7(), &c7()}) {
    for (int n = 0; n < 100; ++n) {
      const FieldElement x = random_element(*a, rng, 3, 3);
      const std::string s = render(x, *a);
      CHECK_MESSAGE(parse_element(s, *a) == x, s);
    }
  }
  CHECK(render(el("t-1"), r7()) == "(s+6)*(s+5)*(s+3)");
  CHECK(render(el("2*(s+3)/(s+6)"), r7()) == "2*(s+3)*(s+6)^-1");
  CHECK(render(el("s+6"), r7()) == "s+6");
}

TEST_CASE("expanded form round-trips") {
  std::mt19937 rng(8);
  for (int n = 0; n < 50; ++n) {
    const FieldElement x = random_element(r7(), rng, 3, 3);
    const auto [num, den] = x.expanded();
    CHECK(FieldElement::from_fraction(x.field(), num, den) == x);
  }
}
