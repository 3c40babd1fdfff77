#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "oracle.hpp"
#include "zslab/error.hpp"
#include "zslab/group.hpp"
#include "zslab/linalg.hpp"
#include "zslab/sequence.hpp"
#include "zslab/sumset.hpp"

using namespace zslab;

namespace {

Element at(const GroupSpec& s, Coords c) { return s.encode(c); }

ElementSequence seq(const GroupSpec& s, std::vector<Coords> pts) { return ElementSequence::from_coords(s, pts); }

}  // namespace

TEST_CASE("encode uses mixed radix with coordinate 0 least significant") {
  const auto s52 = GroupSpec::make(5, 2);
  CHECK(at(s52, {0, 0}).index == 0);
  CHECK(at(s52, {1, 2}).index == 11);
  CHECK(at(GroupSpec::make(5, 3), {4, 4, 4}).index == 124);
  CHECK_THROWS_AS(at(s52, {1}), InputError);
  CHECK_THROWS_AS(at(s52, {5, 0}), InputError);
}

TEST_CASE("encode and decode round-trip over whole universes") {
  for (auto [p, d] : {std::pair{3u, 1u}, {5u, 2u}, {3u, 3u}, {7u, 2u}, {2u, 4u}}) {
    const auto s = GroupSpec::make(p, d);
    for (std::uint32_t i = 0; i < s.order(); ++i) {
      CHECK(s.encode(s.decode(Element{i})).index == i);
      CHECK(s.decode(Element{i}) == oracle::coords_of(i, p, d));
    }
  }
}

TEST_CASE("group spec validation") {
  CHECK_THROWS_AS(GroupSpec::make(9, 1), InputError);
  CHECK_THROWS_AS(GroupSpec::make(5, 0), InputError);
  CHECK_THROWS_AS(GroupSpec::make(101, 5), InputError);  // over the cell cap
  CHECK_THROWS_AS(GroupSpec::make(131, 4), InputError);
  CHECK_NOTHROW(GroupSpec::make(131, 4, Limits{std::uint64_t{1} << 29}));
  CHECK_THROWS_AS(GroupSpec::make(101, 5, Limits{std::uint64_t{1} << 40}), InputError);  // indices are 32-bit
  CHECK(is_prime(2));
  CHECK(is_prime(18446744073709551557ull));
  CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("arithmetic agrees with coordinate arithmetic") {
  const auto s = GroupSpec::make(7, 3);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 500; ++t) {
    const Element a{static_cast<std::uint32_t>(rng() % s.order())};
    const Element b{static_cast<std::uint32_t>(rng() % s.order())};
    CHECK(s.decode(s.add(a, b)) == oracle::add(s.decode(a), s.decode(b), 7));
    CHECK(s.add(s.sub(a, b), b) == a);
    CHECK(s.add(a, s.neg(a)) == s.zero());
    const std::uint64_t k = rng() % 20;
    Element acc = s.zero();
    for (std::uint64_t i = 0; i < k; ++i) acc = s.add(acc, a);
    CHECK(s.scale(k, a) == acc);
  }
}

TEST_CASE("norm on F_p") {
  const auto s = GroupSpec::make(7, 1);
  CHECK(norm(s, Element{6}) == 1);
  CHECK(norm(s, Element{0}) == 0);
  CHECK(norm(s, Element{3}) == 3);
  for (std::uint32_t x = 1; x < 7; ++x) CHECK(norm(s, Element{x}) == norm(s, Element{7 - x}));
  CHECK_THROWS_AS(norm(GroupSpec::make(7, 2), Element{1}), DomainError);
}

TEST_CASE("dilate") {
  const auto s7 = GroupSpec::make(7, 1);
  const auto a = seq(s7, {{1}, {3}});
  CHECK(dilate(1, a) == a);
  CHECK(dilate(2, a) == seq(s7, {{2}, {6}}));
  const auto s5 = GroupSpec::make(5, 1);
  ElementSequence b(s5);
  b.add(Element{1}, 4);
  const auto db = dilate(3, b);
  CHECK(db.multiplicity(Element{3}) == 4);
  CHECK(db.length() == 4);
  CHECK_THROWS_AS(dilate(0, a), InputError);
}

TEST_CASE("sequences are multisets") {
  const auto s = GroupSpec::make(5, 2);
  auto a = seq(s, {{1, 0}, {0, 1}, {1, 0}});
  auto b = seq(s, {{0, 1}, {1, 0}, {1, 0}});
  CHECK(a == b);
  CHECK(a.length() == 3);
  CHECK(a.distinct() == 2);
  CHECK(a.total() == at(s, {2, 1}));
  CHECK_THROWS_AS(a.remove(at(s, {1, 0}), 3), InputError);
  CHECK(a.minus(seq(s, {{1, 0}})) == seq(s, {{1, 0}, {0, 1}}));
}

TEST_CASE("project onto complementary pairs") {
  const auto s = GroupSpec::make(5, 2);
  const auto hx = Subspace::span(s, std::vector<Coords>{{1, 0}});
  const auto hy = Subspace::span(s, std::vector<Coords>{{0, 1}});
  const auto hd = Subspace::span(s, std::vector<Coords>{{1, 1}});
  auto pr = project(s.zero(), hx, hy);
  CHECK(pr.onto_first == s.zero());
  CHECK(pr.onto_second == s.zero());
  pr = project(at(s, {3, 4}), hx, hy);
  CHECK(pr.onto_first == at(s, {3, 0}));
  CHECK(pr.onto_second == at(s, {0, 4}));
  pr = project(at(s, {1, 1}), hd, hy);
  // exhaustive over H x H2
  std::set<std::pair<std::uint32_t, std::uint32_t>> sols;
  for (Element u : hd.elements())
    for (Element v : hy.elements())
      if (s.add(u, v) == at(s, {1, 1})) sols.insert({u.index, v.index});
  REQUIRE(sols.size() == 1);
  CHECK(pr.onto_first.index == sols.begin()->first);
  CHECK(pr.onto_second.index == sols.begin()->second);
  CHECK(pr.onto_first == at(s, {1, 1}));
  CHECK_THROWS_AS(project(at(s, {1, 1}), hx, hx), DomainError);
}

TEST_CASE("project property on random complementary pairs") {
  std::mt19937_64 rng(2);
  for (auto [p, d] : {std::pair{5u, 2u}, {3u, 3u}, {7u, 3u}}) {
    const auto s = GroupSpec::make(p, d);
    for (int t = 0; t < 1000; ++t) {
      std::vector<Coords> vs = oracle::random_points(p, d, d, rng);
      if (rank(p, vs) < d) continue;
      const std::uint32_t k = 1 + static_cast<std::uint32_t>(rng() % (d - 1));
      const auto h = Subspace::span(s, std::vector<Coords>(vs.begin(), vs.begin() + k));
      const auto h2 = Subspace::span(s, std::vector<Coords>(vs.begin() + k, vs.end()));
      const Element a{static_cast<std::uint32_t>(rng() % s.order())};
      const auto pr = project(a, h, h2);
      CHECK(s.add(pr.onto_first, pr.onto_second) == a);
      CHECK(h.contains(pr.onto_first));
      CHECK(h2.contains(pr.onto_second));
    }
  }
}

TEST_CASE("subspaces in echelon form") {
  const auto s = GroupSpec::make(5, 3);
  const auto a = Subspace::span(s, std::vector<Coords>{{1, 2, 0}, {2, 4, 0}, {0, 0, 3}});
  const auto b = Subspace::span(s, std::vector<Coords>{{0, 0, 1}, {3, 1, 0}});
  CHECK(a == b);
  CHECK(a.dim() == 2);
  CHECK(a.size() == 25);
  CHECK(a.elements().size() == 25);
  CHECK(Subspace::zero(s).dim() == 0);
  CHECK(Subspace::full(s).dim() == 3);
  const auto c = a.complement();
  CHECK(c.dim() == 1);
  CHECK((a + c) == Subspace::full(s));
  std::set<std::uint32_t> reps;
  for (std::uint32_t i = 0; i < s.order(); ++i) {
    const Element r = a.coset_rep(Element{i});
    CHECK(a.contains(s.sub(Element{i}, r)));
    CHECK(c.contains(r));
    reps.insert(r.index);
  }
  CHECK(reps.size() == 5);
  for (Element x : a.elements()) CHECK(a.combine(a.coordinates(x)) == x);
  const auto k = Subspace::kernel(s, std::vector<Coords>{{1, 1, 1}});
  CHECK(k.dim() == 2);
  for (Element x : k.elements()) CHECK(s.dot(Coords{1, 1, 1}, x) == 0);
}

TEST_CASE("hyperplane enumeration") {
  CHECK(enumerate_hyperplanes(GroupSpec::make(3, 2)).size() == 4);
  CHECK(enumerate_hyperplanes(GroupSpec::make(5, 2)).size() == 6);
  CHECK(enumerate_hyperplanes(GroupSpec::make(3, 3)).size() == 13);
  CHECK_THROWS_AS(enumerate_hyperplanes(GroupSpec::make(5, 1)), DomainError);
  for (auto [p, d] : {std::pair{3u, 2u}, {5u, 2u}, {3u, 3u}, {5u, 3u}}) {
    const auto s = GroupSpec::make(p, d);
    const auto hs = enumerate_hyperplanes(s);
    std::uint64_t expect_count = 1, per_point = 1;
    for (std::uint32_t i = 0; i < d; ++i) expect_count *= p;
    expect_count = (expect_count - 1) / (p - 1);
    std::uint64_t pd1 = 1;
    for (std::uint32_t i = 0; i + 1 < d; ++i) pd1 *= p;
    per_point = (pd1 - 1) / (p - 1);
    CHECK(hs.size() == expect_count);
    std::vector<std::uint64_t> hits(s.order(), 0);
    for (std::size_t i = 0; i < hs.size(); ++i) {
      CHECK(hs[i].space.dim() == d - 1);
      for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(hs[i].space == hs[j].space);
      for (Element x : hs[i].space.elements()) ++hits[x.index];
    }
    for (std::uint32_t x = 1; x < s.order(); ++x) CHECK(hits[x] == per_point);
  }
}

TEST_CASE("affine bases") {
  const auto s = GroupSpec::make(5, 2);
  const std::vector<Element> simplex{at(s, {0, 0}), at(s, {1, 0}), at(s, {0, 1})};
  const std::vector<Element> collinear{at(s, {0, 0}), at(s, {1, 1}), at(s, {2, 2})};
  const std::vector<Element> zeros(3, s.zero());
  CHECK(is_affine_basis(s, simplex));
  CHECK_FALSE(is_affine_basis(s, collinear));
  CHECK_FALSE(is_affine_basis(s, zeros));
  CHECK_THROWS_AS(is_affine_basis(s, std::vector<Element>{s.zero()}), InputError);
}

TEST_CASE("apply_map") {
  const auto s = GroupSpec::make(5, 2);
  const auto a = seq(s, {{1, 0}, {3, 1}, {3, 1}});
  CHECK(apply_map(LinearMap::identity(s), a) == a);
  const auto swap = LinearMap::from_rows(s, {{0, 1}, {1, 0}});
  CHECK(apply_map(swap, seq(s, {{1, 2}})) == seq(s, {{2, 1}}));
  const auto dbl = LinearMap::from_rows(s, {{2, 0}, {0, 1}});
  CHECK(apply_map(dbl, seq(s, {{1, 0}, {3, 1}})) == seq(s, {{2, 0}, {1, 1}}));
  const auto sing = LinearMap::from_rows(s, {{1, 1}, {2, 2}});
  CHECK_THROWS_AS(apply_map(sing, a), DomainError);
  CHECK_NOTHROW(apply_map(sing, a, false));
}

TEST_CASE("general linear groups") {
  CHECK(enumerate_general_linear(GroupSpec::make(3, 2)).size() == 48);
  CHECK(enumerate_general_linear(GroupSpec::make(5, 2)).size() == 480);
  CHECK(enumerate_general_linear(GroupSpec::make(2, 3)).size() == 168);
}

TEST_CASE("zero-sum-freeness is invariant under invertible maps") {
  std::mt19937_64 rng(3);
  for (auto [p, d] : {std::pair{3u, 2u}, {5u, 2u}, {3u, 3u}}) {
    const auto s = GroupSpec::make(p, d);
    const auto maps = enumerate_general_linear(s);
    for (int t = 0; t < 200; ++t) {
      const auto pts = oracle::random_points(p, d, 1 + rng() % 6, rng);
      const auto a = ElementSequence::from_coords(s, pts);
      const auto& m = maps[rng() % maps.size()];
      CHECK(is_zero_sum_free(a) == is_zero_sum_free(apply_map(m, a)));
    }
  }
}

TEST_CASE("richest affine hyperplane") {
  const auto s = GroupSpec::make(5, 2);
  ElementSequence line(s);
  for (std::uint32_t y = 0; y < 5; ++y) line.add(at(s, {2, y}));
  line.add(at(s, {0, 0}));
  const auto r = richest_affine_hyperplane(line);
  CHECK(r.count == 5);
  CHECK(r.hyperplane.normal == Coords{1, 0});
  CHECK(r.hyperplane.offset == 2);
  const auto through = richest_affine_hyperplane(line, at(s, {0, 0}));
  CHECK(through.hyperplane.contains(s, at(s, {0, 0})));
  CHECK(through.count == 2);
}
