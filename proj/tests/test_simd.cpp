#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "oracle.hpp"
#include "zslab/indicator_set.hpp"
#include "zslab/simd/kernels.hpp"
#include "zslab/sumset.hpp"

using namespace zslab;
using simd::Word;

namespace {

std::vector<Word> random_words(std::size_t n, std::mt19937_64& rng, int density) {
  std::vector<Word> v(n);
  for (auto& w : v) {
    w = rng();
    for (int i = 1; i < density; ++i) w &= rng();
  }
  return v;
}

struct ScopedBackend {
  simd::Backend saved;
  explicit ScopedBackend(simd::Backend b) : saved(simd::active().backend) { simd::select(b); }
  ~ScopedBackend() { simd::select(saved); }
};

}  // namespace

TEST_CASE("scalar kernels match per-bit definitions") {
  const auto& k = simd::scalar_kernels();
  std::mt19937_64 rng(11);
  for (std::size_t n : {0, 1, 3, 4, 5, 17, 64, 129}) {
    auto a = random_words(n, rng, 2);
    auto b = random_words(n, rng, 2);
    std::size_t pop = 0, andnot = 0;
    bool inter = false, sub = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (int j = 0; j < 64; ++j) {
        const bool x = a[i] >> j & 1, y = b[i] >> j & 1;
        pop += x;
        andnot += x && !y;
        inter = inter || (x && y);
        sub = sub && (!x || y);
      }
    }
    CHECK(k.popcount(a) == pop);
    CHECK(k.andnot_popcount(a, b) == andnot);
    CHECK(k.intersects(a, b) == inter);
    CHECK(k.is_subset(a, b) == sub);
    auto c = a;
    k.or_into(c, b);
    for (std::size_t i = 0; i < n; ++i) CHECK(c[i] == (a[i] | b[i]));
  }
}

TEST_CASE("avx2 kernels match scalar kernels") {
  const auto* v = simd::avx2_kernels();
  if (!v) {
    MESSAGE("no AVX2 variant on this build or CPU");
    return;
  }
  const auto& s = simd::scalar_kernels();
  std::mt19937_64 rng(12);
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = rng() % 70;
    const int density = 1 + static_cast<int>(rng() % 4);
    auto a = random_words(n, rng, density);
    auto b = random_words(n, rng, density);
    if (t % 5 == 0) b = a;                             // subset edge case
    if (t % 7 == 0 && n) a[n - 1] |= Word{1} << 63;     // tail word
    CHECK(v->popcount(a) == s.popcount(a));
    CHECK(v->andnot_popcount(a, b) == s.andnot_popcount(a, b));
    CHECK(v->intersects(a, b) == s.intersects(a, b));
    CHECK(v->is_subset(a, b) == s.is_subset(a, b));
    auto c1 = a, c2 = a;
    v->or_into(c1, b);
    s.or_into(c2, b);
    CHECK(c1 == c2);
  }
}

TEST_CASE("shift helpers") {
  std::vector<Word> src{0x8000000000000001ull, 0x3ull};
  std::vector<Word> dst(3, 0);
  simd::shl_or(dst, src, 1);
  CHECK(dst[0] == 0x2ull);
  CHECK(dst[1] == 0x7ull);
  CHECK(dst[2] == 0);
  std::vector<Word> r(2, 0);
  simd::shr_or(r, src, 64);
  CHECK(r[0] == 0x3ull);
  CHECK(r[1] == 0);
}

TEST_CASE("indicator-set operations agree across backends") {
  if (!simd::avx2_kernels()) return;
  std::mt19937_64 rng(13);
  for (auto [p, d] : {std::pair{3u, 3u}, {67u, 2u}, {131u, 2u}, {17u, 3u}}) {
    const auto spec = GroupSpec::make(p, d);
    for (int t = 0; t < 10; ++t) {
      const auto pts = oracle::random_points(p, d, 6, rng);
      const auto a = ElementSequence::from_coords(spec, pts);
      std::vector<Element> xs, ys;
      for (int i = 0; i < 200; ++i) xs.push_back(Element{static_cast<std::uint32_t>(rng() % spec.order())});
      for (int i = 0; i < 50; ++i) ys.push_back(Element{static_cast<std::uint32_t>(rng() % spec.order())});
      const auto x = IndicatorSet::from_elements(spec, xs);
      const auto y = IndicatorSet::from_elements(spec, ys);
      const Element v{static_cast<std::uint32_t>(rng() % spec.order())};
      auto run = [&] {
        auto u = x;
        u |= y;
        return std::tuple{sumset(x, y), subsums_all(a), subsums_exact(a, 3), x.translate_gain(v), x.count_minus(y),
                          y.is_subset_of(u), x.intersects(y), u};
      };
      std::decay_t<decltype(run())> r1 = [&] {
        ScopedBackend g(simd::Backend::Scalar);
        return run();
      }();
      std::decay_t<decltype(run())> r2 = [&] {
        ScopedBackend g(simd::Backend::Avx2);
        return run();
      }();
      CHECK(r1 == r2);
    }
  }
}

TEST_CASE("indicator set basics") {
  const auto spec = GroupSpec::make(67, 2);
  IndicatorSet s(spec);
  CHECK(s.empty());
  s.insert(Element{66});
  s.insert(Element{67});
  s.insert(Element{67});
  CHECK(s.size() == 2);
  const auto t = s.translated(spec.encode(Coords{1, 0}));
  CHECK(t.contains(spec.encode(Coords{0, 0})));  // wraps around in the row
  CHECK(t.contains(spec.encode(Coords{1, 1})));
  CHECK(t.size() == 2);
  CHECK(s.translate_gain(spec.encode(Coords{1, 0})) == 2);
  s.erase(Element{66});
  CHECK(s.elements() == std::vector<Element>{Element{67}});
  CHECK(IndicatorSet::full(spec).is_full());
  CHECK(IndicatorSet::full(spec).size() == 67u * 67u);
}
